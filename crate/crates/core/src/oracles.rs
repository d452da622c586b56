//! Character-level brute-force reference implementations.
//!
//! Everything here works on decoded text and shares no code with the fast
//! path beyond the plain data types. Costs are quadratic or worse.

use crate::candidates::CandidateAnswer;
use crate::driver::LufResult;
use crate::filter::{SjKind, SjRecord};
use crate::error::{LufError, Result};
use crate::rle::{Occurrence, RleString, Symbol};
use crate::wlsq::{WeightedSegment, WlsqHit};

/// Materialization limits for oracle runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleBudget {
    pub max_n: u64,
    pub rng_seed: u64,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget { max_n: 1 << 20, rng_seed: 0 }
    }
}

impl OracleBudget {
    pub fn decode(&self, r: &RleString) -> Result<Vec<Symbol>> {
        if r.len() > self.max_n {
            return Err(LufError::BudgetExceeded { n: r.len(), max_n: self.max_n });
        }
        r.decode(self.max_n)
    }
}

/// Number of maximal runs of `s`.
pub fn naive_run_count<T: PartialEq>(s: &[T]) -> usize {
    if s.is_empty() {
        return 0;
    }
    1 + s.windows(2).filter(|w| w[0] != w[1]).count()
}

pub fn naive_lcp<T: PartialEq>(a: &[T], b: &[T]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

pub fn naive_lcs<T: PartialEq>(a: &[T], b: &[T]) -> usize {
    a.iter().rev().zip(b.iter().rev()).take_while(|(x, y)| x == y).count()
}

/// 1-based start positions of `pat` in `text`.
pub fn naive_find<T: PartialEq>(text: &[T], pat: &[T]) -> Vec<u64> {
    if pat.is_empty() || pat.len() > text.len() {
        return Vec::new();
    }
    (0..=text.len() - pat.len())
        .filter(|&i| &text[i..i + pat.len()] == pat)
        .map(|i| i as u64 + 1)
        .collect()
}

fn has_border_of<T: PartialEq>(s: &[T], b: usize) -> bool {
    s[..b] == s[s.len() - b..]
}

/// Length of the longest border, 0 when unbordered.
pub fn naive_longest_border<T: PartialEq>(s: &[T]) -> usize {
    (1..s.len()).rev().find(|&b| has_border_of(s, b)).unwrap_or(0)
}

/// Length of the shortest border, 0 when unbordered.
pub fn naive_shortest_border<T: PartialEq>(s: &[T]) -> usize {
    (1..s.len()).find(|&b| has_border_of(s, b)).unwrap_or(0)
}

pub fn naive_is_unbordered<T: PartialEq>(s: &[T]) -> bool {
    naive_shortest_border(s) == 0
}

pub fn naive_smallest_period<T: PartialEq>(s: &[T]) -> usize {
    (1..=s.len())
        .find(|&p| (p..s.len()).all(|i| s[i] == s[i - p]))
        .unwrap_or(s.len())
}

/// Pseudo period: runs of `s` minus runs of its longest border.
pub fn naive_pp<T: PartialEq>(s: &[T]) -> usize {
    let b = naive_longest_border(s);
    naive_run_count(s) - naive_run_count(&s[..b])
}

/// For each run `i`, the RLE size of the shortest border of `T[1..End_i]`.
pub fn naive_rsbord(r: &RleString, cap: u64) -> Result<Vec<usize>> {
    let text = r.decode(cap)?;
    Ok((1..=r.m())
        .map(|i| {
            let prefix = &text[..r.end(i) as usize];
            let b = naive_shortest_border(prefix);
            naive_run_count(&prefix[..b])
        })
        .collect())
}

/// Definitional argmax over `z` in `[x..y]` of `lcp(T[End_h..n], T[End_z..End_y])`
/// among values at most `ell`; smallest `z` on ties.
pub fn naive_longest_pref(r: &RleString, x: usize, y: usize, h: usize, ell: Option<u64>) -> Option<usize> {
    let text = r.decode(u64::MAX).expect("decodable");
    let from = &text[r.end(h) as usize - 1..];
    let mut best: Option<(usize, usize)> = None;
    for z in x..=y {
        let window = &text[r.end(z) as usize - 1..r.end(y) as usize];
        let l = naive_lcp(from, window);
        if ell.is_some_and(|cap| l as u64 > cap) {
            continue;
        }
        if best.is_none_or(|(_, bl)| l > bl) {
            best = Some((z, l));
        }
    }
    best.map(|(z, _)| z)
}

/// Lowest stabbed segment with weight in `[w1, w2]` by linear scan.
pub fn naive_wlsq(segments: &[WeightedSegment], v: u64, w1: u64, w2: u64) -> Option<WlsqHit> {
    segments
        .iter()
        .filter(|s| s.x_lo <= v && v <= s.x_hi && w1 <= s.weight && s.weight <= w2)
        .min_by_key(|s| (s.y, s.id))
        .map(|s| WlsqHit { id: s.id, y: s.y })
}

/// Prefix function: `fail[l]` is the longest border of `s[..l]`.
fn failure<T: PartialEq>(s: &[T]) -> Vec<usize> {
    let mut fail = vec![0usize; s.len() + 1];
    for l in 2..=s.len() {
        let mut k = fail[l - 1];
        while k > 0 && s[k] != s[l - 1] {
            k = fail[k];
        }
        fail[l] = if s[k] == s[l - 1] { k + 1 } else { 0 };
    }
    fail
}

fn isqrt(m: usize) -> usize {
    (1..=m).take_while(|s| s * s <= m).last().unwrap_or(1)
}

/// `(s, x, y, z, max_start)` of stage `k`.
fn naive_stage(m: usize, k: usize) -> Result<(usize, usize, usize, usize, usize)> {
    let s = isqrt(m);
    let blocks = m.div_ceil(s);
    if k < 5 || k > blocks {
        return Err(LufError::InvalidStage { k, reason: "out of range" });
    }
    Ok((s, (k - 2) * s + 1, (k - 1) * s + 1, (k * s).min(m), (k - 4) * s))
}

/// The table `M_tau` of stage `k`, `table[r - 1][j - 1]`, with `u64::MAX` for
/// infinity, by enumerating every border of `T[End_tau..End_z] $ T[Beg_x..End_{y+j-1}]`.
pub fn naive_m_table(r: &RleString, k: usize, tau: usize) -> Result<Vec<Vec<u64>>> {
    let (s, x, y, z, _) = naive_stage(r.m(), k)?;
    let text = r.decode(u64::MAX)?;
    let ncols = z - y + 1;
    let mut table = vec![vec![0u64; ncols]; s];
    for j in 1..=ncols {
        let jj = y + j - 1;
        let mut f: Vec<Symbol> = text[r.end(tau) as usize - 1..r.end(z) as usize].to_vec();
        f.push(Symbol::SENTINEL);
        f.extend_from_slice(&text[r.beg(x) as usize - 1..r.end(jj) as usize]);
        if f[0] == f[f.len() - 1] {
            for row in table.iter_mut() {
                row[j - 1] = u64::MAX;
            }
            continue;
        }
        for b in 1..f.len() {
            if f[..b] != f[f.len() - b..] {
                continue;
            }
            let q = naive_run_count(&f[..b]);
            let pos = f.len() - b;
            let e = f[..=pos].iter().rev().take_while(|&&c| c == f[pos]).count() as u64;
            for row in table.iter_mut().skip(q - 1) {
                row[j - 1] = row[j - 1].max(e);
            }
        }
    }
    Ok(table)
}

/// Longest factor starting at `Beg_i` and ending inside block `k` whose
/// shortest border (if any) has RLE size above `floor(sqrt m)`.
pub fn naive_candidate(r: &RleString, k: usize, i: usize) -> Result<CandidateAnswer> {
    let (s, _, y, z, max) = naive_stage(r.m(), k)?;
    if i == 0 || i > max {
        return Err(LufError::StageRange { i, k, max });
    }
    let text = r.decode(u64::MAX)?;
    let from = r.beg(i) as usize - 1;
    let f = &text[from..r.end(z) as usize];
    let fail = failure(f);
    for q in (r.beg(y)..=r.end(z)).rev() {
        let len = q as usize - from;
        let mut b = fail[len];
        while b > 0 && fail[b] > 0 {
            b = fail[b];
        }
        if b == 0 || naive_run_count(&f[..b]) > s {
            return Ok(CandidateAnswer::Factor(Occurrence::new(r.beg(i), q)));
        }
    }
    Ok(CandidateAnswer::Empty)
}

/// `S_j` by definition: the shortest suffix of `$ T[1..End_j]` that is at
/// least as long as the last `s` runs and has pseudo period `pp` with
/// `2 pp > s - 2`.
pub fn naive_sj(r: &RleString, j: usize, s: usize) -> Result<SjRecord> {
    if j <= s || j > r.m() {
        return Err(LufError::MarkerUndefined { j, s });
    }
    let text = r.decode(u64::MAX)?;
    let end = r.end(j) as usize;
    let prefix = &text[..end];
    let wlen = end - (r.beg(j - s + 1) as usize - 1);
    let window_pp = naive_pp(&prefix[end - wlen..]);
    // Longest borders of all suffixes at once, from the failure function of the reversal.
    let reversed: Vec<Symbol> = prefix.iter().rev().copied().collect();
    let fail = failure(&reversed);
    let mut found = None;
    for len in wlen..=end {
        let x = &prefix[end - len..];
        let pp = naive_run_count(x) - naive_run_count(&x[..fail[len]]);
        if 2 * pp + 2 > s {
            found = Some(len);
            break;
        }
    }
    let Some(len) = found else {
        return Ok(SjRecord { j, kind: SjKind::SentinelPrefixed, start: None, window_pp, occ_ends: Vec::new() });
    };
    let start = (end - len + 1) as u64;
    let kind = if len == wlen { SjKind::Window } else { SjKind::Suffix };
    let occ_ends = naive_find(&text, &prefix[end - len..])
        .into_iter()
        .map(|p| p + len as u64 - 1)
        .filter(|&zeta| zeta < end as u64)
        .collect();
    Ok(SjRecord { j, kind, start: Some(start), window_pp, occ_ends })
}

/// Longest unbordered factors by one failure function per suffix.
pub fn naive_luf_text(text: &[Symbol]) -> LufResult {
    let n = text.len();
    assert!(n > 0, "empty text");
    if text.iter().all(|&c| c == text[0]) {
        return LufResult::unary();
    }
    let mut best = 0usize;
    let mut occs: Vec<Occurrence> = Vec::new();
    let mut fail = vec![0usize; n + 1];
    for i in 0..n {
        let s = &text[i..];
        // fail[l] = longest border of s[..l]
        fail[1] = 0;
        for l in 2..=s.len() {
            let mut k = fail[l - 1];
            while k > 0 && s[k] != s[l - 1] {
                k = fail[k];
            }
            fail[l] = if s[k] == s[l - 1] { k + 1 } else { 0 };
        }
        for l in (best..=s.len()).rev() {
            if l > 0 && fail[l] == 0 {
                if l > best {
                    best = l;
                    occs.clear();
                }
                occs.push(Occurrence::new(i as u64 + 1, (i + l) as u64));
                break;
            }
        }
    }
    LufResult { length: best as u64, occurrences: occs }
}

pub fn naive_luf(r: &RleString, budget: &OracleBudget) -> Result<LufResult> {
    Ok(naive_luf_text(&budget.decode(r)?))
}
