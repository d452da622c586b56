//! Per-stage candidates: for each start run `i`, the longest factor starting
//! at `Beg_i` and ending inside the current block that has no short border.
//!
//! The text is cut into blocks of `s = floor(sqrt m)` runs. Stage `k` looks
//! at block `J_k = runs y..=z` and its predecessor, `D_k = runs x..=z`.
//! Whether `T[Beg_i..End_j]` has a short border is decided from a table
//! `M_t` over (border RLE size, column), stored as weighted segments and
//! queried with a lowest-stabbing structure.

use crate::borders::Borders;
use crate::error::{LufError, Result};
use crate::index::{LongestPrefIndex, TruncatedRleIndex};
use crate::rle::{Occurrence, RleString, Run};
use crate::stats;
use crate::wlsq::{WeightedSegment, WlsqIndex};

/// `floor(sqrt(m))`, the largest RLE size of a short border.
pub fn short_limit(m: usize) -> usize {
    let mut s = (m as f64).sqrt() as usize;
    while s * s > m {
        s -= 1;
    }
    while (s + 1) * (s + 1) <= m {
        s += 1;
    }
    s.max(1)
}

/// Blocks of `s` runs covering `1..=m`; the last one may be shorter.
pub fn block_partition(m: usize, s: usize) -> Vec<(usize, usize)> {
    (0..m.div_ceil(s)).map(|b| (b * s + 1, ((b + 1) * s).min(m))).collect()
}

/// The longest factor without short border for one start run, if any.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CandidateAnswer {
    Empty,
    Factor(Occurrence),
}

/// Segments encoding the table `M_tau`: row range `[x_lo, x_hi]`, column `j`
/// at `y = ncols + 1 - j`, weight = table value. Columns whose table value
/// is infinite are listed separately and carry no segments.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MTauSegments {
    pub tau: usize,
    pub segments: Vec<WeightedSegment>,
    pub infinite_columns: Vec<usize>,
}

impl MTauSegments {
    /// Expands back into the full table, `table[r - 1][j - 1]`, with
    /// `u64::MAX` for infinity.
    pub fn to_table(&self, rows: usize, ncols: usize) -> Vec<Vec<u64>> {
        let mut t = vec![vec![0u64; ncols]; rows];
        for s in &self.segments {
            let j = ncols + 1 - s.y as usize;
            for row in t.iter_mut().take(s.x_hi as usize).skip(s.x_lo as usize - 1) {
                row[j - 1] = s.weight;
            }
        }
        for &j in &self.infinite_columns {
            for row in t.iter_mut() {
                row[j - 1] = u64::MAX;
            }
        }
        t
    }
}

/// Everything stage `k` needs to answer candidate queries.
#[derive(Debug)]
pub struct StageContext<'a> {
    pub k: usize,
    pub x: usize,
    pub y: usize,
    pub z: usize,
    pub s: usize,
    host: &'a TruncatedRleIndex,
    lp: LongestPrefIndex,
    /// `wlsq[tau - x]`.
    wlsq: Vec<WlsqIndex>,
}

/// Stage geometry `(x, y, z)` for block `k` (1-based).
pub fn stage_geometry(m: usize, k: usize) -> Result<(usize, usize, usize, usize)> {
    let s = short_limit(m);
    let blocks = m.div_ceil(s);
    if k < 5 {
        return Err(LufError::InvalidStage { k, reason: "stages start at block 5" });
    }
    if k > blocks {
        return Err(LufError::InvalidStage { k, reason: "no such block" });
    }
    Ok((s, (k - 2) * s + 1, (k - 1) * s + 1, (k * s).min(m)))
}

impl<'a> StageContext<'a> {
    pub fn build(host: &'a TruncatedRleIndex, k: usize) -> Result<Self> {
        Self::build_with(host, k, true)
    }

    /// `cascade = false` uses per-node binary search in the stabbing queries.
    pub fn build_with(host: &'a TruncatedRleIndex, k: usize, cascade: bool) -> Result<Self> {
        let t = host.text();
        let (s, x, y, z) = stage_geometry(t.m(), k)?;
        let lp = LongestPrefIndex::build(t, x, z)?;
        let mut wlsq = Vec::with_capacity(z - x + 1);
        for tau in x..=z {
            let segs = segments_for(t, x, y, z, s, tau);
            wlsq.push(WlsqIndex::build_with(&segs.segments, s as u64, cascade)?);
        }
        Ok(StageContext { k, x, y, z, s, host, lp, wlsq })
    }

    pub fn ncols(&self) -> usize {
        self.z - self.y + 1
    }

    /// Largest start run this stage queries: `(k - 4) s`.
    pub fn max_start(&self) -> usize {
        (self.k - 4) * self.s
    }

    pub fn segments(&self, tau: usize) -> MTauSegments {
        segments_for(self.host.text(), self.x, self.y, self.z, self.s, tau)
    }

    pub fn candidate(&self, i: usize) -> Result<CandidateAnswer> {
        let max = self.max_start();
        if i == 0 || i > max {
            return Err(LufError::StageRange { i, k: self.k, max });
        }
        Ok(self.candidate_unchecked(i))
    }

    pub(crate) fn candidate_unchecked(&self, i: usize) -> CandidateAnswer {
        let t = self.host.text();
        let (y, z, s) = (self.y, self.z, self.s);
        let answer = |j: usize| CandidateAnswer::Factor(Occurrence::new(t.beg(i), t.end(j)));
        let Some((alpha, plen)) = self.lp.query(i, None).filter(|&(_, l)| l > 0) else {
            return answer(z);
        };
        let end_pos = t.end(alpha) + plen - 1;
        let rho = t.run_at(end_pos);
        let p = rho - alpha + 1;
        stats::run_ops(2);
        if p == 1 {
            return if t.sym(z) != t.sym(i) {
                answer(z)
            } else if z > y {
                answer(z - 1)
            } else {
                CandidateAnswer::Empty
            };
        }
        let e1 = end_pos - t.beg(rho) + 1;
        let au = plen - e1;
        let (target, full) = if t.exp(rho) == e1 {
            (alpha, true)
        } else {
            match self.lp.query(alpha, Some(plen)) {
                None => (alpha, false),
                Some((beta, _)) => {
                    let l = self
                        .host
                        .rlelcp_unchecked(i, t.exp(i), beta, t.exp(beta))
                        .min(t.end(z) - t.end(beta) + 1)
                        .min(plen);
                    if l <= au {
                        (alpha, false)
                    } else {
                        (beta, true)
                    }
                }
            }
        };
        let rows = if full { p } else { p - 1 }.min(s);
        let hit = self.wlsq[target - self.x].query(rows as u64, 0, t.exp(i) - 1);
        match hit {
            Some(h) => answer(y + (self.ncols() + 1 - h.y as usize) - 1),
            None => CandidateAnswer::Empty,
        }
    }

    pub fn heap_words(&self) -> u64 {
        self.lp.heap_words() + self.wlsq.iter().map(WlsqIndex::heap_words).sum::<u64>()
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Token {
    Run(Run),
    Sep,
}

/// Segments of `M_tau` for stage window `x..=z` with block `y..=z`.
///
/// Column `j` (text run `j' = y + j - 1`) is infinite when `sym(tau) ==
/// sym(j')`. Otherwise the borders of
/// `F = T[End_tau..End_z] $ T[Beg_x..End_j']` have the form
/// `c R_{tau+1..tau+q-2} d^e`, where the middle runs are a token border of
/// `G = R_{tau+1..z} # R_{x..j'-1}` and the two boundary runs are checked
/// separately. The table entry at row `r` is the largest exponent of the run
/// holding the first character of a suffix occurrence, over borders of RLE
/// size at most `r`.
pub fn segments_for(t: &RleString, x: usize, y: usize, z: usize, s: usize, tau: usize) -> MTauSegments {
    let ncols = z - y + 1;
    let mut g: Vec<Token> = Vec::with_capacity(2 * (z - x + 2));
    g.extend(t.runs()[tau..z].iter().map(|&r| Token::Run(r)));
    g.push(Token::Sep);
    g.extend(t.runs()[x - 1..z].iter().map(|&r| Token::Run(r)));
    let tb = Borders::new(&g);
    let c = t.sym(tau);
    let head = z - tau;
    let mut out = MTauSegments { tau, segments: Vec::new(), infinite_columns: Vec::new() };
    let mut pairs: Vec<(usize, u64)> = Vec::new();
    for j in 1..=ncols {
        let jj = y + j - 1;
        let last = t.run(jj);
        stats::run_ops(1);
        if last.sym == c {
            out.infinite_columns.push(j);
            continue;
        }
        // 1-based prefix length of G ending at R_{j'-1}.
        let plen = head + 1 + (jj - x);
        let tok = |idx: usize| g[idx - 1];
        let check = |b: usize| -> Option<u64> {
            stats::run_ops(1);
            match (tok(b + 1), tok(plen - b)) {
                (Token::Run(after), Token::Run(before))
                    if after.sym == last.sym && after.exp >= last.exp && before.sym == c =>
                {
                    Some(before.exp)
                }
                _ => None,
            }
        };
        pairs.clear();
        if let Some(e) = check(0) {
            pairs.push((2, e));
        }
        for (longest, shortest, _) in tb.groups(plen) {
            // Members below the longest share their boundary tokens; the shortest stands for them.
            for b in [Some(longest), (shortest < longest).then_some(shortest)].into_iter().flatten() {
                if b + 2 <= s {
                    if let Some(e) = check(b) {
                        pairs.push((b + 2, e));
                    }
                }
            }
        }
        pairs.sort_unstable();
        // Step function over rows 1..=s, compressed into maximal constant runs.
        let yc = (ncols + 1 - j) as u64;
        let mut start = 1usize;
        let mut value = 0u64;
        for &(q, e) in pairs.iter() {
            if e > value {
                if q > start {
                    out.segments.push(seg(out.segments.len(), start, q - 1, yc, value));
                }
                start = q;
                value = e;
            }
        }
        out.segments.push(seg(out.segments.len(), start, s, yc, value));
    }
    out
}

fn seg(id: usize, lo: usize, hi: usize, y: u64, weight: u64) -> WeightedSegment {
    WeightedSegment { x_lo: lo as u64, x_hi: hi as u64, y, weight, id }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracles;
    use crate::rle::{RleString, Symbol};
    use proptest::prelude::*;

    #[test]
    fn geometry() {
        assert_eq!(block_partition(25, 5).len(), 5);
        assert_eq!(block_partition(8, 2), vec![(1, 2), (3, 4), (5, 6), (7, 8)]);
        assert_eq!(block_partition(12, 3).len(), 4);
        assert_eq!(block_partition(10, 3), vec![(1, 3), (4, 6), (7, 9), (10, 10)]);
        assert_eq!([1, 3, 4, 8, 9, 99, 100].map(short_limit), [1, 1, 2, 2, 3, 9, 10]);
        assert!(matches!(stage_geometry(25, 4), Err(LufError::InvalidStage { .. })));
        assert!(matches!(stage_geometry(25, 6), Err(LufError::InvalidStage { .. })));
        assert_eq!(stage_geometry(25, 5).unwrap(), (5, 16, 21, 25));
    }

    #[test]
    fn alternating_text_gives_no_candidates() {
        let t = RleString::encode_str(&"ab".repeat(40)).unwrap();
        let idx = TruncatedRleIndex::build(&t);
        for k in 5..=10 {
            let ctx = StageContext::build(&idx, k).unwrap();
            for i in 1..=ctx.max_start() {
                assert_eq!(ctx.candidate(i).unwrap(), CandidateAnswer::Empty, "k={k} i={i}");
            }
            assert!(matches!(ctx.candidate(ctx.max_start() + 1), Err(LufError::StageRange { .. })));
        }
    }

    #[test]
    fn missing_character_returns_whole_range() {
        let mut text = String::from("c");
        text.push_str(&"ab".repeat(20));
        let t = RleString::encode_str(&text).unwrap();
        let idx = TruncatedRleIndex::build(&t);
        let ctx = StageContext::build(&idx, 5).unwrap();
        assert_eq!(ctx.candidate(1).unwrap(), CandidateAnswer::Factor(Occurrence::new(1, t.end(ctx.z))));
    }

    #[test]
    fn no_repeated_pairs_gives_zero_columns() {
        // Distinct symbols and tau = z: nothing follows c_z before the separator,
        // so every finite column is a single 0-weight segment.
        let t = RleString::from_runs((0..36).map(|c| Run::new(Symbol(c), 1 + c as u64 % 3)).collect()).unwrap();
        let (s, x, y, z) = stage_geometry(36, 5).unwrap();
        {
            let tau = z;
            let segs = segments_for(&t, x, y, z, s, tau);
            let cols = z - y + 1 - segs.infinite_columns.len();
            assert_eq!(segs.segments.len(), cols);
            assert!(segs.segments.iter().all(|sg| sg.weight == 0 && sg.x_lo == 1 && sg.x_hi == s as u64));
        }
    }

    fn text_strategy() -> impl Strategy<Value = RleString> {
        (25usize..70, 2u32..4, 1u64..4).prop_flat_map(|(m, sigma, emax)| {
            prop::collection::vec((0u32..sigma - 1, 1..=emax), m).prop_map(move |v| {
                let mut prev = sigma;
                let runs = v
                    .into_iter()
                    .map(|(c, e)| {
                        // pick a symbol different from the previous one
                        let sym = if c >= prev { c + 1 } else { c };
                        prev = sym;
                        Run::new(Symbol(sym), e)
                    })
                    .collect();
                RleString::from_runs(runs).unwrap()
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]

        #[test]
        fn tables_match_definition(t in text_strategy()) {
            let m = t.m();
            let s = short_limit(m);
            for k in 5..=m.div_ceil(s) {
                let (_, x, y, z) = stage_geometry(m, k).unwrap();
                for tau in x..=z {
                    let got = segments_for(&t, x, y, z, s, tau).to_table(s, z - y + 1);
                    let want = oracles::naive_m_table(&t, k, tau).unwrap();
                    prop_assert_eq!(got, want, "k={} tau={}", k, tau);
                }
            }
        }

        #[test]
        fn candidates_match_definition(t in text_strategy()) {
            let idx = TruncatedRleIndex::build(&t);
            let s = short_limit(t.m());
            for k in 5..=t.m().div_ceil(s) {
                let ctx = StageContext::build(&idx, k).unwrap();
                for i in 1..=ctx.max_start() {
                    let want = oracles::naive_candidate(&t, k, i).unwrap();
                    prop_assert_eq!(ctx.candidate(i).unwrap(), want, "k={} i={}", k, i);
                }
            }
        }
    }
}
