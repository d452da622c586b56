//! Removal of candidates that have a long border.
//!
//! For each block run `j`, a marker string `S_j` ending at `End_j` is chosen
//! with a large RLE pseudo period. Every long shortest border of a factor
//! ending at `End_j` then ends with `S_j`, and `S_j` occurs only a few times
//! in the text, so each candidate is checked against those occurrences with
//! one longest-common-suffix query apiece.

use crate::borders::longest_border_runs;
use crate::error::{LufError, Result};
use crate::index::{ReversedIndex, TruncatedRleIndex};
use crate::rle::Occurrence;
use crate::stats;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SjKind {
    /// `S_j` is the last `s` runs ending at `End_j`.
    Window,
    /// `S_j = T[start..End_j]`, longer than the window.
    Suffix,
    /// `S_j = $ T[1..End_j]`; it has no occurrence in the text.
    SentinelPrefixed,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SjRecord {
    pub j: usize,
    pub kind: SjKind,
    /// Start position, absent for [`SjKind::SentinelPrefixed`].
    pub start: Option<u64>,
    /// Pseudo period of the `s`-run window ending at `End_j`.
    pub window_pp: usize,
    /// End positions of occurrences of `S_j` strictly before `End_j`, ascending.
    pub occ_ends: Vec<u64>,
}

/// Builds `S_j` and its occurrence list.
///
/// When the window's pseudo period `pi` is small, the window has period
/// `p = |W| - |border|` and the pseudo period stays `pi` along the maximal
/// suffix with period `p`; one lcs query finds where that suffix starts, and
/// one more character to the left lifts the pseudo period over the threshold.
pub fn compute_sj(host: &TruncatedRleIndex, rev: &ReversedIndex, j: usize, s: usize) -> Result<SjRecord> {
    let t = host.text();
    if j <= s || j > t.m() {
        return Err(LufError::MarkerUndefined { j, s });
    }
    let w_first = j - s + 1;
    let res = longest_border_runs(&t.runs()[w_first - 1..j]);
    let end = t.end(j);
    stats::run_ops(1);
    let (kind, start) = if 2 * res.pp + 2 > s {
        (SjKind::Window, Some(t.beg(w_first)))
    } else {
        let iota = t.beg(w_first) + res.border_len - 1;
        let lambda = rev.lcs(end, iota);
        let sigma = iota - lambda + 1;
        if sigma == 1 {
            (SjKind::SentinelPrefixed, None)
        } else {
            (SjKind::Suffix, Some(sigma - 1))
        }
    };
    let occ_ends = match start {
        None => Vec::new(),
        Some(q) => {
            let len = end - q + 1;
            host.find_factor_occurrences(Occurrence::new(q, end))
                .into_iter()
                .map(|p| p + len - 1)
                .filter(|&zeta| zeta < end)
                .collect()
        }
    };
    Ok(SjRecord { j, kind, start, window_pp: res.pp, occ_ends })
}

/// For each block run `j` in `y..=z`, returns the longest candidate ending at
/// `End_j` that has no long border. Candidates must have no short border.
pub fn rm_long_bordered(
    host: &TruncatedRleIndex,
    rev: &ReversedIndex,
    s: usize,
    y: usize,
    z: usize,
    candidates: &[Occurrence],
) -> Vec<Occurrence> {
    let t = host.text();
    let mut sorted = candidates.to_vec();
    sorted.sort_unstable_by_key(|c| (c.end, c.start));
    sorted.dedup();
    stats::run_ops(sorted.len() as u64);
    let mut out = Vec::new();
    let mut rest = &sorted[..];
    for j in y..=z {
        let end = t.end(j);
        let n_j = rest.iter().take_while(|c| c.end == end).count();
        let (cj, tail) = rest.split_at(n_j);
        rest = tail;
        if cj.is_empty() {
            continue;
        }
        let sj = compute_sj(host, rev, j, s).expect("block runs lie beyond the first block");
        if let Some(c) = longest_without_long_border(rev, end, cj, &sj.occ_ends) {
            out.push(c);
        }
    }
    out
}

fn longest_without_long_border(rev: &ReversedIndex, end: u64, cj: &[Occurrence], occ_ends: &[u64]) -> Option<Occurrence> {
    let (mut ci, mut oi) = (0usize, 0usize);
    while ci < cj.len() {
        let c = cj[ci];
        while oi < occ_ends.len() && occ_ends[oi] < c.start {
            oi += 1;
        }
        let Some(&zeta) = occ_ends.get(oi) else {
            return Some(c);
        };
        stats::run_ops(1);
        if rev.lcs(end, zeta) > zeta - c.start {
            // T[c.start..zeta] is a border of c, and of every later candidate starting by zeta.
            while ci < cj.len() && cj[ci].start <= zeta {
                ci += 1;
            }
            oi += 1;
        } else {
            oi += 1;
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::candidates::short_limit;
    use crate::oracles;
    use crate::rle::{RleString, Run, Symbol};
    use proptest::prelude::*;

    fn indexes(t: &RleString) -> (TruncatedRleIndex, ReversedIndex) {
        (TruncatedRleIndex::build(t), ReversedIndex::build(t))
    }

    #[test]
    fn window_example() {
        let t = RleString::encode_str("aaabbbbaaaaaccaaaabbbaa").unwrap();
        let (h, r) = indexes(&t);
        let sj = compute_sj(&h, &r, 3, 2).unwrap();
        assert_eq!((sj.kind, sj.start, sj.window_pp), (SjKind::Window, Some(4), 2));
        assert!(matches!(compute_sj(&h, &r, 2, 2), Err(LufError::MarkerUndefined { .. })));
    }

    #[test]
    fn periodic_text_uses_sentinel() {
        let t = RleString::from_pairs(&[('a', 2), ('b', 3)].repeat(18)).unwrap();
        let (h, r) = indexes(&t);
        let sj = compute_sj(&h, &r, 36, 6).unwrap();
        assert_eq!((sj.kind, sj.start, sj.window_pp), (SjKind::SentinelPrefixed, None, 2));
        assert!(sj.occ_ends.is_empty());
        assert_eq!(sj, oracles::naive_sj(&t, 36, 6).unwrap());
        // Every candidate ending at End_36 survives at once; the longest wins.
        let cands = [Occurrence::new(3, 90), Occurrence::new(8, 90)];
        assert_eq!(rm_long_bordered(&h, &r, 6, 31, 36, &cands), vec![Occurrence::new(3, 90)]);
        assert!(rm_long_bordered(&h, &r, 6, 31, 36, &[]).is_empty());
    }

    fn text_strategy() -> impl Strategy<Value = RleString> {
        (10usize..60, 2u32..4, 1u64..4).prop_flat_map(|(m, sigma, emax)| {
            prop::collection::vec((0u32..sigma - 1, 1..=emax), m).prop_map(move |v| {
                let mut prev = sigma;
                let runs = v
                    .into_iter()
                    .map(|(c, e)| {
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
        #![proptest_config(ProptestConfig::with_cases(120))]

        #[test]
        fn sj_matches_definition(t in text_strategy()) {
            let (h, r) = indexes(&t);
            let s = short_limit(t.m());
            for j in s + 1..=t.m() {
                let got = compute_sj(&h, &r, j, s).unwrap();
                prop_assert_eq!(&got, &oracles::naive_sj(&t, j, s).unwrap(), "j={}", j);
                // occurrences are spread out by the pseudo period bound
                let bound = t.m().div_ceil(s.div_ceil(2).saturating_sub(1).max(1)) + 1;
                prop_assert!(got.occ_ends.len() <= bound);
            }
        }

        #[test]
        fn filter_keeps_exactly_the_longest_unbordered(t in text_strategy(), seed in any::<u64>()) {
            let (h, r) = indexes(&t);
            let text = t.decode(u64::MAX).unwrap();
            let s = short_limit(t.m());
            let (y, z) = ((t.m() / 2).max(s + 1), t.m());
            // Candidates: RLE-bounded factors ending in y..=z without a short border.
            let mut cands = Vec::new();
            for j in y..=z {
                for i in 1..j {
                    if (seed >> ((i * 7 + j) % 64)) & 1 == 0 {
                        continue;
                    }
                    let f = &text[t.beg(i) as usize - 1..t.end(j) as usize];
                    let b = oracles::naive_shortest_border(f);
                    if b == 0 || oracles::naive_run_count(&f[..b]) > s {
                        cands.push(Occurrence::new(t.beg(i), t.end(j)));
                    }
                }
            }
            let got = rm_long_bordered(&h, &r, s, y, z, &cands);
            let mut want = Vec::new();
            for j in y..=z {
                let best = cands
                    .iter()
                    .filter(|c| c.end == t.end(j))
                    .filter(|c| oracles::naive_is_unbordered(&text[c.start as usize - 1..c.end as usize]))
                    .min_by_key(|c| c.start);
                want.extend(best.copied());
            }
            prop_assert_eq!(got, want);
        }
    }
}
