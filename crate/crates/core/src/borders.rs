//! Border arrays over plain symbols and over run tokens.
//!
//! Run tokens `(sym, exp)` compare componentwise, so a border of the token
//! sequence is a factor that is RLE-bounded at both occurrences. The RLE
//! border routines extend such token borders by the boundary runs of the
//! enclosing string.

use crate::error::{LufError, Result};
use crate::rle::{Occurrence, RleString, Run};
use crate::stats;

/// Failure function and border-group array, 1-based (`bord[0]` unused).
#[derive(Debug, Clone)]
pub(crate) struct Borders {
    pub bord: Vec<usize>,
    pub bg: Vec<usize>,
}

impl Borders {
    pub fn new<T: PartialEq>(seq: &[T]) -> Self {
        let n = seq.len();
        let mut bord = vec![0usize; n + 1];
        let mut bg = vec![0usize; n + 1];
        let mut comparisons = 0u64;
        let mut b = 0usize;
        for i in 2..=n {
            loop {
                comparisons += 1;
                if seq[i - 1] == seq[b] {
                    b += 1;
                    break;
                }
                if b == 0 {
                    break;
                }
                b = bord[b];
            }
            bord[i] = b;
        }
        for i in 1..=n {
            let b = bord[i];
            bg[i] = if b > 0 && b - bord[b] == i - b { bg[b] } else { i };
        }
        stats::run_ops(comparisons + n as u64);
        Borders { bord, bg }
    }

    /// Border groups of the length-`len` prefix, longest group first.
    ///
    /// Each item is `(longest, shortest, period)`; members are
    /// `longest, longest - period, ..., shortest`.
    pub fn groups(&self, len: usize) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        let mut b = if len == 0 { 0 } else { self.bord[len] };
        std::iter::from_fn(move || {
            if b == 0 {
                return None;
            }
            let longest = b;
            let shortest = self.bg[b];
            b = self.bord[shortest];
            stats::run_ops(1);
            Some((longest, shortest, longest - self.bord[longest]))
        })
    }
}

/// `bord[i]`: length of the longest border of the length-`i` prefix.
pub fn border_array<T: PartialEq>(seq: &[T]) -> Result<Vec<usize>> {
    if seq.is_empty() {
        return Err(LufError::EmptyInput);
    }
    Ok(Borders::new(seq).bord[1..].to_vec())
}

/// `bg[i]`: shortest border of the length-`i` prefix sharing its smallest
/// period, or `i` when there is none.
pub fn border_group_array<T: PartialEq>(seq: &[T]) -> Result<Vec<usize>> {
    if seq.is_empty() {
        return Err(LufError::EmptyInput);
    }
    Ok(Borders::new(seq).bg[1..].to_vec())
}

/// RLE shortest border array of `r`: entry `i - 1` is the RLE size of the
/// shortest border of `T[1..End_i]`, or 0 when that prefix is unbordered.
pub fn rsbord(r: &RleString) -> Vec<usize> {
    rsbord_runs(r.runs())
}

/// [`rsbord`] over a slice of full runs.
pub fn rsbord_runs(runs: &[Run]) -> Vec<usize> {
    let m = runs.len();
    if m == 0 {
        return Vec::new();
    }
    let inner = if m > 2 { &runs[1..m - 1] } else { &runs[0..0] };
    let tb = Borders::new(inner);
    let first = runs[0];
    // `run(k)` is the k-th run, 1-based.
    let run = |k: usize| runs[k - 1];
    let mut out = Vec::with_capacity(m);
    for i in 1..=m {
        let last = run(i);
        stats::run_ops(1);
        if i == 1 {
            out.push(usize::from(first.exp >= 2));
            continue;
        }
        if first.sym == last.sym {
            out.push(1);
            continue;
        }
        if i >= 4 {
            let before = run(i - 1);
            let second = run(2);
            stats::run_ops(1);
            if before.sym == first.sym
                && before.exp >= first.exp
                && second.sym == last.sym
                && second.exp >= last.exp
            {
                out.push(2);
                continue;
            }
        }
        // Token borders B' of R_2..R_{i-1}, extended by R_1 on the left and R_i on the right.
        let len = i.saturating_sub(2);
        let extends = |b: usize| {
            stats::run_ops(1);
            let after = run(b + 2);
            let before = run(i - b - 1);
            after.sym == last.sym
                && after.exp >= last.exp
                && before.sym == first.sym
                && before.exp >= first.exp
        };
        let mut best = None;
        for (longest, shortest, _) in tb.groups(len) {
            if shortest < longest && extends(shortest) {
                best = Some(shortest);
            } else if extends(longest) {
                best = Some(longest);
            }
        }
        out.push(best.map_or(0, |b| b + 2));
    }
    out
}

/// Longest border of a string and its RLE pseudo period.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PseudoPeriodResult {
    /// `r(w) - r(border)`.
    pub pp: usize,
    /// Character length of the longest border (0 if unbordered).
    pub border_len: u64,
    /// RLE size of the longest border (0 if unbordered).
    pub border_rle: usize,
}

/// Longest border of the string whose maximal runs are `runs`.
///
/// Works on run tokens only: size-1 and size-2 borders are decided from the
/// boundary runs, larger ones by scanning token-border groups from the
/// longest down and testing the two boundary extensions.
pub fn longest_border_runs(runs: &[Run]) -> PseudoPeriodResult {
    let r = runs.len();
    assert!(r > 0, "empty string has no border");
    let done = |len: u64, size: usize| PseudoPeriodResult { pp: r - size, border_len: len, border_rle: size };
    let first = runs[0];
    let last = runs[r - 1];
    if r == 1 {
        return if first.exp >= 2 { done(first.exp - 1, 1) } else { done(0, 0) };
    }
    if r >= 4 {
        let inner = &runs[1..r - 1];
        let tb = Borders::new(inner);
        let len = r - 2;
        let extends = |b: usize| {
            stats::run_ops(1);
            let after = runs[b + 1];
            let before = runs[r - 2 - b];
            after.sym == last.sym
                && after.exp >= last.exp
                && before.sym == first.sym
                && before.exp >= first.exp
        };
        for (longest, _shortest, period) in tb.groups(len) {
            let hit = if extends(longest) {
                Some(longest)
            } else if tb.bg[longest] < longest && extends(longest - period) {
                Some(longest - period)
            } else {
                None
            };
            if let Some(b) = hit {
                let body: u64 = runs[1..=b].iter().map(|t| t.exp).sum();
                return done(first.exp + body + last.exp, b + 2);
            }
        }
    }
    stats::run_ops(2);
    if r >= 4
        && runs[r - 2].sym == first.sym
        && runs[r - 2].exp >= first.exp
        && runs[1].sym == last.sym
        && runs[1].exp >= last.exp
    {
        return done(first.exp + last.exp, 2);
    }
    if first.sym == last.sym {
        return done(first.exp.min(last.exp), 1);
    }
    done(0, 0)
}

/// Longest border and pseudo period of the factor `occ` of `r`.
pub fn window_longest_border(r: &RleString, occ: Occurrence) -> Result<PseudoPeriodResult> {
    let f = r.factor(occ)?;
    Ok(longest_border_runs(f.runs()))
}
