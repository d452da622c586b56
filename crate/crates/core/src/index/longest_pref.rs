use super::TruncatedRleIndex;
use crate::error::{LufError, Result};
use crate::rle::{RleString, Run, Symbol};
use crate::rmq::SparseTable;

/// Answers, for a fixed window `[x..y]` of runs, which `z` in the window
/// maximizes `lcp(T[End_h..n], T[End_z..End_y])` subject to an upper cap.
///
/// Built over `T' = T $ T[Beg_x..End_y]`; the truncated suffix of the copy of
/// run `z` is exactly `T[End_z..End_y]`.
#[derive(Debug, Clone)]
pub struct LongestPrefIndex {
    idx: TruncatedRleIndex,
    m: usize,
    x: usize,
    y: usize,
    /// Window run index for ranks holding a copy entry, `usize::MAX` otherwise.
    copy_min: SparseTable<usize>,
}

impl LongestPrefIndex {
    pub fn build(text: &RleString, x: usize, y: usize) -> Result<Self> {
        let m = text.m();
        if x == 0 || x > y || y > m {
            return Err(LufError::InvalidWindow { x, y, m });
        }
        let mut runs: Vec<Run> = Vec::with_capacity(m + 1 + y - x + 1);
        runs.extend_from_slice(text.runs());
        runs.push(Run { sym: Symbol::SENTINEL, exp: 1 });
        runs.extend_from_slice(&text.runs()[x - 1..y]);
        let joined = RleString::from_runs_internal(runs)?;
        let idx = TruncatedRleIndex::build(&joined);
        let copy_min = SparseTable::new(
            idx.sa()
                .iter()
                .map(|&k| if k >= m + 2 { k - (m + 2) + x } else { usize::MAX })
                .collect(),
        );
        Ok(LongestPrefIndex { idx, m, x, y, copy_min })
    }

    pub fn window(&self) -> (usize, usize) {
        (self.x, self.y)
    }

    /// Smallest `z` attaining the maximum admissible lcp, or `None` when every
    /// `z` in the window exceeds `ell`. `None` for `ell` means no cap.
    pub fn longest_pref(&self, h: usize, ell: Option<u64>) -> Result<Option<usize>> {
        if h == 0 || h > self.m {
            return Err(LufError::RunOutOfRange { run: h, m: self.m });
        }
        Ok(self.query(h, ell).map(|(z, _)| z))
    }

    /// As [`longest_pref`](Self::longest_pref), also returning the lcp value.
    pub(crate) fn query(&self, h: usize, ell: Option<u64>) -> Option<(usize, u64)> {
        let rh = self.idx.rank_of(h);
        let last = self.idx.sa().len() - 1;
        // The excluded range always contains rh, which is never a copy entry.
        let (excl_lo, excl_hi) = match ell {
            Some(l) => self.lcp_range(rh, l.min(i64::MAX as u64 - 1) as i64 + 1),
            None => (rh, rh),
        };
        let left = if excl_lo > 0 { self.nearest_copy_left(excl_lo - 1) } else { None };
        let right = if excl_hi < last { self.nearest_copy_right(excl_hi + 1) } else { None };
        let v = [left, right]
            .iter()
            .flatten()
            .map(|&r| self.idx.lcp_ranks(rh, r))
            .max()?;
        let (a, b) = self.lcp_range(rh, v as i64);
        let mut best = usize::MAX;
        if a < excl_lo {
            best = best.min(self.copy_min.min(a, excl_lo - 1));
        }
        if excl_hi < b {
            best = best.min(self.copy_min.min(excl_hi + 1, b));
        }
        debug_assert!(best != usize::MAX);
        Some((best, v))
    }

    /// Maximal rank range around `rh` whose lcp with `rh` is at least `need`.
    fn lcp_range(&self, rh: usize, need: i64) -> (usize, usize) {
        let last = self.idx.sa().len() - 1;
        let (mut lo, mut hi) = (0usize, rh);
        while lo < hi {
            let mid = (lo + hi) / 2;
            if self.idx.min_lcp(mid + 1, rh) >= need {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        let a = lo;
        let (mut lo, mut hi) = (rh, last);
        while lo < hi {
            let mid = (lo + hi).div_ceil(2);
            if self.idx.min_lcp(rh + 1, mid) >= need {
                lo = mid;
            } else {
                hi = mid - 1;
            }
        }
        (a, lo)
    }

    fn is_copy_range(&self, lo: usize, hi: usize) -> bool {
        self.idx.max_sa(lo, hi) >= self.m + 2
    }

    fn nearest_copy_left(&self, hi: usize) -> Option<usize> {
        if !self.is_copy_range(0, hi) {
            return None;
        }
        let (mut lo, mut h) = (0usize, hi);
        while lo < h {
            let mid = (lo + h).div_ceil(2);
            if self.is_copy_range(mid, hi) {
                lo = mid;
            } else {
                h = mid - 1;
            }
        }
        Some(lo)
    }

    fn nearest_copy_right(&self, lo: usize) -> Option<usize> {
        let last = self.idx.sa().len() - 1;
        if !self.is_copy_range(lo, last) {
            return None;
        }
        let (mut l, mut hi) = (lo, last);
        while l < hi {
            let mid = (l + hi) / 2;
            if self.is_copy_range(lo, mid) {
                hi = mid;
            } else {
                l = mid + 1;
            }
        }
        Some(l)
    }

    pub fn heap_words(&self) -> u64 {
        self.idx.heap_words() + self.copy_min.heap_words()
    }
}
