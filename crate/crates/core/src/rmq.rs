//! Sparse-table range-minimum queries.

use crate::stats;

/// Argmin over any `Ord` key; ties resolve to the leftmost index.
///
/// Range-maximum is obtained with `std::cmp::Reverse` keys.
#[derive(Debug, Clone)]
pub struct SparseTable<K> {
    keys: Vec<K>,
    /// `levels[k][i]` = argmin of `keys[i..i + 2^(k+1)]`.
    levels: Vec<Vec<u32>>,
}

impl<K: Ord + Copy> SparseTable<K> {
    pub fn new(keys: Vec<K>) -> Self {
        let n = keys.len();
        let mut levels: Vec<Vec<u32>> = Vec::new();
        let mut width = 1usize;
        while width * 2 <= n {
            let half = width;
            width *= 2;
            let prev = levels.last();
            let level: Vec<u32> = (0..=n - width)
                .map(|i| {
                    let (a, b) = match prev {
                        Some(p) => (p[i], p[i + half]),
                        None => (i as u32, (i + 1) as u32),
                    };
                    if keys[b as usize] < keys[a as usize] {
                        b
                    } else {
                        a
                    }
                })
                .collect();
            levels.push(level);
        }
        stats::run_ops(levels.iter().map(|l| l.len() as u64).sum::<u64>() + n as u64);
        SparseTable { keys, levels }
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    pub fn key(&self, i: usize) -> K {
        self.keys[i]
    }

    /// Index of the minimum of `keys[lo..=hi]`.
    pub fn argmin(&self, lo: usize, hi: usize) -> usize {
        debug_assert!(lo <= hi && hi < self.keys.len());
        stats::run_ops(1);
        let len = hi - lo + 1;
        if len == 1 {
            return lo;
        }
        let k = (usize::BITS - 1 - len.leading_zeros()) as usize;
        let level = &self.levels[k - 1];
        let a = level[lo] as usize;
        let b = level[hi + 1 - (1 << k)] as usize;
        if self.keys[b] < self.keys[a] {
            b
        } else {
            a
        }
    }

    pub fn min(&self, lo: usize, hi: usize) -> K {
        self.keys[self.argmin(lo, hi)]
    }

    pub fn heap_words(&self) -> u64 {
        let k = std::mem::size_of::<K>().div_ceil(8) as u64;
        self.keys.len() as u64 * k + self.levels.iter().map(|l| l.len() as u64).sum::<u64>().div_ceil(2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::cmp::Reverse;

    proptest! {
        #[test]
        fn agrees_with_linear_scan(v in prop::collection::vec(-5i64..5, 1..80), queries in prop::collection::vec((0usize..80, 0usize..80), 50)) {
            let mins = SparseTable::new(v.clone());
            let maxs = SparseTable::new(v.iter().map(|&x| Reverse(x)).collect());
            for (a, b) in queries {
                let (lo, hi) = ((a % v.len()).min(b % v.len()), (a % v.len()).max(b % v.len()));
                let want_min = (lo..=hi).min_by_key(|&i| (v[i], i)).unwrap();
                let want_max = (lo..=hi).min_by_key(|&i| (Reverse(v[i]), i)).unwrap();
                prop_assert_eq!(mins.argmin(lo, hi), want_min);
                prop_assert_eq!(maxs.argmin(lo, hi), want_max);
            }
        }
    }
}
