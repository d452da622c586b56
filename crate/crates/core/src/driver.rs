//! End-to-end computation of the longest unbordered factors.

use crate::borders::rsbord_runs;
use crate::candidates::{short_limit, CandidateAnswer, StageContext};
use crate::filter::rm_long_bordered;
use crate::index::{ReversedIndex, TruncatedRleIndex};
use crate::rle::{Occurrence, RleString};
use crate::stats;
use rayon::prelude::*;
use std::collections::BTreeSet;

/// Length of the longest unbordered factors and every occurrence of them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LufResult {
    pub length: u64,
    /// Sorted by start position.
    pub occurrences: Vec<Occurrence>,
}

impl LufResult {
    /// The canonical answer for a unary text.
    pub fn unary() -> Self {
        LufResult { length: 1, occurrences: vec![Occurrence::new(1, 1)] }
    }

    /// Distinct factors in order of first occurrence.
    pub fn distinct_factors(&self, text: &RleString) -> Vec<RleString> {
        let mut out: Vec<RleString> = Vec::new();
        for &occ in &self.occurrences {
            let f = text.factor(occ).expect("occurrence inside text");
            if !out.contains(&f) {
                out.push(f);
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LufOptions {
    /// Worker threads for the stage loop; 0 or 1 runs sequentially.
    pub threads: usize,
    /// Fractional cascading in the stabbing-query structures.
    pub cascade: bool,
}

impl Default for LufOptions {
    fn default() -> Self {
        LufOptions { threads: 1, cascade: true }
    }
}

/// Running maximum over unbordered occurrences.
#[derive(Default)]
struct Best {
    length: u64,
    occs: BTreeSet<Occurrence>,
}

impl Best {
    fn offer(&mut self, occ: Occurrence) {
        let len = occ.len();
        if len > self.length {
            self.length = len;
            self.occs.clear();
        }
        if len == self.length {
            self.occs.insert(occ);
        }
    }

    fn finish(self) -> LufResult {
        LufResult { length: self.length, occurrences: self.occs.into_iter().collect() }
    }
}

/// Longest unbordered factors among RLE-bounded factors of at most `4s` runs.
pub fn longest_short_ub(t: &RleString) -> LufResult {
    if t.is_unary() {
        return LufResult::unary();
    }
    let m = t.m();
    let width = 4 * short_limit(m);
    let mut best = Best::default();
    for i in 1..=m {
        let last = (i + width - 1).min(m);
        let sb = rsbord_runs(&t.runs()[i - 1..last]);
        for (off, &b) in sb.iter().enumerate().rev() {
            if b == 0 {
                best.offer(Occurrence::new(t.beg(i), t.end(i + off)));
                break;
            }
        }
    }
    best.finish()
}

/// Longest unbordered factors of `t`, sequentially with default options.
pub fn longest_unbordered_factors(t: &RleString) -> LufResult {
    longest_unbordered_factors_with(t, LufOptions::default())
}

pub fn longest_unbordered_factors_with(t: &RleString, opts: LufOptions) -> LufResult {
    if t.is_unary() {
        return LufResult::unary();
    }
    let m = t.m();
    let s = short_limit(m);
    let blocks = m.div_ceil(s);
    let short = longest_short_ub(t);
    let mut best = Best { length: short.length, occs: short.occurrences.into_iter().collect() };
    if blocks < 5 {
        return best.finish();
    }
    let host = TruncatedRleIndex::build(t);
    let rev = ReversedIndex::build(t);
    let global_words = host.heap_words() + rev.heap_words();
    stats::alloc_words(global_words);
    let stage_ids: Vec<usize> = (5..=blocks).collect();
    let results: Vec<Vec<Occurrence>> = if opts.threads > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.threads)
            .build()
            .expect("thread pool");
        let measured: Vec<(Vec<Occurrence>, stats::Counters)> = pool.install(|| {
            stage_ids
                .par_iter()
                .map(|&k| stats::measure(|| run_stage(&host, &rev, k, opts.cascade)))
                .collect()
        });
        measured
            .into_iter()
            .map(|(u, c)| {
                stats::merge_foreign(&c);
                u
            })
            .collect()
    } else {
        stage_ids.iter().map(|&k| run_stage(&host, &rev, k, opts.cascade)).collect()
    };
    for u in results {
        let len = u.iter().map(Occurrence::len).max().unwrap_or(0);
        if len == 0 || len < best.length {
            continue;
        }
        for occ in u {
            best.offer(occ);
        }
    }
    stats::free_words(global_words);
    best.finish()
}

/// Unbordered candidates of stage `k`.
fn run_stage(host: &TruncatedRleIndex, rev: &ReversedIndex, k: usize, cascade: bool) -> Vec<Occurrence> {
    let ctx = StageContext::build_with(host, k, cascade).expect("valid stage");
    let words = ctx.heap_words();
    stats::alloc_words(words);
    let cands: Vec<Occurrence> = (1..=ctx.max_start())
        .filter_map(|i| match ctx.candidate_unchecked(i) {
            CandidateAnswer::Factor(o) => Some(o),
            CandidateAnswer::Empty => None,
        })
        .collect();
    stats::alloc_words(2 * cands.len() as u64);
    let u = rm_long_bordered(host, rev, ctx.s, ctx.y, ctx.z, &cands);
    stats::free_words(words + 2 * cands.len() as u64);
    u
}
