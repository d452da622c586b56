//! Thread-local operation counters.
//!
//! Every fast-path routine reports its run-level work here. The counters are
//! deliberately independent of exponent magnitudes: a unit of work is one
//! comparison or one constant-time query over runs, never a character.

use std::cell::Cell;

#[derive(Debug, Default, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct Counters {
    /// Run-level comparisons and constant-time structure queries.
    pub run_ops: u64,
    /// WLSQ segment-tree nodes visited.
    pub wlsq_visits: u64,
    /// WLSQ binary-search and cascade-adjustment steps.
    pub wlsq_steps: u64,
    /// WLSQ queries issued.
    pub wlsq_queries: u64,
    /// Largest step count of a single WLSQ query.
    pub wlsq_max_steps: u64,
    /// WLSQ queries whose step count exceeded `ceil(log2 |S|) + 4 ceil(log2 N)`.
    pub wlsq_budget_violations: u64,
    /// Peak auxiliary memory in machine words, as registered by the driver.
    pub peak_words: u64,
}

impl Counters {
    /// Folds counters of a nested scope that ran on top of `base_words` live words.
    pub fn absorb(&mut self, other: &Counters, base_words: u64) {
        self.run_ops += other.run_ops;
        self.wlsq_visits += other.wlsq_visits;
        self.wlsq_steps += other.wlsq_steps;
        self.wlsq_queries += other.wlsq_queries;
        self.wlsq_max_steps = self.wlsq_max_steps.max(other.wlsq_max_steps);
        self.wlsq_budget_violations += other.wlsq_budget_violations;
        self.peak_words = self.peak_words.max(base_words + other.peak_words);
    }
}

thread_local! {
    static COUNTERS: Cell<Counters> = Cell::new(Counters::default());
    static LIVE_WORDS: Cell<u64> = const { Cell::new(0) };
}

#[inline]
pub fn run_ops(n: u64) {
    COUNTERS.with(|c| {
        let mut v = c.get();
        v.run_ops += n;
        c.set(v);
    });
}

pub(crate) fn wlsq_query(visits: u64, steps: u64, budget: u64) {
    COUNTERS.with(|c| {
        let mut v = c.get();
        v.wlsq_queries += 1;
        v.wlsq_visits += visits;
        v.wlsq_steps += steps;
        v.wlsq_max_steps = v.wlsq_max_steps.max(steps);
        if steps > budget {
            v.wlsq_budget_violations += 1;
        }
        c.set(v);
    });
}

/// Registers `words` of live auxiliary memory.
pub fn alloc_words(words: u64) {
    LIVE_WORDS.with(|l| {
        let live = l.get() + words;
        l.set(live);
        COUNTERS.with(|c| {
            let mut v = c.get();
            v.peak_words = v.peak_words.max(live);
            c.set(v);
        });
    });
}

pub fn free_words(words: u64) {
    LIVE_WORDS.with(|l| l.set(l.get().saturating_sub(words)));
}

pub fn snapshot() -> Counters {
    COUNTERS.with(|c| c.get())
}

/// Runs `f` with fresh counters and returns what it recorded.
///
/// The enclosing scope's counters are restored afterwards and the nested
/// totals are added to them, so measurements compose.
pub fn measure<R>(f: impl FnOnce() -> R) -> (R, Counters) {
    let saved = COUNTERS.with(|c| c.replace(Counters::default()));
    let saved_live = LIVE_WORDS.with(|l| l.replace(0));
    let out = f();
    let inner = COUNTERS.with(|c| c.get());
    let mut restored = saved;
    restored.absorb(&inner, saved_live);
    COUNTERS.with(|c| c.set(restored));
    LIVE_WORDS.with(|l| l.set(saved_live));
    (out, inner)
}

/// Adds counters collected on another thread to this thread's totals.
pub fn merge_foreign(other: &Counters) {
    let live = LIVE_WORDS.with(|l| l.get());
    COUNTERS.with(|c| {
        let mut v = c.get();
        v.absorb(other, live);
        c.set(v);
    });
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nested_measure_composes() {
        let (_, outer) = measure(|| {
            run_ops(3);
            alloc_words(10);
            let (_, inner) = measure(|| {
                run_ops(4);
                alloc_words(5);
                free_words(5);
            });
            assert_eq!(inner.run_ops, 4);
            assert_eq!(inner.peak_words, 5);
            free_words(10);
        });
        assert_eq!(outer.run_ops, 7);
        assert_eq!(outer.peak_words, 15);
    }
}
