//! Truncated RLE suffix array and the queries built on it.
//!
//! The sorted set is `{T[End_x..n] : 1 <= x <= m}`. Sorting happens on run
//! tokens: a full run `c^e` followed by `d` gets the key `(c, 0, e)` when
//! `d < c` (or the string ends) and `(c, 1, -e)` when `d > c`. Under these
//! keys, lexicographic order of token sequences equals lexicographic order of
//! the underlying strings, so suffix sorting never looks at characters.

mod longest_pref;

pub use longest_pref::LongestPrefIndex;

use crate::error::{LufError, Result};
use crate::rle::{Occurrence, RleString, Run};
use crate::rmq::SparseTable;
use crate::stats;
use std::cmp::{Ordering, Reverse};

type TokenKey = (u32, u8, i64);

fn token_key(run: Run, next: Option<Run>) -> TokenKey {
    match next {
        Some(d) if d.sym > run.sym => (run.sym.0, 1, -(run.exp as i64)),
        _ => (run.sym.0, 0, run.exp as i64),
    }
}

/// Suffix array of an integer sequence by prefix doubling.
fn suffix_array(s: &[u32]) -> Vec<usize> {
    let n = s.len();
    let mut sa: Vec<usize> = (0..n).collect();
    let mut rank: Vec<u64> = s.iter().map(|&c| c as u64).collect();
    let mut tmp = vec![0u64; n];
    let mut k = 1usize;
    let mut ops = 0u64;
    loop {
        let key = |i: usize, rank: &[u64]| (rank[i], if i + k < n { rank[i + k] + 1 } else { 0 });
        sa.sort_unstable_by(|&a, &b| {
            ops += 1;
            key(a, &rank).cmp(&key(b, &rank))
        });
        tmp[sa[0]] = 0;
        for w in 1..n {
            let bump = key(sa[w - 1], &rank) != key(sa[w], &rank);
            tmp[sa[w]] = tmp[sa[w - 1]] + u64::from(bump);
        }
        std::mem::swap(&mut rank, &mut tmp);
        ops += n as u64;
        if n == 0 || rank[sa[n - 1]] as usize == n - 1 || k >= n {
            break;
        }
        k *= 2;
    }
    stats::run_ops(ops);
    sa
}

/// Kasai's algorithm: `lcp[r]` = lcp of suffixes `sa[r-1]` and `sa[r]` (0 for `r = 0`).
fn kasai<T: PartialEq>(s: &[T], sa: &[usize]) -> Vec<usize> {
    let n = s.len();
    let mut rank = vec![0usize; n];
    for (r, &i) in sa.iter().enumerate() {
        rank[i] = r;
    }
    let mut lcp = vec![0usize; n];
    let mut h = 0usize;
    let mut ops = 0u64;
    for i in 0..n {
        if rank[i] > 0 {
            let j = sa[rank[i] - 1];
            while i + h < n && j + h < n && s[i + h] == s[j + h] {
                h += 1;
                ops += 1;
            }
            lcp[rank[i]] = h;
            h = h.saturating_sub(1);
        } else {
            h = 0;
        }
        ops += 1;
    }
    stats::run_ops(ops);
    lcp
}

/// tRLESA, tRLEISA and tRLELCP of a run-length encoded string, with
/// range-min over the LCP array and range-max over the SA and the exponent
/// preceding each sorted suffix.
#[derive(Debug, Clone)]
pub struct TruncatedRleIndex {
    text: RleString,
    /// `sa[r]`: run index (1-based) of the r-th smallest truncated suffix, r 0-based.
    sa: Vec<usize>,
    /// `isa[i - 1]`: rank of the truncated suffix of run `i`.
    isa: Vec<usize>,
    /// `lcp[0] = -1`; `lcp[r]` = character lcp of ranks `r - 1` and `r`.
    lcp: Vec<i64>,
    rmq_lcp: SparseTable<i64>,
    rmq_sa: SparseTable<Reverse<usize>>,
    /// Range-max over `Exp_{sa[r]}`.
    rmq_prec_exp: SparseTable<Reverse<u64>>,
}

impl TruncatedRleIndex {
    pub fn build(text: &RleString) -> Self {
        let m = text.m();
        let runs = text.runs();
        let next = |i: usize| runs.get(i + 1).copied();

        // Sort full-run suffixes R_i..R_m (0-based i) by token keys.
        let mut keys: Vec<TokenKey> = (0..m).map(|i| token_key(runs[i], next(i))).collect();
        let mut distinct = keys.clone();
        distinct.sort_unstable();
        distinct.dedup();
        let ranked: Vec<u32> = keys
            .iter()
            .map(|k| distinct.binary_search(k).expect("present") as u32)
            .collect();
        let fsa = suffix_array(&ranked);
        let flcp = kasai(&ranked, &fsa);
        let mut frank = vec![0usize; m];
        for (r, &i) in fsa.iter().enumerate() {
            frank[i] = r;
        }
        let rmq_flcp = SparseTable::new(flcp.clone());
        keys.clear();

        // Character lcp of full-run suffixes starting at runs a and b (0-based, a != b).
        let full_lcp = |a: usize, b: usize| -> u64 {
            let (ra, rb) = (frank[a].min(frank[b]), frank[a].max(frank[b]));
            let tokens = rmq_flcp.min(ra + 1, rb);
            let mut len = text.span_len(a + 1, a + tokens);
            let (ta, tb) = (a + tokens, b + tokens);
            if ta < m && tb < m && runs[ta].sym == runs[tb].sym {
                len += runs[ta].exp.min(runs[tb].exp);
            }
            len
        };

        // Truncated suffix x = (c_x, 1) followed by the full-run suffix x + 1.
        let first_key = |x: usize| token_key(Run { sym: runs[x].sym, exp: 1 }, next(x));
        let rest_rank = |x: usize| if x + 1 < m { frank[x + 1] as i64 } else { -1 };
        let mut order: Vec<usize> = (0..m).collect();
        let mut ops = 0u64;
        order.sort_unstable_by(|&a, &b| {
            ops += 1;
            (first_key(a), rest_rank(a)).cmp(&(first_key(b), rest_rank(b)))
        });
        stats::run_ops(ops);

        let mut lcp = vec![-1i64; m];
        for r in 1..m {
            let (a, b) = (order[r - 1], order[r]);
            let (ka, kb) = (first_key(a), first_key(b));
            lcp[r] = if ka.0 != kb.0 {
                0
            } else if ka.1 != kb.1 || a + 1 == m || b + 1 == m {
                1
            } else {
                1 + full_lcp(a + 1, b + 1) as i64
            };
        }
        let sa: Vec<usize> = order.iter().map(|&x| x + 1).collect();
        let mut isa = vec![0usize; m];
        for (r, &x) in sa.iter().enumerate() {
            isa[x - 1] = r;
        }
        let rmq_lcp = SparseTable::new(lcp.clone());
        let rmq_sa = SparseTable::new(sa.iter().map(|&x| Reverse(x)).collect());
        let rmq_prec_exp = SparseTable::new(sa.iter().map(|&x| Reverse(text.exp(x))).collect());
        TruncatedRleIndex { text: text.clone(), sa, isa, lcp, rmq_lcp, rmq_sa, rmq_prec_exp }
    }

    pub fn text(&self) -> &RleString {
        &self.text
    }

    /// Run indices in sorted order.
    pub fn sa(&self) -> &[usize] {
        &self.sa
    }

    /// Rank (0-based) of the truncated suffix of run `i`.
    pub fn rank_of(&self, i: usize) -> usize {
        self.isa[i - 1]
    }

    pub fn lcp_array(&self) -> &[i64] {
        &self.lcp
    }

    /// Character lcp of the truncated suffixes at ranks `a` and `b`.
    pub(crate) fn lcp_ranks(&self, a: usize, b: usize) -> u64 {
        if a == b {
            let x = self.sa[a];
            return self.text.len() - self.text.end(x) + 1;
        }
        let (lo, hi) = (a.min(b), a.max(b));
        self.rmq_lcp.min(lo + 1, hi) as u64
    }

    /// Character lcp of `T[End_i..n]` and `T[End_j..n]`.
    pub fn lcp_runs(&self, i: usize, j: usize) -> u64 {
        self.lcp_ranks(self.isa[i - 1], self.isa[j - 1])
    }

    pub(crate) fn min_lcp(&self, lo: usize, hi: usize) -> i64 {
        self.rmq_lcp.min(lo, hi)
    }

    pub(crate) fn max_sa(&self, lo: usize, hi: usize) -> usize {
        self.rmq_sa.min(lo, hi).0
    }

    fn check_offset(&self, run: usize, offset: u64) -> Result<()> {
        let m = self.text.m();
        if run == 0 || run > m {
            return Err(LufError::RunOutOfRange { run, m });
        }
        let exp = self.text.exp(run);
        if offset == 0 || offset > exp {
            return Err(LufError::OffsetOutOfRange { run, offset, exp });
        }
        Ok(())
    }

    /// lcp of `T[Beg_i + p - 1..n]` and `T[Beg_j + q - 1..n]` in O(1).
    pub fn rlelcp(&self, i: usize, p: u64, j: usize, q: u64) -> Result<u64> {
        self.check_offset(i, p)?;
        self.check_offset(j, q)?;
        Ok(self.rlelcp_unchecked(i, p, j, q))
    }

    pub(crate) fn rlelcp_unchecked(&self, i: usize, p: u64, j: usize, q: u64) -> u64 {
        stats::run_ops(1);
        let t = &self.text;
        if t.sym(i) != t.sym(j) {
            return 0;
        }
        let left_i = t.exp(i) - p + 1;
        let left_j = t.exp(j) - q + 1;
        if left_i != left_j {
            return left_i.min(left_j);
        }
        if i == j {
            return t.len() - (t.beg(i) + p - 1) + 1;
        }
        (left_i - 1) + self.lcp_runs(i, j)
    }

    /// lcp of the suffixes of the text starting at positions `a` and `b`.
    pub fn lcp_positions(&self, a: u64, b: u64) -> u64 {
        let t = &self.text;
        let (i, j) = (t.run_at(a), t.run_at(b));
        self.rlelcp_unchecked(i, a - t.beg(i) + 1, j, b - t.beg(j) + 1)
    }

    /// Sorted start positions of all occurrences of `pattern` in the text.
    pub fn find_occurrences(&self, pattern: &RleString) -> Vec<u64> {
        let t = &self.text;
        if pattern.len() > t.len() {
            return Vec::new();
        }
        let prun = pattern.runs();
        if prun.len() == 1 {
            return self.unary_occurrences(prun[0]);
        }
        let e1 = prun[0].exp;
        // Pattern tail: first run cut to one character.
        let mut tail = prun.to_vec();
        tail[0].exp = 1;
        let cmp = |r: usize| compare_prefix(t.runs(), self.sa[r], &tail);
        self.report(cmp, e1)
    }

    /// Sorted start positions of all occurrences of the text factor `occ`.
    ///
    /// Comparisons against the sorted suffixes use the O(1) lcp, so the cost
    /// is independent of the factor's length.
    pub fn find_factor_occurrences(&self, occ: Occurrence) -> Vec<u64> {
        let t = &self.text;
        let a = t.run_at(occ.start);
        if t.end(a) >= occ.end {
            return self.unary_occurrences(Run { sym: t.sym(a), exp: occ.len() });
        }
        let e1 = t.end(a) - occ.start + 1;
        let tail_start = t.end(a);
        let tail_len = occ.end - tail_start + 1;
        let n = t.len();
        let cmp = |r: usize| {
            let x = self.sa[r];
            let suffix_start = t.end(x);
            let l = self.rlelcp_unchecked(a, t.exp(a), x, t.exp(x));
            if l >= tail_len {
                Ordering::Equal
            } else if suffix_start + l > n {
                Ordering::Less
            } else {
                t.sym_at(suffix_start + l).cmp(&t.sym_at(tail_start + l))
            }
        };
        self.report(cmp, e1)
    }

    fn unary_occurrences(&self, run: Run) -> Vec<u64> {
        let t = &self.text;
        let mut out = Vec::new();
        for i in 1..=t.m() {
            stats::run_ops(1);
            if t.sym(i) == run.sym && t.exp(i) >= run.exp {
                out.extend(t.beg(i)..=t.end(i) - run.exp + 1);
            }
        }
        out
    }

    /// Reports every rank whose suffix compares `Equal` and whose preceding
    /// run has exponent at least `e1`.
    fn report(&self, cmp: impl Fn(usize) -> Ordering, e1: u64) -> Vec<u64> {
        let m = self.sa.len();
        let lo = partition(m, |r| cmp(r) == Ordering::Less);
        let hi = partition(m, |r| cmp(r) != Ordering::Greater);
        let mut out = Vec::new();
        if lo < hi {
            self.report_exp(lo, hi - 1, e1, &mut out);
        }
        let t = &self.text;
        let mut starts: Vec<u64> = out.into_iter().map(|x| t.end(x) - e1 + 1).collect();
        starts.sort_unstable();
        starts
    }

    fn report_exp(&self, lo: usize, hi: usize, e1: u64, out: &mut Vec<usize>) {
        let r = self.rmq_prec_exp.argmin(lo, hi);
        if self.rmq_prec_exp.key(r).0 < e1 {
            return;
        }
        out.push(self.sa[r]);
        if r > lo {
            self.report_exp(lo, r - 1, e1, out);
        }
        if r < hi {
            self.report_exp(r + 1, hi, e1, out);
        }
    }

    pub fn heap_words(&self) -> u64 {
        self.text.heap_words()
            + (self.sa.len() + self.isa.len() + self.lcp.len()) as u64
            + self.rmq_lcp.heap_words()
            + self.rmq_sa.heap_words()
            + self.rmq_prec_exp.heap_words()
    }
}

/// First index in `0..n` where `pred` turns false (pred must be monotone).
fn partition(n: usize, pred: impl Fn(usize) -> bool) -> usize {
    let (mut lo, mut hi) = (0usize, n);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if pred(mid) {
            lo = mid + 1;
        } else {
            hi = mid;
        }
    }
    lo
}

/// Compares the truncated suffix of run `x` (1-based) with `tail`; `Equal`
/// when `tail` is a prefix of it.
fn compare_prefix(runs: &[Run], x: usize, tail: &[Run]) -> Ordering {
    let mut text_iter = std::iter::once(Run { sym: runs[x - 1].sym, exp: 1 }).chain(runs[x..].iter().copied());
    let mut pat = tail.iter().copied();
    let mut a = text_iter.next();
    let mut b = pat.next();
    loop {
        stats::run_ops(1);
        match (a, b) {
            (_, None) => return Ordering::Equal,
            (None, Some(_)) => return Ordering::Less,
            (Some(ra), Some(rb)) => {
                if ra.sym != rb.sym {
                    return ra.sym.cmp(&rb.sym);
                }
                match ra.exp.cmp(&rb.exp) {
                    Ordering::Equal => {
                        a = text_iter.next();
                        b = pat.next();
                    }
                    Ordering::Less => {
                        return match text_iter.next() {
                            None => Ordering::Less,
                            Some(d) => d.sym.cmp(&ra.sym),
                        };
                    }
                    Ordering::Greater => {
                        return match pat.next() {
                            None => Ordering::Equal,
                            Some(d) => ra.sym.cmp(&d.sym),
                        };
                    }
                }
            }
        }
    }
}

/// Index over the reversal of the text answering longest-common-suffix queries.
#[derive(Debug, Clone)]
pub struct ReversedIndex {
    rev: TruncatedRleIndex,
}

impl ReversedIndex {
    pub fn build(text: &RleString) -> Self {
        ReversedIndex { rev: TruncatedRleIndex::build(&text.reverse()) }
    }

    /// Longest common suffix of `T[1..a]` and `T[1..b]`.
    pub fn lcs(&self, a: u64, b: u64) -> u64 {
        let n = self.rev.text.len();
        self.rev.lcp_positions(n - a + 1, n - b + 1)
    }

    pub fn heap_words(&self) -> u64 {
        self.rev.heap_words()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracles;
    use crate::rle::{Symbol, DEFAULT_DECODE_CAP};
    use proptest::prelude::*;

    fn ex1() -> RleString {
        RleString::encode_str("aaabbcccccabbbb").unwrap()
    }

    #[test]
    fn example_sa_and_lcp() {
        let idx = TruncatedRleIndex::build(&ex1());
        assert_eq!(idx.sa(), &[4, 1, 5, 2, 3]);
        assert_eq!(idx.lcp_array(), &[-1, 3, 0, 1, 0]);
        let single = TruncatedRleIndex::build(&RleString::encode_str("aaa").unwrap());
        assert_eq!((single.sa(), single.lcp_array()), (&[1usize][..], &[-1i64][..]));
    }

    #[test]
    fn rlelcp_examples() {
        let idx = TruncatedRleIndex::build(&ex1());
        assert_eq!(idx.rlelcp(1, 1, 4, 1), Ok(1));
        assert_eq!(idx.rlelcp(2, 1, 5, 1), Ok(2));
        assert_eq!(idx.rlelcp(3, 2, 3, 2), Ok(9));
        assert!(matches!(idx.rlelcp(2, 3, 1, 1), Err(LufError::OffsetOutOfRange { .. })));
        assert!(matches!(idx.rlelcp(6, 1, 1, 1), Err(LufError::RunOutOfRange { .. })));
    }

    #[test]
    fn lcs_examples() {
        let t = ex1();
        let rev = ReversedIndex::build(&t);
        assert_eq!(rev.lcs(t.end(3), t.end(3)), t.end(3));
        assert_eq!(rev.lcs(5, 15), 2);
        assert_eq!(rev.lcs(3, 11), 1);
    }

    #[test]
    fn occurrence_examples() {
        let t = RleString::encode_str("aaabbbbaaaaaccaaaabbbaa").unwrap();
        let idx = TruncatedRleIndex::build(&t);
        let p = |s| RleString::encode_str(s).unwrap();
        assert_eq!(idx.find_occurrences(&p("bba")), vec![6, 20]);
        assert_eq!(idx.find_occurrences(&p("aa")), vec![1, 2, 8, 9, 10, 11, 15, 16, 17, 22]);
        assert_eq!(idx.find_occurrences(&p("aaabbbbaaaaaccaaaabbbaaa")), Vec::<u64>::new());
        assert_eq!(idx.find_factor_occurrences(Occurrence::new(6, 8)), vec![6, 20]);
    }

    fn random_text() -> impl Strategy<Value = Vec<Symbol>> {
        prop::collection::vec((0u32..3, 1usize..4), 1..30).prop_map(|runs| {
            runs.into_iter().flat_map(|(c, e)| std::iter::repeat_n(Symbol(c), e)).collect()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(300))]

        #[test]
        fn sa_sorts_truncated_suffixes(text in random_text()) {
            let t = RleString::encode(&text).unwrap();
            let idx = TruncatedRleIndex::build(&t);
            let mut want: Vec<usize> = (1..=t.m()).collect();
            want.sort_by(|&a, &b| text[t.end(a) as usize - 1..].cmp(&text[t.end(b) as usize - 1..]));
            prop_assert_eq!(idx.sa(), &want[..]);
            for r in 1..t.m() {
                let a = &text[t.end(want[r - 1]) as usize - 1..];
                let b = &text[t.end(want[r]) as usize - 1..];
                prop_assert_eq!(idx.lcp_array()[r], oracles::naive_lcp(a, b) as i64);
            }
            for r in 0..t.m() { prop_assert_eq!(idx.sa()[idx.rank_of(idx.sa()[r])], idx.sa()[r]); }
        }

        #[test]
        fn rlelcp_and_lcs_match_naive(text in random_text(), qs in prop::collection::vec((0u64..1000, 0u64..1000), 40)) {
            let t = RleString::encode(&text).unwrap();
            let idx = TruncatedRleIndex::build(&t);
            let rev = ReversedIndex::build(&t);
            let n = text.len() as u64;
            for (a, b) in qs {
                let (a, b) = (a % n + 1, b % n + 1);
                let want = oracles::naive_lcp(&text[a as usize - 1..], &text[b as usize - 1..]);
                prop_assert_eq!(idx.lcp_positions(a, b), want as u64);
                let want_s = oracles::naive_lcs(&text[..a as usize], &text[..b as usize]);
                prop_assert_eq!(rev.lcs(a, b), want_s as u64);
            }
        }

        #[test]
        fn occurrences_match_naive(text in random_text(), a in 0u64..100, len in 1u64..12) {
            let t = RleString::encode(&text).unwrap();
            let idx = TruncatedRleIndex::build(&t);
            let n = text.len() as u64;
            let start = a % n + 1;
            let end = (start + len - 1).min(n);
            let occ = Occurrence::new(start, end);
            let pat = t.factor(occ).unwrap();
            let want = oracles::naive_find(&text, &pat.decode(DEFAULT_DECODE_CAP).unwrap());
            prop_assert_eq!(idx.find_occurrences(&pat), want.clone());
            prop_assert_eq!(idx.find_factor_occurrences(occ), want);
        }
    }
}
