//! Run-length encoded strings.
//!
//! Runs, positions and run indices are 1-based in the public API: run `i`
//! covers text positions `beg(i)..=end(i)`. Lengths and positions are `u64`
//! so that exponents can be far larger than the number of runs.

use crate::error::{LufError, Result};
use std::fmt;

/// A character of the input alphabet.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol(pub u32);

impl Symbol {
    /// Out-of-band separator; never produced from user input.
    pub const SENTINEL: Symbol = Symbol(u32::MAX);

    pub fn is_sentinel(self) -> bool {
        self == Self::SENTINEL
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_sentinel() {
            return write!(f, "$");
        }
        match char::from_u32(self.0) {
            Some(c) if !c.is_control() => write!(f, "{c}"),
            _ => write!(f, "#{}", self.0),
        }
    }
}

impl From<char> for Symbol {
    fn from(c: char) -> Self {
        Symbol(c as u32)
    }
}

impl From<u8> for Symbol {
    fn from(b: u8) -> Self {
        Symbol(b as u32)
    }
}

/// Maps text to symbols, one per `char`.
pub fn symbols(text: &str) -> Vec<Symbol> {
    text.chars().map(Symbol::from).collect()
}

/// One maximal run `sym^exp`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Run {
    pub sym: Symbol,
    pub exp: u64,
}

impl Run {
    pub fn new(sym: impl Into<Symbol>, exp: u64) -> Self {
        Run { sym: sym.into(), exp }
    }
}

/// A factor reference `T[start..=end]`, 1-based and inclusive.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Occurrence {
    pub start: u64,
    pub end: u64,
}

impl Occurrence {
    pub fn new(start: u64, end: u64) -> Self {
        debug_assert!(start <= end);
        Occurrence { start, end }
    }

    pub fn len(&self) -> u64 {
        self.end - self.start + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// Default cap on decoded length.
pub const DEFAULT_DECODE_CAP: u64 = 1 << 26;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RleString {
    runs: Vec<Run>,
    /// `ends[i]` is the end position of run `i + 1` (prefix sums of exponents).
    ends: Vec<u64>,
}

impl fmt::Debug for RleString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, r) in self.runs.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{:?}^{}", r.sym, r.exp)?;
        }
        Ok(())
    }
}

impl RleString {
    /// Builds from maximal runs; rejects the sentinel.
    pub fn from_runs(runs: Vec<Run>) -> Result<Self> {
        if let Some(r) = runs.iter().find(|r| r.sym.is_sentinel()) {
            return Err(LufError::InvalidSymbol(r.sym.0));
        }
        Self::from_runs_internal(runs)
    }

    /// Like [`from_runs`](Self::from_runs) but accepts the sentinel.
    pub(crate) fn from_runs_internal(runs: Vec<Run>) -> Result<Self> {
        if runs.is_empty() {
            return Err(LufError::EmptyInput);
        }
        let mut ends = Vec::with_capacity(runs.len());
        let mut acc: u64 = 0;
        for (index, r) in runs.iter().enumerate() {
            if r.exp == 0 {
                return Err(LufError::InvalidRun { index: index + 1, reason: "zero exponent" });
            }
            if index > 0 && runs[index - 1].sym == r.sym {
                return Err(LufError::InvalidRun {
                    index: index + 1,
                    reason: "repeats the symbol of the previous run",
                });
            }
            acc = acc.checked_add(r.exp).ok_or(LufError::LengthOverflow)?;
            if acc > i64::MAX as u64 {
                return Err(LufError::LengthOverflow);
            }
            ends.push(acc);
        }
        Ok(RleString { runs, ends })
    }

    /// Convenience constructor from `(char, exponent)` pairs.
    pub fn from_pairs(pairs: &[(char, u64)]) -> Result<Self> {
        Self::from_runs(pairs.iter().map(|&(c, e)| Run::new(c, e)).collect())
    }

    /// Run-length encodes `text`.
    pub fn encode(text: &[Symbol]) -> Result<Self> {
        if text.is_empty() {
            return Err(LufError::EmptyInput);
        }
        let mut runs: Vec<Run> = Vec::new();
        for &c in text {
            if c.is_sentinel() {
                return Err(LufError::InvalidSymbol(c.0));
            }
            match runs.last_mut() {
                Some(r) if r.sym == c => r.exp += 1,
                _ => runs.push(Run { sym: c, exp: 1 }),
            }
        }
        Self::from_runs(runs)
    }

    pub fn encode_str(text: &str) -> Result<Self> {
        Self::encode(&symbols(text))
    }

    /// Materializes the text, refusing when `n > cap`.
    pub fn decode(&self, cap: u64) -> Result<Vec<Symbol>> {
        let n = self.len();
        if n > cap {
            return Err(LufError::DecodeTooLarge { n, cap });
        }
        let mut out = Vec::with_capacity(n as usize);
        for r in &self.runs {
            out.extend(std::iter::repeat_n(r.sym, r.exp as usize));
        }
        Ok(out)
    }

    /// Number of runs.
    pub fn m(&self) -> usize {
        self.runs.len()
    }

    /// Number of characters.
    pub fn len(&self) -> u64 {
        *self.ends.last().expect("non-empty")
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn runs(&self) -> &[Run] {
        &self.runs
    }

    pub fn run(&self, i: usize) -> Run {
        self.runs[i - 1]
    }

    pub fn sym(&self, i: usize) -> Symbol {
        self.runs[i - 1].sym
    }

    pub fn exp(&self, i: usize) -> u64 {
        self.runs[i - 1].exp
    }

    pub fn beg(&self, i: usize) -> u64 {
        if i == 1 {
            1
        } else {
            self.ends[i - 2] + 1
        }
    }

    pub fn end(&self, i: usize) -> u64 {
        self.ends[i - 1]
    }

    /// Total length of runs `a..=b` (0 when `a > b`).
    pub fn span_len(&self, a: usize, b: usize) -> u64 {
        if a > b {
            0
        } else {
            self.end(b) - self.beg(a) + 1
        }
    }

    pub fn is_unary(&self) -> bool {
        self.runs.len() == 1
    }

    /// Run containing text position `pos`, by binary search over run ends.
    pub fn run_of_position(&self, pos: u64) -> Result<usize> {
        let n = self.len();
        if pos == 0 || pos > n {
            return Err(LufError::PositionOutOfRange { pos, n });
        }
        Ok(self.run_at(pos))
    }

    /// Unchecked variant of [`run_of_position`](Self::run_of_position).
    #[inline]
    pub(crate) fn run_at(&self, pos: u64) -> usize {
        crate::stats::run_ops(1);
        self.ends.partition_point(|&e| e < pos) + 1
    }

    /// Symbol at text position `pos`.
    pub(crate) fn sym_at(&self, pos: u64) -> Symbol {
        self.sym(self.run_at(pos))
    }

    fn check_occ(&self, occ: Occurrence) -> Result<()> {
        let n = self.len();
        if occ.start == 0 || occ.start > n {
            return Err(LufError::PositionOutOfRange { pos: occ.start, n });
        }
        if occ.end < occ.start || occ.end > n {
            return Err(LufError::PositionOutOfRange { pos: occ.end, n });
        }
        Ok(())
    }

    /// Whether `occ` starts at a run beginning and ends at a run end.
    pub fn is_rle_bounded(&self, occ: Occurrence) -> Result<bool> {
        self.check_occ(occ)?;
        let i = self.run_at(occ.start);
        let j = self.run_at(occ.end);
        Ok(self.beg(i) == occ.start && self.end(j) == occ.end)
    }

    /// RLE of `T[occ.start..=occ.end]`; boundary runs are truncated.
    pub fn factor(&self, occ: Occurrence) -> Result<RleString> {
        self.check_occ(occ)?;
        let i = self.run_at(occ.start);
        let j = self.run_at(occ.end);
        let mut runs = self.runs[i - 1..j].to_vec();
        if i == j {
            runs[0].exp = occ.end - occ.start + 1;
        } else {
            runs[0].exp = self.end(i) - occ.start + 1;
            runs.last_mut().unwrap().exp = occ.end - self.beg(j) + 1;
        }
        Self::from_runs_internal(runs)
    }

    /// RLE of the RLE-bounded factor made of runs `a..=b`.
    pub fn slice_runs(&self, a: usize, b: usize) -> RleString {
        Self::from_runs_internal(self.runs[a - 1..b].to_vec()).expect("valid run slice")
    }

    pub fn reverse(&self) -> RleString {
        let mut runs = self.runs.clone();
        runs.reverse();
        Self::from_runs_internal(runs).expect("reversal keeps runs maximal")
    }

    /// Multiplies every exponent by `c`.
    pub fn scale(&self, c: u64) -> Result<RleString> {
        let runs = self
            .runs
            .iter()
            .map(|r| r.exp.checked_mul(c).map(|e| Run { sym: r.sym, exp: e }))
            .collect::<Option<Vec<_>>>()
            .ok_or(LufError::LengthOverflow)?;
        Self::from_runs_internal(runs)
    }

    /// Approximate heap footprint in machine words.
    pub fn heap_words(&self) -> u64 {
        (self.runs.len() * 2 + self.ends.len()) as u64
    }
}
