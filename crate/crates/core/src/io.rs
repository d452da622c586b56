//! Input formats and the JSON run report.
//!
//! The RLE format is a whitespace-separated list of `c:e` tokens, where `c` is
//! a single character and `e` a decimal exponent in `1..=2^63-1`. A `#` starts
//! a comment that runs to the end of the line, so `#` and whitespace cannot be
//! symbols in this format. Adjacent tokens with the same character are merged.
//! The raw format maps every byte to one symbol.

use crate::driver::LufResult;
use crate::error::{LufError, Result};
use crate::rle::{RleString, Run, Symbol};
use crate::stats::Counters;
use serde::Serialize;
use std::fmt::Write as _;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Rle,
    Raw,
}

impl FromStr for Format {
    type Err = LufError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rle" => Ok(Format::Rle),
            "raw" => Ok(Format::Raw),
            _ => Err(LufError::Parse { line: 0, msg: format!("unknown format {s:?}") }),
        }
    }
}

pub fn parse(bytes: &[u8], format: Format) -> Result<RleString> {
    match format {
        Format::Raw => {
            let syms: Vec<Symbol> = bytes.iter().map(|&b| Symbol::from(b)).collect();
            RleString::encode(&syms)
        }
        Format::Rle => {
            let text = std::str::from_utf8(bytes)
                .map_err(|e| LufError::Parse { line: 0, msg: format!("input is not UTF-8: {e}") })?;
            parse_rle(text)
        }
    }
}

pub fn parse_rle(text: &str) -> Result<RleString> {
    let mut runs: Vec<Run> = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let body = line.split('#').next().unwrap_or("");
        for token in body.split_whitespace() {
            let bad = |msg: String| LufError::Parse { line: line_no, msg };
            let (c, e) = token
                .rsplit_once(':')
                .ok_or_else(|| bad(format!("token {token:?} is not of the form c:e")))?;
            let mut chars = c.chars();
            let sym = match (chars.next(), chars.next()) {
                (Some(ch), None) => Symbol::from(ch),
                _ => return Err(bad(format!("token {token:?} must name exactly one character"))),
            };
            let exp: u64 = e.parse().map_err(|_| bad(format!("bad exponent in {token:?}")))?;
            if exp == 0 || exp > i64::MAX as u64 {
                return Err(bad(format!("exponent in {token:?} must lie in 1..=2^63-1")));
            }
            match runs.last_mut() {
                Some(last) if last.sym == sym => {
                    last.exp = last.exp.checked_add(exp).ok_or(LufError::LengthOverflow)?;
                }
                _ => runs.push(Run { sym, exp }),
            }
        }
    }
    RleString::from_runs(runs)
}

fn symbol_string(sym: Symbol) -> String {
    char::from_u32(sym.0).map(String::from).unwrap_or_else(|| format!("#{}", sym.0))
}

/// Serializes in the RLE format, one run per token.
pub fn format_rle(t: &RleString) -> String {
    let mut out = String::new();
    for (i, r) in t.runs().iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        let _ = write!(out, "{}:{}", symbol_string(r.sym), r.exp);
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Algo {
    Rle,
    Naive,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportStats {
    #[serde(flatten)]
    pub counters: Counters,
    pub wall_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub n: u64,
    pub m: usize,
    pub length: u64,
    pub occurrences: Vec<[u64; 2]>,
    pub factors_rle: Vec<Vec<(String, u64)>>,
    pub algo: Algo,
    pub stats: ReportStats,
}

impl RunReport {
    pub fn new(text: &RleString, result: &LufResult, algo: Algo, counters: Counters, wall_ms: f64) -> Self {
        let factors_rle = result
            .distinct_factors(text)
            .iter()
            .map(|f| f.runs().iter().map(|r| (symbol_string(r.sym), r.exp)).collect())
            .collect();
        RunReport {
            n: text.len(),
            m: text.m(),
            length: result.length,
            occurrences: result.occurrences.iter().map(|o| [o.start, o.end]).collect(),
            factors_rle,
            algo,
            stats: ReportStats { counters, wall_ms },
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::longest_unbordered_factors;

    #[test]
    fn parses_rle_with_comments_and_merges() {
        let t = parse_rle("# header\na:3 b:2\n  c:5 # trailing\na:1 b:2 b:2\n").unwrap();
        assert_eq!(t, RleString::encode_str("aaabbcccccabbbb").unwrap());
        let big = parse_rle("a:9223372036854775807").unwrap();
        assert_eq!(big.len(), i64::MAX as u64);
        assert_eq!(parse_rle("::2").unwrap(), RleString::encode_str("::").unwrap());
    }

    #[test]
    fn rejects_malformed_rle() {
        for bad in ["a3", "ab:3", "a:0", "a:-1", "a:9223372036854775808", ":4"] {
            assert!(matches!(parse_rle(bad), Err(LufError::Parse { line: 1, .. })), "{bad}");
        }
        assert!(matches!(parse_rle("a:1\nb:x"), Err(LufError::Parse { line: 2, .. })));
        assert!(matches!(parse_rle("# nothing"), Err(LufError::EmptyInput)));
        assert!(parse_rle("a:9223372036854775807 b:9223372036854775807").is_err());
    }

    #[test]
    fn raw_and_round_trip() {
        let t = parse(b"aaaa", Format::Raw).unwrap();
        assert_eq!((t.m(), t.len()), (1, 4));
        let t = parse(b"a:3 b:2 c:5 a:1 b:4", Format::Rle).unwrap();
        assert_eq!(parse_rle(&format_rle(&t)).unwrap(), t);
    }

    #[test]
    fn report_schema() {
        let t = parse_rle("a:3 b:2 c:5 a:1 b:4").unwrap();
        let r = longest_unbordered_factors(&t);
        let rep = RunReport::new(&t, &r, Algo::Rle, Counters::default(), 0.5);
        let v: serde_json::Value = serde_json::from_str(&rep.to_json()).unwrap();
        assert_eq!(v["n"], 15);
        assert_eq!(v["m"], 5);
        assert_eq!(v["length"], 15);
        assert_eq!(v["occurrences"], serde_json::json!([[1, 15]]));
        assert_eq!(v["factors_rle"][0][0], serde_json::json!(["a", 3]));
        assert_eq!(v["algo"], "rle");
        for key in ["run_ops", "wlsq_visits", "peak_words", "wall_ms"] {
            assert!(v["stats"].get(key).is_some(), "{key}");
        }
    }
}
