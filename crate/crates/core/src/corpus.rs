//! Deterministic input generators for tests, verification and benchmarks.

use crate::error::{LufError, Result};
use crate::rle::{RleString, Run, Symbol};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::str::FromStr;

/// Distribution of run exponents.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExpDist {
    Ones,
    /// Uniform on `1..=max`.
    Uniform(u64),
    /// `1 + Geometric(p)` failures before the first success.
    Geometric(f64),
}

impl FromStr for ExpDist {
    type Err = LufError;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |msg: &str| LufError::Parse { line: 0, msg: format!("exponent distribution {s:?}: {msg}") };
        let (name, arg) = s.split_once(':').unwrap_or((s, ""));
        match name {
            "ones" => Ok(ExpDist::Ones),
            "uniform" => {
                let max: u64 = arg.parse().map_err(|_| bad("expected uniform:MAX"))?;
                if max == 0 {
                    return Err(bad("MAX must be positive"));
                }
                Ok(ExpDist::Uniform(max))
            }
            "geometric" => {
                let p: f64 = arg.parse().map_err(|_| bad("expected geometric:P"))?;
                if !(p > 0.0 && p <= 1.0) {
                    return Err(bad("P must lie in (0, 1]"));
                }
                Ok(ExpDist::Geometric(p))
            }
            _ => Err(bad("unknown name")),
        }
    }
}

impl ExpDist {
    pub fn sample(&self, rng: &mut impl Rng) -> u64 {
        match *self {
            ExpDist::Ones => 1,
            ExpDist::Uniform(max) => rng.gen_range(1..=max),
            ExpDist::Geometric(p) => {
                if p >= 1.0 {
                    return 1;
                }
                let u: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
                1 + (u.ln() / (1.0 - p).ln()).floor().min(1e12) as u64
            }
        }
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Letter `c` of the alphabet `a, b, c, ...`.
pub fn letter(c: u32) -> Symbol {
    Symbol('a' as u32 + c)
}

/// All strings of length `len` over the first `sigma` letters, in lexicographic order.
pub fn exhaustive(sigma: u32, len: usize) -> impl Iterator<Item = Vec<Symbol>> {
    let total = (sigma as u64).pow(len as u32);
    (0..total).map(move |mut code| {
        let mut s = vec![letter(0); len];
        for slot in s.iter_mut().rev() {
            *slot = letter((code % sigma as u64) as u32);
            code /= sigma as u64;
        }
        s
    })
}

/// A random string with exactly `m` runs over `sigma` letters.
pub fn random_rle(rng: &mut impl Rng, sigma: u32, m: usize, dist: ExpDist) -> RleString {
    assert!(m >= 1 && (sigma >= 2 || m == 1));
    let mut runs = Vec::with_capacity(m);
    let mut prev: Option<u32> = None;
    for _ in 0..m {
        let c = match prev {
            None => rng.gen_range(0..sigma),
            Some(p) => {
                let c = rng.gen_range(0..sigma - 1);
                if c >= p {
                    c + 1
                } else {
                    c
                }
            }
        };
        prev = Some(c);
        runs.push(Run { sym: letter(c), exp: dist.sample(rng) });
    }
    RleString::from_runs(runs).expect("generated runs are maximal")
}

/// `(a^e b^e)^(m/2)`.
pub fn tightness(e: u64, m: usize) -> RleString {
    let runs = (0..m).map(|i| Run { sym: letter((i % 2) as u32), exp: e }).collect();
    RleString::from_runs(runs).expect("valid")
}

/// Run `i` (0-based) is letter `i mod 3` with exponent `e` for even `i` and `e - 1` for odd `i`.
pub fn n_independence(m: usize, e: u64) -> RleString {
    assert!(e >= 2);
    let runs = (0..m)
        .map(|i| Run { sym: letter((i % 3) as u32), exp: if i % 2 == 0 { e } else { e - 1 } })
        .collect();
    RleString::from_runs(runs).expect("valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exhaustive_counts_and_order() {
        let all: Vec<_> = exhaustive(2, 3).collect();
        assert_eq!(all.len(), 8);
        assert_eq!(all[1], vec![letter(0), letter(0), letter(1)]);
        assert_eq!(exhaustive(3, 0).count(), 1);
    }

    #[test]
    fn generators_are_reproducible() {
        for dist in [ExpDist::Ones, ExpDist::Uniform(20), ExpDist::Geometric(0.3)] {
            let a = random_rle(&mut rng(7), 3, 50, dist);
            let b = random_rle(&mut rng(7), 3, 50, dist);
            assert_eq!(a, b);
            assert_eq!(a.m(), 50);
        }
        assert_eq!("geometric:0.3".parse::<ExpDist>().unwrap(), ExpDist::Geometric(0.3));
        assert_eq!("uniform:20".parse::<ExpDist>().unwrap(), ExpDist::Uniform(20));
        assert!("uniform:0".parse::<ExpDist>().is_err());
        assert!("zipf".parse::<ExpDist>().is_err());
    }

    #[test]
    fn families() {
        assert_eq!(tightness(2, 6), RleString::encode_str("aabbaabbaabb").unwrap());
        let t = n_independence(60, 10);
        assert_eq!((t.m(), t.exp(1), t.exp(2)), (60, 10, 9));
    }
}
