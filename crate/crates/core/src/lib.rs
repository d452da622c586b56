//! Longest unbordered factors of run-length encoded strings.
//!
//! All fast-path work is measured in runs: the time and memory of
//! [`longest_unbordered_factors`] depend on the number of runs `m` only,
//! never on the decoded length `n`.

pub mod borders;
pub mod candidates;
pub mod corpus;
pub mod driver;
pub mod error;
pub mod filter;
pub mod index;
pub mod io;
pub mod oracles;
pub mod rle;
pub mod rmq;
pub mod stats;
pub mod wlsq;

pub use driver::{longest_short_ub, longest_unbordered_factors, longest_unbordered_factors_with, LufOptions, LufResult};
pub use error::{LufError, Result};
pub use rle::{Occurrence, RleString, Run, Symbol};
