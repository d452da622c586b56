use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LufError {
    #[error("input is empty")]
    EmptyInput,
    #[error("symbol {0} is reserved and cannot appear in input text")]
    InvalidSymbol(u32),
    #[error("invalid run at index {index}: {reason}")]
    InvalidRun { index: usize, reason: &'static str },
    #[error("total length overflows the supported position range")]
    LengthOverflow,
    #[error("decoding {n} characters exceeds the cap of {cap}")]
    DecodeTooLarge { n: u64, cap: u64 },
    #[error("position {pos} is outside 1..={n}")]
    PositionOutOfRange { pos: u64, n: u64 },
    #[error("run index {run} is outside 1..={m}")]
    RunOutOfRange { run: usize, m: usize },
    #[error("offset {offset} is outside run {run} of exponent {exp}")]
    OffsetOutOfRange { run: usize, offset: u64, exp: u64 },
    #[error("invalid window {x}..={y} for a string of {m} runs")]
    InvalidWindow { x: usize, y: usize, m: usize },
    #[error("segment {id} lies outside the {n}x{n} grid")]
    SegmentOutOfGrid { id: usize, n: u64 },
    #[error("invalid stage {k}: {reason}")]
    InvalidStage { k: usize, reason: &'static str },
    #[error("run {i} is not a valid start for stage {k} (allowed 1..={max})")]
    StageRange { i: usize, k: usize, max: usize },
    #[error("run {j} has no marker string (requires j > {s})")]
    MarkerUndefined { j: usize, s: usize },
    #[error("oracle budget exceeded: {n} characters > {max_n}")]
    BudgetExceeded { n: u64, max_n: u64 },
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, LufError>;
