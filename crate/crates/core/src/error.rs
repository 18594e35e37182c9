use thiserror::Error;

/// Errors produced by this crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("word has duplicate letters")]
    DuplicateLetters,

    #[error("word of length {len} exceeds the supported maximum {max}")]
    WordTooLong { len: usize, max: usize },

    #[error("occurrence positions must be strictly increasing")]
    InvalidOccurrence,

    #[error("cell ({col},{row}) out of bounds for a pattern of length {pattern_len}")]
    CellOutOfBounds {
        col: usize,
        row: usize,
        pattern_len: usize,
    },

    #[error("pattern of length {len} exceeds the supported maximum {max}")]
    PatternTooLong { len: usize, max: usize },

    #[error("pattern length bound {bound} exceeds the supported maximum {max}")]
    PatternBoundTooLarge { bound: usize, max: usize },

    #[error("shading grid is for length {shading_len} but the pattern has length {pattern_len}")]
    ShadingMismatch {
        pattern_len: usize,
        shading_len: usize,
    },

    #[error("length {n} exceeds the cap {cap}")]
    LengthCap { n: usize, cap: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("line {line}: {message}")]
    ParseLine { line: usize, message: String },

    #[error("io error: {0}")]
    Io(String),

    #[error("json error: {0}")]
    Json(String),

    #[error("invalid partition: row lengths must be positive and weakly decreasing")]
    InvalidShape,

    #[error("basis does not describe the input at horizon {horizon} (counterexample {counterexample})")]
    NotABasis {
        horizon: usize,
        counterexample: String,
    },

    #[error("unknown class spec: {0}")]
    UnknownClass(String),
}
