use thiserror::Error;

/// Errors shared by all modules of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty sequence")]
    EmptySequence,
    #[error("duplicate entry {0}")]
    DuplicateEntry(i64),
    #[error("values are not a permutation of 1..={0}")]
    NotAPermutation(usize),
    #[error("length {len} exceeds the supported maximum {max}")]
    LengthLimitExceeded { len: usize, max: usize },
    #[error("position {pos} out of range 1..={len}")]
    PositionOutOfRange { pos: usize, len: usize },
    #[error("cannot remove the only entry of a length-1 permutation")]
    RemoveFromSingleton,
    #[error("pattern length {pattern} exceeds text length {text}")]
    PatternLongerThanText { pattern: usize, text: usize },
    #[error("adjacency vector has {bits} bits but the permutation needs {expected}")]
    DashLengthMismatch { bits: usize, expected: usize },
    #[error("explicit scheme rows must have pairwise distinct lengths (length {0} repeats)")]
    DuplicateRowLength(usize),
    #[error("explicit scheme rows must be non-empty")]
    EmptyRow,
    #[error("{lower} and {upper} are not comparable under scheme {scheme}")]
    NotComparable {
        lower: String,
        upper: String,
        scheme: String,
    },
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("cannot parse permutation '{input}': {reason}")]
    ParsePermutation { input: String, reason: String },
    #[error("cannot parse scheme '{input}': {reason}")]
    ParseScheme { input: String, reason: String },
}
