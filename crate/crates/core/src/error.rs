use thiserror::Error;

/// Errors raised when building or parsing permutations and words.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("empty permutation")]
    Empty,
    #[error("value {0} appears more than once")]
    Duplicate(u32),
    #[error("value {value} is outside 1..={n}")]
    OutOfRange { value: u32, n: usize },
    #[error("cannot parse {0:?} as a positive integer")]
    BadToken(String),
    #[error("digit string of length {0} is ambiguous; separate values with spaces or commas")]
    AmbiguousDigits(usize),
}

/// Errors raised by the percolation routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PercolationError {
    #[error("cell ({row}, {col}) is outside a {n}x{n} grid")]
    OutOfGrid { row: usize, col: usize, n: usize },
    #[error("cell ({row}, {col}) is not mutable")]
    NotMutable { row: usize, col: usize },
    #[error("scripted sequence stops with {remaining} mutable cell(s) left")]
    Incomplete { remaining: usize },
    #[error("grid side {n} exceeds the supported maximum of {max}")]
    TooLarge { n: usize, max: usize },
}

/// Errors raised by the bracketing routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TilingError {
    #[error("permutation is not full")]
    NotFull,
    #[error("a permutation of length 1 has no top-level bracketing")]
    Singleton,
    #[error("malformed bracketing at byte {0}")]
    Syntax(usize),
    #[error("bracketing is not a meld: {0}")]
    NotAMeld(String),
}

/// Errors raised by the counting and series routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CountError {
    #[error("n = {n} is outside the supported range {min}..={max}")]
    OutOfRange { n: usize, min: usize, max: usize },
    #[error("part count m = {m} is outside 1..={n}")]
    PartCount { m: usize, n: usize },
    #[error("inner series has a nonzero constant term")]
    NonzeroConstant,
    #[error("need at least {needed} terms, got {got}")]
    TooFewTerms { needed: usize, got: usize },
}
