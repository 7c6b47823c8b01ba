use thiserror::Error;

use crate::seqspec::FamilyId;

/// Position-tagged failure from the expression parser.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{kind} at position {pos}")]
pub struct ParseError {
    /// Byte offset into the input.
    pub pos: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("unexpected character {0:?}")]
    Lexical(char),
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("exponent must be a nonnegative integer literal")]
    BadExponent,
    #[error("symbol `k` is not allowed here")]
    UnexpectedK,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("polynomial of degree {degree} exceeds n+1 = {bound}")]
    DegreeTooHigh { degree: usize, bound: usize },

    #[error("series order mismatch: {0} vs {1}")]
    OrderMismatch(usize, usize),

    #[error("series constant term is not a nonzero constant: {0}")]
    NonUnitConstant(String),

    #[error("square root needs constant term 1, found {0}")]
    SqrtConstantTerm(String),

    #[error("closed-form generating function has a zero denominator")]
    ZeroDenominator,

    #[error("expected a {expected} spec, got {found}")]
    WrongKind {
        expected: &'static str,
        found: &'static str,
    },

    #[error("family {0} has no coefficient-sequence spec; use boros_moll_poly")]
    NoSpec(FamilyId),

    #[error("family {0} has no independent oracle")]
    NoOracle(FamilyId),

    #[error("oracle for {family} supports n <= {max}, got {n}")]
    OracleRange { family: FamilyId, n: usize, max: usize },

    #[error("unknown family `{0}`")]
    UnknownFamily(String),

    #[error("sequence too short: need {needed} terms, have {len}")]
    InsufficientLength { needed: usize, len: usize },

    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },

    #[error("invalid index selection: {0}")]
    BadIndices(String),

    #[error("expected a constant polynomial, got {0}")]
    NotConstant(String),

    #[error("{what} has a negative coefficient: {value}")]
    NegativeCoefficient { what: String, value: String },

    #[error("minor enumeration exceeds limits: {0}")]
    LimitExceeded(String),

    #[error("invalid spec: {0}")]
    InvalidSpec(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
