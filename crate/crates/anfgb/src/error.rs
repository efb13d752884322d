//! Crate-wide error type.
//!
//! Precondition violations that indicate caller bugs (mismatched arities,
//! mixing elements of different prime fields) panic instead; everything that
//! depends on run-time data is reported through [`Error`].

use std::fmt;

/// Errors produced by the arithmetic kernels, the modular engine and the
/// problem-file frontend.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Attempt to invert zero (in a prime field, in Q, or in Q(α)).
    ZeroInversion,
    /// Paired sequences of different lengths, or an empty/zero count where a
    /// positive one is required.
    LengthMismatch,
    /// Chinese remaindering over moduli that are not pairwise coprime.
    NonCoprimeModuli,
    /// Rational reconstruction has no solution within the Farey bound.
    NoReconstruction,
    /// The admissible-prime generator ran out of candidates.
    ExhaustedCandidates,
    /// Polynomial division by the zero polynomial.
    DivisionByZeroPoly,
    /// An operation that needs a nonzero polynomial received zero.
    ZeroPolynomial,
    /// A prime hit a denominator (or was otherwise unusable) while reducing
    /// rational data modulo p.
    BadPrime(u64),
    /// The result pool held no snapshot when one was required.
    EmptyPool,
    /// The modular engine exceeded its round budget; carries a summary of the
    /// pool state for diagnosis.
    RoundLimitExceeded { rounds: usize, pool: String },
    /// Problem-file parsing failed.
    Parse(ParseError),
}

/// A parse failure with its source position (1-based line and column).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    /// Malformed syntax; the payload describes what was expected.
    Syntax(String),
    /// A name was used that is neither a declared variable nor the number
    /// field generator.
    UndeclaredVariable(String),
    /// The same name was declared twice.
    DuplicateVariable(String),
    /// The minimal polynomial could not be normalized to a monic polynomial
    /// of degree at least one in the field generator.
    NonMonicMinpoly,
    /// A generator uses a power of the field generator at or above the degree
    /// of the minimal polynomial.
    AlphaDegreeTooHigh,
}

impl fmt::Display for ParseError {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(fm, "line {}, column {}: ", self.line, self.col)?;
        match &self.kind {
            ParseErrorKind::Syntax(msg) => write!(fm, "{msg}"),
            ParseErrorKind::UndeclaredVariable(name) => {
                write!(fm, "undeclared variable `{name}`")
            }
            ParseErrorKind::DuplicateVariable(name) => {
                write!(fm, "duplicate variable `{name}`")
            }
            ParseErrorKind::NonMonicMinpoly => {
                write!(fm, "minimal polynomial cannot be normalized to a monic polynomial of degree >= 1")
            }
            ParseErrorKind::AlphaDegreeTooHigh => {
                write!(fm, "generator uses a field-generator power >= degree of the minimal polynomial")
            }
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::ZeroInversion => write!(fm, "inversion of zero"),
            Error::LengthMismatch => write!(fm, "sequence lengths do not match"),
            Error::NonCoprimeModuli => write!(fm, "moduli are not pairwise coprime"),
            Error::NoReconstruction => write!(fm, "no rational reconstruction within the Farey bound"),
            Error::ExhaustedCandidates => write!(fm, "ran out of admissible prime candidates"),
            Error::DivisionByZeroPoly => write!(fm, "polynomial division by zero"),
            Error::ZeroPolynomial => write!(fm, "operation requires a nonzero polynomial"),
            Error::BadPrime(p) => write!(fm, "prime {p} is unusable for this input"),
            Error::RoundLimitExceeded { rounds, pool } => {
                write!(fm, "no verified basis after {rounds} rounds; pool: {pool}")
            }
            Error::EmptyPool => write!(fm, "result pool is empty"),
            Error::Parse(e) => write!(fm, "parse error at {e}"),
        }
    }
}

impl std::error::Error for Error {}

impl From<ParseError> for Error {
    fn from(e: ParseError) -> Self {
        Error::Parse(e)
    }
}
