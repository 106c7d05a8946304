use thiserror::Error;

use crate::words::Alphabet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("letter {letter:?} is not in the {alphabet} alphabet")]
    InvalidLetter { letter: char, alphabet: Alphabet },

    #[error("alphabet mismatch: expected {expected}, found {found}")]
    AlphabetMismatch { expected: Alphabet, found: Alphabet },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("cannot mix radicands sqrt({0}) and sqrt({1})")]
    UnsupportedField(u64, u64),

    #[error("integer overflow in exact arithmetic")]
    Overflow,

    #[error("division by zero")]
    DivisionByZero,

    #[error("{p} and {n} are not co-prime with {p} < {n}")]
    NotCoprime { p: u64, n: u64 },

    #[error("matrix is not unimodular (det = {det})")]
    NotUnimodular { det: i64 },

    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),

    #[error("not amicable: {0}")]
    NotAmicable(String),

    #[error("not a Sturmian morphism: {0}")]
    NotSturmian(String),

    #[error("infeasible parameters: {0}")]
    InfeasibleParameters(String),

    #[error("degenerate 3iet parameters: (1-alpha)/(1+beta) = {0} is rational")]
    DegenerateParameters(String),

    #[error("cannot parse {token:?}: {reason}")]
    Parse { token: String, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn parse_err(token: impl Into<String>, reason: impl Into<String>) -> Error {
    Error::Parse {
        token: token.into(),
        reason: reason.into(),
    }
}
