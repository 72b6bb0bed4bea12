use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("non-finite input: {0}")]
    NonFinite(f64),

    #[error("invalid argument `{name}`: {reason}")]
    InvalidArgument { name: &'static str, reason: String },

    #[error("range [{lo}, {hi}] exceeds the ceiling {ceiling}")]
    CeilingExceeded { lo: u64, hi: u64, ceiling: u64 },

    #[error("height {0} is above the supported ceiling")]
    HeightExceeded(f64),

    #[error("arithmetic overflow: {0}")]
    Overflow(String),

    #[error("gcd({a}, {q}) = {gcd}: at most one prime lies in this progression")]
    NotCoprime { a: u64, q: u64, gcd: u64 },

    #[error("index {index} is beyond the computed data (available: {available})")]
    IndexOutOfRange { index: usize, available: usize },

    #[error("principal character mod {0} is not supported")]
    PrincipalCharacter(u64),

    #[error("character {index} mod {q} is imprimitive (conductor {conductor})")]
    ImprimitiveCharacter { q: u64, index: usize, conductor: u64 },

    #[error("root number for character {index} mod {q}: |gauss sum| = {modulus}, expected sqrt(q) = {expected}")]
    RootNumber { q: u64, index: usize, modulus: f64, expected: f64 },

    #[error("no prime found in progression {a} mod {q} below {ceiling}")]
    SearchExhausted { a: u64, q: u64, ceiling: u64 },

    #[error("consistency check failed: {0}")]
    Consistency(String),

    #[error("zero cache: {0}")]
    Cache(String),

    #[error("zero cache version mismatch: found `{found}`, expected `{expected}`")]
    CacheVersion { found: String, expected: String },

    #[error("io: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Error {
    Error::InvalidArgument { name, reason: reason.into() }
}

pub(crate) fn finite(x: f64) -> Result<f64> {
    if x.is_finite() {
        Ok(x)
    } else {
        Err(Error::NonFinite(x))
    }
}
