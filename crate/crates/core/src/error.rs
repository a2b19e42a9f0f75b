use num_bigint::BigInt;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A Ferry norm would need a denominator wider than the configured cap.
    #[error("|{value}| exceeds the exact-computation cap of {cap}")]
    CapExceeded { value: BigInt, cap: u64 },

    /// Canonicalizing a union would need a common modulus beyond the configured bound.
    #[error("common modulus {detail} exceeds the canonicalization bound")]
    ModulusBlowup { detail: String },

    #[error("modulus must be at least 1, got {0}")]
    InvalidModulus(BigInt),

    #[error("radius must be a positive rational, got {0}")]
    InvalidRadius(String),

    #[error("points must differ, both are {0}")]
    EqualPoints(BigInt),

    #[error("{0} is not prime")]
    NotPrime(BigInt),

    #[error("{0} appears in both sets")]
    NotDisjoint(BigInt),

    #[error("input set is empty")]
    EmptyInput,

    #[error("pair {index} is not itself a verified convergent sequence")]
    PreconditionFailed { index: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Resource bounds, as opposed to bad input.
    pub fn is_resource_bound(&self) -> bool {
        matches!(self, Error::CapExceeded { .. } | Error::ModulusBlowup { .. })
    }
}
