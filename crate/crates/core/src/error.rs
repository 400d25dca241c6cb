//! Workbench-wide error type.

use thiserror::Error;

/// Errors across all workbench modules.
///
/// Variants are split by how the CLI maps them to exit codes: everything is
/// a validation error (exit 2) except [`Error::WitnessSearchExhausted`],
/// which is a computation-budget outcome (exit 1).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),

    #[error("{0} is not a prime power")]
    NotPrimePower(u64),

    #[error("field size {base}^{degree} exceeds the ambient cap of 2^{cap_bits} elements")]
    SizeCapExceeded { base: u64, degree: u32, cap_bits: u32 },

    #[error("invalid argument `{argument}`: {reason}")]
    InvalidArgument { argument: &'static str, reason: String },

    #[error("cannot parse field descriptor `{0}` (expected Q, GF(p), GF(p^n), PC(q;p), or RC)")]
    BadDescriptor(String),

    #[error("GF({sub_order}) is not a subfield of GF({sup_order})")]
    NotSubfield { sub_order: String, sup_order: String },

    #[error("element of characteristic {elem_char} used with a field of characteristic {field_char}")]
    CharacteristicMismatch { elem_char: u64, field_char: u64 },

    #[error("operands belong to different algebras")]
    AlgebraMismatch,

    #[error("element {0} has zero norm and is not invertible (zero-divisor candidate)")]
    ZeroNorm(String),

    #[error("witness search exhausted at height {height}; no zero-norm element found")]
    WitnessSearchExhausted { height: u64 },

    #[error("tower level {level}: expected degree {expected}, verification found {found}")]
    DegreeVerificationFailed { level: usize, expected: u64, found: u64 },

    #[error("malformed tower report: {0}")]
    MalformedReport(String),

    #[error("invalid Cayley table: {0}")]
    InvalidGroupTable(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Exit code the CLI uses for this error: 1 for exhausted computation
    /// budgets, 2 for validation failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::WitnessSearchExhausted { .. } => 1,
            _ => 2,
        }
    }
}
