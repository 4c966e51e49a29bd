//! Error type shared by all modules.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected length {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u32, u32),

    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("modulus {0} too large: p^2 must fit in a machine word")]
    PrimeTooLarge(u64),

    #[error("analytic weight formulas require an odd prime, got p = 2")]
    OddPrimeRequired,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("budget exceeded: {required} elementary evaluations needed, budget is {budget}")]
    BudgetExceeded { required: u128, budget: u128 },

    /// A tabulated closed-form row evaluated to a negative frequency. The
    /// closed forms are kept as published; a negative count means the row
    /// shape does not apply to these parameters, so the evaluation refuses
    /// instead of emitting a bogus distribution.
    #[error(
        "closed-form table for family {family} (p={p}, m={m}, r={r}) is invalid here: \
         weight {weight} would have frequency {frequency}"
    )]
    NegativeTableFrequency {
        family: u8,
        p: u32,
        m: usize,
        r: u32,
        weight: u64,
        frequency: i128,
    },

    #[error("cross-method verification mismatch: {0}")]
    VerificationMismatch(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
