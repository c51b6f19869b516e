//! Error type shared by every module of the crate.

use thiserror::Error;

/// Errors surfaced by ring arithmetic, series evaluation and verification.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    /// Division by zero or inversion of a (possibly) zero element.
    #[error("division by zero: {0}")]
    DivisionByZero(String),

    /// A closed-form denominator `q^(alpha*k*d) * w^d + 1` vanished.
    #[error("pole in closed form at k = {k}")]
    Pole { k: u32 },

    /// A fractional power `q^x` is not exactly representable in the ring.
    #[error("inexact power: {0}")]
    InexactPower(String),

    /// A root of unity cannot be embedded into the requested ring.
    #[error("unsupported embedding: root of unity of order {order} into {ring}")]
    UnsupportedEmbedding { order: u64, ring: String },

    /// A p-adic result retained no known digits.
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),

    /// The adaptive integrator hit its level cap without stabilising.
    #[error("no convergence at level cap {level_cap}: {reason}")]
    NoConvergence { level_cap: u32, reason: String },

    /// A truncated series did not meet its tail tolerance within the term cap.
    #[error("truncation failure after {terms} terms (tail bound {tail_bound:.3e})")]
    TruncationFailure { terms: usize, tail_bound: f64 },

    /// Series parameters fail the convergence ratio test.
    #[error("divergent parameters: ratio {ratio} >= 1")]
    DivergentParameters { ratio: String },

    /// Parameter validation failure (constructor preconditions).
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
