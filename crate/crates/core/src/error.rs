use thiserror::Error;

use crate::Complex;

/// Errors raised by the numerics in this crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("overflow while evaluating {0}; use the log-scaled variant")]
    Overflow(&'static str),

    #[error("zero factor in Pochhammer product at index {index}")]
    ZeroFactor { index: usize },

    #[error("parameter {value} lies on a pole (nonpositive integer) in {context}")]
    Pole {
        context: &'static str,
        value: Complex,
    },

    #[error("series with p = {p} > q + 1 = {q_plus_one} diverges for nonzero argument")]
    DivergentSeries { p: usize, q_plus_one: usize },

    #[error("argument modulus {modulus} is outside the disk of convergence")]
    OutsideDisk { modulus: f64 },

    #[error("series did not converge within {terms} terms")]
    NonConvergence { terms: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("no sign change on [{lo}, {hi}]: f(lo) = {f_lo}, f(hi) = {f_hi}")]
    NoSignChange {
        lo: f64,
        hi: f64,
        f_lo: f64,
        f_hi: f64,
    },

    #[error("non-finite value {value} at x = {x}")]
    NonFinite { x: f64, value: f64 },

    #[error("hypothesis violated: S1 = {s1} is not below 1")]
    HypothesisViolated { s1: f64 },

    #[error("f vanishes at z = {z}")]
    ZeroOfF { z: Complex },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
