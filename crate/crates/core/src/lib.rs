//! Certification of lemniscate-starlike membership S*(q_c) through weighted
//! coefficient sums, with the special-function, threshold and sampling tools
//! around it.

// Negated comparisons are used on purpose so that NaN parameters are rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod criterion;
pub mod error;
pub mod families;
pub mod identities;
pub mod specfun;
pub mod thresholds;
pub mod verifier;

/// Double-precision complex number used throughout.
pub type Complex = num_complex::Complex64;

pub use criterion::{certify, min_c, CertReport, CoeffFamily};
pub use error::{Error, Result};
pub use families::FamilySpec;
