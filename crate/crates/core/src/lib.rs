//! Exact computations around Yang-Baxter equations and Poisson-type
//! structures: residual evaluators for the classical, associative and
//! quantum Yang-Baxter equations, twisted and double Poisson brackets,
//! the distributivity classification of quadratic binary operads,
//! L-infinity sign machinery and a generalized Schur-Weyl decomposition
//! for R-twisted symmetric group actions.
//!
//! All arithmetic is over exact rationals; every check is an equality test.

#![allow(clippy::needless_range_loop)]

pub mod algebra;
pub mod double;
pub mod error;
pub mod fixtures;
pub mod format;
pub mod frt;
pub mod infty;
pub mod linalg;
pub mod linfty;
pub mod operad;
pub mod perm;
pub mod report;
pub mod scalar;
pub mod suite;
pub mod tensor;
pub mod twisted;
pub mod ybe;

pub use error::{Error, Result};
pub use perm::Perm;
pub use scalar::Q;
pub use tensor::{GradedTensor, TensorMap, Word};
