//! Exact arithmetic: rationals, phases in Q/Z, integer matrices and their
//! Smith/Hermite normal forms, and finite diagonal groups.

pub mod group;
pub mod matrix;
pub mod rational;
pub mod snf;

use num_bigint::BigInt;
use thiserror::Error;

pub use group::{dual_lattice, phase_kernel, DiagonalGroup, ElementIter, DEFAULT_ELEMENT_CAP};
pub use matrix::IntMatrix;
pub use rational::{element_order, format_rational, frac, int, parse_rational, rat, Phase, PhaseVector, Rational};
pub use snf::{smith_normal_form, SmithDecomposition};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("kernel is infinite; rational kernel vector {witness:?}")]
    InfiniteKernel { witness: Vec<Rational> },
    #[error("enumeration of {size} elements exceeds cap {cap}")]
    CapExceeded { size: BigInt, cap: u64 },
    #[error("malformed rational '{0}'")]
    BadRational(String),
    #[error("expected a vector of length {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
}
