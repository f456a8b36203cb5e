//! Quasi-homogeneous potentials, weight systems, symmetry groups and the
//! Landau–Ginzburg spaces built from them.

pub mod groebner;
pub mod poly;
pub mod space;
pub mod weights;

use num_bigint::BigInt;
use thiserror::Error;

use crate::arith::{ArithError, PhaseVector, Rational};

pub use groebner::GroebnerBudget;
pub use poly::{parse_polynomial, LaurentMonomial, QuasiHomogPoly, Term};
pub use space::{aut_group, check_nondegenerate, product_space, GroupSpec, Isolation, LgSpace, NondegeneracyReport};
pub use weights::{infer_weights, j_element, BlockWeights, WeightSystem};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LgError {
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("polynomial is zero")]
    ZeroPolynomial,
    #[error("variable x{0} does not occur in the polynomial")]
    UnusedVariable(usize),
    #[error("polynomial is not quasi-homogeneous")]
    NotQuasiHomogeneous,
    #[error("weights are not unique: independent solutions {first:?} and {second:?}")]
    AmbiguousWeights { first: Vec<BigInt>, second: Vec<BigInt> },
    #[error("no positive weight system exists")]
    NoPositiveSolution,
    #[error("invalid weights: {0}")]
    InvalidWeights(String),
    #[error("term {term} does not have the declared weight")]
    WeightMismatch { term: usize },
    #[error("Aut(W) is infinite; rational kernel vector {witness:?}")]
    InfiniteAut { witness: Vec<Rational> },
    #[error("group does not contain the grading element {j}")]
    JNotContained { j: PhaseVector },
    #[error("group element {witness} does not preserve W")]
    NotSubgroupOfAut { witness: PhaseVector },
    #[error("monomial {0} is not invariant under the group")]
    NotInvariant(LaurentMonomial),
    #[error("monomial {0} has non-integral weight")]
    NonIntegralWeight(LaurentMonomial),
    #[error("expected dimension {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error(transparent)]
    Arith(#[from] ArithError),
}
