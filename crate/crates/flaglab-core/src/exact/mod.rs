//! Exact rational scalars, dense matrices, subspace algebra and univariate
//! polynomials. Everything downstream consumes these; no approximation ever
//! enters.

mod eigen;
mod matrix;
mod poly;
mod rational;
mod subspace;

pub use eigen::{eigen_structure, EigenFactor};
pub use matrix::Matrix;
pub use poly::Poly;
pub use rational::{rat, rat_from_str, rat_to_string, Rational};
pub use subspace::{annihilator, Subspace};

pub(crate) use eigen::shift_diagonal as shift_matrix;

/// Primitive integer direction of a rational vector (gcd one, first nonzero
/// entry positive), as rationals. `None` for the zero vector.
pub(crate) fn primitive_direction(v: &[Rational]) -> Option<Vec<Rational>> {
    rational::primitive_integer_vector(v).map(|ints| ints.into_iter().map(Rational::from).collect())
}

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("ambient dimensions differ: {0} vs {1}")]
    AmbientMismatch(usize, usize),
    #[error("matrix dimensions incompatible: {0}x{1} vs {2}x{3}")]
    ShapeMismatch(usize, usize, usize, usize),
    #[error("form must be square of the ambient dimension")]
    BadForm,
    #[error("form is singular")]
    SingularForm,
    #[error("matrix must be square")]
    NotSquare,
    #[error("cannot parse rational from {0:?}")]
    BadRational(String),
}
