//! Exact rational linear algebra over finitely supported vectors.
//!
//! Everything in here computes over `ℚ` with no rounding: the threshold
//! functionals and seminorm on the `a/b` sequence space, polyhedral
//! (max-of-functionals) norms on arbitrary coordinate subspaces, and an
//! exact simplex solver used for infimal-convolution norms.

mod fsvector;
mod lp;
mod polyhedral;
mod seminorm;

pub use fsvector::{BasisIndex, BasisKind, FSVector, Rational};
pub use lp::{solve_lp, Comparison, LpConstraint, LpError, LpProblem, LpSolution};
pub use polyhedral::{LinearFunctional, PolyhedralNorm};
pub use seminorm::{fgamma_eval, seminorm_b0};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QlinalgError {
    /// A/B-only operation hit an E-tagged basis element.
    #[error("unsupported basis element {0:?} (operation is defined on A/B indices only)")]
    UnsupportedBasis(BasisIndex),
    /// Vector has support outside the norm's coordinate subspace.
    #[error("vector leaves the norm's coordinate subspace at {0:?}")]
    OutsideSubspace(BasisIndex),
}

pub(crate) fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// Convenience constructor used all over the test suites.
pub fn rational(numer: i64, denom: i64) -> Rational {
    rat(numer, denom)
}
