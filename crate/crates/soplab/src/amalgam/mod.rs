//! Block amalgam spaces and infimal-convolution norms.
//!
//! A [`SequenceProvider`] supplies a concretely indiscernible sequence of
//! tuples in a computable normed space. [`AmalgamSpace`] assembles the
//! stage-`m` formal amalgam of the two-tuple blocks, each carrying three
//! polyhedral norms (order-preserving pullback, order-reversing pullback,
//! and their max). The extension of the block norms to the whole space is
//! an exact infimal convolution computed by LP, and the claim suites check
//! the monotonicity, sandwich, and symmetry-surrogate statements with
//! rational arithmetic and zero tolerance.

mod claims;
mod infconv;
mod provider;
mod space;

pub use claims::{rho_estimate, sequence_norm_profile, verify_convergence_claims, RhoEstimate, RhoReport};
pub use infconv::{infconv_norm, refine_decomposition, Decomposition, Refined};
pub use provider::{indiscernibility_check, CanonicalPairProvider, SequenceProvider, SimpleProvider};
pub use space::{build_amalgam, AmalgamSpace, Block, Coord, NormTag};

use thiserror::Error;

use crate::qlinalg::{BasisIndex, LpError, QlinalgError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AmalgamError {
    #[error("vector leaves the amalgam span at {0:?}")]
    OutsideSpan(BasisIndex),
    #[error("provider invariant violated: {0}")]
    ProviderInvariant(String),
    #[error("decomposition shape error: {0}")]
    Shape(String),
    #[error("stage must be at least 1, got {0}")]
    StageTooSmall(u64),
    #[error(transparent)]
    Lp(#[from] LpError),
    #[error(transparent)]
    Norm(#[from] QlinalgError),
    #[error("internal: {0}")]
    Internal(String),
}
