//! Exact-arithmetic laboratory for order-property constructions.
//!
//! Four subsystems:
//! - [`qlinalg`]: rational vectors, the threshold-functional seminorm,
//!   polyhedral norms, and an exact simplex solver;
//! - [`banach`]: the witness vectors and graph formulas on the seminormed
//!   sequence space, with chain/cycle/entailment verification;
//! - [`amalgam`]: block amalgam spaces, infimal-convolution norms, and the
//!   finite-stage convergence and symmetry checks;
//! - [`groups`]: presentations, Todd–Coxeter coset enumeration, the affine
//!   dyadic model, Britton reduction, and the four-cycle amalgam builder.
//!
//! All verification outcomes are reported through [`report::CheckReport`].

pub mod amalgam;
pub mod banach;
pub mod groups;
pub mod qlinalg;
pub mod report;

pub mod cli;
