//! Group-theoretic constructions: the squaring-conjugation relator, coset
//! enumeration with an independent soundness check, an exact affine model
//! of BS(1,2), Britton reduction for HNN words over it, and the
//! four-cycle free-amalgamation construction.

mod affine;
mod amalgam4;
mod britton;
mod presentation;
mod todd_coxeter;
mod word;

pub use affine::{bs12_chain_check, evaluate_word, AffineDyadicMap};
pub use amalgam4::{
    adjacency_type_check, build_free_amalgam, triangle_refutation_check, AdjacencyType,
    AmalgamPresentation,
};
pub use britton::{britton_reduce, BrittonForm, HNNWord};
pub use presentation::{
    chain_preset, higman_preset, preset, sq_relator, triangle_preset, two_cycle_preset,
    Presentation,
};
pub use todd_coxeter::{
    todd_coxeter, todd_coxeter_with, verify_table, word_columns, CosetTable, EnumerationStatus,
    Strategy,
};
pub use word::{free_reduce, GenSymbol, GroupWord, Letter};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupsError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("word uses undeclared generator '{0}'")]
    UnknownGenerator(String),
    #[error("no affine map assigned to generator '{0}'")]
    Unassigned(String),
    #[error("coset table failed verification: {0}")]
    TableUnsound(String),
    #[error("amalgam construction error: {0}")]
    Construction(String),
    /// A membership oracle and the exact conjugation arithmetic disagree;
    /// this indicates a bug, not a mathematical fact.
    #[error("internal consistency violation: {0}")]
    OracleDisagreement(String),
}
