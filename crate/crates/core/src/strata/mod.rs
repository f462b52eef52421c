//! Enhanced level graphs of degree-p covers of a nodal target: validation,
//! dimension ledgers, monoid ranks and enumeration.

mod canon;
mod dot;
mod enumerate;
mod graph;
mod ledger;
pub mod named;
mod validate;

use thiserror::Error;

pub use canon::{canonical_key, canonicalize, CanonicalKey};
pub use dot::to_dot;
pub use enumerate::{enumerate_components, enumerate_graphs, unlabeled_trees};
pub use graph::{
    CoverType, Direction, HurwitzData, Indexed, LevelGraph, Marking, Regime, SourceEdge, SourceGraph, SourceVertex,
    TargetEdge, TargetGraph, TargetVertex,
};
pub use ledger::{
    generic_dimension, monoid_rank, stratum_dimension, ContributionKind, LevelContribution, StratumLedger,
    VertexContribution,
};
pub use validate::{rescaling_relations, validate, RescalingRelation, ValidationReport, Violation};

#[derive(Debug, Error)]
pub enum StrataError {
    #[error("invalid level graph: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Violation>),
    #[error("inconsistent data: {0}")]
    Data(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}
