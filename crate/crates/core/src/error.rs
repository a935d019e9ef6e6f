use thiserror::Error;

use crate::census::Census;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    #[error("relation {index}: {reason}")]
    NonParallelRelation { index: usize, reason: String },
    #[error("relation {0} mixes paths of different lengths")]
    NonHomogeneousRelation(usize),
    #[error("not admissible: {0}")]
    NotAdmissible(String),
    #[error("not finite dimensional: {0}")]
    NotFiniteDimensional(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("modules live over different algebras")]
    AlgebraMismatch,
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("invalid morphism: {0}")]
    InvalidMorphism(String),
    #[error("indeterminate: {0}")]
    Indeterminate(String),
    #[error("endomorphism algebra modulo radical does not split over the rationals (dimension {0})")]
    NonSplitEndAlgebra(usize),
    #[error("algebra is not Nakayama: {0}")]
    NotNakayama(String),
    #[error("census budget exhausted after {} indecomposables", partial.len())]
    BudgetExhausted { partial: Box<Census> },
    #[error("census incomplete: {0}")]
    CensusIncomplete(String),
    #[error("census has {0} members; set operations support at most 128")]
    CensusTooLarge(usize),
    #[error("theorem check failed: {0}")]
    TheoremCheckFailed(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
