//! Deformed brackets, the relation catalogs, and the residual checker.

mod check;
mod generators;
mod matrix;
mod relation;

use thiserror::Error;

use crate::exact::{EvalError, Scalar};

pub use check::{check_relations, default_q_samples, relation_residual, RelationResidual, ResidualReport};
pub(crate) use generators::constant_diagonal;
pub use generators::{rescale_bosonic, GeneratorSet, LabeledMatrices, Source};
pub use matrix::Matrix;
pub use relation::{
    fermion_coupled_bosonic_relation, qbracket, relation_catalog, BracketKind, BracketSpec,
    CatalogKind, Gen, Relation, Word, WordPoly,
};

/// Exact matrix over the radical extension.
pub type GenMatrix = Matrix<Scalar>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AlgebraError {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("matrix rows do not form a square array")]
    NotSquare,
    #[error("generator {0} is not present")]
    MissingLabel(Gen),
    #[error("unknown relation catalog {0:?}")]
    UnknownCatalog(String),
    #[error(transparent)]
    Eval(#[from] EvalError),
}
