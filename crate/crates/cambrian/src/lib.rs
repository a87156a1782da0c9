//! Exact constructions around finite Coxeter groups: sortable elements,
//! Cambrian fans, permutahedra, generalized associahedra, and cluster
//! complexes, all over exact algebraic arithmetic.

pub mod cluster;
pub mod coxeter;
pub mod export;
pub mod fans;
pub mod linalg;
pub mod polytopes;
pub mod scalar;
pub mod sortable;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("Coxeter matrix is not of finite type: {0}")]
    NonFinite(String),
    #[error("group order exceeds the configured bound ({0})")]
    GroupTooLarge(u64),
    #[error("root system closure exceeded {0} positive roots; not a finite system")]
    RootClosureTooLarge(usize),
    #[error("elements belong to different Coxeter systems")]
    SystemMismatch,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("word is not a Coxeter element: {0}")]
    NotCoxeterElement(String),
    #[error("commutation class exceeded {0} words")]
    CommutationClassTooLarge(usize),
    #[error("conflicting ray labels: {0}")]
    LabelConflict(String),
    #[error("base point is not in the interior of the fundamental chamber")]
    NotInterior,
    #[error("cone normal system is singular")]
    SingularCone,
    #[error("operation requires a crystallographic root system")]
    NotCrystallographic,
    #[error("unknown Coxeter type: {0}")]
    UnknownType(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
