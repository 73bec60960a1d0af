//! Structured errors for the engine.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExactLinError {
    #[error("block at source degree {source_degree} has shape {got:?}, expected {expected:?}")]
    ShapeMismatch {
        source_degree: i32,
        expected: (usize, usize),
        got: (usize, usize),
    },
    #[error("composition mismatch at degree {degree}: left target dim {left_dim}, right source dim {right_dim}")]
    ComposeMismatch {
        degree: i32,
        left_dim: usize,
        right_dim: usize,
    },
    #[error("differential does not square to zero (first failure at degree {degree})")]
    NotAComplex { degree: i32 },
    #[error("map does not commute with the differentials (first failure at degree {degree})")]
    NotAChainMap { degree: i32 },
    #[error("element is not a cycle")]
    NotACycle,
    #[error("contraction precondition `{which}` fails first at degree {degree}")]
    ContractionPrecondition { which: &'static str, degree: i32 },
    #[error("map is not homotopy invertible")]
    NotHomotopyInvertible,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CatError {
    #[error("arity {arity} exceeds truncation {max_arity}")]
    ArityOverflow { arity: usize, max_arity: usize },
    #[error("categories do not match: {0}")]
    CategoryMismatch(String),
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error(transparent)]
    Lin(#[from] ExactLinError),
}
