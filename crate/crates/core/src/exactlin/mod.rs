//! Exact linear algebra over the rationals.
//!
//! Every categorical statement downstream (direct-sum checks, Hom spaces,
//! the eigenvalue-one constraint) is decided here without floating error.

mod matrix;
mod rational;

pub use matrix::{RatMatrix, Rref};
pub use rational::{ParseRationalError, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinAlgError {
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("incompatible shapes {left:?} and {right:?}")]
    ShapeMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },
}
