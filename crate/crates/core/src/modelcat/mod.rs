//! Exact models of the region categories.
//!
//! A [`StarSumRep`] is a center space `V` with outer spaces `V_a -> V` such
//! that every pair of distinct outer spaces splits `V` as a direct sum. With one
//! or two arms this is the directed A2 / A3 quiver picture; with three arms it
//! is the trefoil category; with four arms it is the pants category, which is
//! equivalent to automorphism pairs [`AutPair`] via [`to_autpair`] and
//! [`from_autpair`].

mod autpair;
mod functor;
mod hom;
pub mod io;
pub mod random;
mod star;

pub use autpair::AutPair;
pub use functor::{classify, from_autpair, roundtrip_witness, to_autpair, Classification, Isomorphism, SubspaceCheck};
pub use hom::{ext1_autpair, hom_autpair, hom_star, HomSpace, Morphism};
pub use random::{graph_star, random_pants, random_trefoil};
pub use star::{OuterSpace, PairCheck, StarSumRep, ValidationReport, MAX_OUTER};

use crate::exactlin::LinAlgError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModelError {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("a star rep needs 1..={max} outer spaces, got {found}")]
    Arity { found: usize, max: usize },
    #[error("operation needs {expected} outer spaces, got {found}")]
    WrongArity { expected: usize, found: usize },
    #[error("invalid rep: {0}")]
    InvalidRep(String),
    #[error("bad automorphism pair: {0}")]
    BadAutPair(String),
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
}
