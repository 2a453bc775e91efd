//! Exact linear algebra, category models of microlocal sheaves on the
//! pair-of-pants skeleton, and numerical checks of the underlying geometry.

pub mod exactlin;
pub mod geometry;
pub mod modelcat;

pub use exactlin::{LinAlgError, RatMatrix, Rational};
pub use geometry::{GeomConfig, GeometryError};
pub use modelcat::{AutPair, ModelError, StarSumRep};
