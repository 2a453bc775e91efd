use crate::exactlin::{RatMatrix, Rational};

use super::ModelError;

/// A finite-dimensional space `W` with an automorphism `m` that does not have
/// 1 as an eigenvalue.
///
/// This is the linear-algebra model of a torsion coherent sheaf on
/// `P^1 \ {0, 1, inf}`: invertibility of `m` keeps the support away from 0 and
/// infinity, invertibility of `m - I` keeps it away from 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutPair {
    m: RatMatrix,
}

impl AutPair {
    pub fn new(m: RatMatrix) -> Result<Self, ModelError> {
        if !m.is_square() {
            return Err(ModelError::ShapeMismatch(format!(
                "automorphism must be square, got {:?}",
                m.shape()
            )));
        }
        if m.det()?.is_zero() {
            return Err(ModelError::BadAutPair("m is not invertible".into()));
        }
        let shifted = m.try_sub(&RatMatrix::identity(m.rows()))?;
        if shifted.det()?.is_zero() {
            return Err(ModelError::BadAutPair("1 is an eigenvalue of m".into()));
        }
        Ok(AutPair { m })
    }

    /// The zero-dimensional pair.
    pub fn zero() -> Self {
        AutPair {
            m: RatMatrix::zeros(0, 0),
        }
    }

    /// One-dimensional pair `(k, [lambda])`, the skyscraper at `lambda`.
    pub fn skyscraper(lambda: Rational) -> Result<Self, ModelError> {
        Self::new(RatMatrix::diagonal(&[lambda]))
    }

    pub fn dim(&self) -> usize {
        self.m.rows()
    }

    pub fn m(&self) -> &RatMatrix {
        &self.m
    }

    pub fn into_matrix(self) -> RatMatrix {
        self.m
    }

    pub fn direct_sum(&self, other: &AutPair) -> AutPair {
        AutPair {
            m: self.m.block_diag(&other.m),
        }
    }

    /// `g · m · g^{-1}`; errors if `g` is singular or the wrong size.
    pub fn conjugate(&self, g: &RatMatrix) -> Result<AutPair, ModelError> {
        let g_inv = g.invert()?;
        let m = g.try_mul(&self.m)?.try_mul(&g_inv)?;
        Ok(AutPair { m })
    }

    /// `det(x·I - m)`.
    pub fn char_poly_at(&self, x: &Rational) -> Rational {
        let n = self.dim();
        RatMatrix::identity(n)
            .scale(x)
            .try_sub(&self.m)
            .and_then(|a| a.det())
            .expect("square by construction")
    }
}
