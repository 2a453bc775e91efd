//! Hom and Ext^1 at the abelian level.

use crate::exactlin::{RatMatrix, Rational};

use super::{AutPair, ModelError, StarSumRep};

/// A basis element of a Hom space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Morphism {
    /// `φ : V -> V'` together with the induced `φ_a : V_a -> V'_a`.
    Star { center: RatMatrix, outer: Vec<RatMatrix> },
    /// `ψ : W -> W'` with `ψ m = m' ψ`.
    Intertwiner(RatMatrix),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomSpace {
    pub dimension: usize,
    pub basis: Vec<Morphism>,
}

fn unvec(rows: usize, cols: usize, v: Vec<Rational>) -> RatMatrix {
    RatMatrix::new(rows, cols, v).expect("length rows*cols")
}

/// Morphisms `P -> P'` are maps `φ : V -> V'` with `φ(im j_a) ⊆ im j'_a` for
/// every `a`, i.e. `π'_a φ j_a = 0` for a cokernel projection `π'_a` of `j'_a`.
pub fn hom_star(p: &StarSumRep, q: &StarSumRep) -> Result<HomSpace, ModelError> {
    if p.n() != q.n() {
        return Err(ModelError::ShapeMismatch(format!(
            "Hom between stars with {} and {} arms",
            p.n(),
            q.n()
        )));
    }
    p.ensure_valid()?;
    q.ensure_valid()?;

    let (src, dst) = (p.dim_v(), q.dim_v());
    let unknowns = dst * src;
    // φ is stored row-major: φ_{rs} is unknown r*src + s.
    let mut equations: Vec<Rational> = Vec::new();
    let mut rows = 0;
    for a in 1..=p.n() {
        let proj = q.map(a).cokernel_projection();
        let j = p.map(a);
        for i in 0..proj.rows() {
            for k in 0..j.cols() {
                let start = equations.len();
                equations.resize(start + unknowns, Rational::zero());
                for r in 0..dst {
                    let c = &proj[(i, r)];
                    if c.is_zero() {
                        continue;
                    }
                    for s in 0..src {
                        let js = &j[(s, k)];
                        if !js.is_zero() {
                            equations[start + r * src + s] = c * js;
                        }
                    }
                }
                rows += 1;
            }
        }
    }
    let system = RatMatrix::new(rows, unknowns, equations)?;
    let basis = system
        .kernel_basis()
        .into_iter()
        .map(|v| {
            let center = unvec(dst, src, v);
            let outer = (1..=p.n())
                .map(|a| induced_component(&center, p.map(a), q.map(a)))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Morphism::Star { center, outer })
        })
        .collect::<Result<Vec<_>, ModelError>>()?;
    Ok(HomSpace {
        dimension: basis.len(),
        basis,
    })
}

/// The unique `φ_a` with `j'_a φ_a = φ j_a`.
fn induced_component(phi: &RatMatrix, j: &RatMatrix, j_target: &RatMatrix) -> Result<RatMatrix, ModelError> {
    let image = phi.try_mul(j)?;
    let mut out = RatMatrix::zeros(j_target.cols(), j.cols());
    for k in 0..j.cols() {
        let x = j_target
            .solve(&image.col(k))?
            .ok_or_else(|| ModelError::InvalidRep("morphism leaves an outer subspace".into()))?;
        for (r, v) in x.into_iter().enumerate() {
            out[(r, k)] = v;
        }
    }
    Ok(out)
}

/// Matrix of `ψ ↦ m'ψ - ψm` acting on row-major `ψ : W -> W'`.
fn intertwining_operator(a: &AutPair, b: &AutPair) -> RatMatrix {
    let (src, dst) = (a.dim(), b.dim());
    let n = dst * src;
    let (m, mp) = (a.m(), b.m());
    let mut op = RatMatrix::zeros(n, n);
    for i in 0..dst {
        for k in 0..src {
            let row = i * src + k;
            for r in 0..dst {
                op[(row, r * src + k)] += &mp[(i, r)];
            }
            for s in 0..src {
                op[(row, i * src + s)] -= &m[(s, k)];
            }
        }
    }
    op
}

pub fn hom_autpair(a: &AutPair, b: &AutPair) -> HomSpace {
    let basis: Vec<Morphism> = intertwining_operator(a, b)
        .kernel_basis()
        .into_iter()
        .map(|v| Morphism::Intertwiner(unvec(b.dim(), a.dim(), v)))
        .collect();
    HomSpace {
        dimension: basis.len(),
        basis,
    }
}

/// `dim coker(ψ ↦ m'ψ - ψm)`, from the two-term resolution of a torsion module.
pub fn ext1_autpair(a: &AutPair, b: &AutPair) -> usize {
    let op = intertwining_operator(a, b);
    let ext = op.rows() - op.rank();
    debug_assert_eq!(ext, op.kernel_basis().len(), "square operator balances");
    ext
}
