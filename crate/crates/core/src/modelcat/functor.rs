//! The equivalence between 4-star representations and automorphism pairs,
//! and the classification of stars with few arms.

use serde::Serialize;

use crate::exactlin::RatMatrix;

use super::{AutPair, ModelError, StarSumRep};

/// Coordinates of the graph `V_k` in the splitting `V = V_1 ⊕ V_2`.
///
/// Writing `[j_1 | j_2]^{-1} j_k = [a_k ; b_k]`, the subspace `im j_k` is the
/// graph of the slope `b_k a_k^{-1} : V_1 -> V_2`.
struct GraphSlope {
    a: RatMatrix,
    b: RatMatrix,
}

impl GraphSlope {
    fn slope(&self) -> Result<RatMatrix, ModelError> {
        Ok(self.b.try_mul(&self.a.invert()?)?)
    }
}

fn graph_coordinates(rep: &StarSumRep, k: usize) -> Result<GraphSlope, ModelError> {
    let split = rep.map(1).hstack(rep.map(2))?;
    let coords = split.invert()?.try_mul(rep.map(k))?;
    let d1 = rep.outer_dim(1);
    Ok(GraphSlope {
        a: coords.row_block(0, d1),
        b: coords.row_block(d1, rep.dim_v()),
    })
}

fn ensure_arity(rep: &StarSumRep, n: usize) -> Result<(), ModelError> {
    if rep.n() != n {
        return Err(ModelError::WrongArity {
            expected: n,
            found: rep.n(),
        });
    }
    Ok(())
}

/// The slope `m_3 : V_1 -> V_2` whose graph is `im j_3`.
fn third_slope(rep: &StarSumRep) -> Result<RatMatrix, ModelError> {
    graph_coordinates(rep, 3)?.slope()
}

/// Sends a valid 4-star to `(V_1, m_3^{-1} m_4)`.
pub fn to_autpair(rep: &StarSumRep) -> Result<AutPair, ModelError> {
    ensure_arity(rep, 4)?;
    rep.ensure_valid()?;
    let m3 = third_slope(rep)?;
    let m4 = graph_coordinates(rep, 4)?.slope()?;
    let m = m3.invert()?.try_mul(&m4)?;
    // Validity of the pair (3, 4) is exactly det(m - I) != 0.
    AutPair::new(m).map_err(|e| match e {
        ModelError::BadAutPair(r) => ModelError::InvalidRep(format!("inconsistent star: {r}")),
        other => other,
    })
}

/// `V = W ⊕ W` with `j_1, j_2` the summand inclusions, `j_3` the diagonal and
/// `j_4` the graph of `m`.
pub fn from_autpair(pair: &AutPair) -> StarSumRep {
    let d = pair.dim();
    let id = RatMatrix::identity(d);
    let zero = RatMatrix::zeros(d, d);
    let stack = |top: &RatMatrix, bottom: &RatMatrix| top.vstack(bottom).expect("same width");
    let maps = vec![
        stack(&id, &zero),
        stack(&zero, &id),
        stack(&id, &id),
        stack(&id, pair.m()),
    ];
    StarSumRep::from_maps(2 * d, maps).expect("well-formed by construction")
}

/// Checks `Φ(im j'_a) = im j_a` for one outer space.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubspaceCheck {
    pub index: usize,
    pub expected_rank: usize,
    pub image_rank: usize,
    pub joint_rank: usize,
}

impl SubspaceCheck {
    pub fn passed(&self) -> bool {
        self.image_rank == self.expected_rank && self.joint_rank == self.expected_rank
    }
}

/// An explicit isomorphism `from_autpair(to_autpair(P)) -> P`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Isomorphism {
    pub phi: RatMatrix,
    pub invertible: bool,
    pub checks: Vec<SubspaceCheck>,
}

impl Isomorphism {
    pub fn passed(&self) -> bool {
        self.invertible && self.checks.iter().all(SubspaceCheck::passed)
    }
}

fn subspace_check(index: usize, phi: &RatMatrix, source: &RatMatrix, target: &RatMatrix) -> SubspaceCheck {
    let image = phi * source;
    SubspaceCheck {
        index,
        expected_rank: target.rank(),
        image_rank: image.rank(),
        joint_rank: image.hstack(target).expect("same row count").rank(),
    }
}

/// Builds `Φ(u, w) = j_1 u + j_2 m_3 w` and verifies it carries each outer
/// subspace of the normal form onto the matching subspace of `rep`.
pub fn roundtrip_witness(rep: &StarSumRep) -> Result<Isomorphism, ModelError> {
    let pair = to_autpair(rep)?;
    let normal = from_autpair(&pair);
    let m3 = third_slope(rep)?;
    let phi = rep.map(1).hstack(&rep.map(2).try_mul(&m3)?)?;
    let invertible = phi.is_square() && !phi.det()?.is_zero();
    let checks = (1..=4)
        .map(|a| subspace_check(a, &phi, normal.map(a), rep.map(a)))
        .collect();
    Ok(Isomorphism {
        phi,
        invertible,
        checks,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Classification {
    /// `n = 1`: determined by `dim V_1`.
    Vect { dim: usize },
    /// `n = 2`: the direct sum of two copies, `(dim V_1, dim V_2)`.
    VectPair { dims: (usize, usize) },
    /// `n = 3`: determined by `V_1`; `V_3` is the graph of `m_3 : V_1 -> V_2`.
    GraphVect {
        dim: usize,
        m3: RatMatrix,
        verified: bool,
    },
    /// `n = 4`: an automorphism pair.
    AutPair(AutPair),
    Unclassified { n: usize },
}

pub fn classify(rep: &StarSumRep) -> Result<Classification, ModelError> {
    rep.ensure_valid()?;
    Ok(match rep.n() {
        1 => Classification::Vect { dim: rep.outer_dim(1) },
        2 => Classification::VectPair {
            dims: (rep.outer_dim(1), rep.outer_dim(2)),
        },
        3 => {
            let m3 = third_slope(rep)?;
            let graph = rep.map(1).try_add(&rep.map(2).try_mul(&m3)?)?;
            let check = subspace_check(3, &RatMatrix::identity(rep.dim_v()), &graph, rep.map(3));
            let verified = check.passed() && m3.is_square() && !m3.det()?.is_zero();
            Classification::GraphVect {
                dim: rep.outer_dim(1),
                m3,
                verified,
            }
        }
        4 => Classification::AutPair(to_autpair(rep)?),
        n => Classification::Unclassified { n },
    })
}
