use serde::Serialize;

use crate::exactlin::{RatMatrix, Rational};

use super::ModelError;

/// Largest number of outer spaces accepted by [`StarSumRep::new`].
pub const MAX_OUTER: usize = 8;

/// One outer space `V_a` together with its map `j_a : V_a -> V`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OuterSpace {
    pub dim: usize,
    /// Shape `dim V x dim V_a`.
    pub map: RatMatrix,
}

/// Center space `V` with outer spaces `V_1..V_n` mapping into it.
///
/// Well-formedness (shapes, arity) is checked on construction; the pairwise
/// direct-sum condition is checked by [`StarSumRep::validate`] so that invalid
/// data can still be loaded and reported on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarSumRep {
    dim_v: usize,
    outer: Vec<OuterSpace>,
}

/// Determinant of `[j_a | j_b]` for one unordered pair. `det` is `None` when
/// the dimensions do not add up to `dim V`, so the block is not square.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairCheck {
    pub a: usize,
    pub b: usize,
    pub det: Option<Rational>,
}

impl PairCheck {
    pub fn is_iso(&self) -> bool {
        self.det.as_ref().is_some_and(|d| !d.is_zero())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub valid: bool,
    /// Every pair `a < b` (1-based) for `n >= 2`.
    pub pairs: Vec<PairCheck>,
    /// `det j_1` for `n = 1`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub single: Option<Option<Rational>>,
}

impl ValidationReport {
    pub fn failing_pairs(&self) -> impl Iterator<Item = &PairCheck> {
        self.pairs.iter().filter(|p| !p.is_iso())
    }
}

impl StarSumRep {
    pub fn new(dim_v: usize, outer: Vec<OuterSpace>) -> Result<Self, ModelError> {
        if outer.is_empty() || outer.len() > MAX_OUTER {
            return Err(ModelError::Arity {
                found: outer.len(),
                max: MAX_OUTER,
            });
        }
        for (a, o) in outer.iter().enumerate() {
            if o.map.shape() != (dim_v, o.dim) {
                return Err(ModelError::ShapeMismatch(format!(
                    "j_{} has shape {:?}, expected {:?}",
                    a + 1,
                    o.map.shape(),
                    (dim_v, o.dim)
                )));
            }
        }
        Ok(StarSumRep { dim_v, outer })
    }

    /// Builds a rep from the maps alone; outer dimensions are read off the columns.
    pub fn from_maps(dim_v: usize, maps: Vec<RatMatrix>) -> Result<Self, ModelError> {
        let outer = maps
            .into_iter()
            .map(|map| OuterSpace { dim: map.cols(), map })
            .collect();
        Self::new(dim_v, outer)
    }

    /// The rep with every space zero.
    pub fn zero(n: usize) -> Self {
        Self::from_maps(0, vec![RatMatrix::zeros(0, 0); n]).expect("arity in range")
    }

    pub fn n(&self) -> usize {
        self.outer.len()
    }

    pub fn dim_v(&self) -> usize {
        self.dim_v
    }

    pub fn outer(&self) -> &[OuterSpace] {
        &self.outer
    }

    /// `j_a` with a 1-based index.
    pub fn map(&self, a: usize) -> &RatMatrix {
        &self.outer[a - 1].map
    }

    pub fn outer_dim(&self, a: usize) -> usize {
        self.outer[a - 1].dim
    }

    pub fn validate(&self) -> ValidationReport {
        if self.n() == 1 {
            let j = self.map(1);
            let det = j.det().ok();
            let valid = det.as_ref().is_some_and(|d| !d.is_zero());
            return ValidationReport {
                valid,
                pairs: Vec::new(),
                single: Some(det),
            };
        }
        let mut pairs = Vec::new();
        for a in 1..=self.n() {
            for b in a + 1..=self.n() {
                let det = if self.outer_dim(a) + self.outer_dim(b) == self.dim_v {
                    let block = self.map(a).hstack(self.map(b)).expect("same row count");
                    Some(block.det().expect("square block"))
                } else {
                    None
                };
                pairs.push(PairCheck { a, b, det });
            }
        }
        let valid = pairs.iter().all(PairCheck::is_iso);
        ValidationReport {
            valid,
            pairs,
            single: None,
        }
    }

    pub fn is_valid(&self) -> bool {
        self.validate().valid
    }

    pub(crate) fn ensure_valid(&self) -> Result<(), ModelError> {
        let report = self.validate();
        if report.valid {
            return Ok(());
        }
        let reason = if self.n() == 1 {
            "j_1 is not an isomorphism".to_string()
        } else {
            let bad: Vec<String> = report
                .failing_pairs()
                .map(|p| format!("({},{})", p.a, p.b))
                .collect();
            format!("pairs {} do not give a direct sum", bad.join(", "))
        };
        Err(ModelError::InvalidRep(reason))
    }

    /// Applies a change of basis: `j_a <- g · j_a · h_a`.
    pub fn change_basis(&self, g: &RatMatrix, h: &[RatMatrix]) -> Result<Self, ModelError> {
        if g.shape() != (self.dim_v, self.dim_v) || h.len() != self.n() {
            return Err(ModelError::ShapeMismatch("change of basis".into()));
        }
        let maps = self
            .outer
            .iter()
            .zip(h)
            .map(|(o, h)| {
                if h.shape() != (o.dim, o.dim) {
                    return Err(ModelError::ShapeMismatch("outer change of basis".into()));
                }
                Ok(&(g * &o.map) * h)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_maps(self.dim_v, maps)
    }

    /// Reorders the outer spaces: the new `a`-th space is the old `perm[a]`-th (0-based).
    pub fn permute(&self, perm: &[usize]) -> Result<Self, ModelError> {
        let mut seen = vec![false; self.n()];
        if perm.len() != self.n() || perm.iter().any(|&p| p >= self.n() || std::mem::replace(&mut seen[p], true)) {
            return Err(ModelError::ShapeMismatch("not a permutation".into()));
        }
        let outer = perm.iter().map(|&p| self.outer[p].clone()).collect();
        Self::new(self.dim_v, outer)
    }
}
