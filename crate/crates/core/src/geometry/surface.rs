use std::f64::consts::PI;

use rand::Rng;
use serde::Serialize;

use super::angles::{circle_distance, AngleTriple};
use super::numeric::{fd_jacobian, numerical_rank, singular_values};
use super::toy::{from_plane, in_disk, toy_g, toy_map};
use super::{GeomConfig, GeometryError};

/// Finite-difference step for rank profiles.
pub const JACOBIAN_STEP: f64 = 1e-6;

/// The parametrized surfaces whose immersion and double-point structure is checked.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SurfaceMap {
    /// `F = (f, g) : D -> R^3`.
    ToyF,
    /// `q` on the torus `K`: `θ ↦ (cos θ1, cos θ2, cos θ3, g(θ))`.
    QOnK,
    /// `p` on the torus `K`: `θ ↦ (cos θ1, cos θ2, cos θ3)`.
    POnK,
}

impl SurfaceMap {
    pub fn eval(&self, theta: &AngleTriple) -> Vec<f64> {
        match self {
            SurfaceMap::ToyF => toy_map(theta).to_vec(),
            SurfaceMap::QOnK => {
                let [c1, c2, c3] = theta.all().map(f64::cos);
                vec![c1, c2, c3, toy_g(theta)]
            }
            SurfaceMap::POnK => theta.all().map(f64::cos).to_vec(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        match self {
            SurfaceMap::ToyF | SurfaceMap::POnK => 3,
            SurfaceMap::QOnK => 4,
        }
    }

    pub fn natural_domain(&self) -> ParamDomain {
        match self {
            SurfaceMap::ToyF => ParamDomain::Disk,
            SurfaceMap::QOnK | SurfaceMap::POnK => ParamDomain::Torus,
        }
    }

    pub fn jacobian(&self, theta: &AngleTriple) -> Vec<Vec<f64>> {
        fd_jacobian(
            |x| self.eval(&AngleTriple::from_slice(x)),
            &[theta.t1, theta.t2],
            JACOBIAN_STEP,
        )
    }

    /// Columns spanning the tangent space of the sheet through `θ` inside the
    /// hypersurface it sweeps out. For `q` this is the cone `r ↦ (r x, r² g)`
    /// over the torus, so the radial direction `(x, 2g)` is included.
    pub fn sheet_frame(&self, theta: &AngleTriple) -> Vec<Vec<f64>> {
        let mut cols = super::numeric::transpose(&self.jacobian(theta));
        if *self == SurfaceMap::QOnK {
            let v = self.eval(theta);
            cols.push(vec![v[0], v[1], v[2], 2.0 * v[3]]);
        }
        cols
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct JacobianProfile {
    pub singular_values: Vec<f64>,
    pub rank: usize,
}

pub fn jacobian_rank_profile(
    map: SurfaceMap,
    theta: &AngleTriple,
    config: &GeomConfig,
) -> Result<JacobianProfile, GeometryError> {
    if !map.natural_domain().contains(theta) {
        return Err(GeometryError::OutsideDomain);
    }
    let singular_values = singular_values(&map.jacobian(theta));
    let rank = numerical_rank(&singular_values, config.jacobian_tol);
    Ok(JacobianProfile { singular_values, rank })
}

/// Parameter regions for sampling.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ParamDomain {
    /// The open disk `D`.
    Disk,
    /// The whole torus.
    Torus,
    /// `lo1 < θ1 < hi1`, `lo2 < θ2 < hi2`.
    Box { t1: (f64, f64), t2: (f64, f64) },
}

impl ParamDomain {
    pub fn contains(&self, theta: &AngleTriple) -> bool {
        match self {
            ParamDomain::Disk => in_disk(theta),
            ParamDomain::Torus => theta.t1.is_finite() && theta.t2.is_finite(),
            ParamDomain::Box { t1, t2 } => t1.0 < theta.t1 && theta.t1 < t1.1 && t2.0 < theta.t2 && theta.t2 < t2.1,
        }
    }

    pub fn sample<R: Rng>(&self, rng: &mut R) -> AngleTriple {
        match self {
            ParamDomain::Disk => loop {
                let (u, v): (f64, f64) = (rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                if u * u + v * v < 1.0 {
                    return from_plane(u, v);
                }
            },
            ParamDomain::Torus => AngleTriple::new(rng.gen_range(0.0..2.0 * PI), rng.gen_range(0.0..2.0 * PI)),
            ParamDomain::Box { t1, t2 } => AngleTriple::new(rng.gen_range(t1.0..t1.1), rng.gen_range(t2.0..t2.1)),
        }
    }

    /// Area in the metric of [`param_distance`].
    pub fn area(&self) -> f64 {
        let s3 = 3f64.sqrt();
        match self {
            ParamDomain::Disk => PI,
            ParamDomain::Torus => 4.0 * PI * PI * s3,
            ParamDomain::Box { t1, t2 } => (t1.1 - t1.0) * (t2.1 - t2.0) * s3,
        }
    }
}

/// Distance between angle triples, each angle measured on the circle.
pub fn param_distance(a: &AngleTriple, b: &AngleTriple) -> f64 {
    a.all()
        .iter()
        .zip(b.all())
        .map(|(x, y)| circle_distance(*x, y).powi(2))
        .sum::<f64>()
        .sqrt()
}
