use serde::Serialize;

use super::GeometryError;

/// Every "small enough" constant of the geometric constructions.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GeomConfig {
    /// Radius of the link sphere.
    pub rho1: f64,
    /// Tolerance for pointwise identities.
    pub tol: f64,
    /// Singular values at or below this count as zero.
    pub jacobian_tol: f64,
    /// Monte-Carlo sample count.
    pub samples: usize,
    /// Number of rays used to trace the trefoil curve.
    pub ray_samples: usize,
    /// Raster resolution per axis for region counting.
    pub grid_res: usize,
    pub seed: u64,
}

impl Default for GeomConfig {
    fn default() -> Self {
        GeomConfig {
            rho1: 0.1,
            tol: 1e-9,
            jacobian_tol: 1e-6,
            samples: 10_000,
            ray_samples: 2048,
            grid_res: 96,
            seed: 0,
        }
    }
}

impl GeomConfig {
    pub fn validate(&self) -> Result<(), GeometryError> {
        let bad = |what: &str| Err(GeometryError::InvalidConfig(what.to_string()));
        if !(self.rho1.is_finite() && self.rho1 > 0.0) {
            return bad("rho1 must be positive");
        }
        if !(self.tol.is_finite() && self.tol > 0.0) {
            return bad("tol must be positive");
        }
        if !(self.jacobian_tol.is_finite() && self.jacobian_tol > 0.0) {
            return bad("jacobian_tol must be positive");
        }
        if self.samples == 0 {
            return bad("samples must be positive");
        }
        if self.ray_samples < 16 {
            return bad("ray_samples must be at least 16");
        }
        if self.grid_res < 8 {
            return bad("grid_res must be at least 8");
        }
        Ok(())
    }
}
