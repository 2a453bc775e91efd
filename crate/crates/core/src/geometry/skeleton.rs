use serde::Serialize;

use super::angles::AngleTriple;
use super::forms::{self, Vec6};
use super::GeometryError;

/// A point `(r e^{iθ1}, r e^{iθ2}, r e^{iθ3})` of the conic skeleton `L`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SkeletonPoint {
    pub r: f64,
    pub angles: AngleTriple,
    pub ambient: Vec6,
}

impl SkeletonPoint {
    pub fn new(r: f64, angles: AngleTriple) -> Self {
        SkeletonPoint {
            r,
            angles,
            ambient: forms::polar([r; 3], angles.all()),
        }
    }

    /// Pushforwards of `∂r`, `∂θ1 - ∂θ2`, `∂θ2 - ∂θ3` to `M`.
    pub fn tangent_frame(&self) -> [Vec6; 3] {
        let th = self.angles.all();
        let mut d_r = [0.0; 6];
        let mut d_theta = [[0.0; 6]; 3];
        for a in 0..3 {
            d_r[2 * a] = th[a].cos();
            d_r[2 * a + 1] = th[a].sin();
            d_theta[a][2 * a] = -self.r * th[a].sin();
            d_theta[a][2 * a + 1] = self.r * th[a].cos();
        }
        let diff = |u: &Vec6, v: &Vec6| -> Vec6 { std::array::from_fn(|i| u[i] - v[i]) };
        [d_r, diff(&d_theta[0], &d_theta[1]), diff(&d_theta[1], &d_theta[2])]
    }
}

/// Largest `|ω_M(u, v)|` over pairs of the tangent frame; zero on a Lagrangian.
pub fn lagrangian_defect(pt: &SkeletonPoint) -> Result<f64, GeometryError> {
    if !(pt.r > 0.0) {
        return Err(GeometryError::DegeneratePoint);
    }
    let frame = pt.tangent_frame();
    let mut worst: f64 = 0.0;
    for i in 0..3 {
        for j in i + 1..3 {
            worst = worst.max(forms::omega(&frame[i], &frame[j]).abs());
        }
    }
    Ok(worst)
}

/// `|D_v f(z) - α_M(v)|` for a fiber direction `v` of `p`, where `f = Σ x_a y_a`.
pub fn fiber_primitive_defect(z: &Vec6, v: &Vec6) -> Result<f64, GeometryError> {
    if (0..3).any(|a| v[2 * a] != 0.0) {
        return Err(GeometryError::NotFiberDirection);
    }
    const H: f64 = 1e-5;
    let shifted = |s: f64| -> Vec6 { std::array::from_fn(|i| z[i] + s * v[i]) };
    let derivative = (forms::fiber_primitive(&shifted(H)) - forms::fiber_primitive(&shifted(-H))) / (2.0 * H);
    Ok((derivative - forms::alpha(z, v)).abs())
}
