//! The toy maps on the disk `D = {θ : Σθ_a = 0, Σθ_a² < 1}`:
//! `f(θ) = (cos θ1 - cos θ2, cos θ2 - cos θ3)`, `g(θ) = Σ cos θ_a sin θ_a`,
//! `F = (f, g) : D -> R^3`.

use serde::Serialize;

use super::angles::AngleTriple;
use super::GeometryError;

pub fn in_disk(theta: &AngleTriple) -> bool {
    theta.norm_sq() < 1.0
}

pub fn toy_f(theta: &AngleTriple) -> [f64; 2] {
    let [c1, c2, c3] = theta.all().map(f64::cos);
    [c1 - c2, c2 - c3]
}

pub fn toy_g(theta: &AngleTriple) -> f64 {
    theta.all().iter().map(|t| t.cos() * t.sin()).sum()
}

pub fn toy_map(theta: &AngleTriple) -> [f64; 3] {
    let [a, b] = toy_f(theta);
    [a, b, toy_g(theta)]
}

/// Orthonormal coordinates on the plane `Σθ_a = 0`: `θ = u·e1 + v·e2` with
/// `e1 = (1, -1, 0)/√2`, `e2 = (1, 1, -2)/√6`, so `|θ|² = u² + v²`.
pub fn from_plane(u: f64, v: f64) -> AngleTriple {
    let (s2, s6) = (2f64.sqrt(), 6f64.sqrt());
    AngleTriple::new(u / s2 + v / s6, -u / s2 + v / s6)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ToyDefects {
    /// `|f(θ) - f(-θ)|`
    pub quotient: f64,
    /// `|g(-θ) + g(θ)|`
    pub odd: f64,
    /// `|g(θ)|` when `θ` lies on the wall, otherwise `None`.
    pub wall: Option<f64>,
}

/// Exact-zero test for wall membership; wall samples are constructed with an
/// angle set to `0.0`.
pub fn on_wall(theta: &AngleTriple) -> bool {
    theta.all().contains(&0.0)
}

pub fn toy_property_defects(theta: &AngleTriple) -> Result<ToyDefects, GeometryError> {
    if !in_disk(theta) {
        return Err(GeometryError::OutsideDomain);
    }
    let [a, b] = toy_f(theta);
    let [c, d] = toy_f(&theta.neg());
    let quotient = (a - c).hypot(b - d);
    let odd = (toy_g(&theta.neg()) + toy_g(theta)).abs();
    let wall = on_wall(theta).then(|| toy_g(theta).abs());
    Ok(ToyDefects { quotient, odd, wall })
}

/// `|∇g|` in the plane coordinates by central differences; `g` is a
/// submersion at `θ` when this is bounded away from zero.
pub fn g_gradient_norm(theta: &AngleTriple) -> f64 {
    const H: f64 = 1e-6;
    let (s2, s6) = (2f64.sqrt(), 6f64.sqrt());
    let shift = |du: f64, dv: f64| {
        AngleTriple::new(theta.t1 + du / s2 + dv / s6, theta.t2 - du / s2 + dv / s6)
    };
    let gu = (toy_g(&shift(H, 0.0)) - toy_g(&shift(-H, 0.0))) / (2.0 * H);
    let gv = (toy_g(&shift(0.0, H)) - toy_g(&shift(0.0, -H))) / (2.0 * H);
    gu.hypot(gv)
}
