//! Links of the conic hypersurfaces at the origin, and their stereographic
//! pictures.

use std::f64::consts::PI;

use super::angles::AngleTriple;
use super::polyline::Polyline2;
use super::toy::{from_plane, toy_g, toy_map};
use super::{GeomConfig, GeometryError};

/// Bisection stops once the bracket is narrower than this.
pub const ROOT_TOL: f64 = 1e-12;

fn bisect(mut lo: f64, mut hi: f64, f: impl Fn(f64) -> f64) -> f64 {
    // f(lo) < 0 <= f(hi)
    while hi - lo > ROOT_TOL {
        let mid = 0.5 * (lo + hi);
        if f(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Image of `(r, θ)` under `(r, θ) ↦ (r cos θ1, r cos θ2, r cos θ3, r² g(θ))`,
/// the cone over `q(K)`.
pub fn cone_point(r: f64, theta: &AngleTriple) -> [f64; 4] {
    let [c1, c2, c3] = theta.all().map(f64::cos);
    [r * c1, r * c2, r * c3, r * r * toy_g(theta)]
}

/// The radius at which the ray through `θ` meets the sphere of radius `rho1`.
///
/// `|image|² = r² Σcos²θ_a + r⁴ g²` is strictly increasing in `r` when
/// `Σcos²θ_a > 0`, and the root lies below `rho1 / sqrt(Σcos²θ_a)`.
pub fn link_radius(theta: &AngleTriple, config: &GeomConfig) -> Result<f64, GeometryError> {
    let s: f64 = theta.all().iter().map(|t| t.cos().powi(2)).sum();
    if s < config.tol {
        return Err(GeometryError::NoRoot);
    }
    let rho = config.rho1;
    let g = toy_g(theta);
    let hi = rho / s.sqrt();
    Ok(bisect(0.0, hi, |r| r * r * s + r.powi(4) * g * g - rho * rho))
}

pub fn link_point(theta: &AngleTriple, config: &GeomConfig) -> Result<[f64; 4], GeometryError> {
    Ok(cone_point(link_radius(theta, config)?, theta))
}

/// Projection from `c = (0, …, 0, -rho)` onto the hyperplane `x_d = rho`
/// through the antipode: `y = 2 rho x' / (x_d + rho)`.
pub fn stereographic(pt: &[f64], rho: f64) -> Result<Vec<f64>, GeometryError> {
    let d = pt.len();
    assert!(d >= 2, "stereographic projection needs at least two coordinates");
    let denom = pt[d - 1] + rho;
    if denom.abs() <= rho * 1e-12 {
        return Err(GeometryError::AtCenter);
    }
    let k = 2.0 * rho / denom;
    Ok(pt[..d - 1].iter().map(|x| k * x).collect())
}

/// Direction `φ` in the disk `D` as a unit vector in plane coordinates.
fn toy_ray(phi: f64, r: f64) -> AngleTriple {
    from_plane(r * phi.cos(), r * phi.sin())
}

/// Number of points at which monotonicity of `|F|` along a ray is checked.
const MONOTONE_CHECKS: usize = 64;

/// The point where the ray of direction `φ` in `D` meets `|F| = rho1`.
pub fn toy_link_point(phi: f64, config: &GeomConfig) -> Result<[f64; 3], GeometryError> {
    let rho = config.rho1;
    let size = |r: f64| {
        let p = toy_map(&toy_ray(phi, r));
        (p[0] * p[0] + p[1] * p[1] + p[2] * p[2]).sqrt()
    };
    let r_max = 1.0 - 1e-9;
    if size(r_max) < rho {
        return Err(GeometryError::RootFindFailure(format!("no root along ray {phi}")));
    }
    let r = bisect(0.0, r_max, |r| size(r) - rho);
    let mut prev = 0.0;
    for k in 1..=MONOTONE_CHECKS {
        let v = size(r * k as f64 / MONOTONE_CHECKS as f64);
        if v <= prev {
            return Err(GeometryError::RootFindFailure(format!(
                "|F| not monotone along ray {phi}; rho1 too large"
            )));
        }
        prev = v;
    }
    Ok(toy_map(&toy_ray(phi, r)))
}

/// Stereographic image of the toy link point in direction `φ`, projected from
/// the lowest point `(0, 0, -rho1)` of the sphere.
pub fn trefoil_point(phi: f64, config: &GeomConfig) -> Result<[f64; 2], GeometryError> {
    let p = toy_link_point(phi, config)?;
    let y = stereographic(&p, config.rho1)?;
    Ok([y[0], y[1]])
}

/// The immersed trefoil diagram traced over `ray_samples` equally spaced rays.
pub fn trefoil_polyline(config: &GeomConfig) -> Result<Polyline2, GeometryError> {
    config.validate()?;
    let n = config.ray_samples;
    let points = (0..n)
        .map(|k| trefoil_point(2.0 * PI * k as f64 / n as f64, config))
        .collect::<Result<Vec<_>, _>>()?;
    Polyline2::new(points)
}
