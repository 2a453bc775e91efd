//! The sampled verification suites behind `verify-geometry`.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::angles::AngleTriple;
use super::double_points::double_point_report;
use super::forms::{self, Vec6};
use super::skeleton::{fiber_primitive_defect, lagrangian_defect, SkeletonPoint};
use super::surface::{jacobian_rank_profile, param_distance, ParamDomain, SurfaceMap};
use super::toy::{g_gradient_norm, toy_property_defects};
use super::{GeomConfig, GeometryError};

/// Samples used for each rank profile check.
pub const RANK_SAMPLES: usize = 1000;
/// Rank checks away from a bad set keep at least this distance from it.
pub const AWAY_DISTANCE: f64 = 0.1;
/// Double points must lie this close to the wall.
pub const WALL_TOL: f64 = 1e-6;

/// The ramification points of `p` on `K`.
pub const RAMIFICATION: [(f64, f64); 4] = [(0.0, 0.0), (0.0, PI), (PI, 0.0), (PI, PI)];

/// How a check compares its worst value against the threshold.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Bound {
    /// The largest value must stay below the threshold.
    Below,
    /// The smallest value must stay above the threshold.
    Above,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub samples: usize,
    pub worst: f64,
    pub bound: Bound,
    pub threshold: f64,
    pub passed: bool,
}

impl Check {
    fn below(name: &str, samples: usize, worst: f64, threshold: f64) -> Self {
        Check {
            name: name.to_string(),
            samples,
            worst,
            bound: Bound::Below,
            threshold,
            passed: worst < threshold,
        }
    }

    fn above(name: &str, samples: usize, worst: f64, threshold: f64) -> Self {
        Check {
            name: name.to_string(),
            samples,
            worst,
            bound: Bound::Above,
            threshold,
            passed: worst > threshold,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GeometryReport {
    pub checks: Vec<Check>,
    pub passed: bool,
}

fn stream(config: &GeomConfig, id: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    rng.set_stream(100 + id);
    rng
}

fn max_of(it: impl Iterator<Item = f64>) -> f64 {
    it.fold(0.0, f64::max)
}

fn min_of(it: impl Iterator<Item = f64>) -> f64 {
    it.fold(f64::INFINITY, f64::min)
}

/// A point of the wall inside `D`: one angle is exactly zero.
fn wall_sample<R: Rng>(rng: &mut R) -> AngleTriple {
    let s: f64 = rng.gen_range(-1.0..1.0) / 2f64.sqrt();
    match rng.gen_range(0..3) {
        0 => AngleTriple::new(0.0, s),
        1 => AngleTriple::new(s, 0.0),
        _ => AngleTriple::new(s, -s),
    }
}

fn unit_fiber_direction<R: Rng>(rng: &mut R) -> Vec6 {
    let mut v = [0.0; 6];
    for a in 0..3 {
        v[2 * a + 1] = rng.gen_range(-1.0..1.0);
    }
    let n = v.iter().map(|x| x * x).sum::<f64>().sqrt().max(1e-3);
    v.map(|x| x / n)
}

/// Pointwise identities of the toy model and the symplectic forms, each over
/// `config.samples` seeded samples.
pub fn identity_checks(config: &GeomConfig) -> Result<Vec<Check>, GeometryError> {
    config.validate()?;
    let n = config.samples;
    let tol = config.tol;
    let mut checks = Vec::new();

    let mut rng = stream(config, 1);
    let disk: Vec<AngleTriple> = (0..n).map(|_| ParamDomain::Disk.sample(&mut rng)).collect();
    let defects = disk.iter().map(toy_property_defects).collect::<Result<Vec<_>, _>>()?;
    checks.push(Check::below("toy_quotient", n, max_of(defects.iter().map(|d| d.quotient)), tol));
    checks.push(Check::below("toy_odd", n, max_of(defects.iter().map(|d| d.odd)), tol));

    let mut rng = stream(config, 2);
    let wall: Vec<AngleTriple> = (0..n).map(|_| wall_sample(&mut rng)).collect();
    let wall_defects = wall.iter().map(toy_property_defects).collect::<Result<Vec<_>, _>>()?;
    checks.push(Check::below(
        "toy_wall_zero",
        n,
        max_of(wall_defects.iter().map(|d| d.wall.unwrap_or(f64::INFINITY))),
        tol,
    ));
    // g vanishes to third order at the origin, so the submersion check
    // stays a little away from it.
    let off_origin: Vec<&AngleTriple> = wall.iter().filter(|t| t.norm_sq() >= 1e-4).collect();
    checks.push(Check::above(
        "toy_g_submersion_on_wall",
        off_origin.len(),
        min_of(off_origin.iter().map(|t| g_gradient_norm(t))),
        config.jacobian_tol,
    ));

    let mut rng = stream(config, 3);
    let mut lag = Vec::with_capacity(n);
    let mut conic: f64 = 0.0;
    for _ in 0..n {
        let r = rng.gen_range(0.1..10.0);
        let t = ParamDomain::Torus.sample(&mut rng);
        lag.push(lagrangian_defect(&SkeletonPoint::new(r, t))?);
        for s in [0.5, 2.0, 10.0] {
            conic = conic.max(lagrangian_defect(&SkeletonPoint::new(s * r, t))?);
        }
    }
    checks.push(Check::below("lagrangian", n, max_of(lag.into_iter()), tol));
    checks.push(Check::below("lagrangian_conic", 3 * n, conic, tol));

    let mut rng = stream(config, 4);
    let mut fiber: f64 = 0.0;
    let mut antisym: f64 = 0.0;
    for _ in 0..n {
        let z: Vec6 = std::array::from_fn(|_| rng.gen_range(-1.0..1.0));
        let v = unit_fiber_direction(&mut rng);
        fiber = fiber.max(fiber_primitive_defect(&z, &v)?);
        antisym = antisym.max((forms::omega(&z, &v) + forms::omega(&v, &z)).abs());
    }
    checks.push(Check::below("fiber_primitive", n, fiber, tol));
    checks.push(Check::below("omega_antisymmetry", n, antisym, tol));
    Ok(checks)
}

fn distance_to_ramification(t: &AngleTriple) -> f64 {
    min_of(
        RAMIFICATION
            .iter()
            .map(|&(a, b)| param_distance(t, &AngleTriple::new(a, b))),
    )
}

fn second_singular_value(map: SurfaceMap, t: &AngleTriple, config: &GeomConfig) -> Result<f64, GeometryError> {
    Ok(jacobian_rank_profile(map, t, config)?.singular_values[1])
}

/// Rank drops of `p|_K` exactly at the ramification points, immersion of
/// `q|_K` away from them, and of `F` away from the origin.
pub fn rank_checks(config: &GeomConfig) -> Result<Vec<Check>, GeometryError> {
    config.validate()?;
    let tol = config.jacobian_tol;
    let mut checks = Vec::new();

    let at_r = RAMIFICATION
        .iter()
        .map(|&(a, b)| second_singular_value(SurfaceMap::POnK, &AngleTriple::new(a, b), config))
        .collect::<Result<Vec<_>, _>>()?;
    checks.push(Check::below("p_rank_drop_at_ramification", 4, max_of(at_r.into_iter()), tol));

    let mut rng = stream(config, 5);
    let mut away = Vec::with_capacity(RANK_SAMPLES);
    while away.len() < RANK_SAMPLES {
        let t = ParamDomain::Torus.sample(&mut rng);
        if distance_to_ramification(&t) >= AWAY_DISTANCE {
            away.push(t);
        }
    }
    for (name, map) in [("p_rank_2_away_from_ramification", SurfaceMap::POnK), ("q_rank_2_away_from_ramification", SurfaceMap::QOnK)] {
        let s = away
            .iter()
            .map(|t| second_singular_value(map, t, config))
            .collect::<Result<Vec<_>, _>>()?;
        checks.push(Check::above(name, away.len(), min_of(s.into_iter()), tol));
    }

    let origin = second_singular_value(SurfaceMap::ToyF, &AngleTriple::new(0.0, 0.0), config)?;
    checks.push(Check::below("toy_rank_drop_at_origin", 1, origin, tol));
    let mut rng = stream(config, 6);
    let mut disk = Vec::with_capacity(RANK_SAMPLES);
    while disk.len() < RANK_SAMPLES {
        let t = ParamDomain::Disk.sample(&mut rng);
        if t.norm_sq().sqrt() >= AWAY_DISTANCE {
            disk.push(t);
        }
    }
    let s = disk
        .iter()
        .map(|t| second_singular_value(SurfaceMap::ToyF, t, config))
        .collect::<Result<Vec<_>, _>>()?;
    checks.push(Check::above("toy_rank_2_away_from_origin", disk.len(), min_of(s.into_iter()), tol));
    Ok(checks)
}

/// A wall-free patch of `K`: `0.1 < θ1, θ2 < 1.2`, hence `-2.4 < θ3 < -0.2`.
pub const WALL_FREE_PATCH: ParamDomain = ParamDomain::Box {
    t1: (0.1, 1.2),
    t2: (0.1, 1.2),
};

/// Double points of `F` and `q|_K` on the wall and transverse; none for `p`
/// on a wall-free patch.
pub fn double_point_checks(config: &GeomConfig) -> Result<Vec<Check>, GeometryError> {
    config.validate()?;
    let n = config.samples;
    let mut checks = Vec::new();
    for (label, map) in [("toy", SurfaceMap::ToyF), ("q", SurfaceMap::QOnK)] {
        let r = double_point_report(map, map.natural_domain(), n, config);
        checks.push(Check::above(&format!("{label}_double_points_found"), n, r.points.len() as f64, 0.0));
        checks.push(Check::below(
            &format!("{label}_double_points_on_wall"),
            r.points.len(),
            r.max_wall_distance(),
            WALL_TOL,
        ));
        let nontransverse = r.points.iter().filter(|p| !p.transverse).count();
        checks.push(Check::below(
            &format!("{label}_double_points_nontransverse"),
            r.points.len(),
            nontransverse as f64,
            0.5,
        ));
    }
    let patch = double_point_report(SurfaceMap::POnK, WALL_FREE_PATCH, n, config);
    checks.push(Check::below("p_double_points_off_wall", n, patch.points.len() as f64, 0.5));
    Ok(checks)
}

pub fn verify_geometry(config: &GeomConfig) -> Result<GeometryReport, GeometryError> {
    let mut checks = identity_checks(config)?;
    checks.extend(rank_checks(config)?);
    checks.extend(double_point_checks(config)?);
    let passed = checks.iter().all(|c| c.passed);
    Ok(GeometryReport { checks, passed })
}
