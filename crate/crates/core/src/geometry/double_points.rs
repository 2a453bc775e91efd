//! Monte-Carlo search for double points `map(θ) = map(θ')`, `θ ≠ θ'`, with
//! Newton refinement and a transversality check at each one found.

use std::collections::HashMap;
use std::f64::consts::PI;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::angles::AngleTriple;
use super::numeric::{dist, fd_jacobian, norm, numerical_rank, singular_values, solve, transpose};
use super::surface::{param_distance, ParamDomain, SurfaceMap};
use super::GeomConfig;

/// Residual below which a refined pair counts as a double point.
pub const NEWTON_RESIDUAL: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DoublePoint {
    pub first: AngleTriple,
    pub second: AngleTriple,
    pub image: Vec<f64>,
    pub wall_distance: f64,
    pub combined_rank: usize,
    pub transverse: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DoublePointReport {
    pub map: SurfaceMap,
    pub samples: usize,
    pub candidates: usize,
    pub points: Vec<DoublePoint>,
}

impl DoublePointReport {
    pub fn max_wall_distance(&self) -> f64 {
        self.points.iter().map(|p| p.wall_distance).fold(0.0, f64::max)
    }

    pub fn all_transverse(&self) -> bool {
        self.points.iter().all(|p| p.transverse)
    }
}

/// Gauss–Newton with Levenberg damping on `(θ, θ') ↦ map(θ) - map(θ')`.
/// The system is underdetermined along the double curve; the damped step
/// moves to a nearby solution.
fn refine(map: SurfaceMap, a: AngleTriple, b: AngleTriple) -> Option<(AngleTriple, AngleTriple)> {
    let residual = |x: &[f64]| -> Vec<f64> {
        let (u, v) = (map.eval(&AngleTriple::new(x[0], x[1])), map.eval(&AngleTriple::new(x[2], x[3])));
        u.iter().zip(&v).map(|(p, q)| p - q).collect()
    };
    let mut x = vec![a.t1, a.t2, b.t1, b.t2];
    let mut r = residual(&x);
    let mut lambda = 1e-6;
    for _ in 0..100 {
        let rn = norm(&r);
        if rn < NEWTON_RESIDUAL {
            return Some((AngleTriple::new(x[0], x[1]), AngleTriple::new(x[2], x[3])));
        }
        let jac = fd_jacobian(residual, &x, 1e-7);
        let jt = transpose(&jac);
        let mut normal: Vec<Vec<f64>> = jt
            .iter()
            .map(|ci| jt.iter().map(|cj| ci.iter().zip(cj).map(|(p, q)| p * q).sum()).collect())
            .collect();
        let scale = (0..4).map(|i| normal[i][i]).fold(0.0, f64::max).max(1e-300);
        for (i, row) in normal.iter_mut().enumerate() {
            row[i] += lambda * scale;
        }
        let rhs: Vec<f64> = jt.iter().map(|c| -c.iter().zip(&r).map(|(p, q)| p * q).sum::<f64>()).collect();
        let step = solve(normal, rhs)?;
        let trial: Vec<f64> = x.iter().zip(&step).map(|(p, s)| p + s).collect();
        let tr = residual(&trial);
        if norm(&tr) < rn {
            x = trial;
            r = tr;
            lambda = (lambda * 0.1).max(1e-15);
        } else {
            lambda *= 10.0;
            if lambda > 1e6 {
                return None;
            }
        }
    }
    None
}

fn cell_key(p: &[f64], size: f64) -> [i64; 4] {
    let mut k = [0i64; 4];
    for (i, x) in p.iter().enumerate() {
        k[i] = (x / size).floor() as i64;
    }
    k
}

fn neighbor_keys(key: [i64; 4], dim: usize) -> Vec<[i64; 4]> {
    let mut keys = vec![key];
    for axis in 0..dim {
        let mut next = Vec::with_capacity(keys.len() * 3);
        for k in &keys {
            for d in -1..=1 {
                let mut k2 = *k;
                k2[axis] += d;
                next.push(k2);
            }
        }
        keys = next;
    }
    keys
}

/// Parameter pairs, hashed by the wrapped `(θ1, θ2)` of both members.
struct PairIndex {
    radius: f64,
    cells: i64,
    buckets: HashMap<(i64, i64), Vec<(AngleTriple, AngleTriple)>>,
}

impl PairIndex {
    fn new(radius: f64) -> Self {
        let cells = ((2.0 * PI / radius).floor() as i64).max(1);
        PairIndex {
            radius,
            cells,
            buckets: HashMap::new(),
        }
    }

    fn key(&self, t: &AngleTriple) -> (i64, i64) {
        let w = t.wrapped();
        let f = |x: f64| ((x.rem_euclid(2.0 * PI) / (2.0 * PI) * self.cells as f64) as i64).min(self.cells - 1);
        (f(w.t1), f(w.t2))
    }

    fn insert(&mut self, a: AngleTriple, b: AngleTriple) {
        self.buckets.entry(self.key(&a)).or_default().push((a, b));
        self.buckets.entry(self.key(&b)).or_default().push((b, a));
    }

    /// Whether `(x, y)` lies within `radius` of a stored pair.
    fn covers(&self, x: &AngleTriple, y: &AngleTriple) -> bool {
        let (k1, k2) = self.key(x);
        for d1 in -1..=1 {
            for d2 in -1..=1 {
                let key = ((k1 + d1).rem_euclid(self.cells), (k2 + d2).rem_euclid(self.cells));
                let Some(bucket) = self.buckets.get(&key) else { continue };
                if bucket
                    .iter()
                    .any(|(a, b)| param_distance(x, a) < self.radius && param_distance(y, b) < self.radius)
                {
                    return true;
                }
            }
        }
        false
    }
}

pub fn double_point_report(
    map: SurfaceMap,
    domain: ParamDomain,
    sample_count: usize,
    config: &GeomConfig,
) -> DoublePointReport {
    let stream = match map {
        SurfaceMap::ToyF => 1,
        SurfaceMap::QOnK => 2,
        SurfaceMap::POnK => 3,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    rng.set_stream(stream);
    let params: Vec<AngleTriple> = (0..sample_count).map(|_| domain.sample(&mut rng)).collect();
    let images: Vec<Vec<f64>> = params.iter().map(|t| map.eval(t)).collect();

    // Typical parameter spacing and the local stretch of the map set the
    // search radius of each sample.
    let spacing = (domain.area() / sample_count.max(1) as f64).sqrt();
    let stretch: Vec<f64> = params.iter().map(|t| singular_values(&map.jacobian(t))[0]).collect();
    let max_stretch = stretch.iter().copied().fold(0.0, f64::max);
    let cell = (3.0 * max_stretch * spacing).max(1e-12);
    let min_separation = 3.0 * spacing;

    let mut grid: HashMap<[i64; 4], Vec<usize>> = HashMap::new();
    for (i, img) in images.iter().enumerate() {
        grid.entry(cell_key(img, cell)).or_default().push(i);
    }

    let mut candidates = 0;
    let mut tried = PairIndex::new(min_separation);
    let mut points = Vec::new();
    for (i, img) in images.iter().enumerate() {
        for key in neighbor_keys(cell_key(img, cell), map.ambient_dim()) {
            let Some(bucket) = grid.get(&key) else { continue };
            for &j in bucket {
                if j <= i {
                    continue;
                }
                let radius = 3.0 * spacing * stretch[i].max(stretch[j]);
                if dist(img, &images[j]) > radius || param_distance(&params[i], &params[j]) < min_separation {
                    continue;
                }
                candidates += 1;
                // Neighbouring candidates refine to the same stretch of the
                // double curve, so each neighbourhood is tried once.
                if tried.covers(&params[i], &params[j]) {
                    continue;
                }
                tried.insert(params[i], params[j]);
                let Some((a, b)) = refine(map, params[i], params[j]) else { continue };
                if !domain.contains(&a) || !domain.contains(&b) || param_distance(&a, &b) < 0.5 * min_separation {
                    continue;
                }
                tried.insert(a, b);
                points.push(classify_pair(map, a, b, config));
            }
        }
    }

    DoublePointReport {
        map,
        samples: sample_count,
        candidates,
        points,
    }
}

fn classify_pair(map: SurfaceMap, a: AngleTriple, b: AngleTriple, config: &GeomConfig) -> DoublePoint {
    let mut frame = map.sheet_frame(&a);
    frame.extend(map.sheet_frame(&b));
    let combined = transpose(&frame);
    let combined_rank = numerical_rank(&singular_values(&combined), config.jacobian_tol);
    DoublePoint {
        first: a,
        second: b,
        image: map.eval(&a),
        wall_distance: a.wall_distance().max(b.wall_distance()),
        combined_rank,
        transverse: combined_rank == map.ambient_dim(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> GeomConfig {
        GeomConfig {
            seed: 11,
            ..GeomConfig::default()
        }
    }

    #[test]
    fn toy_double_points_on_wall_and_transverse() {
        let r = double_point_report(SurfaceMap::ToyF, ParamDomain::Disk, 4000, &cfg());
        assert!(!r.points.is_empty());
        assert!(r.max_wall_distance() < 1e-6, "{}", r.max_wall_distance());
        assert!(r.all_transverse());
        for p in &r.points {
            assert!(param_distance(&p.first, &p.second.neg()) < 1e-6);
        }
    }

    #[test]
    fn q_double_points_pair_theta_with_minus_theta() {
        let r = double_point_report(SurfaceMap::QOnK, ParamDomain::Torus, 4000, &cfg());
        assert!(!r.points.is_empty());
        assert!(r.max_wall_distance() < 1e-6);
        assert!(r.all_transverse());
        for p in &r.points {
            assert!(param_distance(&p.first, &p.second.neg()) < 1e-6);
        }
    }

    #[test]
    fn wall_free_patch_is_injective() {
        let patch = ParamDomain::Box {
            t1: (0.1, 1.2),
            t2: (0.1, 1.2),
        };
        let r = double_point_report(SurfaceMap::POnK, patch, 4000, &cfg());
        assert!(r.points.is_empty());
    }

    #[test]
    fn refine_converges_to_exact_pair() {
        let a = AngleTriple::new(0.31, 0.02);
        let b = AngleTriple::new(-0.29, 0.01);
        let (x, y) = refine(SurfaceMap::ToyF, a, b).unwrap();
        let d = dist(&SurfaceMap::ToyF.eval(&x), &SurfaceMap::ToyF.eval(&y));
        assert!(d < NEWTON_RESIDUAL);
    }
}
