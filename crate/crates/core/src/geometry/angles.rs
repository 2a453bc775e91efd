use std::f64::consts::PI;

use serde::Serialize;

/// Angles `(θ1, θ2, θ3)` with `θ3 = -θ1 - θ2`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct AngleTriple {
    pub t1: f64,
    pub t2: f64,
}

impl AngleTriple {
    pub const fn new(t1: f64, t2: f64) -> Self {
        AngleTriple { t1, t2 }
    }

    pub fn t3(&self) -> f64 {
        -self.t1 - self.t2
    }

    pub fn all(&self) -> [f64; 3] {
        [self.t1, self.t2, self.t3()]
    }

    /// The involution `θ ↦ -θ`.
    pub fn neg(&self) -> Self {
        AngleTriple::new(-self.t1, -self.t2)
    }

    pub fn norm_sq(&self) -> f64 {
        self.all().iter().map(|t| t * t).sum()
    }

    pub fn from_slice(x: &[f64]) -> Self {
        AngleTriple::new(x[0], x[1])
    }

    /// Representative with `t1, t2` in `[0, 2π)`.
    pub fn wrapped(&self) -> Self {
        AngleTriple::new(self.t1.rem_euclid(2.0 * PI), self.t2.rem_euclid(2.0 * PI))
    }

    /// Distance to the wall: the smallest distance from some `θ_a` to `πZ`,
    /// i.e. to the zero set of `sin θ1 sin θ2 sin θ3`.
    pub fn wall_distance(&self) -> f64 {
        self.all()
            .iter()
            .map(|t| {
                let r = t.rem_euclid(PI);
                r.min(PI - r)
            })
            .fold(f64::INFINITY, f64::min)
    }
}

/// Distance between two angles on the circle.
pub fn circle_distance(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(2.0 * PI);
    d.min(2.0 * PI - d)
}
