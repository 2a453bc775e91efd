//! Closed planar polylines: self-crossings and complementary regions.

use std::collections::VecDeque;
use std::fmt::Write as _;

use serde::Serialize;

use super::{GeomConfig, GeometryError};

/// A closed polyline. The closing segment from the last vertex back to the
/// first is implicit.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Polyline2 {
    points: Vec<[f64; 2]>,
}

impl Polyline2 {
    /// A trailing copy of the first vertex is dropped.
    pub fn new(mut points: Vec<[f64; 2]>) -> Result<Self, GeometryError> {
        if points.len() > 1 && points.first() == points.last() {
            points.pop();
        }
        if points.len() < 3 {
            return Err(GeometryError::DegeneratePolyline("fewer than three vertices".into()));
        }
        if points.iter().flatten().any(|x| !x.is_finite()) {
            return Err(GeometryError::DegeneratePolyline("non-finite vertex".into()));
        }
        let n = points.len();
        for i in 0..n {
            if points[i] == points[(i + 1) % n] {
                return Err(GeometryError::DegeneratePolyline(format!("repeated vertex at {i}")));
            }
        }
        Ok(Polyline2 { points })
    }

    pub fn points(&self) -> &[[f64; 2]] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn segment(&self, i: usize) -> ([f64; 2], [f64; 2]) {
        (self.points[i], self.points[(i + 1) % self.points.len()])
    }

    pub fn bounding_box(&self) -> ([f64; 2], [f64; 2]) {
        let mut lo = [f64::INFINITY; 2];
        let mut hi = [f64::NEG_INFINITY; 2];
        for p in &self.points {
            for k in 0..2 {
                lo[k] = lo[k].min(p[k]);
                hi[k] = hi[k].max(p[k]);
            }
        }
        (lo, hi)
    }

    /// Header `x,y`, then every vertex with the first repeated at the end.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("x,y\n");
        for p in self.points.iter().chain(std::iter::once(&self.points[0])) {
            writeln!(out, "{},{}", p[0], p[1]).expect("write to String");
        }
        out
    }

    /// A single closed `<path>` in a viewBox with a 5% margin. The y axis is
    /// flipped so the picture has the usual orientation.
    pub fn to_svg(&self) -> String {
        let (lo, hi) = self.bounding_box();
        let (w, h) = (hi[0] - lo[0], hi[1] - lo[1]);
        let margin = 0.05 * w.max(h);
        let mut d = String::new();
        for (i, p) in self.points.iter().enumerate() {
            let cmd = if i == 0 { 'M' } else { 'L' };
            write!(d, "{cmd}{} {} ", p[0], -p[1]).expect("write to String");
        }
        d.push('Z');
        format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{} {} {} {}\">\n  \
             <path d=\"{d}\" fill=\"none\" stroke=\"black\" stroke-width=\"{}\"/>\n</svg>\n",
            lo[0] - margin,
            -hi[1] - margin,
            w + 2.0 * margin,
            h + 2.0 * margin,
            0.004 * w.max(h),
        )
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Crossing {
    pub point: [f64; 2],
    /// Indices of the two segments, `first < second`.
    pub segments: (usize, usize),
    /// `|sin|` of the angle between the two segments.
    pub angle_sine: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CrossingReport {
    pub count: usize,
    pub crossings: Vec<Crossing>,
}

impl CrossingReport {
    pub fn min_angle_sine(&self) -> f64 {
        self.crossings.iter().map(|c| c.angle_sine).fold(1.0, f64::min)
    }
}

fn cross(a: [f64; 2], b: [f64; 2]) -> f64 {
    a[0] * b[1] - a[1] * b[0]
}

fn sub(a: [f64; 2], b: [f64; 2]) -> [f64; 2] {
    [a[0] - b[0], a[1] - b[1]]
}

/// Intersection of `[p, p+r)` with `[q, q+s)`, half-open so that a crossing
/// through a shared vertex is counted once.
fn segment_intersection(p: [f64; 2], r: [f64; 2], q: [f64; 2], s: [f64; 2]) -> Option<([f64; 2], f64)> {
    let denom = cross(r, s);
    if denom == 0.0 {
        return None;
    }
    let qp = sub(q, p);
    let t = cross(qp, s) / denom;
    let u = cross(qp, r) / denom;
    if !(0.0..1.0).contains(&t) || !(0.0..1.0).contains(&u) {
        return None;
    }
    let sine = denom.abs() / (r[0].hypot(r[1]) * s[0].hypot(s[1]));
    Some(([p[0] + t * r[0], p[1] + t * r[1]], sine))
}

/// Transverse self-intersections, found by a sweep over segment x-ranges.
/// Adjacent segments are never compared. Two crossings within `tol` of each
/// other mean the sampling cannot resolve the curve.
pub fn polyline_crossings(p: &Polyline2, tol: f64) -> Result<CrossingReport, GeometryError> {
    let n = p.len();
    let mut order: Vec<usize> = (0..n).collect();
    let xmin = |i: usize| {
        let (a, b) = p.segment(i);
        a[0].min(b[0])
    };
    order.sort_by(|&i, &j| xmin(i).total_cmp(&xmin(j)).then(i.cmp(&j)));

    let mut active: Vec<usize> = Vec::new();
    let mut crossings = Vec::new();
    for &i in &order {
        let (a, b) = p.segment(i);
        let x0 = a[0].min(b[0]);
        active.retain(|&j| {
            let (c, d) = p.segment(j);
            c[0].max(d[0]) >= x0
        });
        let (ylo, yhi) = (a[1].min(b[1]), a[1].max(b[1]));
        for &j in &active {
            if j == (i + 1) % n || i == (j + 1) % n {
                continue;
            }
            let (c, d) = p.segment(j);
            if c[1].max(d[1]) < ylo || c[1].min(d[1]) > yhi {
                continue;
            }
            if let Some((point, angle_sine)) = segment_intersection(a, sub(b, a), c, sub(d, c)) {
                crossings.push(Crossing {
                    point,
                    segments: (i.min(j), i.max(j)),
                    angle_sine,
                });
            }
        }
        active.push(i);
    }
    crossings.sort_by_key(|c| c.segments);
    for (k, c) in crossings.iter().enumerate() {
        for d in &crossings[k + 1..] {
            if (c.point[0] - d.point[0]).hypot(c.point[1] - d.point[1]) <= tol {
                return Err(GeometryError::DegenerateCrossing);
            }
        }
    }
    Ok(CrossingReport {
        count: crossings.len(),
        crossings,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RegionCount {
    pub total: usize,
    pub bounded: usize,
}

/// Rasterizes the curve onto a `res x res` grid covering its bounding box,
/// plus a one-cell frame, and counts 4-connected components of the rest.
pub fn region_count_at(p: &Polyline2, res: usize) -> RegionCount {
    let (lo, hi) = p.bounding_box();
    let extent = (hi[0] - lo[0]).max(hi[1] - lo[1]);
    let cell = extent / res as f64;
    // An empty frame of cells on every side keeps the outer region connected.
    let size = res + 3;
    let mut wall = vec![false; size * size];
    let index = |x: f64, y: f64| {
        let i = (((x - lo[0]) / cell).floor() as usize).min(res) + 1;
        let j = (((y - lo[1]) / cell).floor() as usize).min(res) + 1;
        j * size + i
    };
    // Steps of at most a quarter cell leave an 8-connected trace, which
    // separates 4-connected regions.
    for s in 0..p.len() {
        let (a, b) = p.segment(s);
        let len = (b[0] - a[0]).hypot(b[1] - a[1]);
        let steps = (4.0 * len / cell).ceil().max(1.0) as usize;
        for k in 0..=steps {
            let t = k as f64 / steps as f64;
            wall[index(a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1]))] = true;
        }
    }

    let mut label = vec![usize::MAX; size * size];
    let mut total = 0;
    let mut unbounded = 0;
    let mut queue = VecDeque::new();
    for start in 0..size * size {
        if wall[start] || label[start] != usize::MAX {
            continue;
        }
        let mut touches_frame = false;
        label[start] = total;
        queue.push_back(start);
        while let Some(c) = queue.pop_front() {
            let (i, j) = (c % size, c / size);
            if i == 0 || j == 0 || i == size - 1 || j == size - 1 {
                touches_frame = true;
            }
            let mut visit = |d: usize| {
                if !wall[d] && label[d] == usize::MAX {
                    label[d] = total;
                    queue.push_back(d);
                }
            };
            if i > 0 {
                visit(c - 1);
            }
            if i + 1 < size {
                visit(c + 1);
            }
            if j > 0 {
                visit(c - size);
            }
            if j + 1 < size {
                visit(c + size);
            }
        }
        total += 1;
        if touches_frame {
            unbounded += 1;
        }
    }
    RegionCount {
        total,
        bounded: total - unbounded,
    }
}

/// Region counts at `grid_res` and `2 grid_res`; they must agree.
pub fn region_count_2d(p: &Polyline2, config: &GeomConfig) -> Result<RegionCount, GeometryError> {
    config.validate()?;
    let coarse = region_count_at(p, config.grid_res);
    let fine = region_count_at(p, 2 * config.grid_res);
    if coarse != fine {
        return Err(GeometryError::ResolutionTooLow {
            coarse: (coarse.total, coarse.bounded),
            fine: (fine.total, fine.bounded),
        });
    }
    Ok(coarse)
}

#[cfg(test)]
mod tests {
    use std::f64::consts::PI;

    use super::*;
    use crate::geometry::trefoil_polyline;

    fn sampled(n: usize, offset: f64, f: impl Fn(f64) -> [f64; 2]) -> Polyline2 {
        Polyline2::new((0..n).map(|k| f(2.0 * PI * (k as f64 + offset) / n as f64)).collect()).unwrap()
    }

    fn circle(n: usize) -> Polyline2 {
        sampled(n, 0.0, |t| [t.cos(), t.sin()])
    }

    // Offset sampling keeps the double point at t = 0, π off the vertices.
    fn figure_eight(n: usize) -> Polyline2 {
        sampled(n, 0.37, |t| [(2.0 * t).sin(), t.sin()])
    }

    #[test]
    fn rejects_degenerate_input() {
        assert!(Polyline2::new(vec![[0.0, 0.0], [1.0, 0.0]]).is_err());
        assert!(Polyline2::new(vec![[0.0, 0.0], [1.0, 0.0], [1.0, 0.0], [0.0, 1.0]]).is_err());
        let closed = Polyline2::new(vec![[0.0, 0.0], [1.0, 0.0], [0.0, 1.0], [0.0, 0.0]]).unwrap();
        assert_eq!(closed.len(), 3);
    }

    #[test]
    fn circle_counts() {
        let c = circle(200);
        assert_eq!(polyline_crossings(&c, 1e-9).unwrap().count, 0);
        assert_eq!(
            region_count_2d(&c, &GeomConfig::default()).unwrap(),
            RegionCount { total: 2, bounded: 1 }
        );
    }

    #[test]
    fn figure_eight_counts() {
        let f = figure_eight(400);
        let r = polyline_crossings(&f, 1e-9).unwrap();
        assert_eq!(r.count, 1);
        // Hand solution: the only self-intersection is at the origin.
        assert!(r.crossings[0].point[0].abs() < 1e-3 && r.crossings[0].point[1].abs() < 1e-3);
        assert_eq!(
            region_count_2d(&f, &GeomConfig::default()).unwrap(),
            RegionCount { total: 3, bounded: 2 }
        );
    }

    #[test]
    fn crossing_count_independent_of_vertex_order() {
        let f = figure_eight(300);
        let mut rev: Vec<[f64; 2]> = f.points().to_vec();
        rev.reverse();
        assert_eq!(polyline_crossings(&Polyline2::new(rev).unwrap(), 1e-9).unwrap().count, 1);
    }

    #[test]
    fn lissajous_euler_check() {
        // (sin 3t, sin 2t) has n crossings and n + 2 regions.
        let l = sampled(1200, 0.123, |t| [(3.0 * t).sin(), (2.0 * t).sin()]);
        let c = polyline_crossings(&l, 1e-9).unwrap().count;
        let r = region_count_2d(&l, &GeomConfig { grid_res: 128, ..GeomConfig::default() }).unwrap();
        assert_eq!(r.total, c + 2);
        assert_eq!(r.bounded, c + 1);
    }

    #[test]
    fn close_crossings_are_degenerate() {
        let f = figure_eight(400);
        assert_eq!(polyline_crossings(&f, 10.0), Ok(polyline_crossings(&f, 1e-9).unwrap()));
        let l = sampled(1200, 0.123, |t| [(3.0 * t).sin(), (2.0 * t).sin()]);
        assert_eq!(polyline_crossings(&l, 10.0), Err(GeometryError::DegenerateCrossing));
    }

    #[test]
    fn trefoil_counts() {
        let config = GeomConfig::default();
        let t = trefoil_polyline(&config).unwrap();
        let c = polyline_crossings(&t, config.tol).unwrap();
        assert_eq!(c.count, 3);
        assert!(c.min_angle_sine() > 0.1);
        assert_eq!(
            region_count_2d(&t, &config).unwrap(),
            RegionCount { total: 5, bounded: 4 }
        );
    }

    #[test]
    fn csv_and_svg_shape() {
        let c = circle(8);
        let csv = c.to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "x,y");
        assert_eq!(lines.len(), 10);
        assert_eq!(lines[1], lines[9]);
        assert_eq!(lines[1], "1,0");
        let svg = c.to_svg();
        assert_eq!(svg.matches("<path").count(), 1);
        assert!(svg.contains("viewBox=\"-1.1 -1.1"));
    }
}
