use std::f64::consts::PI;

use pants_core::geometry::angles::AngleTriple;
use pants_core::geometry::link::{link_point, stereographic, toy_link_point};
use pants_core::geometry::polyline::{polyline_crossings, region_count_2d, Polyline2};
use pants_core::geometry::skeleton::{lagrangian_defect, SkeletonPoint};
use pants_core::geometry::toy::{from_plane, toy_property_defects};
use pants_core::geometry::GeomConfig;
use proptest::prelude::*;

/// Inverse of projection from `(0, …, -rho)` onto `x_d = rho`, derived
/// separately: the line through the center and `(y, rho)` meets the sphere at
/// parameter `s = 4rho² / (|y|² + 4rho²)`.
fn inverse_stereographic(y: &[f64], rho: f64) -> Vec<f64> {
    let ny: f64 = y.iter().map(|v| v * v).sum();
    let s = 4.0 * rho * rho / (ny + 4.0 * rho * rho);
    let mut p: Vec<f64> = y.iter().map(|v| s * v).collect();
    p.push(rho * (2.0 * s - 1.0));
    p
}

fn lissajous(a: f64, b: f64, n: usize, phase: f64) -> Polyline2 {
    Polyline2::new(
        (0..n)
            .map(|k| {
                let t = 2.0 * PI * (k as f64 + 0.31) / n as f64;
                [(a * t + phase).sin(), (b * t).sin()]
            })
            .collect(),
    )
    .unwrap()
}

proptest! {
    #[test]
    fn link_points_on_sphere(t1 in -PI..PI, t2 in -PI..PI, rho in 0.01f64..0.2) {
        let c = GeomConfig { rho1: rho, ..GeomConfig::default() };
        let p = link_point(&AngleTriple::new(t1, t2), &c).unwrap();
        let n = p.iter().map(|x| x * x).sum::<f64>().sqrt();
        prop_assert!((n - rho).abs() < 1e-10);
    }

    #[test]
    fn stereographic_inverts(t1 in -PI..PI, t2 in -PI..PI) {
        let c = GeomConfig::default();
        let p = link_point(&AngleTriple::new(t1, t2), &c).unwrap();
        let y = stereographic(&p, c.rho1).unwrap();
        let back = inverse_stereographic(&y, c.rho1);
        for (a, b) in p.iter().zip(&back) {
            prop_assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn toy_involution_identities(r in 0.0f64..0.999, phi in 0.0..2.0 * PI) {
        let d = toy_property_defects(&from_plane(r * phi.cos(), r * phi.sin())).unwrap();
        prop_assert!(d.quotient < 1e-12 && d.odd < 1e-12);
    }

    #[test]
    fn lagrangian_defect_conic(r in 0.1f64..10.0, t1 in -PI..PI, t2 in -PI..PI, s in 0.1f64..10.0) {
        let t = AngleTriple::new(t1, t2);
        prop_assert!(lagrangian_defect(&SkeletonPoint::new(r, t)).unwrap() < 1e-9);
        prop_assert!(lagrangian_defect(&SkeletonPoint::new(s * r, t)).unwrap() < 1e-9);
    }

    #[test]
    fn toy_link_on_sphere(phi in 0.0..2.0 * PI) {
        let c = GeomConfig::default();
        let p = toy_link_point(phi, &c).unwrap();
        prop_assert!(((p[0] * p[0] + p[1] * p[1] + p[2] * p[2]).sqrt() - c.rho1).abs() < 1e-9);
    }

    #[test]
    fn crossings_invariant_under_rigid_motion(angle in 0.0..2.0 * PI, dx in -5.0f64..5.0, shift in 0usize..400) {
        let base = lissajous(3.0, 2.0, 400, 0.2);
        let expected = polyline_crossings(&base, 1e-9).unwrap().count;
        let (c, s) = (angle.cos(), angle.sin());
        let mut pts: Vec<[f64; 2]> = base.points().iter().map(|p| [c * p[0] - s * p[1] + dx, s * p[0] + c * p[1]]).collect();
        pts.rotate_left(shift);
        let moved = Polyline2::new(pts).unwrap();
        prop_assert_eq!(polyline_crossings(&moved, 1e-9).unwrap().count, expected);
    }
}

#[test]
fn euler_count_on_lissajous_family() {
    let config = GeomConfig { grid_res: 160, ..GeomConfig::default() };
    for (a, b) in [(1.0, 2.0), (3.0, 2.0), (2.0, 3.0), (1.0, 3.0), (3.0, 4.0)] {
        let curve = lissajous(a, b, 3000, 0.2);
        let crossings = polyline_crossings(&curve, 1e-9).unwrap().count;
        let regions = region_count_2d(&curve, &config).unwrap();
        assert_eq!(regions.total, crossings + 2, "({a}, {b})");
        assert_eq!(regions.bounded, crossings + 1, "({a}, {b})");
    }
}
