//! The standard structures on `M = C^n` (here `n = 3`) and `N = M × R`.
//!
//! Points and tangent vectors of `M` are stored as `(x1, y1, x2, y2, x3, y3)`.

pub type Vec6 = [f64; 6];

/// `ω_M = Σ dx_a ∧ dy_a`.
pub fn omega(u: &Vec6, v: &Vec6) -> f64 {
    (0..3).map(|a| u[2 * a] * v[2 * a + 1] - u[2 * a + 1] * v[2 * a]).sum()
}

/// `α_M = Σ (x_a dy_a - y_a dx_a)` at `z`, applied to `v`.
pub fn alpha(z: &Vec6, v: &Vec6) -> f64 {
    (0..3).map(|a| z[2 * a] * v[2 * a + 1] - z[2 * a + 1] * v[2 * a]).sum()
}

/// Liouville field `v_M = Σ r_a ∂_{r_a}`, which in these coordinates is `z` itself.
pub fn liouville(z: &Vec6) -> Vec6 {
    *z
}

/// Contact form `λ_N = α_M - dt` at `(z, t)` applied to `(v, v_t)`; independent of `t`.
pub fn contact_form(z: &Vec6, v: &Vec6, v_t: f64) -> f64 {
    alpha(z, v) - v_t
}

/// Lagrangian fibration `p(z) = (x1, x2, x3)`.
pub fn p(z: &Vec6) -> [f64; 3] {
    [z[0], z[2], z[4]]
}

/// Fiber primitive `f(z) = Σ x_a y_a`.
pub fn fiber_primitive(z: &Vec6) -> f64 {
    (0..3).map(|a| z[2 * a] * z[2 * a + 1]).sum()
}

/// Legendrian fibration `q(z, t) = (x1, x2, x3, t + Σ x_a y_a)`.
pub fn q(z: &Vec6, t: f64) -> [f64; 4] {
    [z[0], z[2], z[4], t + fiber_primitive(z)]
}

/// Polar point `(r_a e^{iθ_a})_a`.
pub fn polar(r: [f64; 3], theta: [f64; 3]) -> Vec6 {
    let mut z = [0.0; 6];
    for a in 0..3 {
        z[2 * a] = r[a] * theta[a].cos();
        z[2 * a + 1] = r[a] * theta[a].sin();
    }
    z
}

/// Unit coordinate vector `∂x_a` (`imag = false`) or `∂y_a` (`imag = true`), 0-based `a`.
pub fn coordinate_vector(a: usize, imag: bool) -> Vec6 {
    let mut v = [0.0; 6];
    v[2 * a + usize::from(imag)] = 1.0;
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample(seed: u64) -> Vec6 {
        let mut s = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        let mut v = [0.0; 6];
        for x in &mut v {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            *x = ((s >> 11) as f64 / (1u64 << 53) as f64) * 2.0 - 1.0;
        }
        v
    }

    #[test]
    fn omega_is_antisymmetric() {
        for i in 0..200 {
            let (u, v) = (sample(2 * i), sample(2 * i + 1));
            assert_eq!(omega(&u, &v), -omega(&v, &u));
            assert_eq!(omega(&u, &u), 0.0);
        }
    }

    #[test]
    fn omega_on_coordinate_plane() {
        assert_eq!(omega(&coordinate_vector(0, false), &coordinate_vector(0, true)), 1.0);
        assert_eq!(omega(&coordinate_vector(0, false), &coordinate_vector(1, true)), 0.0);
    }

    #[test]
    fn liouville_contracts_omega_to_alpha() {
        for i in 0..100 {
            let (z, v) = (sample(3 * i), sample(3 * i + 1));
            let lhs = omega(&liouville(&z), &v);
            assert!((lhs - alpha(&z, &v)).abs() < 1e-15);
        }
    }

    #[test]
    fn alpha_in_polar_form() {
        // α = Σ r_a^2 dθ_a, so on ∂θ_1 it gives r_1^2.
        let (r, th) = ([1.5, 0.5, 2.0], [0.3, -1.1, 0.8]);
        let z = polar(r, th);
        let d_theta1 = [-r[0] * th[0].sin(), r[0] * th[0].cos(), 0.0, 0.0, 0.0, 0.0];
        assert!((alpha(&z, &d_theta1) - r[0] * r[0]).abs() < 1e-14);
    }

    #[test]
    fn projections() {
        let z = [1.0, 2.0, 3.0, 4.0, 5.0, 6.0];
        assert_eq!(p(&z), [1.0, 3.0, 5.0]);
        assert_eq!(q(&z, 1.0), [1.0, 3.0, 5.0, 1.0 + 2.0 + 12.0 + 30.0]);
        assert_eq!(contact_form(&z, &[0.0; 6], 2.0), -2.0);
    }
}
