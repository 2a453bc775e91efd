//! Small dense numerics: finite-difference Jacobians, one-sided Jacobi SVD,
//! and a pivoted solver. Dimensions here never exceed a handful.

/// Dense row-major matrix stored as rows.
pub type Mat = Vec<Vec<f64>>;

/// Central-difference Jacobian of `f` at `x`; shape `f(x).len() x x.len()`.
pub fn fd_jacobian<F>(f: F, x: &[f64], h: f64) -> Mat
where
    F: Fn(&[f64]) -> Vec<f64>,
{
    let m = f(x).len();
    let mut jac = vec![vec![0.0; x.len()]; m];
    let mut xp = x.to_vec();
    for j in 0..x.len() {
        xp[j] = x[j] + h;
        let fp = f(&xp);
        xp[j] = x[j] - h;
        let fm = f(&xp);
        xp[j] = x[j];
        for i in 0..m {
            jac[i][j] = (fp[i] - fm[i]) / (2.0 * h);
        }
    }
    jac
}

pub fn transpose(a: &Mat) -> Mat {
    let cols = a.first().map_or(0, Vec::len);
    (0..cols).map(|j| a.iter().map(|row| row[j]).collect()).collect()
}

/// Singular values in descending order, by one-sided (Hestenes) Jacobi.
pub fn singular_values(a: &Mat) -> Vec<f64> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    // Orthogonalize the columns of whichever orientation has fewer of them.
    let mut cols_vec: Vec<Vec<f64>> = if cols <= rows {
        transpose(a)
    } else {
        a.clone()
    };
    let k = cols_vec.len();
    for _sweep in 0..60 {
        let mut rotated = false;
        for p in 0..k {
            for q in p + 1..k {
                let alpha: f64 = cols_vec[p].iter().map(|x| x * x).sum();
                let beta: f64 = cols_vec[q].iter().map(|x| x * x).sum();
                let gamma: f64 = cols_vec[p].iter().zip(&cols_vec[q]).map(|(x, y)| x * y).sum();
                if gamma.abs() <= 1e-15 * (alpha * beta).sqrt() || gamma == 0.0 {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                let (left, right) = cols_vec.split_at_mut(q);
                for (xp, xq) in left[p].iter_mut().zip(right[0].iter_mut()) {
                    let (u, v) = (*xp, *xq);
                    *xp = c * u - s * v;
                    *xq = s * u + c * v;
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let mut sv: Vec<f64> = cols_vec.iter().map(|c| c.iter().map(|x| x * x).sum::<f64>().sqrt()).collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    sv
}

pub fn numerical_rank(singular: &[f64], tol: f64) -> usize {
    singular.iter().filter(|&&s| s > tol).count()
}

/// Solves the square system `a x = b` by partial pivoting; `None` if singular.
pub fn solve(mut a: Mat, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    for c in 0..n {
        let p = (c..n).max_by(|&i, &j| a[i][c].abs().total_cmp(&a[j][c].abs()))?;
        if a[p][c].abs() < 1e-300 {
            return None;
        }
        a.swap(c, p);
        b.swap(c, p);
        for i in c + 1..n {
            let f = a[i][c] / a[c][c];
            if f != 0.0 {
                for j in c..n {
                    a[i][j] -= f * a[c][j];
                }
                b[i] -= f * b[c];
            }
        }
    }
    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let s: f64 = (i + 1..n).map(|j| a[i][j] * x[j]).sum();
        x[i] = (b[i] - s) / a[i][i];
    }
    Some(x)
}

pub fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

pub fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}
