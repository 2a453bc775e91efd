use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{LinAlgError, Rational};

/// Dense row-major matrix of exact rationals.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<Rational>>", into = "Vec<Vec<Rational>>")]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

/// Output of [`RatMatrix::rref`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub reduced: RatMatrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl RatMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Rational>) -> Result<Self, LinAlgError> {
        if data.len() != rows * cols {
            return Err(LinAlgError::DimensionMismatch {
                expected: rows * cols,
                found: data.len(),
            });
        }
        Ok(RatMatrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    /// Builds a matrix from nested rows. Fails on ragged input.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self, LinAlgError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(LinAlgError::DimensionMismatch {
                    expected: c,
                    found: row.len(),
                });
            }
            data.extend(row);
        }
        Ok(RatMatrix { rows: r, cols: c, data })
    }

    /// Integer convenience constructor, panics on ragged input.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let nested = rows
            .iter()
            .map(|r| r.iter().map(|&x| Rational::from(x)).collect())
            .collect();
        Self::from_rows(nested).expect("ragged integer matrix")
    }

    /// Column vector.
    pub fn column(entries: Vec<Rational>) -> Self {
        RatMatrix {
            rows: entries.len(),
            cols: 1,
            data: entries,
        }
    }

    pub fn diagonal(entries: &[Rational]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, e) in entries.iter().enumerate() {
            m[(i, i)] = e.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Rational] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Rational::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn try_mul(&self, rhs: &RatMatrix) -> Result<RatMatrix, LinAlgError> {
        if self.cols != rhs.rows {
            return Err(LinAlgError::ShapeMismatch {
                left: self.shape(),
                right: rhs.shape(),
            });
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>, LinAlgError> {
        if v.len() != self.cols {
            return Err(LinAlgError::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect())
    }

    fn zip_with(
        &self,
        rhs: &RatMatrix,
        f: impl Fn(&Rational, &Rational) -> Rational,
    ) -> Result<RatMatrix, LinAlgError> {
        if self.shape() != rhs.shape() {
            return Err(LinAlgError::ShapeMismatch {
                left: self.shape(),
                right: rhs.shape(),
            });
        }
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| f(a, b)).collect();
        Ok(RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn try_add(&self, rhs: &RatMatrix) -> Result<RatMatrix, LinAlgError> {
        self.zip_with(rhs, |a, b| a + b)
    }

    pub fn try_sub(&self, rhs: &RatMatrix) -> Result<RatMatrix, LinAlgError> {
        self.zip_with(rhs, |a, b| a - b)
    }

    pub fn scale(&self, s: &Rational) -> RatMatrix {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }

    /// `[self | rhs]`
    pub fn hstack(&self, rhs: &RatMatrix) -> Result<RatMatrix, LinAlgError> {
        if self.rows != rhs.rows {
            return Err(LinAlgError::ShapeMismatch {
                left: self.shape(),
                right: rhs.shape(),
            });
        }
        let cols = self.cols + rhs.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for i in 0..self.rows {
            data.extend_from_slice(self.row(i));
            data.extend_from_slice(rhs.row(i));
        }
        Ok(RatMatrix {
            rows: self.rows,
            cols,
            data,
        })
    }

    /// `[self ; rhs]`
    pub fn vstack(&self, rhs: &RatMatrix) -> Result<RatMatrix, LinAlgError> {
        if self.cols != rhs.cols {
            return Err(LinAlgError::ShapeMismatch {
                left: self.shape(),
                right: rhs.shape(),
            });
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&rhs.data);
        Ok(RatMatrix {
            rows: self.rows + rhs.rows,
            cols: self.cols,
            data,
        })
    }

    /// Rows `r0..r1`, all columns.
    pub fn row_block(&self, r0: usize, r1: usize) -> RatMatrix {
        assert!(r0 <= r1 && r1 <= self.rows);
        RatMatrix {
            rows: r1 - r0,
            cols: self.cols,
            data: self.data[r0 * self.cols..r1 * self.cols].to_vec(),
        }
    }

    /// Block-diagonal `diag(self, rhs)`.
    pub fn block_diag(&self, rhs: &RatMatrix) -> RatMatrix {
        let mut out = Self::zeros(self.rows + rhs.rows, self.cols + rhs.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self[(i, j)].clone();
            }
        }
        for i in 0..rhs.rows {
            for j in 0..rhs.cols {
                out[(self.rows + i, self.cols + j)] = rhs[(i, j)].clone();
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Gauss–Jordan reduction to reduced row-echelon form.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m[(r, c)].recip().expect("nonzero pivot");
            for j in c..m.cols {
                if !m[(r, j)].is_zero() {
                    m[(r, j)] *= &inv;
                }
            }
            let pivot_row: Vec<Rational> = m.row(r).to_vec();
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let factor = m[(i, c)].clone();
                for j in c..m.cols {
                    if !pivot_row[j].is_zero() {
                        let d = &factor * &pivot_row[j];
                        m[(i, j)] -= &d;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref {
            reduced: m,
            rank: pivots.len(),
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.integer_echelon().1.len()
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Result<Rational, LinAlgError> {
        if !self.is_square() {
            return Err(LinAlgError::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Rational::one());
        }
        // Clear denominators row by row so Bareiss runs over the integers.
        let mut m = self.clone();
        let mut scale = Rational::one();
        for i in 0..n {
            let lcm = m
                .row(i)
                .iter()
                .fold(num_bigint::BigInt::from(1), |acc, x| {
                    num_integer::Integer::lcm(&acc, x.denom())
                });
            let l = Rational::from_integer(lcm);
            if !l.is_one() {
                for j in 0..n {
                    m[(i, j)] *= &l;
                }
                scale *= &l;
            }
        }
        let mut sign = Rational::one();
        let mut prev = Rational::one();
        for k in 0..n - 1 {
            if m[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !m[(i, k)].is_zero()) {
                    Some(p) => {
                        m.swap_rows(k, p);
                        sign = -sign;
                    }
                    None => return Ok(Rational::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &(&m[(i, j)] * &m[(k, k)]) - &(&m[(i, k)] * &m[(k, j)]);
                    m[(i, j)] = &v / &prev;
                }
                m[(i, k)] = Rational::zero();
            }
            prev = m[(k, k)].clone();
        }
        Ok(&(&sign * &m[(n - 1, n - 1)]) / &scale)
    }

    pub fn invert(&self) -> Result<RatMatrix, LinAlgError> {
        if !self.is_square() {
            return Err(LinAlgError::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let aug = self.hstack(&Self::identity(n))?;
        let red = aug.rref();
        if red.pivots.iter().take_while(|&&p| p < n).count() < n {
            return Err(LinAlgError::Singular);
        }
        let mut inv = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = red.reduced[(i, n + j)].clone();
            }
        }
        Ok(inv)
    }

    /// Row echelon form over the integers by fraction-free elimination.
    /// Rows are first scaled to clear denominators; returns the nonzero rows
    /// and their pivot columns.
    fn integer_echelon(&self) -> (Vec<Vec<BigInt>>, Vec<usize>) {
        let mut m: Vec<Vec<BigInt>> = (0..self.rows)
            .map(|i| {
                let row = self.row(i);
                let lcm = row
                    .iter()
                    .fold(BigInt::one(), |acc, x| num_integer::Integer::lcm(&acc, x.denom()));
                row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect()
            })
            .collect();
        let mut pivots = Vec::new();
        let mut prev = BigInt::one();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !m[i][c].is_zero()) else {
                continue;
            };
            m.swap(r, p);
            let (top, rest) = m.split_at_mut(r + 1);
            let pivot_row = &top[r];
            for row in rest.iter_mut() {
                let factor = std::mem::take(&mut row[c]);
                for j in c + 1..self.cols {
                    let mut v = &row[j] * &pivot_row[c];
                    if !factor.is_zero() && !pivot_row[j].is_zero() {
                        v -= &factor * &pivot_row[j];
                    }
                    row[j] = if prev.is_one() { v } else { v / &prev };
                }
            }
            prev = m[r][c].clone();
            pivots.push(c);
            r += 1;
        }
        m.truncate(r);
        (m, pivots)
    }

    /// Basis of the right null space `{x : Mx = 0}`, one vector per free column.
    /// Each vector has a one in its free column and zeros in the other free
    /// columns, matching the basis read off the reduced row echelon form.
    pub fn kernel_basis(&self) -> Vec<Vec<Rational>> {
        let (echelon, pivots) = self.integer_echelon();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|free| {
                let mut v = vec![Rational::zero(); self.cols];
                v[free] = Rational::one();
                for (row, &p) in echelon.iter().zip(&pivots).rev() {
                    let mut acc = Rational::zero();
                    for j in p + 1..self.cols {
                        if !row[j].is_zero() && !v[j].is_zero() {
                            acc += &(&Rational::from_integer(row[j].clone()) * &v[j]);
                        }
                    }
                    if !acc.is_zero() {
                        v[p] = -(&acc / &Rational::from_integer(row[p].clone()));
                    }
                }
                v
            })
            .collect()
    }

    /// Basis of the left null space as the rows of a matrix `C` with `C·M = 0`.
    pub fn cokernel_projection(&self) -> RatMatrix {
        let rows: Vec<Vec<Rational>> = self.transpose().kernel_basis();
        if rows.is_empty() {
            return Self::zeros(0, self.rows);
        }
        Self::from_rows(rows).expect("kernel vectors share length")
    }

    /// A solution of `Mx = b`, or `None` when the system is inconsistent.
    pub fn solve(&self, b: &[Rational]) -> Result<Option<Vec<Rational>>, LinAlgError> {
        if b.len() != self.rows {
            return Err(LinAlgError::DimensionMismatch {
                expected: self.rows,
                found: b.len(),
            });
        }
        let aug = self.hstack(&Self::column(b.to_vec()))?;
        let red = aug.rref();
        if red.pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![Rational::zero(); self.cols];
        for (r, &p) in red.pivots.iter().enumerate() {
            x[p] = red.reduced[(r, self.cols)].clone();
        }
        Ok(Some(x))
    }
}

impl Index<(usize, usize)> for RatMatrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &RatMatrix {
    type Output = RatMatrix;

    /// Panics on incompatible shapes; see [`RatMatrix::try_mul`].
    fn mul(self, rhs: &RatMatrix) -> RatMatrix {
        self.try_mul(rhs).expect("incompatible matrix shapes")
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatMatrix{}x{}", self.rows, self.cols)?;
        f.debug_list().entries(self.to_rows()).finish()
    }
}

impl TryFrom<Vec<Vec<Rational>>> for RatMatrix {
    type Error = LinAlgError;
    fn try_from(rows: Vec<Vec<Rational>>) -> Result<Self, Self::Error> {
        Self::from_rows(rows)
    }
}

impl From<RatMatrix> for Vec<Vec<Rational>> {
    fn from(m: RatMatrix) -> Self {
        m.to_rows()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from(n)
    }

    fn ones() -> RatMatrix {
        RatMatrix::from_i64(&[&[1, 1], &[1, 1]])
    }

    fn unimodular() -> RatMatrix {
        RatMatrix::from_i64(&[&[1, 1], &[1, 2]])
    }

    #[test]
    fn rref_examples() {
        let id = RatMatrix::identity(2).rref();
        assert_eq!(id.reduced, RatMatrix::identity(2));
        assert_eq!(id.rank, 2);
        assert_eq!(id.pivots, vec![0, 1]);

        let r = ones().rref();
        assert_eq!(r.rank, 1);
        assert_eq!(r.reduced, RatMatrix::from_i64(&[&[1, 1], &[0, 0]]));
        assert_eq!(unimodular().rref().rank, 2);
    }

    #[test]
    fn rref_handles_zero_columns_and_fractions() {
        let m = RatMatrix::from_i64(&[&[0, 2, 4], &[0, 3, 7]]);
        let r = m.rref();
        assert_eq!(r.pivots, vec![1, 2]);
        assert_eq!(r.reduced, RatMatrix::from_i64(&[&[0, 1, 0], &[0, 0, 1]]));
    }

    #[test]
    fn det_examples() {
        assert_eq!(RatMatrix::identity(3).det().unwrap(), q(1));
        assert_eq!(ones().det().unwrap(), q(0));
        assert_eq!(unimodular().det().unwrap(), q(1));
        assert_eq!(RatMatrix::zeros(0, 0).det().unwrap(), q(1));
        assert!(matches!(
            RatMatrix::zeros(2, 3).det(),
            Err(LinAlgError::NonSquare { rows: 2, cols: 3 })
        ));
    }

    #[test]
    fn det_needs_row_swap() {
        let m = RatMatrix::from_i64(&[&[0, 1], &[1, 0]]);
        assert_eq!(m.det().unwrap(), q(-1));
        let m = RatMatrix::from_i64(&[&[0, 0, 1], &[0, 2, 0], &[3, 0, 0]]);
        assert_eq!(m.det().unwrap(), q(-6));
    }

    #[test]
    fn det_with_fractions() {
        let m = RatMatrix::from_rows(vec![
            vec![Rational::new(1, 2), Rational::new(1, 3)],
            vec![Rational::new(1, 4), Rational::new(1, 5)],
        ])
        .unwrap();
        // 1/10 - 1/12 = 1/60
        assert_eq!(m.det().unwrap(), Rational::new(1, 60));
    }

    #[test]
    fn invert_examples() {
        assert_eq!(RatMatrix::identity(3).invert().unwrap(), RatMatrix::identity(3));
        let two = RatMatrix::from_i64(&[&[2]]);
        assert_eq!(
            two.invert().unwrap(),
            RatMatrix::from_rows(vec![vec![Rational::new(1, 2)]]).unwrap()
        );
        assert_eq!(
            unimodular().invert().unwrap(),
            RatMatrix::from_i64(&[&[2, -1], &[-1, 1]])
        );
        assert_eq!(ones().invert(), Err(LinAlgError::Singular));
        assert!(matches!(
            RatMatrix::zeros(1, 2).invert(),
            Err(LinAlgError::NonSquare { .. })
        ));
    }

    #[test]
    fn kernel_examples() {
        assert!(RatMatrix::identity(2).kernel_basis().is_empty());
        assert_eq!(RatMatrix::zeros(2, 2).kernel_basis().len(), 2);
        let k = RatMatrix::from_i64(&[&[1, 1]]).kernel_basis();
        assert_eq!(k, vec![vec![q(-1), q(1)]]);
    }

    #[test]
    fn cokernel_projection_annihilates() {
        let j = RatMatrix::from_i64(&[&[1], &[2], &[3]]);
        let c = j.cokernel_projection();
        assert_eq!(c.shape(), (2, 3));
        assert!((&c * &j).is_zero());
        assert_eq!(c.rank(), 2);
        let full = RatMatrix::identity(2).cokernel_projection();
        assert_eq!(full.shape(), (0, 2));
    }

    #[test]
    fn solve_examples() {
        let b = vec![q(3), q(-4)];
        assert_eq!(RatMatrix::identity(2).solve(&b).unwrap(), Some(b.clone()));
        assert_eq!(ones().solve(&[q(1), q(2)]).unwrap(), None);
        assert_eq!(
            unimodular().solve(&[q(1), q(1)]).unwrap(),
            Some(vec![q(1), q(0)])
        );
        assert!(matches!(
            unimodular().solve(&[q(1)]),
            Err(LinAlgError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn serde_nested_rows() {
        let m = RatMatrix::from_rows(vec![vec![Rational::new(1, 2), q(0)]]).unwrap();
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(s, r#"[["1/2","0"]]"#);
        let back: RatMatrix = serde_json::from_str(&s).unwrap();
        assert_eq!(back, m);
        assert!(serde_json::from_str::<RatMatrix>(r#"[["1"],["1","2"]]"#).is_err());
    }

    #[test]
    fn stacking_and_blocks() {
        let a = RatMatrix::identity(1);
        let b = RatMatrix::from_i64(&[&[5]]);
        assert_eq!(a.hstack(&b).unwrap(), RatMatrix::from_i64(&[&[1, 5]]));
        assert_eq!(a.vstack(&b).unwrap(), RatMatrix::from_i64(&[&[1], &[5]]));
        assert_eq!(a.block_diag(&b), RatMatrix::from_i64(&[&[1, 0], &[0, 5]]));
        assert!(a.hstack(&RatMatrix::zeros(2, 1)).is_err());
    }
}
