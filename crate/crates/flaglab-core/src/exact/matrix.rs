use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::rational::clear_denominators;
use super::{ExactError, Poly, Rational, Subspace};

/// Dense matrix over the rationals, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, entries: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zero(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Matrix { rows, cols, entries }
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        assert!(!rows.is_empty(), "from_rows needs at least one row");
        let cols = rows[0].len();
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Matrix { rows: rows.len(), cols, entries: rows.into_iter().flatten().collect() }
    }

    /// Convenience constructor from small integers.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Matrix::from_rows(
            rows.iter().map(|r| r.iter().map(|&x| Rational::from(BigInt::from(x))).collect()).collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix, ExactError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(ExactError::ShapeMismatch(self.rows, self.cols, other.rows, other.cols));
        }
        Ok(Matrix::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] + &other[(i, j)]))
    }

    pub fn scale(&self, c: &Rational) -> Matrix {
        Matrix::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] * c)
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix, ExactError> {
        if self.cols != other.rows {
            return Err(ExactError::ShapeMismatch(self.rows, self.cols, other.rows, other.cols));
        }
        Ok(Matrix::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = Rational::zero();
            for k in 0..self.cols {
                acc += &self[(i, k)] * &other[(k, j)];
            }
            acc
        }))
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>, ExactError> {
        if self.cols != v.len() {
            return Err(ExactError::ShapeMismatch(self.rows, self.cols, v.len(), 1));
        }
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = Rational::zero();
                for k in 0..self.cols {
                    acc += &self[(i, k)] * &v[k];
                }
                acc
            })
            .collect())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    /// Integer matrix with the same row space and null space, obtained by
    /// clearing each row's denominators.
    fn to_int_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| clear_denominators(self.row(i)).0).collect()
    }

    /// Rank over the rationals by fraction-free (Bareiss) elimination.
    pub fn rank(&self) -> usize {
        let mut m = self.to_int_rows();
        bareiss_echelon(&mut m).len()
    }

    /// Determinant, via Bareiss on the denominator-cleared matrix.
    pub fn det(&self) -> Result<Rational, ExactError> {
        if self.rows != self.cols {
            return Err(ExactError::NotSquare);
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Rational::one());
        }
        let mut scale = Rational::one();
        let mut m = Vec::with_capacity(n);
        for i in 0..n {
            let (ints, lcm) = clear_denominators(self.row(i));
            scale *= Rational::from(lcm);
            m.push(ints);
        }
        let (pivots, sign, last) = bareiss_echelon_det(&mut m);
        if pivots.len() < n {
            return Ok(Rational::zero());
        }
        let mut det = Rational::from(last);
        if sign < 0 {
            det = -det;
        }
        Ok(det / scale)
    }

    /// Canonical basis of the right null space; `dim = cols - rank`.
    pub fn kernel_basis(&self) -> Subspace {
        let mut m = self.to_int_rows();
        let pivots = bareiss_echelon(&mut m);
        let pivot_cols: Vec<usize> = pivots.clone();
        let is_pivot = |c: usize| pivot_cols.contains(&c);
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if is_pivot(free) {
                continue;
            }
            let mut v = vec![Rational::zero(); self.cols];
            v[free] = Rational::one();
            // Back-substitute pivot variables, bottom row first.
            for (r, &pc) in pivot_cols.iter().enumerate().rev() {
                let mut acc = Rational::zero();
                for j in pc + 1..self.cols {
                    if !m[r][j].is_zero() {
                        acc += Rational::from(m[r][j].clone()) * &v[j];
                    }
                }
                v[pc] = -acc / Rational::from(m[r][pc].clone());
            }
            basis.push(v);
        }
        Subspace::from_vectors(self.cols, basis)
    }

    /// Column span as a canonical subspace of `Q^rows`.
    pub fn column_space(&self) -> Subspace {
        let cols: Vec<Vec<Rational>> = (0..self.cols).map(|j| self.col(j)).collect();
        Subspace::from_vectors(self.rows, cols)
    }

    /// Characteristic polynomial `det(tI - A)`, monic, by the
    /// Faddeev–LeVerrier recurrence.
    pub fn char_poly(&self) -> Result<Poly, ExactError> {
        if self.rows != self.cols {
            return Err(ExactError::NotSquare);
        }
        let n = self.rows;
        let mut coeffs = vec![Rational::zero(); n + 1];
        coeffs[n] = Rational::one();
        let mut m = Matrix::identity(n);
        for k in 1..=n {
            m = self.mul(&m)?;
            let c = -m.trace() / Rational::from(BigInt::from(k as i64));
            for i in 0..n {
                m[(i, i)] += c.clone();
            }
            coeffs[n - k] = c;
        }
        Ok(Poly::new(coeffs))
    }

    pub fn trace(&self) -> Rational {
        let mut acc = Rational::zero();
        for i in 0..self.rows.min(self.cols) {
            acc += self[(i, i)].clone();
        }
        acc
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Rational;

    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.entries[i * self.cols + j]
    }
}

/// Fraction-free elimination to row echelon form. Returns the pivot columns
/// in order; the matrix is mutated in place.
fn bareiss_echelon(m: &mut [Vec<BigInt>]) -> Vec<usize> {
    let (pivots, _, _) = bareiss_core(m);
    pivots
}

fn bareiss_echelon_det(m: &mut [Vec<BigInt>]) -> (Vec<usize>, i8, BigInt) {
    bareiss_core(m)
}

fn bareiss_core(m: &mut [Vec<BigInt>]) -> (Vec<usize>, i8, BigInt) {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut prev = BigInt::one();
    let mut sign: i8 = 1;
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        if p != r {
            m.swap(p, r);
            sign = -sign;
        }
        let pivot = m[r][c].clone();
        for i in r + 1..rows {
            for j in c + 1..cols {
                let num = &pivot * &m[i][j] - &m[i][c] * &m[r][j];
                m[i][j] = num / &prev; // exact by Bareiss
            }
            m[i][c] = BigInt::zero();
        }
        prev = pivot.clone();
        pivots.push(c);
        r += 1;
    }
    (pivots, sign, prev)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn rank_identity() {
        assert_eq!(Matrix::identity(3).rank(), 3);
    }

    #[test]
    fn rank_zero_matrix() {
        assert_eq!(Matrix::zero(2, 5).rank(), 0);
    }

    #[test]
    fn rank_dependent_rows() {
        let m = Matrix::from_i64(&[&[1, 2], &[2, 4]]);
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn kernel_of_identity_is_zero() {
        let k = Matrix::identity(4).kernel_basis();
        assert_eq!(k.dim(), 0);
    }

    #[test]
    fn kernel_of_zero_map_is_everything() {
        let k = Matrix::zero(2, 3).kernel_basis();
        assert_eq!(k.dim(), 3);
    }

    #[test]
    fn kernel_single_relation() {
        let m = Matrix::from_i64(&[&[1, 1, 0]]);
        let k = m.kernel_basis();
        assert_eq!(k.dim(), 2);
        let v = vec![rat(1, 1), rat(-1, 1), rat(0, 1)];
        assert!(k.contains(&v));
    }

    #[test]
    fn det_and_char_poly() {
        let m = Matrix::from_i64(&[&[2, 1], &[1, 2]]);
        assert_eq!(m.det().unwrap(), rat(3, 1));
        let p = m.char_poly().unwrap();
        // t^2 - 4t + 3
        assert_eq!(p.coeff(0), rat(3, 1));
        assert_eq!(p.coeff(1), rat(-4, 1));
        assert_eq!(p.coeff(2), rat(1, 1));
    }

    #[test]
    fn det_with_fractions() {
        let m = Matrix::from_rows(vec![vec![rat(1, 2), rat(1, 3)], vec![rat(1, 4), rat(1, 5)]]);
        assert_eq!(m.det().unwrap(), rat(1, 10) - rat(1, 12));
    }
}
