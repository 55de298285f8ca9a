use num_traits::{One, Zero};

use super::{ExactError, Matrix, Rational};

/// Linear subspace of `Q^n`, stored in reduced row echelon form with sorted
/// pivots so that equal subspaces compare equal structurally.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vec<Rational>>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: vec![] }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace::from_vectors(ambient, Matrix::identity(ambient).rows_vec())
    }

    /// Canonicalize an arbitrary spanning set.
    pub fn from_vectors(ambient: usize, vectors: Vec<Vec<Rational>>) -> Self {
        for v in &vectors {
            assert_eq!(v.len(), ambient, "vector length must match ambient dimension");
        }
        let basis = rref(vectors);
        Subspace { ambient, basis }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.basis
    }

    /// Basis vectors as the rows of a matrix (dim × ambient).
    pub fn basis_matrix(&self) -> Matrix {
        if self.basis.is_empty() {
            Matrix::zero(0, self.ambient)
        } else {
            Matrix::from_rows(self.basis.clone())
        }
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        assert_eq!(v.len(), self.ambient);
        let mut w = v.to_vec();
        for b in &self.basis {
            let pivot = b.iter().position(|c| !c.is_zero()).expect("basis rows are nonzero");
            if !w[pivot].is_zero() {
                let f = w[pivot].clone();
                for (wi, bi) in w.iter_mut().zip(b) {
                    *wi -= &f * bi;
                }
            }
        }
        w.iter().all(|c| c.is_zero())
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.ambient == other.ambient && self.basis.iter().all(|v| other.contains(v))
    }

    /// Sum of subspaces (span of the union of bases).
    pub fn sum(&self, other: &Subspace) -> Result<Subspace, ExactError> {
        if self.ambient != other.ambient {
            return Err(ExactError::AmbientMismatch(self.ambient, other.ambient));
        }
        let mut vs = self.basis.clone();
        vs.extend(other.basis.clone());
        Ok(Subspace::from_vectors(self.ambient, vs))
    }

    /// Intersection via the kernel of the stacked annihilator system: the
    /// functionals vanishing on `self` together with those vanishing on
    /// `other` cut out exactly the intersection.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace, ExactError> {
        if self.ambient != other.ambient {
            return Err(ExactError::AmbientMismatch(self.ambient, other.ambient));
        }
        let ann_self = self.basis_matrix().kernel_basis();
        let ann_other = other.basis_matrix().kernel_basis();
        let mut rows = ann_self.basis.clone();
        rows.extend(ann_other.basis.clone());
        if rows.is_empty() {
            return Ok(Subspace::full(self.ambient));
        }
        Ok(Matrix::from_rows(rows).kernel_basis())
    }
}

/// `{w : form(b, w) = 0 for every basis vector b of u}`. For a non-degenerate
/// form the dimension is `ambient - dim u`.
pub fn annihilator(u: &Subspace, form: &Matrix) -> Result<Subspace, ExactError> {
    if form.rows() != form.cols() || form.rows() != u.ambient_dim() {
        return Err(ExactError::BadForm);
    }
    if form.rank() < form.rows() {
        return Err(ExactError::SingularForm);
    }
    if u.dim() == 0 {
        return Ok(Subspace::full(u.ambient_dim()));
    }
    // Rows b^T * form give the linear conditions on w.
    let system = u.basis_matrix().mul(form).expect("shapes agree");
    Ok(system.kernel_basis())
}

impl Matrix {
    pub(crate) fn rows_vec(&self) -> Vec<Vec<Rational>> {
        (0..self.rows()).map(|i| self.row(i).to_vec()).collect()
    }
}

/// Reduced row echelon form with zero rows dropped; rows are ordered by pivot
/// column and pivots normalized to 1, so the output is unique per row space.
fn rref(mut rows: Vec<Vec<Rational>>) -> Vec<Vec<Rational>> {
    rows.retain(|r| r.iter().any(|c| !c.is_zero()));
    if rows.is_empty() {
        return rows;
    }
    let cols = rows[0].len();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(p, r);
        let inv = Rational::one() / rows[r][c].clone();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for j in 0..cols {
                    let sub = &f * &rows[r][j];
                    rows[i][j] -= sub;
                }
            }
        }
        r += 1;
    }
    rows.truncate(r);
    rows
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn e(n: usize, i: usize) -> Vec<Rational> {
        let mut v = vec![rat(0, 1); n];
        v[i] = rat(1, 1);
        v
    }

    #[test]
    fn intersect_idempotent() {
        let u = Subspace::from_vectors(3, vec![e(3, 0), vec![rat(1, 1), rat(1, 1), rat(0, 1)]]);
        assert_eq!(u.intersect(&u).unwrap(), u);
    }

    #[test]
    fn complementary_planes_meet_in_zero() {
        let u = Subspace::from_vectors(4, vec![e(4, 0), e(4, 1)]);
        let v = Subspace::from_vectors(4, vec![e(4, 2), e(4, 3)]);
        assert_eq!(u.intersect(&v).unwrap().dim(), 0);
    }

    #[test]
    fn plane_intersection_by_inspection() {
        let u = Subspace::from_vectors(3, vec![e(3, 0), e(3, 1)]);
        let v = Subspace::from_vectors(3, vec![e(3, 1), e(3, 2)]);
        let w = u.intersect(&v).unwrap();
        assert_eq!(w, Subspace::from_vectors(3, vec![e(3, 1)]));
    }

    #[test]
    fn annihilator_trivial_cases() {
        let j = Matrix::from_i64(&[&[0, 1], &[-1, 0]]);
        assert_eq!(annihilator(&Subspace::zero(2), &j).unwrap().dim(), 2);
        assert_eq!(annihilator(&Subspace::full(2), &j).unwrap().dim(), 0);
    }

    #[test]
    fn annihilator_of_isotropic_plane() {
        // standard symplectic form on Q^6
        let mut j = Matrix::zero(6, 6);
        for i in 0..3 {
            j[(i, i + 3)] = rat(1, 1);
            j[(i + 3, i)] = rat(-1, 1);
        }
        let u = Subspace::from_vectors(6, vec![e(6, 0), e(6, 1)]);
        let ann = annihilator(&u, &j).unwrap();
        assert_eq!(ann.dim(), 4);
        assert!(u.is_subspace_of(&ann));
    }

    #[test]
    fn singular_form_rejected() {
        let j = Matrix::zero(2, 2);
        assert!(matches!(
            annihilator(&Subspace::zero(2), &j),
            Err(ExactError::SingularForm)
        ));
    }
}
