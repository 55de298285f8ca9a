use super::{ExactError, Matrix, Poly, Rational};

/// One factor of the characteristic polynomial.
///
/// Rational eigenvalues are reported as linear factors together with their
/// geometric multiplicity. Factors without rational roots are squarefree over
/// `Q` and carry algebraic multiplicity only; their roots are never
/// approximated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EigenFactor {
    pub factor: Poly,
    pub algebraic: usize,
    /// `Some` exactly for rational eigenvalues (degree-1 factors).
    pub geometric: Option<usize>,
    /// The eigenvalue itself when the factor is linear.
    pub root: Option<Rational>,
}

/// Characteristic polynomial factored into squarefree-over-`Q` pieces with
/// multiplicities; rational roots split off as linear factors.
///
/// The sum of `degree(factor) * algebraic` over the result equals the matrix
/// size, and the number of distinct eigenvalues is the sum of the factor
/// degrees.
pub fn eigen_structure(m: &Matrix) -> Result<Vec<EigenFactor>, ExactError> {
    if m.rows() != m.cols() {
        return Err(ExactError::NotSquare);
    }
    let n = m.rows();
    let charpoly = m.char_poly()?;
    let mut out = Vec::new();
    for (factor, mult) in charpoly.squarefree_decomposition() {
        let (roots, rest) = factor.split_rational_roots();
        for (root, _) in roots {
            let shifted = shift_diagonal(m, &root);
            let geometric = n - shifted.rank();
            out.push(EigenFactor {
                factor: Poly::linear_root(&root),
                algebraic: mult,
                geometric: Some(geometric),
                root: Some(root),
            });
        }
        if rest.degree() > 0 {
            out.push(EigenFactor { factor: rest, algebraic: mult, geometric: None, root: None });
        }
    }
    out.sort_by(|a, b| match (&a.root, &b.root) {
        (Some(x), Some(y)) => x.cmp(y),
        (Some(_), None) => std::cmp::Ordering::Less,
        (None, Some(_)) => std::cmp::Ordering::Greater,
        (None, None) => a.factor.cmp(&b.factor),
    });
    Ok(out)
}

/// `m - lambda * I`
pub(crate) fn shift_diagonal(m: &Matrix, lambda: &Rational) -> Matrix {
    let mut s = m.clone();
    for i in 0..m.rows() {
        s[(i, i)] -= lambda.clone();
    }
    s
}

/// Number of distinct eigenvalues (counting each irrational factor by its
/// degree, since squarefree factors have distinct roots).
pub(crate) fn distinct_eigenvalue_count(factors: &[EigenFactor]) -> usize {
    factors.iter().map(|f| f.factor.degree()).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn diagonal_matrix_has_simple_spectrum() {
        let m = Matrix::from_i64(&[&[0, 0, 0], &[0, 1, 0], &[0, 0, 2]]);
        let e = eigen_structure(&m).unwrap();
        assert_eq!(e.len(), 3);
        for (f, v) in e.iter().zip([0, 1, 2]) {
            assert_eq!(f.root, Some(rat(v, 1)));
            assert_eq!(f.algebraic, 1);
            assert_eq!(f.geometric, Some(1));
        }
    }

    #[test]
    fn defective_double_eigenvalue() {
        let m = Matrix::from_i64(&[&[0, 1, 0], &[0, 0, 0], &[0, 0, 1]]);
        let e = eigen_structure(&m).unwrap();
        assert_eq!(e.len(), 2);
        assert_eq!(e[0].root, Some(rat(0, 1)));
        assert_eq!(e[0].algebraic, 2);
        assert_eq!(e[0].geometric, Some(1));
        assert_eq!(e[1].root, Some(rat(1, 1)));
        assert_eq!(e[1].algebraic, 1);
    }

    #[test]
    fn nilpotent_jordan_block() {
        let m = Matrix::from_i64(&[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]);
        let e = eigen_structure(&m).unwrap();
        assert_eq!(e.len(), 1);
        assert_eq!(e[0].root, Some(rat(0, 1)));
        assert_eq!(e[0].algebraic, 3);
        assert_eq!(e[0].geometric, Some(1));
    }

    #[test]
    fn irrational_pair_reported_symbolically() {
        // rotation-like matrix: t^2 - 2 has no rational roots
        let m = Matrix::from_i64(&[&[0, 2], &[1, 0]]);
        let e = eigen_structure(&m).unwrap();
        assert_eq!(e.len(), 1);
        assert_eq!(e[0].factor, Poly::from_i64(&[-2, 0, 1]));
        assert_eq!(e[0].geometric, None);
    }
}
