//! Hyperplane sections of the flag threefold.
//!
//! A hyperplane section `S` of `F` in `P² × P²ˇ` is cut out by a (1,1)-form
//! `Σ m_{i,j} x_i y_j`, recorded here as the 3×3 matrix `M` whose rows index
//! the `x` variables. Adding a multiple of the identity does not change the
//! surface (the flag quadric absorbs it), so matrices are normalized to
//! `det M = 0`.
//!
//! Over the first plane the section is the blowup of `P²` at the point scheme
//! where the two rows `(x0,x1,x2)` and `M·x` of the evaluation matrix become
//! dependent, i.e. where all three 2×2 minors (three conics) vanish. The
//! surface type is read off the eigenvalue structure of `M` and certified
//! against the multiplicity pattern of that point scheme.

mod scheme;

pub use scheme::{blown_up_points, PointScheme, SchemePoint};

use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::chow::{degree, multiply, ChowClass};
use crate::exact::{
    eigen_structure, rat, rat_to_string, EigenFactor, ExactError, Matrix, Rational,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DelPezzoError {
    #[error("matrix must be 3x3")]
    BadShape,
    #[error("no rational eigenvalue: cannot normalize to det = 0 over Q")]
    NoRationalEigenvalue,
    #[error("determinant is nonzero; normalize first")]
    NotNormalized,
    #[error("matrix is a multiple of the identity and cuts out no surface")]
    ScalarMatrix,
    #[error("surface is reducible; the blown-up point scheme is not finite")]
    Reducible,
    #[error("unsupported surface/side combination: {0}")]
    Unsupported(String),
    #[error("exact kernel computation failed: {0}")]
    Exact(#[from] ExactError),
    #[error("point scheme computation failed: {0}")]
    SchemeFailure(String),
}

/// 3×3 rational matrix normalized so that `det = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DelPezzoMatrix {
    entries: Matrix,
}

impl DelPezzoMatrix {
    pub fn entries(&self) -> &Matrix {
        &self.entries
    }
}

/// Normalize a raw 3×3 matrix by subtracting a rational eigenvalue so the
/// determinant vanishes. A matrix that already has `det = 0` is kept
/// unchanged; otherwise the smallest rational eigenvalue is subtracted, and
/// a matrix with no rational eigenvalue is rejected (it cannot be normalized
/// exactly over `Q`).
pub fn normalize(raw: &Matrix) -> Result<DelPezzoMatrix, DelPezzoError> {
    if raw.rows() != 3 || raw.cols() != 3 {
        return Err(DelPezzoError::BadShape);
    }
    if raw.det()?.is_zero() {
        return Ok(DelPezzoMatrix { entries: raw.clone() });
    }
    let charpoly = raw.char_poly()?;
    let roots = charpoly.rational_roots();
    let lambda = roots.first().map(|(r, _)| r.clone()).ok_or(DelPezzoError::NoRationalEigenvalue)?;
    let mut m = raw.clone();
    for i in 0..3 {
        m[(i, i)] -= lambda.clone();
    }
    debug_assert!(m.det().unwrap().is_zero());
    Ok(DelPezzoMatrix { entries: m })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum DelPezzoKind {
    /// three distinct eigenvalues
    Smooth,
    /// two distinct eigenvalues, the repeated one of geometric multiplicity 1
    A1,
    /// a triple eigenvalue of geometric multiplicity 1
    A2,
    /// a repeated eigenvalue of geometric multiplicity 2; the union of two
    /// cubic scrolls meeting in a smooth conic
    ReducibleConicSmooth,
    /// the boundary case: triple eigenvalue of geometric multiplicity 2, the
    /// blown-up point lies on the projected line
    ReducibleConicDegenerate,
}

/// Witness data for a reducible section: the blown-up point spanning the
/// column space of `M - λI` and the line spanned by its row space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducibleData {
    pub eigenvalue: Rational,
    pub point: [Rational; 3],
    pub line: [Rational; 3],
}

#[derive(Debug, Clone, PartialEq)]
pub struct DelPezzoClass {
    pub kind: DelPezzoKind,
    /// eigenstructure summary used to decide the kind
    pub eigen: Vec<EigenFactor>,
    /// set exactly for the degenerate reducible stratum, which the smooth /
    /// A1 / A2 / reducible classification does not name explicitly
    pub boundary_flag: bool,
    pub reducible: Option<ReducibleData>,
}

impl DelPezzoClass {
    /// Number of points in the fiber of the degree-3 projection from the
    /// determinantal cubic: the number of distinct eigenvalues.
    pub fn distinct_eigenvalues(&self) -> usize {
        self.eigen.iter().map(|f| f.factor.degree()).sum()
    }

    pub fn eigen_summary(&self) -> Vec<String> {
        self.eigen
            .iter()
            .map(|f| match (&f.root, f.geometric) {
                (Some(r), Some(g)) => {
                    format!("lambda={} alg={} geo={}", rat_to_string(r), f.algebraic, g)
                }
                _ => format!("factor {} alg={}", f.factor.to_display("t"), f.algebraic),
            })
            .collect()
    }
}

/// Classify the surface from the eigenvalue structure of its matrix.
pub fn classify(m: &DelPezzoMatrix) -> Result<DelPezzoClass, DelPezzoError> {
    if !m.entries.det()?.is_zero() {
        return Err(DelPezzoError::NotNormalized);
    }
    let eigen = eigen_structure(&m.entries)?;
    // reducible <=> some rational eigenvalue has geometric multiplicity >= 2,
    // i.e. M - λI has rank <= 1
    for f in &eigen {
        let geo = f.geometric.unwrap_or(0);
        if geo >= 3 {
            return Err(DelPezzoError::ScalarMatrix);
        }
        if geo == 2 {
            let root = f.root.clone().expect("geometric multiplicity implies rational root");
            let b = crate::exact::shift_matrix(&m.entries, &root);
            let (point, line) = rank_one_factors(&b).ok_or(DelPezzoError::ScalarMatrix)?;
            let on_line: Rational = line.iter().zip(&point).map(|(l, p)| l * p).sum();
            let on_line = on_line.is_zero();
            let kind = if on_line {
                DelPezzoKind::ReducibleConicDegenerate
            } else {
                DelPezzoKind::ReducibleConicSmooth
            };
            return Ok(DelPezzoClass {
                kind,
                boundary_flag: on_line,
                eigen,
                reducible: Some(ReducibleData { eigenvalue: root, point, line }),
            });
        }
    }
    let distinct: usize = eigen.iter().map(|f| f.factor.degree()).sum();
    let kind = match distinct {
        3 => DelPezzoKind::Smooth,
        2 => DelPezzoKind::A1,
        1 => DelPezzoKind::A2,
        _ => unreachable!("3x3 matrix has between 1 and 3 distinct eigenvalues"),
    };
    Ok(DelPezzoClass { kind, eigen, boundary_flag: false, reducible: None })
}

/// Write a rank-1 matrix as `u·vᵗ` and return (u, v) as primitive integer
/// directions: u spans the column space (the blown-up point), v the row
/// space (the projected line).
fn rank_one_factors(b: &Matrix) -> Option<([Rational; 3], [Rational; 3])> {
    let row = (0..3).find(|&i| b.row(i).iter().any(|c| !c.is_zero()))?;
    let v = crate::exact::primitive_direction(b.row(row))?;
    let col_candidates: Vec<Rational> = (0..3)
        .map(|i| {
            // coefficient of row i against the chosen row direction
            let j = v.iter().position(|c| !c.is_zero()).unwrap();
            b[(i, j)].clone() / v[j].clone()
        })
        .collect();
    let u = crate::exact::primitive_direction(&col_candidates)?;
    Some((vec3(u), vec3(v)))
}

fn vec3(v: Vec<Rational>) -> [Rational; 3] {
    let mut it = v.into_iter();
    [it.next().unwrap(), it.next().unwrap(), it.next().unwrap()]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Pi1,
    Pi2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SurfaceKind {
    /// smooth surface of class `h1 + d·h2`, `d >= 0`
    Smooth { d: i64 },
    /// irreducible sextic with an A1 singularity
    A1,
    /// irreducible sextic with an A2 singularity
    A2,
}

/// Restriction of `Pic(F) = <h1, h2>` to the (class group of the) surface,
/// with the intersection form on the target lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PicRestriction {
    pub target_rank: usize,
    pub basis_labels: Vec<String>,
    pub image_of_h1: Vec<i64>,
    pub image_of_h2: Vec<i64>,
    pub intersection_form: Matrix,
}

impl PicRestriction {
    /// Intersection number of two classes in the target lattice.
    pub fn pair(&self, a: &[i64], b: &[i64]) -> Rational {
        let av: Vec<Rational> = a.iter().map(|&x| rat(x, 1)).collect();
        let bv: Vec<Rational> = b.iter().map(|&x| rat(x, 1)).collect();
        let fb = self.intersection_form.mul_vec(&bv).expect("shape");
        av.iter().zip(&fb).map(|(x, y)| x * y).sum()
    }

    /// The Chow class of the surface this restriction lives on.
    pub fn surface_class(kind: SurfaceKind) -> ChowClass {
        match kind {
            SurfaceKind::Smooth { d } => {
                ChowClass::h1().add(&ChowClass::h2().scale(&rat(d, 1)))
            }
            SurfaceKind::A1 | SurfaceKind::A2 => ChowClass::h(),
        }
    }

    /// `deg(α·β·[S])` in the Chow ring, the number the lattice pairing must
    /// reproduce.
    pub fn chow_pairing(kind: SurfaceKind, alpha: &ChowClass, beta: &ChowClass) -> Rational {
        degree(&multiply(&multiply(alpha, beta), &Self::surface_class(kind)))
    }
}

/// The explicit restriction matrices for the supported surface/side
/// combinations. The `π2` side realizes `S` as a blowup of the dual plane;
/// the `π1` statements exist only for `d = 0, 1` and the singular sextics.
pub fn pic_restriction(surface: SurfaceKind, side: Side) -> Result<PicRestriction, DelPezzoError> {
    match (surface, side) {
        (SurfaceKind::Smooth { d }, Side::Pi2) => {
            if d < 0 {
                return Err(DelPezzoError::Unsupported(format!("S(1,{d})")));
            }
            let q = (d * d + d + 1) as usize;
            let mut labels = vec!["l".to_string()];
            labels.extend((1..=q).map(|i| format!("e{i}")));
            let mut h1 = vec![0i64; q + 1];
            h1[0] = d + 1;
            for x in h1.iter_mut().skip(1) {
                *x = -1;
            }
            let mut h2 = vec![0i64; q + 1];
            h2[0] = 1;
            let form = diagonal_form(&std::iter::once(rat(1, 1))
                .chain(std::iter::repeat(rat(-1, 1)).take(q))
                .collect::<Vec<_>>());
            Ok(PicRestriction { target_rank: q + 1, basis_labels: labels, image_of_h1: h1, image_of_h2: h2, intersection_form: form })
        }
        (SurfaceKind::Smooth { d: 0 }, Side::Pi1) => {
            // Hirzebruch surface F1: C0² = -1, f² = 0, C0·f = 1
            let mut form = Matrix::zero(2, 2);
            form[(0, 0)] = rat(-1, 1);
            form[(0, 1)] = rat(1, 1);
            form[(1, 0)] = rat(1, 1);
            Ok(PicRestriction {
                target_rank: 2,
                basis_labels: vec!["C0".into(), "f".into()],
                image_of_h1: vec![0, 1],
                image_of_h2: vec![1, 1],
                intersection_form: form,
            })
        }
        (SurfaceKind::Smooth { d: 1 }, Side::Pi1) => {
            let form = diagonal_form(&[rat(1, 1), rat(-1, 1), rat(-1, 1), rat(-1, 1)]);
            Ok(PicRestriction {
                target_rank: 4,
                basis_labels: vec!["l".into(), "e1".into(), "e2".into(), "e3".into()],
                image_of_h1: vec![1, 0, 0, 0],
                image_of_h2: vec![2, -1, -1, -1],
                intersection_form: form,
            })
        }
        (SurfaceKind::Smooth { d }, Side::Pi1) => {
            Err(DelPezzoError::Unsupported(format!("S(1,{d}) via pi1")))
        }
        (SurfaceKind::A1, side) => {
            // class group <l, f, g>: l² = 1, f² = -1/2, g² = -1
            let form = diagonal_form(&[rat(1, 1), rat(-1, 2), rat(-1, 1)]);
            let (h1, h2) = match side {
                Side::Pi2 => (vec![2, -2, -1], vec![1, 0, 0]),
                Side::Pi1 => (vec![1, 0, 0], vec![2, -2, -1]),
            };
            Ok(PicRestriction {
                target_rank: 3,
                basis_labels: vec!["l".into(), "f".into(), "g".into()],
                image_of_h1: h1,
                image_of_h2: h2,
                intersection_form: form,
            })
        }
        (SurfaceKind::A2, side) => {
            // class group <l, g>: l² = 1, g² = -1/3
            let form = diagonal_form(&[rat(1, 1), rat(-1, 3)]);
            let (h1, h2) = match side {
                Side::Pi2 => (vec![2, -3], vec![1, 0]),
                Side::Pi1 => (vec![1, 0], vec![2, -3]),
            };
            Ok(PicRestriction {
                target_rank: 2,
                basis_labels: vec!["l".into(), "g".into()],
                image_of_h1: h1,
                image_of_h2: h2,
                intersection_form: form,
            })
        }
    }
}

fn diagonal_form(diag: &[Rational]) -> Matrix {
    let mut m = Matrix::zero(diag.len(), diag.len());
    for (i, d) in diag.iter().enumerate() {
        m[(i, i)] = d.clone();
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn dp(rows: &[&[i64]]) -> DelPezzoMatrix {
        normalize(&Matrix::from_i64(rows)).unwrap()
    }

    #[test]
    fn normalize_subtracts_smallest_eigenvalue() {
        let m = normalize(&Matrix::from_i64(&[&[1, 0, 0], &[0, 2, 0], &[0, 0, 3]])).unwrap();
        assert_eq!(m.entries(), &Matrix::from_i64(&[&[0, 0, 0], &[0, 1, 0], &[0, 0, 2]]));
    }

    #[test]
    fn normalize_keeps_singular_matrices() {
        let raw = Matrix::from_i64(&[&[0, 1, 0], &[0, 0, 0], &[0, 0, 1]]);
        assert_eq!(normalize(&raw).unwrap().entries(), &raw);
    }

    #[test]
    fn normalize_rejects_irrational_spectrum() {
        // companion matrix of t³ - t - 1 (no rational roots)
        let raw = Matrix::from_i64(&[&[0, 0, 1], &[1, 0, 1], &[0, 1, 0]]);
        assert_eq!(normalize(&raw), Err(DelPezzoError::NoRationalEigenvalue));
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify(&dp(&[&[0, 0, 0], &[0, 1, 0], &[0, 0, 2]])).unwrap().kind, DelPezzoKind::Smooth);
        assert_eq!(classify(&dp(&[&[0, 1, 0], &[0, 0, 0], &[0, 0, 1]])).unwrap().kind, DelPezzoKind::A1);
        assert_eq!(classify(&dp(&[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]])).unwrap().kind, DelPezzoKind::A2);
    }

    #[test]
    fn classify_reducible_with_witness() {
        let c = classify(&dp(&[&[1, 0, 0], &[2, 0, 0], &[3, 0, 0]])).unwrap();
        assert_eq!(c.kind, DelPezzoKind::ReducibleConicSmooth);
        assert!(!c.boundary_flag);
        let r = c.reducible.unwrap();
        assert_eq!(r.point, [rat(1, 1), rat(2, 1), rat(3, 1)]);
        assert_eq!(r.line, [rat(1, 1), rat(0, 1), rat(0, 1)]);
    }

    #[test]
    fn classify_degenerate_reducible_is_flagged() {
        // nilpotent rank one: triple eigenvalue 0 of geometric multiplicity 2
        let c = classify(&dp(&[&[0, 1, 0], &[0, 0, 0], &[0, 0, 0]])).unwrap();
        assert_eq!(c.kind, DelPezzoKind::ReducibleConicDegenerate);
        assert!(c.boundary_flag);
    }

    #[test]
    fn scalar_matrix_is_rejected() {
        let m = DelPezzoMatrix { entries: Matrix::zero(3, 3) };
        assert_eq!(classify(&m), Err(DelPezzoError::ScalarMatrix));
    }

    #[test]
    fn blowup_points_of_diagonal_matrix() {
        let s = blown_up_points(&dp(&[&[0, 0, 0], &[0, 1, 0], &[0, 0, 2]])).unwrap();
        assert_eq!(s.multiplicity_pattern(), vec![1, 1, 1]);
        let mut coords: Vec<[Rational; 3]> = s
            .points
            .iter()
            .map(|p| match p {
                SchemePoint::Rational { coords, .. } => coords.clone(),
                _ => panic!("expected rational points"),
            })
            .collect();
        coords.sort_by_key(|c| format!("{c:?}"));
        let e = |i: usize| {
            let mut v = [rat(0, 1), rat(0, 1), rat(0, 1)];
            v[i] = rat(1, 1);
            v
        };
        assert!(coords.contains(&e(0)) && coords.contains(&e(1)) && coords.contains(&e(2)));
    }

    #[test]
    fn blowup_points_of_a1_normal_form() {
        // a double point plus a simple one
        let s = blown_up_points(&dp(&[&[0, 1, 0], &[0, 0, 0], &[0, 0, 1]])).unwrap();
        assert_eq!(s.multiplicity_pattern(), vec![2, 1]);
    }

    #[test]
    fn blowup_points_of_a2_jordan_block() {
        let s = blown_up_points(&dp(&[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]])).unwrap();
        assert_eq!(s.multiplicity_pattern(), vec![3]);
    }

    #[test]
    fn blowup_points_reject_reducible() {
        let m = dp(&[&[1, 0, 0], &[2, 0, 0], &[3, 0, 0]]);
        assert_eq!(blown_up_points(&m), Err(DelPezzoError::Reducible));
    }

    #[test]
    fn blowup_points_with_conjugate_pair() {
        // eigenvalues 0 and a conjugate quadratic pair
        let s = blown_up_points(&dp(&[&[0, 0, 0], &[0, 0, 2], &[0, 1, 0]])).unwrap();
        assert_eq!(s.multiplicity_pattern(), vec![1, 1, 1]);
        assert!(s.points.iter().any(|p| matches!(p, SchemePoint::ConjugatePair { .. })));
    }

    #[test]
    fn classify_invariant_under_shift_and_conjugation() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let cases = [
            dp(&[&[0, 0, 0], &[0, 1, 0], &[0, 0, 2]]),
            dp(&[&[0, 1, 0], &[0, 0, 0], &[0, 0, 1]]),
            dp(&[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]),
            dp(&[&[1, 0, 0], &[2, 0, 0], &[3, 0, 0]]),
            dp(&[&[0, 1, 0], &[0, 0, 0], &[0, 0, 0]]),
        ];
        for m in &cases {
            let kind = classify(m).unwrap().kind;
            for _ in 0..20 {
                // shift by a random rational and re-normalize
                let lambda = rat(rng.gen_range(-9..=9), rng.gen_range(1..=4));
                let shifted = m.entries().add(&Matrix::identity(3).scale(&lambda)).unwrap();
                assert_eq!(classify(&normalize(&shifted).unwrap()).unwrap().kind, kind);
            }
            for _ in 0..20 {
                let p = random_invertible(&mut rng);
                let pinv = invert3(&p);
                let conj = p.mul(m.entries()).unwrap().mul(&pinv).unwrap();
                assert_eq!(classify(&normalize(&conj).unwrap()).unwrap().kind, kind);
            }
        }
    }

    #[test]
    fn classifier_agrees_with_point_scheme_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(20240817);
        let mut checked = 0;
        for _ in 0..200 {
            let m = random_normalizable(&mut rng);
            let class = match classify(&m) {
                Ok(c) => c,
                // a scalar matrix cuts out no surface; draw again
                Err(DelPezzoError::ScalarMatrix) => continue,
                Err(e) => panic!("{e}"),
            };
            match class.kind {
                DelPezzoKind::ReducibleConicSmooth | DelPezzoKind::ReducibleConicDegenerate => {
                    assert_eq!(blown_up_points(&m), Err(DelPezzoError::Reducible));
                }
                kind => {
                    let pattern = blown_up_points(&m).unwrap().multiplicity_pattern();
                    let expected = match kind {
                        DelPezzoKind::Smooth => vec![1, 1, 1],
                        DelPezzoKind::A1 => vec![2, 1],
                        DelPezzoKind::A2 => vec![3],
                        _ => unreachable!(),
                    };
                    assert_eq!(pattern, expected, "matrix {:?}", m.entries());
                    checked += 1;
                }
            }
        }
        assert!(checked > 100, "random suite should mostly produce irreducible sections");
    }

    #[test]
    fn fiber_count_matches_kind() {
        let cases = [
            (dp(&[&[0, 0, 0], &[0, 1, 0], &[0, 0, 2]]), 3),
            (dp(&[&[0, 1, 0], &[0, 0, 0], &[0, 0, 1]]), 2),
            (dp(&[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]), 1),
            (dp(&[&[1, 0, 0], &[2, 0, 0], &[3, 0, 0]]), 2),
            (dp(&[&[0, 1, 0], &[0, 0, 0], &[0, 0, 0]]), 1),
        ];
        for (m, n) in cases {
            assert_eq!(classify(&m).unwrap().distinct_eigenvalues(), n);
        }
    }

    #[test]
    fn pic_restriction_examples() {
        let r = pic_restriction(SurfaceKind::Smooth { d: 1 }, Side::Pi2).unwrap();
        assert_eq!(r.image_of_h1, vec![2, -1, -1, -1]);
        assert_eq!(r.image_of_h2, vec![1, 0, 0, 0]);

        let r = pic_restriction(SurfaceKind::Smooth { d: 0 }, Side::Pi1).unwrap();
        assert_eq!(r.image_of_h1, vec![0, 1]); // f
        assert_eq!(r.image_of_h2, vec![1, 1]); // C0 + f

        let r = pic_restriction(SurfaceKind::A1, Side::Pi2).unwrap();
        assert_eq!(r.image_of_h1, vec![2, -2, -1]);
        assert_eq!(r.image_of_h2, vec![1, 0, 0]);

        assert!(pic_restriction(SurfaceKind::Smooth { d: 2 }, Side::Pi1).is_err());
    }

    #[test]
    fn pic_restriction_is_compatible_with_chow_pairing() {
        let h1 = ChowClass::h1();
        let h2 = ChowClass::h2();
        let mut combos: Vec<(SurfaceKind, Side)> = vec![
            (SurfaceKind::Smooth { d: 0 }, Side::Pi1),
            (SurfaceKind::Smooth { d: 1 }, Side::Pi1),
            (SurfaceKind::A1, Side::Pi1),
            (SurfaceKind::A1, Side::Pi2),
            (SurfaceKind::A2, Side::Pi1),
            (SurfaceKind::A2, Side::Pi2),
        ];
        for d in 0..=4 {
            combos.push((SurfaceKind::Smooth { d }, Side::Pi2));
        }
        for (kind, side) in combos {
            let r = pic_restriction(kind, side).unwrap();
            for (a, fa) in [(&h1, &r.image_of_h1), (&h2, &r.image_of_h2)] {
                for (b, fb) in [(&h1, &r.image_of_h1), (&h2, &r.image_of_h2)] {
                    assert_eq!(
                        r.pair(fa, fb),
                        PicRestriction::chow_pairing(kind, a, b),
                        "{kind:?} {side:?}"
                    );
                }
            }
        }
    }

    fn random_invertible(rng: &mut ChaCha8Rng) -> Matrix {
        loop {
            let p = Matrix::from_fn(3, 3, |_, _| rat(rng.gen_range(-4..=4i64), 1));
            if !p.det().unwrap().is_zero() {
                return p;
            }
        }
    }

    fn invert3(p: &Matrix) -> Matrix {
        // adjugate / det
        let det = p.det().unwrap();
        let cof = |i: usize, j: usize| {
            let rows: Vec<usize> = (0..3).filter(|&r| r != i).collect();
            let cols: Vec<usize> = (0..3).filter(|&c| c != j).collect();
            let minor = &p[(rows[0], cols[0])] * &p[(rows[1], cols[1])]
                - &p[(rows[0], cols[1])] * &p[(rows[1], cols[0])];
            if (i + j) % 2 == 0 {
                minor
            } else {
                -minor
            }
        };
        Matrix::from_fn(3, 3, |i, j| cof(j, i) / det.clone())
    }

    /// Random matrices with controlled spectrum so that normalize always
    /// succeeds: a random Jordan-type template conjugated by a random change
    /// of basis; occasionally a raw random singular matrix.
    fn random_normalizable(rng: &mut ChaCha8Rng) -> DelPezzoMatrix {
        let l1 = rat(rng.gen_range(-3..=3), 1);
        let l2 = rat(rng.gen_range(-3..=3), 1);
        let l3 = rat(rng.gen_range(-3..=3), 1);
        let style = rng.gen_range(0..6);
        let mut t = Matrix::zero(3, 3);
        match style {
            0 | 1 => {
                t[(0, 0)] = l1;
                t[(1, 1)] = l2;
                t[(2, 2)] = l3;
            }
            2 => {
                // Jordan pair + simple
                t[(0, 0)] = l1.clone();
                t[(0, 1)] = rat(1, 1);
                t[(1, 1)] = l1;
                t[(2, 2)] = l2;
            }
            3 => {
                // full Jordan block
                t[(0, 0)] = l1.clone();
                t[(0, 1)] = rat(1, 1);
                t[(1, 1)] = l1.clone();
                t[(1, 2)] = rat(1, 1);
                t[(2, 2)] = l1;
            }
            4 => {
                // rational + irrational conjugate pair: companion of
                // (t - l1)(t² - c) with c a non-square
                t[(0, 0)] = l1;
                t[(1, 2)] = rat(2, 1);
                t[(2, 1)] = rat(1, 1);
            }
            _ => {
                // diagonalizable with a repeated eigenvalue (reducible case)
                t[(0, 0)] = l1.clone();
                t[(1, 1)] = l1;
                t[(2, 2)] = l2;
            }
        }
        let p = random_invertible(rng);
        let conj = p.mul(&t).unwrap().mul(&invert3(&p)).unwrap();
        normalize(&conj).unwrap()
    }
}
