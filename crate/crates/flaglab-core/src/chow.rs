//! Exact arithmetic in the Chow ring
//! `A(F) = Z[h1,h2]/(h1² - h1h2 + h2², h1³, h2³)` of the flag threefold,
//! with rational coefficients, plus Riemann–Roch Euler characteristics.
//!
//! Fixed basis: `{1; h1, h2; h1², h2²; pt}` with `pt = h1²h2 = h1h2²` of
//! degree one. The quadratic relation forces `h1h2 = h1² + h2²`, so the mixed
//! degree-two monomial is always stored expanded in the basis.

use num_traits::{One, Zero};
use thiserror::Error;

use crate::exact::{rat, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChowError {
    #[error("chern data of rank {0} not supported here (need rank 2)")]
    UnsupportedRank(u32),
    #[error("component of degree {0} is not homogeneous of that degree")]
    NotHomogeneous(usize),
    #[error("charge must be >= 1, got {0}")]
    BadCharge(i64),
}

/// Element of `A(F)` with rational coefficients in the fixed basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChowClass {
    pub c0: Rational,
    /// coefficients of (h1, h2)
    pub c1: (Rational, Rational),
    /// coefficients of (h1², h2²)
    pub c2: (Rational, Rational),
    /// coefficient of the point class h1²h2
    pub c3: Rational,
}

impl ChowClass {
    pub fn zero() -> Self {
        ChowClass {
            c0: Rational::zero(),
            c1: (Rational::zero(), Rational::zero()),
            c2: (Rational::zero(), Rational::zero()),
            c3: Rational::zero(),
        }
    }

    pub fn one() -> Self {
        let mut c = ChowClass::zero();
        c.c0 = Rational::one();
        c
    }

    pub fn h1() -> Self {
        ChowClass::from_deg1(Rational::one(), Rational::zero())
    }

    pub fn h2() -> Self {
        ChowClass::from_deg1(Rational::zero(), Rational::one())
    }

    /// Hyperplane class h = h1 + h2.
    pub fn h() -> Self {
        ChowClass::from_deg1(Rational::one(), Rational::one())
    }

    pub fn point() -> Self {
        let mut c = ChowClass::zero();
        c.c3 = Rational::one();
        c
    }

    pub fn from_deg1(a1: Rational, a2: Rational) -> Self {
        let mut c = ChowClass::zero();
        c.c1 = (a1, a2);
        c
    }

    pub fn from_deg2(b1: Rational, b2: Rational) -> Self {
        let mut c = ChowClass::zero();
        c.c2 = (b1, b2);
        c
    }

    /// `h1h2 = h1² + h2²` under the quadratic relation.
    pub fn h1h2() -> Self {
        ChowClass::from_deg2(Rational::one(), Rational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.c0.is_zero()
            && self.c1.0.is_zero()
            && self.c1.1.is_zero()
            && self.c2.0.is_zero()
            && self.c2.1.is_zero()
            && self.c3.is_zero()
    }

    /// True when only the degree-`d` graded piece is nonzero (or the class is
    /// zero altogether).
    pub fn is_pure_of_degree(&self, d: usize) -> bool {
        let parts = [
            !self.c0.is_zero(),
            !self.c1.0.is_zero() || !self.c1.1.is_zero(),
            !self.c2.0.is_zero() || !self.c2.1.is_zero(),
            !self.c3.is_zero(),
        ];
        parts.iter().enumerate().all(|(i, &nonzero)| i == d || !nonzero)
    }

    pub fn add(&self, other: &ChowClass) -> ChowClass {
        ChowClass {
            c0: &self.c0 + &other.c0,
            c1: (&self.c1.0 + &other.c1.0, &self.c1.1 + &other.c1.1),
            c2: (&self.c2.0 + &other.c2.0, &self.c2.1 + &other.c2.1),
            c3: &self.c3 + &other.c3,
        }
    }

    pub fn sub(&self, other: &ChowClass) -> ChowClass {
        self.add(&other.scale(&rat(-1, 1)))
    }

    pub fn scale(&self, f: &Rational) -> ChowClass {
        ChowClass {
            c0: &self.c0 * f,
            c1: (&self.c1.0 * f, &self.c1.1 * f),
            c2: (&self.c2.0 * f, &self.c2.1 * f),
            c3: &self.c3 * f,
        }
    }
}

/// Graded product reduced by the relations `h1² - h1h2 + h2²`, `h1³`, `h2³`;
/// components beyond degree 3 vanish.
pub fn multiply(a: &ChowClass, b: &ChowClass) -> ChowClass {
    // Degree-by-degree products in the fixed basis:
    //   deg1 x deg1: h1*h1 = h1², h2*h2 = h2², h1*h2 = h1² + h2²
    //   deg1 x deg2: h1*h1² = 0, h2*h2² = 0, h1*h2² = h2*h1² = pt
    let (a1, a2) = (&a.c1.0, &a.c1.1);
    let (b1, b2) = (&b.c1.0, &b.c1.1);
    let mixed = a1 * b2 + a2 * b1;

    let mut out = ChowClass::zero();
    out.c0 = &a.c0 * &b.c0;
    out.c1 = (
        &a.c0 * b1 + a1 * &b.c0,
        &a.c0 * b2 + a2 * &b.c0,
    );
    out.c2 = (
        &a.c0 * &b.c2.0 + &a.c2.0 * &b.c0 + a1 * b1 + &mixed,
        &a.c0 * &b.c2.1 + &a.c2.1 * &b.c0 + a2 * b2 + &mixed,
    );
    out.c3 = &a.c0 * &b.c3
        + &a.c3 * &b.c0
        + a1 * &b.c2.1
        + a2 * &b.c2.0
        + &a.c2.1 * b1
        + &a.c2.0 * b2;
    out
}

/// Degree map normalized by `deg(h1²h2) = 1`.
pub fn degree(a: &ChowClass) -> Rational {
    a.c3.clone()
}

/// Chern data of a sheaf on F: rank and the graded pieces of its total Chern
/// class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChernData {
    pub rank: u32,
    pub c1: ChowClass,
    pub c2: ChowClass,
    pub c3: ChowClass,
}

impl ChernData {
    pub fn new(rank: u32, c1: ChowClass, c2: ChowClass, c3: ChowClass) -> Result<Self, ChowError> {
        if !c1.is_pure_of_degree(1) {
            return Err(ChowError::NotHomogeneous(1));
        }
        if !c2.is_pure_of_degree(2) {
            return Err(ChowError::NotHomogeneous(2));
        }
        if !c3.is_pure_of_degree(3) {
            return Err(ChowError::NotHomogeneous(3));
        }
        Ok(ChernData { rank, c1, c2, c3 })
    }

    /// The trivial line bundle `O_F`.
    pub fn trivial_line_bundle() -> Self {
        ChernData::new(1, ChowClass::zero(), ChowClass::zero(), ChowClass::zero()).unwrap()
    }

    /// `O_F(a h1 + b h2)`.
    pub fn line_bundle(a: i64, b: i64) -> Self {
        let c1 = ChowClass::from_deg1(rat(a, 1), rat(b, 1));
        let c2 = multiply(&c1, &c1).scale(&rat(0, 1)); // zero, kept for shape
        let c3 = ChowClass::zero();
        ChernData::new(1, c1, c2, c3).unwrap()
    }

    /// Rank-2 instanton data: `c1 = 0`, `c2 = k·h1h2`, `c3 = 0`.
    pub fn instanton(k: i64) -> Result<Self, ChowError> {
        if k < 1 {
            return Err(ChowError::BadCharge(k));
        }
        ChernData::new(2, ChowClass::zero(), ChowClass::h1h2().scale(&rat(k, 1)), ChowClass::zero())
    }

    /// Rank-4 endomorphism data of an instanton: `c1 = c3 = 0`,
    /// `c2 = 4k·h1h2`.
    pub fn instanton_endomorphisms(k: i64) -> Result<Self, ChowError> {
        if k < 1 {
            return Err(ChowError::BadCharge(k));
        }
        ChernData::new(
            4,
            ChowClass::zero(),
            ChowClass::h1h2().scale(&rat(4 * k, 1)),
            ChowClass::zero(),
        )
    }
}

/// Chern data of `E(a h1 + b h2)` for rank-2 `E`, computed through the Chern
/// character: `ch(E ⊗ L) = ch(E)·e^{c1(L)}`, truncated in degree 3 and
/// converted back to Chern classes. The paper-level twist rules
/// `c1 ↦ c1 + 2D`, `c2 ↦ c2 + c1·D + D²` fall out of this computation.
pub fn twist_chern(c: &ChernData, a: i64, b: i64) -> Result<ChernData, ChowError> {
    if c.rank != 2 {
        return Err(ChowError::UnsupportedRank(c.rank));
    }
    let d = ChowClass::from_deg1(rat(a, 1), rat(b, 1));
    let r = rat(c.rank as i64, 1);

    // Chern character pieces of E.
    let ch1 = c.c1.clone();
    let ch2 = multiply(&c.c1, &c.c1).scale(&rat(1, 2)).sub(&c.c2);
    let c1c2 = multiply(&c.c1, &c.c2);
    let c1cubed = multiply(&multiply(&c.c1, &c.c1), &c.c1);
    let ch3 = c1cubed
        .sub(&c1c2.scale(&rat(3, 1)))
        .add(&c.c3.scale(&rat(3, 1)))
        .scale(&rat(1, 6));

    // Multiply by e^D = 1 + D + D²/2 + D³/6.
    let d2 = multiply(&d, &d);
    let d3 = multiply(&d2, &d);
    let ch1t = ch1.add(&d.scale(&r));
    let ch2t = ch2.add(&multiply(&ch1, &d)).add(&d2.scale(&(&r * rat(1, 2))));
    let ch3t = ch3
        .add(&multiply(&ch2, &d))
        .add(&multiply(&ch1, &d2).scale(&rat(1, 2)))
        .add(&d3.scale(&(&r * rat(1, 6))));

    // Convert back.
    let c1t = ch1t.clone();
    let c2t = multiply(&c1t, &c1t).scale(&rat(1, 2)).sub(&ch2t);
    let c1t3 = multiply(&multiply(&c1t, &c1t), &c1t);
    let c3t = ch3t
        .scale(&rat(2, 1))
        .sub(&c1t3.scale(&rat(1, 3)))
        .add(&multiply(&c1t, &c2t));
    ChernData::new(c.rank, c1t, c2t, c3t)
}

/// Riemann–Roch on F:
/// `χ = r + (3/2)·deg(c1·h1h2) + (1/2)·deg((c1² - 2c2)·h) + (1/6)·deg(c1³ - 3c1c2 + 3c3)`.
pub fn euler_char(c: &ChernData) -> Rational {
    let t1 = multiply(&c.c1, &ChowClass::h1h2());
    let c1sq = multiply(&c.c1, &c.c1);
    let t2 = multiply(&c1sq.sub(&c.c2.scale(&rat(2, 1))), &ChowClass::h());
    let t3 = multiply(&c1sq, &c.c1)
        .sub(&multiply(&c.c1, &c.c2).scale(&rat(3, 1)))
        .add(&c.c3.scale(&rat(3, 1)));
    rat(c.rank as i64, 1)
        + rat(3, 2) * degree(&t1)
        + rat(1, 2) * degree(&t2)
        + rat(1, 6) * degree(&t3)
}

/// `χ(O_F(a h1 + b h2))` through [`euler_char`].
pub fn line_bundle_euler(a: i64, b: i64) -> Rational {
    euler_char(&ChernData::line_bundle(a, b))
}

/// Euler characteristics of the canonical instanton twists, each computed
/// through [`euler_char`] on twisted Chern data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstantonEulerTable {
    pub k: i64,
    /// χ(E(-h)) = 0
    pub chi_minus_h: Rational,
    /// χ(E) = 2 - 2k
    pub chi: Rational,
    /// χ(E(-h_i)) = -k
    pub chi_minus_hi: Rational,
    /// χ(E(h_i)) = 6 - 3k
    pub chi_hi: Rational,
    /// χ(E(h)) = 16 - 4k
    pub chi_h: Rational,
}

pub fn instanton_numerology(k: i64) -> Result<InstantonEulerTable, ChowError> {
    let e = ChernData::instanton(k)?;
    let chi_at = |a: i64, b: i64| euler_char(&twist_chern(&e, a, b).expect("rank 2"));
    Ok(InstantonEulerTable {
        k,
        chi_minus_h: chi_at(-1, -1),
        chi: chi_at(0, 0),
        chi_minus_hi: chi_at(-1, 0),
        chi_hi: chi_at(1, 0),
        chi_h: chi_at(1, 1),
    })
}

/// Closed form of χ(E(a h1 + b h2)) for a charge-k instanton:
/// `a²b + ab² + a² + b² + 4ab + 3a + 3b + 2 - k(2 + a + b)`.
pub fn instanton_twist_euler_closed_form(k: i64, a: i64, b: i64) -> Rational {
    rat(
        a * a * b + a * b * b + a * a + b * b + 4 * a * b + 3 * a + 3 * b + 2 - k * (2 + a + b),
        1,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn h1_times_h2_expands() {
        let p = multiply(&ChowClass::h1(), &ChowClass::h2());
        assert_eq!(p, ChowClass::h1h2());
    }

    #[test]
    fn h1_cubed_vanishes() {
        let h1sq = multiply(&ChowClass::h1(), &ChowClass::h1());
        assert!(multiply(&ChowClass::h1(), &h1sq).is_zero());
        let h2sq = multiply(&ChowClass::h2(), &ChowClass::h2());
        assert!(multiply(&ChowClass::h2(), &h2sq).is_zero());
    }

    #[test]
    fn hyperplane_cube_is_six_points() {
        let h = ChowClass::h();
        let h3 = multiply(&multiply(&h, &h), &h);
        assert_eq!(h3, ChowClass::point().scale(&rat(6, 1)));
        assert_eq!(degree(&h3), rat(6, 1));
    }

    #[test]
    fn degree_examples() {
        assert_eq!(degree(&ChowClass::point()), rat(1, 1));
        // h1²·h2 + h1·h2² = 2 pt
        let a = multiply(&multiply(&ChowClass::h1(), &ChowClass::h1()), &ChowClass::h2());
        let b = multiply(&multiply(&ChowClass::h1(), &ChowClass::h2()), &ChowClass::h2());
        assert_eq!(degree(&a.add(&b)), rat(2, 1));
        // h2³ = 0
        let h2sq = multiply(&ChowClass::h2(), &ChowClass::h2());
        assert_eq!(degree(&multiply(&h2sq, &ChowClass::h2())), rat(0, 1));
    }

    #[test]
    fn twist_identity() {
        let e = ChernData::instanton(3).unwrap();
        assert_eq!(twist_chern(&e, 0, 0).unwrap(), e);
    }

    #[test]
    fn twist_by_h1() {
        let e = ChernData::instanton(2).unwrap();
        let t = twist_chern(&e, 1, 0).unwrap();
        assert_eq!(t.c1, ChowClass::from_deg1(rat(2, 1), rat(0, 1)));
        // c2 = k h1h2 + h1² = (k+1) h1² + k h2²
        assert_eq!(t.c2, ChowClass::from_deg2(rat(3, 1), rat(2, 1)));
        assert!(t.c3.is_zero());
    }

    #[test]
    fn twist_round_trip() {
        let e = ChernData::instanton(4).unwrap();
        let back = twist_chern(&twist_chern(&e, 1, 1).unwrap(), -1, -1).unwrap();
        assert_eq!(back, e);
    }

    #[test]
    fn euler_char_of_structure_sheaf() {
        assert_eq!(euler_char(&ChernData::trivial_line_bundle()), rat(1, 1));
    }

    #[test]
    fn euler_char_matches_closed_form_on_grid() {
        for k in 1..=6 {
            let e = ChernData::instanton(k).unwrap();
            for a in -4..=4 {
                for b in -4..=4 {
                    let chi = euler_char(&twist_chern(&e, a, b).unwrap());
                    assert_eq!(chi, instanton_twist_euler_closed_form(k, a, b), "k={k} a={a} b={b}");
                }
            }
        }
    }

    #[test]
    fn line_bundle_minus_h_is_acyclic_in_euler() {
        assert_eq!(line_bundle_euler(-1, -1), rat(0, 1));
    }

    #[test]
    fn numerology_table() {
        for k in 1..=8 {
            let t = instanton_numerology(k).unwrap();
            assert_eq!(t.chi_minus_h, rat(0, 1));
            assert_eq!(t.chi, rat(2 - 2 * k, 1));
            assert_eq!(t.chi_minus_hi, rat(-k, 1));
            assert_eq!(t.chi_hi, rat(6 - 3 * k, 1));
            assert_eq!(t.chi_h, rat(16 - 4 * k, 1));
        }
        assert_eq!(instanton_numerology(1).unwrap().chi_hi, rat(3, 1));
        assert_eq!(instanton_numerology(3).unwrap().chi_h, rat(4, 1));
        assert!(instanton_numerology(0).is_err());
    }
}
