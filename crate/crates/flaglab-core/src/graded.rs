//! The bigraded coordinate ring of the flag threefold.
//!
//! `F` sits in `P² × P²ˇ` with coordinates `x0,x1,x2 / y0,y1,y2`, cut out by
//! the quadric `x0y0 + x1y1 + x2y2 = 0`. Bihomogeneous forms are kept in a
//! normal form under the single rewrite `x0y0 -> -x1y1 - x2y2`, applied until
//! no monomial is divisible by `x0y0`. The normal-form monomials of bidegree
//! `(a,b)` are a basis of `H⁰(O_F(a h1 + b h2))`, of size
//! `(a+1)(b+1)(a+b+2)/2`.

use std::collections::BTreeMap;
use std::sync::Mutex;

use num_traits::{One, Signed, Zero};
use once_cell::sync::Lazy;
use thiserror::Error;

use crate::chow::line_bundle_euler;
use crate::exact::{rat, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GradedError {
    #[error("bidegrees do not match: ({0},{1}) vs ({2},{3})")]
    BidegreeMismatch(i64, i64, i64, i64),
    #[error("invalid parameter: {0}")]
    BadParameter(String),
}

/// Exponents `(x0,x1,x2,y0,y1,y2)`. Ordering is bidegree first, then the
/// exponent tuple itself, which makes map iteration deterministic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mono(pub [u32; 6]);

impl Mono {
    pub fn bidegree(&self) -> (i64, i64) {
        let e = &self.0;
        ((e[0] + e[1] + e[2]) as i64, (e[3] + e[4] + e[5]) as i64)
    }

    pub fn is_normal(&self) -> bool {
        self.0[0] == 0 || self.0[3] == 0
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        let mut e = [0u32; 6];
        for i in 0..6 {
            e[i] = self.0[i] + other.0[i];
        }
        Mono(e)
    }

    pub fn to_display(&self) -> String {
        const NAMES: [&str; 6] = ["x0", "x1", "x2", "y0", "y1", "y2"];
        let mut parts = Vec::new();
        for (i, &e) in self.0.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(NAMES[i].to_string()),
                _ => parts.push(format!("{}^{}", NAMES[i], e)),
            }
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

/// Bihomogeneous form of fixed bidegree in normal form modulo the flag
/// quadric. Zero is the empty coefficient map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BigradedForm {
    bidegree: (i64, i64),
    terms: BTreeMap<Mono, Rational>,
}

impl BigradedForm {
    pub fn zero(a: i64, b: i64) -> Self {
        BigradedForm { bidegree: (a, b), terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        BigradedForm::from_terms(0, 0, vec![(Mono([0; 6]), Rational::one())])
    }

    /// Build a form from raw (not necessarily normal) terms of the stated
    /// bidegree; the result is reduced to normal form.
    pub fn from_terms(a: i64, b: i64, raw: Vec<(Mono, Rational)>) -> Self {
        let mut f = BigradedForm::zero(a, b);
        for (m, c) in raw {
            assert_eq!(m.bidegree(), (a, b), "term of wrong bidegree");
            f.accumulate_reduced(m, c);
        }
        f.prune();
        f
    }

    /// Linear form `c0 x0 + c1 x1 + c2 x2` of bidegree (1,0).
    pub fn linear_x(c: &[Rational; 3]) -> Self {
        let mut raw = Vec::new();
        for i in 0..3 {
            let mut e = [0u32; 6];
            e[i] = 1;
            raw.push((Mono(e), c[i].clone()));
        }
        BigradedForm::from_terms(1, 0, raw)
    }

    /// Linear form `c0 y0 + c1 y1 + c2 y2` of bidegree (0,1).
    pub fn linear_y(c: &[Rational; 3]) -> Self {
        let mut raw = Vec::new();
        for i in 0..3 {
            let mut e = [0u32; 6];
            e[3 + i] = 1;
            raw.push((Mono(e), c[i].clone()));
        }
        BigradedForm::from_terms(0, 1, raw)
    }

    pub fn bidegree(&self) -> (i64, i64) {
        self.bidegree
    }

    pub fn terms(&self) -> &BTreeMap<Mono, Rational> {
        &self.terms
    }

    pub fn coeff(&self, m: &Mono) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn prune(&mut self) {
        self.terms.retain(|_, c| !c.is_zero());
    }

    /// Add `c * m` after rewriting `x0y0 -> -x1y1 - x2y2` until normal.
    fn accumulate_reduced(&mut self, m: Mono, c: Rational) {
        if c.is_zero() {
            return;
        }
        if m.is_normal() {
            let entry = self.terms.entry(m).or_insert_with(Rational::zero);
            *entry += c;
            return;
        }
        // strip one x0y0 and expand
        let mut base = m;
        base.0[0] -= 1;
        base.0[3] -= 1;
        for i in [1usize, 2] {
            let mut t = base;
            t.0[i] += 1;
            t.0[3 + i] += 1;
            self.accumulate_reduced(t, -c.clone());
        }
    }

    pub fn add(&self, other: &BigradedForm) -> Result<BigradedForm, GradedError> {
        if self.bidegree != other.bidegree {
            return Err(GradedError::BidegreeMismatch(
                self.bidegree.0,
                self.bidegree.1,
                other.bidegree.0,
                other.bidegree.1,
            ));
        }
        let mut out = self.clone();
        for (m, c) in &other.terms {
            let entry = out.terms.entry(*m).or_insert_with(Rational::zero);
            *entry += c.clone();
        }
        out.prune();
        Ok(out)
    }

    pub fn scale(&self, f: &Rational) -> BigradedForm {
        if f.is_zero() {
            return BigradedForm::zero(self.bidegree.0, self.bidegree.1);
        }
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c *= f;
        }
        out
    }

    pub fn to_display(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (m, c) in &self.terms {
            let cs = crate::exact::rat_to_string(c);
            let ms = m.to_display();
            let term = if ms == "1" {
                cs
            } else if c.is_one() {
                ms
            } else if (-c.clone()).is_one() {
                format!("-{ms}")
            } else {
                format!("{cs}*{ms}")
            };
            parts.push(term);
        }
        parts.join(" + ").replace("+ -", "- ")
    }
}

/// Product in the coordinate ring; bidegrees add and the result is reduced to
/// normal form.
pub fn multiply_forms(f: &BigradedForm, g: &BigradedForm) -> BigradedForm {
    let (a, b) = (f.bidegree.0 + g.bidegree.0, f.bidegree.1 + g.bidegree.1);
    let mut out = BigradedForm::zero(a, b);
    for (mf, cf) in &f.terms {
        for (mg, cg) in &g.terms {
            out.accumulate_reduced(mf.mul(mg), cf * cg);
        }
    }
    out.prune();
    out
}

static BASIS_CACHE: Lazy<Mutex<BTreeMap<(i64, i64), Vec<Mono>>>> =
    Lazy::new(|| Mutex::new(BTreeMap::new()));

/// Normal-form monomial basis of `H⁰(O_F(a h1 + b h2))`; empty for negative
/// bidegrees. Memoized.
pub fn basis(a: i64, b: i64) -> Vec<Mono> {
    if a < 0 || b < 0 {
        return vec![];
    }
    if let Some(v) = BASIS_CACHE.lock().unwrap().get(&(a, b)) {
        return v.clone();
    }
    let mut out = Vec::new();
    for xa in compositions(a as u32) {
        for yb in compositions(b as u32) {
            if xa[0] > 0 && yb[0] > 0 {
                continue; // divisible by x0y0
            }
            out.push(Mono([xa[0], xa[1], xa[2], yb[0], yb[1], yb[2]]));
        }
    }
    out.sort();
    BASIS_CACHE.lock().unwrap().insert((a, b), out.clone());
    out
}

fn compositions(d: u32) -> Vec<[u32; 3]> {
    let mut v = Vec::new();
    for i in 0..=d {
        for j in 0..=(d - i) {
            v.push([i, j, d - i - j]);
        }
    }
    v
}

/// Closed-form dimension `(a+1)(b+1)(a+b+2)/2` of the bidegree-(a,b) piece.
pub fn basis_dimension_closed_form(a: i64, b: i64) -> i64 {
    if a < 0 || b < 0 {
        return 0;
    }
    (a + 1) * (b + 1) * (a + b + 2) / 2
}

/// Cohomology table of a line bundle twist; at most one entry is nonzero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct CohomologyTable {
    pub h0: u64,
    pub h1: u64,
    pub h2: u64,
    pub h3: u64,
}

impl CohomologyTable {
    pub fn euler(&self) -> i64 {
        self.h0 as i64 - self.h1 as i64 + self.h2 as i64 - self.h3 as i64
    }

    pub fn entries(&self) -> [u64; 4] {
        [self.h0, self.h1, self.h2, self.h3]
    }
}

/// Full cohomology of `O_F(α1 h1 + α2 h2)`.
///
/// The classification is stated for `α1 <= α2`; inputs in either order are
/// normalized by sorting, which is justified by the automorphism of F
/// swapping the two plane factors.
pub fn line_bundle_cohomology(alpha1: i64, alpha2: i64) -> CohomologyTable {
    let (a1, a2) = if alpha1 <= alpha2 { (alpha1, alpha2) } else { (alpha2, alpha1) };
    let value = |i: i64| -> u64 {
        let prod = rat((a1 + 1) * (a2 + 1) * (a1 + a2 + 2), 2) * rat((-1i64).pow(i as u32), 1);
        assert!(prod.denom().is_one() && !prod.is_negative(), "cohomology value must be a count");
        let n: num_bigint::BigInt = prod.to_integer();
        u64::try_from(n).expect("cohomology fits in u64")
    };
    let mut t = CohomologyTable { h0: 0, h1: 0, h2: 0, h3: 0 };
    if a1 >= 0 {
        t.h0 = value(0);
    } else if a1 <= -2 && a1 + a2 + 1 >= 0 {
        t.h1 = value(1);
    } else if a2 >= 0 && a1 + a2 + 3 <= 0 {
        t.h2 = value(2);
    } else if a2 <= -2 {
        t.h3 = value(3);
    }
    t
}

/// A finite complex of sums of line bundles, recorded as
/// (homological degree, twists with multiplicity). Degree 0 is the augmented
/// end; a resolution `0 -> T_n -> ... -> T_0 -> sheaf -> 0` lists `T_d` at
/// degree `d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResolutionSpec {
    terms: Vec<(i64, Vec<((i64, i64), usize)>)>,
}

impl ResolutionSpec {
    pub fn new(mut terms: Vec<(i64, Vec<((i64, i64), usize)>)>) -> Self {
        terms.sort_by_key(|(d, _)| *d);
        let strictly_increasing = terms.windows(2).all(|w| w[0].0 < w[1].0);
        assert!(strictly_increasing, "homological degrees must be distinct");
        ResolutionSpec { terms }
    }

    pub fn terms(&self) -> &[(i64, Vec<((i64, i64), usize)>)] {
        &self.terms
    }

    /// Resolution of a line in the first family:
    /// `0 -> O(-2h1) -> O(-h1)² -> O -> O_L -> 0`.
    pub fn line() -> Self {
        neighborhood_resolution(NeighborhoodKind::LineThick(1)).unwrap()
    }

    /// Resolution of a smooth conic:
    /// `0 -> O(-h) -> O(-h1) ⊕ O(-h2) -> O -> O_C -> 0`.
    pub fn conic() -> Self {
        ResolutionSpec::new(vec![
            (0, vec![((0, 0), 1)]),
            (1, vec![((-1, 0), 1), ((0, -1), 1)]),
            (2, vec![((-1, -1), 1)]),
        ])
    }
}

/// `Σ (-1)^deg Σ χ(twist)`, each χ from the rank-1 Riemann–Roch polynomial;
/// this is χ of the resolved sheaf.
pub fn complex_euler(r: &ResolutionSpec) -> Rational {
    let mut acc = Rational::zero();
    for (d, twists) in &r.terms {
        let sign = if d % 2 == 0 { 1 } else { -1 };
        for ((a, b), mult) in twists {
            acc += line_bundle_euler(*a, *b) * rat(sign * *mult as i64, 1);
        }
    }
    acc
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NeighborhoodKind {
    /// Multiplicity-m multiple structure of type `O_L` on a line (class h1²):
    /// `0 -> O(-2h1)^m -> O(-h1)^{2m} -> O^m -> O_Y -> 0`.
    LineThick(usize),
    /// First infinitesimal neighbourhood of a smooth rational complete
    /// intersection curve of class `h1² + a·h2²`. `a = 0` is the line case
    /// with its own shorter resolution.
    FirstNeighborhood(i64),
}

/// Explicit resolutions of the first-neighbourhood and thick-line structure
/// sheaves.
pub fn neighborhood_resolution(kind: NeighborhoodKind) -> Result<ResolutionSpec, GradedError> {
    match kind {
        NeighborhoodKind::LineThick(m) => {
            if m < 1 {
                return Err(GradedError::BadParameter(format!("multiplicity {m} < 1")));
            }
            Ok(ResolutionSpec::new(vec![
                (0, vec![((0, 0), m)]),
                (1, vec![((-1, 0), 2 * m)]),
                (2, vec![((-2, 0), m)]),
            ]))
        }
        NeighborhoodKind::FirstNeighborhood(a) => {
            if a < 0 {
                return Err(GradedError::BadParameter(format!("degree parameter {a} < 0")));
            }
            if a == 0 {
                // I = (x0², x0x1, x1²) for the line {x0 = x1 = 0}
                return Ok(ResolutionSpec::new(vec![
                    (0, vec![((0, 0), 1)]),
                    (1, vec![((-2, 0), 3)]),
                    (2, vec![((-3, 0), 2)]),
                ]));
            }
            // I = (θ², θζ, ζ²) for θ of bidegree (0,1), ζ of bidegree (1, a-1)
            Ok(ResolutionSpec::new(vec![
                (0, vec![((0, 0), 1)]),
                (1, vec![((0, -2), 1), ((-1, -a), 1), ((-2, 2 - 2 * a), 1)]),
                (2, vec![((-1, -a - 1), 1), ((-2, 1 - 2 * a), 1)]),
            ]))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mono(e: [u32; 6]) -> Mono {
        Mono(e)
    }

    #[test]
    fn basis_small_cases() {
        let b10 = basis(1, 0);
        assert_eq!(b10.len(), 3);
        assert_eq!(
            b10,
            vec![mono([0, 0, 1, 0, 0, 0]), mono([0, 1, 0, 0, 0, 0]), mono([1, 0, 0, 0, 0, 0])]
        );
        assert_eq!(basis(1, 1).len(), 8);
        assert_eq!(basis(2, 1).len(), 15);
        assert!(basis(-1, 2).is_empty());
    }

    #[test]
    fn basis_matches_closed_form() {
        for a in 0..=6 {
            for b in 0..=6 {
                assert_eq!(basis(a, b).len() as i64, basis_dimension_closed_form(a, b));
            }
        }
    }

    #[test]
    fn defining_rewrite() {
        let x0 = BigradedForm::linear_x(&[rat(1, 1), rat(0, 1), rat(0, 1)]);
        let y0 = BigradedForm::linear_y(&[rat(1, 1), rat(0, 1), rat(0, 1)]);
        let p = multiply_forms(&x0, &y0);
        let expected = BigradedForm::from_terms(
            1,
            1,
            vec![
                (mono([0, 1, 0, 0, 1, 0]), rat(-1, 1)),
                (mono([0, 0, 1, 0, 0, 1]), rat(-1, 1)),
            ],
        );
        assert_eq!(p, expected);
    }

    #[test]
    fn one_is_neutral() {
        let f = BigradedForm::from_terms(
            1,
            1,
            vec![(mono([0, 1, 0, 1, 0, 0]), rat(3, 2)), (mono([0, 0, 1, 0, 1, 0]), rat(-1, 5))],
        );
        assert_eq!(multiply_forms(&f, &BigradedForm::one()), f);
    }

    #[test]
    fn flag_quadric_reduces_to_zero() {
        // x0y0 + x1y1 + x2y2 normalizes to the zero form
        let q = BigradedForm::from_terms(
            1,
            1,
            vec![
                (mono([1, 0, 0, 1, 0, 0]), rat(1, 1)),
                (mono([0, 1, 0, 0, 1, 0]), rat(1, 1)),
                (mono([0, 0, 1, 0, 0, 1]), rat(1, 1)),
            ],
        );
        assert!(q.is_zero());
    }

    #[test]
    fn cohomology_examples() {
        let t = line_bundle_cohomology(1, 1);
        assert_eq!((t.h0, t.h1, t.h2, t.h3), (8, 0, 0, 0));
        let t = line_bundle_cohomology(-1, -1);
        assert_eq!(t.entries(), [0, 0, 0, 0]);
        let t = line_bundle_cohomology(-2, 1);
        assert_eq!((t.h0, t.h1, t.h2, t.h3), (0, 1, 0, 0));
        // order-insensitive
        assert_eq!(line_bundle_cohomology(1, -2), line_bundle_cohomology(-2, 1));
    }

    #[test]
    fn cohomology_has_at_most_one_nonzero_entry_and_rr_sum() {
        for a1 in -6..=6 {
            for a2 in -6..=6 {
                let t = line_bundle_cohomology(a1, a2);
                let nonzero = t.entries().iter().filter(|&&h| h > 0).count();
                assert!(nonzero <= 1, "({a1},{a2})");
                assert_eq!(rat(t.euler(), 1), line_bundle_euler(a1, a2), "({a1},{a2})");
            }
        }
    }

    #[test]
    fn serre_duality_on_grid() {
        // ω_F = O(-2h): h^i(α1,α2) = h^{3-i}(-2-α1, -2-α2)
        for a1 in -6..=6 {
            for a2 in -6..=6 {
                let t = line_bundle_cohomology(a1, a2);
                let d = line_bundle_cohomology(-2 - a1, -2 - a2);
                assert_eq!(t.h0, d.h3, "({a1},{a2})");
                assert_eq!(t.h1, d.h2, "({a1},{a2})");
                assert_eq!(t.h2, d.h1, "({a1},{a2})");
                assert_eq!(t.h3, d.h0, "({a1},{a2})");
            }
        }
    }

    #[test]
    fn resolution_euler_characteristics() {
        assert_eq!(complex_euler(&ResolutionSpec::conic()), rat(1, 1));
        assert_eq!(complex_euler(&ResolutionSpec::line()), rat(1, 1));
        for a in 1..=5 {
            let r = neighborhood_resolution(NeighborhoodKind::FirstNeighborhood(a)).unwrap();
            assert_eq!(complex_euler(&r), rat(3 - 2 * a, 1), "a={a}");
        }
        let r = neighborhood_resolution(NeighborhoodKind::FirstNeighborhood(0)).unwrap();
        assert_eq!(complex_euler(&r), rat(3, 1));
        for m in 1..=4 {
            let r = neighborhood_resolution(NeighborhoodKind::LineThick(m)).unwrap();
            assert_eq!(complex_euler(&r), rat(m as i64, 1), "m={m}");
        }
        assert!(neighborhood_resolution(NeighborhoodKind::LineThick(0)).is_err());
    }

    /// Independent reducer: eliminate all x0y0 powers in one shot by the
    /// binomial expansion of (x1y1 + x2y2)^d, then compare with the
    /// incremental rewrite used by `multiply_forms`.
    fn greedy_reduce(raw: &[(Mono, Rational)], a: i64, b: i64) -> BTreeMap<Mono, Rational> {
        let mut out: BTreeMap<Mono, Rational> = BTreeMap::new();
        for (m, c) in raw {
            let d = m.0[0].min(m.0[3]);
            let mut base = *m;
            base.0[0] -= d;
            base.0[3] -= d;
            // (-1)^d (x1y1 + x2y2)^d = Σ_j C(d,j) x1^j y1^j x2^{d-j} y2^{d-j}
            for j in 0..=d {
                let mut t = base;
                t.0[1] += j;
                t.0[4] += j;
                t.0[2] += d - j;
                t.0[5] += d - j;
                let mut coeff = c.clone() * rat(binom(d, j), 1);
                if d % 2 == 1 {
                    coeff = -coeff;
                }
                let e = out.entry(t).or_insert_with(Rational::zero);
                *e += coeff;
            }
        }
        out.retain(|_, c| !c.is_zero());
        let _ = (a, b);
        out
    }

    fn binom(n: u32, k: u32) -> i64 {
        let mut r: i64 = 1;
        for i in 0..k {
            r = r * (n - i) as i64 / (i + 1) as i64;
        }
        r
    }

    #[test]
    fn product_matches_independent_greedy_reducer() {
        // (x0y1)(x1y0): both routes must agree
        let f = BigradedForm::from_terms(1, 1, vec![(mono([1, 0, 0, 0, 1, 0]), rat(1, 1))]);
        let g = BigradedForm::from_terms(1, 1, vec![(mono([0, 1, 0, 1, 0, 0]), rat(1, 1))]);
        let p = multiply_forms(&f, &g);
        let raw = vec![(mono([1, 1, 0, 1, 1, 0]), rat(1, 1))];
        assert_eq!(p.terms().clone(), greedy_reduce(&raw, 2, 2));
    }

    #[test]
    fn high_power_reduction_matches_greedy() {
        // (x0y0)^3 via repeated multiplication vs one-shot expansion
        let x0 = BigradedForm::linear_x(&[rat(1, 1), rat(0, 1), rat(0, 1)]);
        let y0 = BigradedForm::linear_y(&[rat(1, 1), rat(0, 1), rat(0, 1)]);
        let x0y0 = multiply_forms(&x0, &y0);
        let cube = multiply_forms(&multiply_forms(&x0y0, &x0y0), &x0y0);
        let raw = vec![(mono([3, 0, 0, 3, 0, 0]), rat(1, 1))];
        assert_eq!(cube.terms().clone(), greedy_reduce(&raw, 3, 3));
    }
}
