//! Dimension bookkeeping for the moduli spaces of 't Hooft bundles, plus the
//! rigorous nonvanishing certificate for the connectivity path.
//!
//! Every closed-form dimension is recomputed from the fibration it comes
//! from: the deformation-space dimension through Riemann–Roch on `End(E)`,
//! the 't Hooft locus through the normal bundle of its curves plus the
//! extension classes, and the special loci through their parameter
//! fibrations. A mismatch between a closed form and its decomposition is an
//! error, never silently truncated.

pub mod interval;

use num_traits::Zero;
use rayon::prelude::*;
use thiserror::Error;

use crate::chow::{degree, euler_char, multiply, ChernData, ChowClass, ChowError};
use crate::curves::{
    hilbert_component_lower_bound, normal_bundle_cohomology, CurveError, Family, MultiIndex,
};
use crate::exact::{rat, Rational};
use interval::{cos_sin, pi, Interval};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModuliError {
    #[error("charge must be >= 1, got {0}")]
    BadCharge(i64),
    #[error("closed form and fibration decomposition disagree: {0}")]
    InternalMismatch(String),
    #[error("need at least 2 samples")]
    TooFewSamples,
    #[error("interval certificate failed: {0}")]
    CertificateFailure(String),
    #[error(transparent)]
    Chow(#[from] ChowError),
    #[error(transparent)]
    Curves(#[from] CurveError),
}

/// Dimensions of the moduli spaces at charge `k >= 2`, each entry both a
/// closed form and a recomputed decomposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuliTable {
    pub k: i64,
    /// `dim Ext¹(E, E) = 8k - 3`
    pub ext1: i64,
    /// special locus, irreducible sextic branch: `7 + 2k`
    pub dim_mi_s_prime: i64,
    /// special locus, reducible sextic branch: `4k + 4`
    pub dim_mi_s_doubleprime: i64,
    /// one-sided 't Hooft locus: `5k + 2`
    pub dim_mi_i: i64,
    /// number of irreducible components of the curve Hilbert scheme, hence a
    /// lower bound for the component count of the 't Hooft locus
    pub component_lower_bound: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DimensionTable {
    Table(ModuliTable),
    /// At charge one every instanton is special and the stratification
    /// degenerates; only the deformation dimension is reported.
    Charge1 { ext1: i64 },
}

/// `dim Ext¹(E,E)` through Riemann–Roch on `End(E)`: `E` is simple with
/// vanishing `Ext²` and `Ext³`, so `ext¹ = 1 - χ(E ⊗ Eˇ)`.
fn ext1_from_euler(k: i64) -> Result<i64, ModuliError> {
    let end = ChernData::instanton_endomorphisms(k)?;
    let chi = euler_char(&end);
    let ext1 = rat(1, 1) - chi;
    Ok(rational_to_i64(&ext1))
}

fn rational_to_i64(r: &Rational) -> i64 {
    assert!(r.is_integer(), "expected an integer, got {r}");
    i64::try_from(r.to_integer()).expect("fits in i64")
}

pub fn dimension_table(k: i64) -> Result<DimensionTable, ModuliError> {
    if k < 1 {
        return Err(ModuliError::BadCharge(k));
    }
    let ext1 = ext1_from_euler(k)?;
    if ext1 != 8 * k - 3 {
        return Err(ModuliError::InternalMismatch(format!(
            "ext1: closed form {} vs Riemann-Roch {}",
            8 * k - 3,
            ext1
        )));
    }
    if k == 1 {
        return Ok(DimensionTable::Charge1 { ext1 });
    }

    // h⁰ of the normal bundle of a charge-k configuration: the profile
    // (0, ..., 0, k) with k lines and one degree-k curve
    let mut parts = vec![0i64; k as usize];
    parts.push(k);
    let sample = MultiIndex::new(k, parts)?;
    let (h0_normal, h1_normal) =
        normal_bundle_cohomology(&sample.reduced_configuration(Family::Lambda1))?;
    if h1_normal != 0 {
        return Err(ModuliError::InternalMismatch("h1 of the normal bundle must vanish".into()));
    }
    // Hilbert scheme base + P^k of extension classes
    let mi_i = h0_normal + k;
    if mi_i != 5 * k + 2 {
        return Err(ModuliError::InternalMismatch(format!(
            "MI^i: closed form {} vs decomposition {}",
            5 * k + 2,
            mi_i
        )));
    }
    // irreducible branch: P⁷ of sextics + |kR| + extension classes
    let mi_s_prime = 7 + k + k;
    if mi_s_prime != 7 + 2 * k {
        return Err(ModuliError::InternalMismatch("MI_s' decomposition".into()));
    }
    // reducible branch: P²×P²ˇ of scroll pairs + P^k + P^2k + extension classes
    let mi_s_doubleprime = 4 + k + 2 * k + k;
    if mi_s_doubleprime != 4 * k + 4 {
        return Err(ModuliError::InternalMismatch("MI_s'' decomposition".into()));
    }
    let lower = hilbert_component_lower_bound(k)?;
    if lower != k {
        return Err(ModuliError::InternalMismatch(format!(
            "component bound: expected {k}, enumeration gives {lower}"
        )));
    }
    Ok(DimensionTable::Table(ModuliTable {
        k,
        ext1,
        dim_mi_s_prime: mi_s_prime,
        dim_mi_s_doubleprime: mi_s_doubleprime,
        dim_mi_i: mi_i,
        component_lower_bound: lower,
    }))
}

/// Dimension of the family of degree-`2k+6` elliptic curves realizing proper
/// `h`-'t Hooft bundles: `h⁰(N) = 2·deg(Y)` with `deg(Y)` computed in the
/// Chow ring from the class `(k+3)·h1h2`.
pub fn elliptic_family_dimension(k: i64) -> Result<i64, ModuliError> {
    if k < 1 {
        return Err(ModuliError::BadCharge(k));
    }
    let class = ChowClass::h1h2().scale(&rat(k + 3, 1));
    let deg = rational_to_i64(&degree(&multiply(&class, &ChowClass::h())));
    if deg != 2 * k + 6 {
        return Err(ModuliError::InternalMismatch(format!(
            "deg(Y): expected {}, Chow ring gives {deg}",
            2 * k + 6
        )));
    }
    let dim = 2 * deg;
    if dim != 4 * k + 12 {
        return Err(ModuliError::InternalMismatch("elliptic family dimension".into()));
    }
    Ok(dim)
}

/// Rigorous evaluation of the connectivity path determinant
/// `h(t) = 1 - 2t·e^{iπ(1-t)}` on a uniform grid of `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct PathWitness {
    pub t_samples: Vec<Rational>,
    /// midpoints of the verified enclosures of (Re h, Im h); the endpoint
    /// values are exact
    pub h_values: Vec<(Rational, Rational)>,
    /// largest enclosure width over the grid (certificate quality)
    pub max_enclosure_width: Rational,
    /// verified lower bound for min |h(t)|² over the grid
    pub min_abs_squared: Rational,
    /// h(0) = 1 and h(1) = -1 hold exactly
    pub endpoints_exact: bool,
    /// Im h(t) ≠ 0 certified at every interior sample
    pub interior_nonreal: bool,
    /// the endpoint substitution matrices are the identity and the
    /// transposition of the two moved basis vectors
    pub endpoint_swap_verified: bool,
}

/// Evaluate `h` on `n_samples` uniform points and certify `|h| > 1/100`,
/// exact endpoint values, nonreal interior values and the endpoint swap. Any
/// failed certificate is an error carrying the offending sample.
pub fn path_witness(n_samples: usize) -> Result<PathWitness, ModuliError> {
    if n_samples < 2 {
        return Err(ModuliError::TooFewSamples);
    }
    let n = n_samples;
    let threshold = rat(1, 10_000); // (1/100)²
    let results: Result<Vec<_>, ModuliError> = (0..n)
        .into_par_iter()
        .map(|i| {
            let t = rat(i as i64, (n - 1) as i64);
            let (re, im) = h_enclosure(&t);
            let abs2 = re.square().add(&im.square());
            if abs2.lo() <= threshold {
                return Err(ModuliError::CertificateFailure(format!(
                    "|h({t})|² lower bound {} <= 1/10000",
                    abs2.lo()
                )));
            }
            let interior = i > 0 && i + 1 < n;
            if interior && im.contains_zero() {
                return Err(ModuliError::CertificateFailure(format!(
                    "Im h({t}) not separated from zero"
                )));
            }
            let width = if re.width() > im.width() { re.width() } else { im.width() };
            Ok((t, re, im, abs2.lo(), width))
        })
        .collect();
    let results = results?;

    let first = &results[0];
    let last = &results[n - 1];
    let endpoints_exact = first.1.is_exact()
        && first.2.is_exact()
        && first.1.lo() == rat(1, 1)
        && first.2.lo().is_zero()
        && last.1.is_exact()
        && last.2.is_exact()
        && last.1.lo() == rat(-1, 1)
        && last.2.lo().is_zero();
    if !endpoints_exact {
        return Err(ModuliError::CertificateFailure("endpoint values not exact".into()));
    }

    // The path substitutes the two linear forms through g(t)·(swap - id);
    // g(0) = 0 gives the identity matrix and g(1) = 1 the transposition.
    let g0 = g_enclosure(&rat(0, 1));
    let g1 = g_enclosure(&rat(1, 1));
    let endpoint_swap_verified = g0.0.is_exact()
        && g0.0.lo().is_zero()
        && g0.1.is_exact()
        && g0.1.lo().is_zero()
        && g1.0.is_exact()
        && g1.0.lo() == rat(1, 1)
        && g1.1.is_exact()
        && g1.1.lo().is_zero();
    if !endpoint_swap_verified {
        return Err(ModuliError::CertificateFailure("endpoint matrices are not the swap".into()));
    }

    let mut min_abs = results[0].3.clone();
    let mut max_width = Rational::zero();
    for r in &results {
        if r.3 < min_abs {
            min_abs = r.3.clone();
        }
        if r.4 > max_width {
            max_width = r.4.clone();
        }
    }
    Ok(PathWitness {
        t_samples: results.iter().map(|r| r.0.clone()).collect(),
        h_values: results.iter().map(|r| (r.1.midpoint(), r.2.midpoint())).collect(),
        max_enclosure_width: max_width,
        min_abs_squared: min_abs,
        endpoints_exact,
        interior_nonreal: true,
        endpoint_swap_verified,
    })
}

/// Enclosure of `h(t) = 1 - 2t·cos(π(1-t)) - 2t·i·sin(π(1-t))`.
fn h_enclosure(t: &Rational) -> (Interval, Interval) {
    let (c, s) = angle_parts(t);
    let minus_2t = rat(-2, 1) * t;
    let re = Interval::point(rat(1, 1)).add(&c.scale(&minus_2t));
    let im = s.scale(&minus_2t);
    (re, im)
}

/// Enclosure of `g(t) = t·e^{iπ(1-t)}`.
fn g_enclosure(t: &Rational) -> (Interval, Interval) {
    let (c, s) = angle_parts(t);
    (c.scale(t), s.scale(t))
}

fn angle_parts(t: &Rational) -> (Interval, Interval) {
    let theta = pi().scale(&(rat(1, 1) - t));
    cos_sin(&theta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;

    #[test]
    fn table_for_charge_two_matches_expected_row() {
        let DimensionTable::Table(t) = dimension_table(2).unwrap() else {
            panic!("k = 2 is a regular row");
        };
        assert_eq!(
            (t.ext1, t.dim_mi_s_prime, t.dim_mi_s_doubleprime, t.dim_mi_i),
            (13, 11, 12, 12)
        );
        assert_eq!(t.component_lower_bound, 2);
    }

    #[test]
    fn closed_forms_match_decompositions_up_to_50() {
        for k in 2..=50 {
            let DimensionTable::Table(t) = dimension_table(k).unwrap() else {
                panic!("k >= 2");
            };
            assert_eq!(t.ext1, 8 * k - 3);
            assert_eq!(t.dim_mi_s_prime, 7 + 2 * k);
            assert_eq!(t.dim_mi_s_doubleprime, 4 * k + 4);
            assert_eq!(t.dim_mi_i, 5 * k + 2);
            assert_eq!(t.component_lower_bound, k);
        }
    }

    #[test]
    fn charge_one_is_the_documented_exception() {
        assert_eq!(dimension_table(1).unwrap(), DimensionTable::Charge1 { ext1: 5 });
        assert!(dimension_table(0).is_err());
    }

    #[test]
    fn thooft_codimension_is_monotone() {
        // ext1 - dim MI^i = 3k - 5
        let mut prev = None;
        for k in 2..=30 {
            let DimensionTable::Table(t) = dimension_table(k).unwrap() else { unreachable!() };
            let codim = t.ext1 - t.dim_mi_i;
            assert_eq!(codim, 3 * k - 5);
            if let Some(p) = prev {
                assert!(codim > p);
            }
            prev = Some(codim);
        }
    }

    #[test]
    fn elliptic_dimension() {
        assert_eq!(elliptic_family_dimension(1).unwrap(), 16);
        assert_eq!(elliptic_family_dimension(2).unwrap(), 20);
        for k in 1..=40 {
            assert_eq!(elliptic_family_dimension(k).unwrap(), 4 * k + 12);
        }
    }

    #[test]
    fn path_witness_small_grid() {
        let w = path_witness(101).unwrap();
        assert!(w.endpoints_exact);
        assert!(w.interior_nonreal);
        assert!(w.endpoint_swap_verified);
        assert_eq!(w.h_values[0], (rat(1, 1), rat(0, 1)));
        assert_eq!(w.h_values[100], (rat(-1, 1), rat(0, 1)));
        assert!(w.min_abs_squared > rat(1, 10_000));
        // h(1/2) = 1 - i
        let tiny = rat(1, 1_000_000_000);
        let mid = &w.h_values[50];
        let re_err = (mid.0.clone() - rat(1, 1)).abs();
        let im_err = (mid.1.clone() + rat(1, 1)).abs();
        assert!(re_err < tiny && im_err < tiny, "h(1/2) should be 1 - i");
        assert!(w.max_enclosure_width < rat(1, 1_000_000_000));
    }

    #[test]
    fn path_witness_rejects_tiny_grids() {
        assert!(matches!(path_witness(1), Err(ModuliError::TooFewSamples)));
    }
}
