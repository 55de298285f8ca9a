//! Combinatorics and numerology of the curves cut out by sections of twisted
//! rank-2 bundles on `F`: multi-indices, genera, normal bundle cohomology,
//! special-configuration classification and the explicit multiple-conic
//! ideals.
//!
//! A configuration of charge `k` is a disjoint union of (possibly multiple)
//! structures on smooth rational curves `C_a` of class `h_i² + a·h_j²`. Its
//! degree profile is the sorted multi-index `(a_1, ..., a_{k+1})` summing to
//! `k`, in which a multiplicity-`r` structure repeats its support `r` times.

use num_traits::Zero;
use thiserror::Error;

use crate::chow::ChowClass;
use crate::exact::{rat, Rational};
use crate::graded::{multiply_forms, BigradedForm, Mono};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CurveError {
    #[error("charge must be >= 1, got {0}")]
    BadCharge(i64),
    #[error("invalid multi-index: {0}")]
    BadMultiIndex(String),
    #[error("invalid configuration: {0}")]
    BadConfiguration(String),
    #[error("theta and zeta must both be nonzero")]
    DegenerateIdealData,
    #[error("multiplicity must be >= 2, got {0}")]
    BadMultiplicity(usize),
}

/// Which family of lines / projection the support curves refer to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Lambda1,
    Lambda2,
}

/// Sorted degree profile `(a_1, ..., a_{k+1})` of a charge-`k` configuration:
/// entries non-negative, summing to `k`, with `1 <= #zeros <= k`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct MultiIndex {
    k: i64,
    parts: Vec<i64>,
}

impl MultiIndex {
    pub fn new(k: i64, mut parts: Vec<i64>) -> Result<Self, CurveError> {
        if k < 1 {
            return Err(CurveError::BadCharge(k));
        }
        parts.sort_unstable();
        if parts.len() as i64 != k + 1 {
            return Err(CurveError::BadMultiIndex(format!(
                "length {} != k+1 = {}",
                parts.len(),
                k + 1
            )));
        }
        if parts.iter().any(|&a| a < 0) {
            return Err(CurveError::BadMultiIndex("negative entry".into()));
        }
        if parts.iter().sum::<i64>() != k {
            return Err(CurveError::BadMultiIndex(format!("entries must sum to {k}")));
        }
        let mi = MultiIndex { k, parts };
        let l = mi.ell();
        if l < 1 || l > k {
            return Err(CurveError::BadMultiIndex(format!("l(a) = {l} outside [1, {k}]")));
        }
        Ok(mi)
    }

    pub fn charge(&self) -> i64 {
        self.k
    }

    pub fn parts(&self) -> &[i64] {
        &self.parts
    }

    /// Number of zero entries: the number of lines, counted with
    /// multiplicity.
    pub fn ell(&self) -> i64 {
        self.parts.iter().filter(|&&a| a == 0).count() as i64
    }

    /// The configuration with every component reduced.
    pub fn reduced_configuration(&self, family: Family) -> Vec<ExtensionSpec> {
        self.parts
            .iter()
            .map(|&a| ExtensionSpec {
                family,
                degree: a,
                multiplicity: 1,
                kind: ExtensionKind::PrimitiveTypeOc,
            })
            .collect()
    }

    /// Group equal entries into one multiple structure each: the maximally
    /// non-reduced configuration with this profile.
    pub fn grouped_configuration(&self, family: Family) -> Vec<ExtensionSpec> {
        let mut out: Vec<ExtensionSpec> = Vec::new();
        for &a in &self.parts {
            match out.last_mut() {
                Some(c) if c.degree == a => c.multiplicity += 1,
                _ => out.push(ExtensionSpec {
                    family,
                    degree: a,
                    multiplicity: 1,
                    kind: ExtensionKind::PrimitiveTypeOc,
                }),
            }
        }
        out
    }

    /// Total curve class `(k+1)·h_i² + k·h_j²` in the Chow ring.
    pub fn curve_class(&self, family: Family) -> ChowClass {
        let mut c = ChowClass::zero();
        for &a in &self.parts {
            let (ci, cj) = (rat(1, 1), rat(a, 1));
            let comp = match family {
                Family::Lambda1 => ChowClass::from_deg2(ci, cj),
                Family::Lambda2 => ChowClass::from_deg2(cj, ci),
            };
            c = c.add(&comp);
        }
        c
    }
}

/// All multi-indices of charge `k`: padded partitions of `k`, as many as the
/// partition number `p(k)`.
pub fn enumerate_multi_indices(k: i64) -> Result<Vec<MultiIndex>, CurveError> {
    if k < 1 {
        return Err(CurveError::BadCharge(k));
    }
    let mut out = Vec::new();
    let mut current = Vec::new();
    partitions_rec(k, k, &mut current, &mut out);
    let mut indices = Vec::new();
    for parts in out {
        let mut padded = vec![0i64; (k + 1) as usize - parts.len()];
        padded.extend(parts.iter().rev());
        indices.push(MultiIndex::new(k, padded).expect("partition yields a valid multi-index"));
    }
    indices.sort();
    Ok(indices)
}

fn partitions_rec(n: i64, max: i64, current: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
    if n == 0 {
        out.push(current.clone());
        return;
    }
    let top = max.min(n);
    for part in (1..=top).rev() {
        current.push(part);
        partitions_rec(n - part, part, current, out);
        current.pop();
    }
}

/// Number of distinct values of `l(a)` over all charge-`k` multi-indices;
/// every value in `[1, k]` is realized, so this equals `k`. The enumeration
/// only tracks partition lengths (`l = k + 1 - #parts`), so large charges
/// stay cheap.
pub fn hilbert_component_lower_bound(k: i64) -> Result<i64, CurveError> {
    if k < 1 {
        return Err(CurveError::BadCharge(k));
    }
    let mut seen = vec![false; (k + 2) as usize];
    count_lengths_rec(k, k, 0, &mut seen);
    Ok(seen.iter().filter(|&&b| b).count() as i64)
}

fn count_lengths_rec(n: i64, max: i64, len: usize, seen: &mut [bool]) {
    if n == 0 {
        let ell = seen.len() - 1 - len; // k + 1 - #parts
        seen[ell] = true;
        return;
    }
    for part in (1..=max.min(n)).rev() {
        count_lengths_rec(n - part, part, len + 1, seen);
    }
}

/// One connected component of a configuration: a multiplicity-`multiplicity`
/// structure on a smooth rational curve of class `h_i² + degree·h_j²`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionSpec {
    pub family: Family,
    /// the `a` in the support class `h_i² + a·h_j²`
    pub degree: i64,
    pub multiplicity: usize,
    pub kind: ExtensionKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExtensionKind {
    /// primitive extension of type `O_C`; on a line this is the complete
    /// intersection `(x, y^r)`
    PrimitiveTypeOc,
    /// complete intersection `(p(x0,x1), q(x0,x1))` on a line with both
    /// degrees at least 2 (contains the first infinitesimal neighbourhood)
    ThickCompleteIntersection { p_deg: usize, q_deg: usize },
}

fn validate_component(c: &ExtensionSpec) -> Result<(), CurveError> {
    if c.degree < 0 {
        return Err(CurveError::BadConfiguration("negative degree".into()));
    }
    if c.multiplicity < 1 {
        return Err(CurveError::BadConfiguration("multiplicity must be >= 1".into()));
    }
    match &c.kind {
        ExtensionKind::PrimitiveTypeOc => Ok(()),
        ExtensionKind::ThickCompleteIntersection { p_deg, q_deg } => {
            if c.degree != 0 {
                return Err(CurveError::BadConfiguration(
                    "thick complete intersections live on lines only".into(),
                ));
            }
            if *p_deg < 2 || *q_deg < 2 {
                return Err(CurveError::BadConfiguration(
                    "a thick structure needs both generator degrees >= 2".into(),
                ));
            }
            if p_deg * q_deg != c.multiplicity {
                return Err(CurveError::BadConfiguration(
                    "multiplicity must equal p_deg * q_deg".into(),
                ));
            }
            Ok(())
        }
    }
}

/// Optional quasi-primitive data for a single component: the type
/// `O_{P¹}(α)` and the effective twists `d_j` of the successive filtration
/// quotients `L_j ≅ L^j(D_j)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuasiParams {
    pub alpha: i64,
    pub ds: Vec<i64>,
}

/// Arithmetic genus of a configuration.
///
/// Per component the structure sheaf filters with quotients `L_j`, so
/// `χ(O_Y) = χ(O_C) + Σ_j χ(L_j)` and for a quasi-primitive extension of
/// multiplicity `m+1` this gives `p_a = -Σ_{j=1}^m (jα + d_j + 1)`; type
/// `O_C` (α = d_j = 0) leaves `p_a = -(mult - 1)` per component. A disjoint
/// union of `n` components has `p_a = Σ p_a(component) - (n - 1)`.
pub fn genus(config: &[ExtensionSpec], quasi: Option<&QuasiParams>) -> Result<i64, CurveError> {
    if config.is_empty() {
        return Err(CurveError::BadConfiguration("empty configuration".into()));
    }
    for c in config {
        validate_component(c)?;
    }
    if let Some(q) = quasi {
        if config.len() != 1 || config[0].kind != ExtensionKind::PrimitiveTypeOc {
            return Err(CurveError::BadConfiguration(
                "quasi-primitive data applies to a single primitive component".into(),
            ));
        }
        if q.ds.len() + 1 != config[0].multiplicity {
            return Err(CurveError::BadConfiguration(
                "need one d_j per filtration step (multiplicity - 1)".into(),
            ));
        }
        if q.alpha < -1 || q.ds.iter().any(|&d| d < 0) {
            return Err(CurveError::BadConfiguration(
                "need alpha >= -1 and effective twists d_j >= 0".into(),
            ));
        }
        return Ok(-q
            .ds
            .iter()
            .enumerate()
            .map(|(j0, d)| (j0 as i64 + 1) * q.alpha + d + 1)
            .sum::<i64>());
    }
    let total: i64 = config.iter().map(component_genus).sum();
    Ok(total - (config.len() as i64 - 1))
}

fn component_genus(c: &ExtensionSpec) -> i64 {
    match &c.kind {
        // type O_C: every filtration quotient is O_C itself
        ExtensionKind::PrimitiveTypeOc => -(c.multiplicity as i64 - 1),
        // Y = Z x P¹ with Z a length-pq complete intersection point scheme
        ExtensionKind::ThickCompleteIntersection { p_deg, q_deg } => 1 - (p_deg * q_deg) as i64,
    }
}

/// `(h⁰, h¹)` of the normal bundle of a configuration, summed from the split
/// type of each component:
/// `O(1) ⊕ O(2a-1)` for a reduced curve with `a >= 1`, `O ⊕ O` for a line,
/// `O_Y ⊕ O_Y(2h_i)` for a primitive multiple structure and `O_Y ⊕ O_Y` for
/// a thick one.
pub fn normal_bundle_cohomology(config: &[ExtensionSpec]) -> Result<(i64, i64), CurveError> {
    if config.is_empty() {
        return Err(CurveError::BadConfiguration("empty configuration".into()));
    }
    let mut h0 = 0i64;
    let mut h1 = 0i64;
    for c in config {
        validate_component(c)?;
        let r = c.multiplicity as i64;
        let a = c.degree;
        let (dh0, dh1) = match (&c.kind, r) {
            (ExtensionKind::PrimitiveTypeOc, 1) if a >= 1 => {
                // O(1) ⊕ O(2a-1) on P¹
                (p1_h0(1) + p1_h0(2 * a - 1), p1_h1(1) + p1_h1(2 * a - 1))
            }
            (ExtensionKind::PrimitiveTypeOc, 1) => {
                // line: O ⊕ O
                (p1_h0(0) + p1_h0(0), p1_h1(0) + p1_h1(0))
            }
            (ExtensionKind::PrimitiveTypeOc, r) => {
                // O_Y ⊕ O_Y(2h_i); O(2h_i) restricts to degree 2a on the
                // support and the filtration has r levels of type O_C
                (r * (p1_h0(0) + p1_h0(2 * a)), r * (p1_h1(0) + p1_h1(2 * a)))
            }
            (ExtensionKind::ThickCompleteIntersection { .. }, r) => {
                // O_Y ⊕ O_Y on a thick line structure
                (2 * r * p1_h0(0), 2 * r * p1_h1(0))
            }
        };
        h0 += dh0;
        h1 += dh1;
    }
    Ok((h0, h1))
}

fn p1_h0(d: i64) -> i64 {
    (d + 1).max(0)
}

fn p1_h1(d: i64) -> i64 {
    (-d - 1).max(0)
}

/// `χ(O_Y(-h_j))` of a configuration, computed as
/// `Σ (-mult + 1 - p_a)` over components: `O(h_j)` restricts to degree one on
/// every support curve, so each filtration level loses one. Vanishes for
/// every admissible configuration.
pub fn chi_twist_minus_hj(config: &[ExtensionSpec]) -> Result<i64, CurveError> {
    let mut total = 0i64;
    for c in config {
        validate_component(c)?;
        let pa = component_genus(c);
        total += -(c.multiplicity as i64) + 1 - pa;
    }
    Ok(total)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum SpecialClass {
    SpecialIrreducible,
    SpecialReducible,
    NotSpecial,
}

/// Special-configuration trichotomy: `l(a) = 1` puts the curve on an
/// irreducible dependence sextic (smooth or A1), `l(a) = k` on the reducible
/// union of two cubic scrolls; anything else is not special. For `k = 1` the
/// two conditions coincide on `(0,1)` and the irreducible label wins.
pub fn classify_special_config(m: &MultiIndex) -> SpecialClass {
    let l = m.ell();
    if l == 1 {
        SpecialClass::SpecialIrreducible
    } else if l == m.charge() {
        SpecialClass::SpecialReducible
    } else {
        SpecialClass::NotSpecial
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stability {
    MuStable,
    ProperlySemistable,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SectionBound {
    Exactly(i64),
    AtMost(i64),
}

/// `h⁰(E(h_i))` for a charge-`k` instanton: exactly 3 at `k = 1`, at most 1
/// for μ-stable bundles of higher charge, zero for properly semistable ones.
pub fn section_count(k: i64, stability: Stability) -> Result<SectionBound, CurveError> {
    if k < 1 {
        return Err(CurveError::BadCharge(k));
    }
    Ok(match (k, stability) {
        (1, _) => SectionBound::Exactly(3),
        (_, Stability::MuStable) => SectionBound::AtMost(1),
        (_, Stability::ProperlySemistable) => SectionBound::Exactly(0),
    })
}

/// `h⁰(I_{Y|F}(2h_i))` for the reduced configuration: 2 for the line+conic
/// profile `(0,1)` and 0 otherwise.
pub fn ideal_h0_2hi(m: &MultiIndex) -> i64 {
    if m.parts() == [0, 1] {
        2
    } else {
        0
    }
}

/// Degree of `O_F(α h1 + β h2)` on a line: `β` on the first family, `α` on
/// the second.
pub fn line_restriction_degree(alpha: i64, beta: i64, family: Family) -> i64 {
    match family {
        Family::Lambda1 => beta,
        Family::Lambda2 => alpha,
    }
}

/// Data for the ideal of a multiplicity-`m` primitive extension on the conic
/// `{x0 = y0 = 0}`:
/// `I = ⟨x0·θ + y0·ζ + α·x0y0⟩ + (x0, y0)^m` with `θ = λ1y1 + λ2y2` and
/// `ζ = μ1x1 + μ2x2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConicDoubleIdeal {
    pub theta: (Rational, Rational),
    pub zeta: (Rational, Rational),
    pub alpha: Rational,
    pub multiplicity: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConicIdealGenerators {
    /// hyperplane section containing the extension, in normal form
    pub del_pezzo_form: BigradedForm,
    /// the monomial generators `x0^i y0^j` (i + j = multiplicity), reduced to
    /// normal form
    pub power_generators: Vec<BigradedForm>,
    /// whether the containing sextic is smooth: `α² ≠ 4(λ1μ1 + λ2μ2)`
    pub smooth_del_pezzo: bool,
}

impl ConicDoubleIdeal {
    pub fn generators(&self) -> Result<ConicIdealGenerators, CurveError> {
        if (self.theta.0.is_zero() && self.theta.1.is_zero())
            || (self.zeta.0.is_zero() && self.zeta.1.is_zero())
        {
            return Err(CurveError::DegenerateIdealData);
        }
        if self.multiplicity < 2 {
            return Err(CurveError::BadMultiplicity(self.multiplicity));
        }
        let x0 = BigradedForm::linear_x(&[rat(1, 1), rat(0, 1), rat(0, 1)]);
        let y0 = BigradedForm::linear_y(&[rat(1, 1), rat(0, 1), rat(0, 1)]);
        let theta =
            BigradedForm::linear_y(&[rat(0, 1), self.theta.0.clone(), self.theta.1.clone()]);
        let zeta = BigradedForm::linear_x(&[rat(0, 1), self.zeta.0.clone(), self.zeta.1.clone()]);
        let dp = multiply_forms(&x0, &theta)
            .add(&multiply_forms(&y0, &zeta))
            .expect("matching bidegrees")
            .add(&multiply_forms(&x0, &y0).scale(&self.alpha))
            .expect("matching bidegrees");
        let mut powers = Vec::new();
        let m = self.multiplicity as u32;
        for i in 0..=m {
            let mono = Mono([i, 0, 0, m - i, 0, 0]);
            powers.push(BigradedForm::from_terms(
                i as i64,
                (m - i) as i64,
                vec![(mono, rat(1, 1))],
            ));
        }
        let s = &self.theta.0 * &self.zeta.0 + &self.theta.1 * &self.zeta.1;
        let smooth = &self.alpha * &self.alpha != rat(4, 1) * s;
        Ok(ConicIdealGenerators {
            del_pezzo_form: dp,
            power_generators: powers,
            smooth_del_pezzo: smooth,
        })
    }

    /// One-sided membership test by normal-form division: repeatedly cancel
    /// the leading monomial against a generator whose leading monomial
    /// divides it. Reduction to zero certifies membership; a nonzero
    /// remainder is reported as non-membership of the reduced form (no
    /// S-pair completion is attempted).
    pub fn contains(&self, f: &BigradedForm) -> Result<bool, CurveError> {
        let gens = self.generators()?;
        let mut all: Vec<BigradedForm> = vec![gens.del_pezzo_form.clone()];
        all.extend(gens.power_generators.iter().cloned());
        Ok(reduce_by(f, &all).is_zero())
    }
}

fn leading(f: &BigradedForm) -> Option<(Mono, Rational)> {
    f.terms().iter().next_back().map(|(m, c)| (*m, c.clone()))
}

fn mono_divides(d: &Mono, m: &Mono) -> Option<Mono> {
    let mut q = [0u32; 6];
    for i in 0..6 {
        if d.0[i] > m.0[i] {
            return None;
        }
        q[i] = m.0[i] - d.0[i];
    }
    Some(Mono(q))
}

fn reduce_by(f: &BigradedForm, gens: &[BigradedForm]) -> BigradedForm {
    let mut rem = f.clone();
    'outer: while !rem.is_zero() {
        let (lm, lc) = leading(&rem).expect("nonzero form has a leading term");
        for g in gens {
            let Some((glm, glc)) = leading(g) else { continue };
            let Some(q) = mono_divides(&glm, &lm) else { continue };
            let (qa, qb) = q.bidegree();
            let cofactor = BigradedForm::from_terms(qa, qb, vec![(q, lc.clone() / glc)]);
            let sub = multiply_forms(&cofactor, g);
            rem = rem.add(&sub.scale(&rat(-1, 1))).expect("same bidegree");
            continue 'outer;
        }
        break;
    }
    rem
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chow::{twist_chern, ChernData};

    fn mi(k: i64, parts: &[i64]) -> MultiIndex {
        MultiIndex::new(k, parts.to_vec()).unwrap()
    }

    /// Independent partition counter: pentagonal number recurrence.
    fn partition_count(n: usize) -> i64 {
        let mut p = vec![0i64; n + 1];
        p[0] = 1;
        for i in 1..=n {
            let mut total = 0i64;
            let mut k = 1i64;
            loop {
                let g1 = k * (3 * k - 1) / 2;
                let g2 = k * (3 * k + 1) / 2;
                if g1 as usize > i {
                    break;
                }
                let sign = if k % 2 == 1 { 1 } else { -1 };
                total += sign * p[i - g1 as usize];
                if g2 as usize <= i {
                    total += sign * p[i - g2 as usize];
                }
                k += 1;
            }
            p[i] = total;
        }
        p[n]
    }

    #[test]
    fn enumeration_small_charges() {
        let e1 = enumerate_multi_indices(1).unwrap();
        assert_eq!(e1, vec![mi(1, &[0, 1])]);
        let e2 = enumerate_multi_indices(2).unwrap();
        assert_eq!(e2, vec![mi(2, &[0, 0, 2]), mi(2, &[0, 1, 1])]);
        let e3 = enumerate_multi_indices(3).unwrap();
        assert_eq!(e3, vec![mi(3, &[0, 0, 0, 3]), mi(3, &[0, 0, 1, 2]), mi(3, &[0, 1, 1, 1])]);
        assert!(enumerate_multi_indices(0).is_err());
    }

    #[test]
    fn enumeration_counts_are_partition_numbers() {
        for k in 1..=12 {
            assert_eq!(
                enumerate_multi_indices(k).unwrap().len() as i64,
                partition_count(k as usize),
                "k={k}"
            );
        }
    }

    #[test]
    fn component_lower_bound_is_charge() {
        for k in [1, 4, 7, 10] {
            assert_eq!(hilbert_component_lower_bound(k).unwrap(), k);
        }
    }

    #[test]
    fn genus_of_reduced_configurations() {
        // single reduced rational curve
        let single = [ExtensionSpec {
            family: Family::Lambda1,
            degree: 2,
            multiplicity: 1,
            kind: ExtensionKind::PrimitiveTypeOc,
        }];
        assert_eq!(genus(&single, None).unwrap(), 0);
        for k in 1..=9 {
            for m in enumerate_multi_indices(k).unwrap() {
                let config = m.reduced_configuration(Family::Lambda1);
                assert_eq!(genus(&config, None).unwrap(), -k, "{:?}", m.parts());
                // grouping equal entries into multiple structures does not
                // change the arithmetic genus
                let grouped = m.grouped_configuration(Family::Lambda1);
                assert_eq!(genus(&grouped, None).unwrap(), -k, "{:?}", m.parts());
            }
        }
    }

    #[test]
    fn genus_of_primitive_extension_with_type() {
        // multiplicity k+1 primitive extension of type O(alpha):
        // p_a = -k - k(k+1)/2 * alpha
        for k in 1..=6i64 {
            for alpha in 0..=3i64 {
                let config = [ExtensionSpec {
                    family: Family::Lambda1,
                    degree: 1,
                    multiplicity: (k + 1) as usize,
                    kind: ExtensionKind::PrimitiveTypeOc,
                }];
                let q = QuasiParams { alpha, ds: vec![0; k as usize] };
                assert_eq!(
                    genus(&config, Some(&q)).unwrap(),
                    -k - k * (k + 1) / 2 * alpha,
                    "k={k} alpha={alpha}"
                );
            }
        }
    }

    #[test]
    fn genus_chi_is_additive_over_components() {
        for k in 2..=8 {
            for m in enumerate_multi_indices(k).unwrap() {
                let config = m.grouped_configuration(Family::Lambda2);
                let pa = genus(&config, None).unwrap();
                let chi_total = 1 - pa;
                let chi_sum: i64 = config.iter().map(|c| 1 - super::component_genus(c)).sum();
                assert_eq!(chi_total, chi_sum);
            }
        }
    }

    #[test]
    fn normal_bundle_is_4k_plus_2() {
        assert_eq!(
            normal_bundle_cohomology(&mi(1, &[0, 1]).reduced_configuration(Family::Lambda1))
                .unwrap(),
            (6, 0)
        );
        assert_eq!(
            normal_bundle_cohomology(&mi(2, &[0, 0, 2]).reduced_configuration(Family::Lambda1))
                .unwrap(),
            (10, 0)
        );
        for k in 1..=9 {
            for m in enumerate_multi_indices(k).unwrap() {
                for config in [
                    m.reduced_configuration(Family::Lambda1),
                    m.grouped_configuration(Family::Lambda1),
                ] {
                    assert_eq!(
                        normal_bundle_cohomology(&config).unwrap(),
                        (4 * k + 2, 0),
                        "{:?}",
                        m.parts()
                    );
                }
            }
        }
    }

    #[test]
    fn thick_line_structures_contribute_like_primitive_ones() {
        let thick = ExtensionSpec {
            family: Family::Lambda1,
            degree: 0,
            multiplicity: 4,
            kind: ExtensionKind::ThickCompleteIntersection { p_deg: 2, q_deg: 2 },
        };
        assert_eq!(normal_bundle_cohomology(&[thick.clone()]).unwrap(), (8, 0));
        assert_eq!(genus(&[thick.clone()], None).unwrap(), -3);
        assert_eq!(chi_twist_minus_hj(&[thick]).unwrap(), 0);
        // invalid: thick structure on a conic
        let bad = ExtensionSpec {
            family: Family::Lambda1,
            degree: 1,
            multiplicity: 4,
            kind: ExtensionKind::ThickCompleteIntersection { p_deg: 2, q_deg: 2 },
        };
        assert!(normal_bundle_cohomology(&[bad]).is_err());
    }

    #[test]
    fn minus_hj_twist_is_acyclic_in_euler() {
        for k in 1..=9 {
            for m in enumerate_multi_indices(k).unwrap() {
                for config in [
                    m.reduced_configuration(Family::Lambda2),
                    m.grouped_configuration(Family::Lambda2),
                ] {
                    assert_eq!(chi_twist_minus_hj(&config).unwrap(), 0);
                }
            }
        }
    }

    #[test]
    fn special_classification() {
        assert_eq!(
            classify_special_config(&mi(3, &[0, 1, 1, 1])),
            SpecialClass::SpecialIrreducible
        );
        assert_eq!(classify_special_config(&mi(3, &[0, 0, 0, 3])), SpecialClass::SpecialReducible);
        assert_eq!(classify_special_config(&mi(3, &[0, 0, 1, 2])), SpecialClass::NotSpecial);
        assert_eq!(classify_special_config(&mi(1, &[0, 1])), SpecialClass::SpecialIrreducible);
        for k in 2..=9 {
            for m in enumerate_multi_indices(k).unwrap() {
                let c = classify_special_config(&m);
                let irr = m.ell() == 1;
                let red = m.ell() == k;
                assert!(!(irr && red), "k >= 2 separates the two special cases");
                match c {
                    SpecialClass::SpecialIrreducible => assert!(irr),
                    SpecialClass::SpecialReducible => assert!(red),
                    SpecialClass::NotSpecial => assert!(!irr && !red),
                }
            }
        }
    }

    #[test]
    fn section_bounds() {
        assert_eq!(section_count(1, Stability::MuStable).unwrap(), SectionBound::Exactly(3));
        assert_eq!(section_count(5, Stability::MuStable).unwrap(), SectionBound::AtMost(1));
        assert_eq!(
            section_count(2, Stability::ProperlySemistable).unwrap(),
            SectionBound::Exactly(0)
        );
    }

    #[test]
    fn ideal_sections_of_double_twist() {
        assert_eq!(ideal_h0_2hi(&mi(1, &[0, 1])), 2);
        assert_eq!(ideal_h0_2hi(&mi(2, &[0, 0, 2])), 0);
        assert_eq!(ideal_h0_2hi(&mi(2, &[0, 1, 1])), 0);
    }

    #[test]
    fn line_restriction() {
        assert_eq!(line_restriction_degree(3, 5, Family::Lambda1), 5);
        assert_eq!(line_restriction_degree(3, 5, Family::Lambda2), 3);
        assert_eq!(line_restriction_degree(0, 0, Family::Lambda1), 0);
    }

    #[test]
    fn curve_class_matches_twisted_chern_class() {
        for k in 1..=8 {
            let e = ChernData::instanton(k).unwrap();
            let c2_twist1 = twist_chern(&e, 1, 0).unwrap().c2;
            let c2_twist2 = twist_chern(&e, 0, 1).unwrap().c2;
            for m in enumerate_multi_indices(k).unwrap() {
                assert_eq!(m.curve_class(Family::Lambda1), c2_twist1);
                assert_eq!(m.curve_class(Family::Lambda2), c2_twist2);
            }
        }
    }

    #[test]
    fn double_conic_ideal_generators() {
        let ideal = ConicDoubleIdeal {
            theta: (rat(1, 1), rat(0, 1)),
            zeta: (rat(1, 1), rat(0, 1)),
            alpha: rat(0, 1),
            multiplicity: 2,
        };
        let gens = ideal.generators().unwrap();
        // x0 y1 + x1 y0
        let expected = BigradedForm::from_terms(
            1,
            1,
            vec![
                (Mono([1, 0, 0, 0, 1, 0]), rat(1, 1)),
                (Mono([0, 1, 0, 1, 0, 0]), rat(1, 1)),
            ],
        );
        assert_eq!(gens.del_pezzo_form, expected);
        assert_eq!(gens.power_generators.len(), 3); // x0², x0y0, y0² (reduced)
        assert!(gens.smooth_del_pezzo); // 0 != 4
        assert!(ideal.contains(&gens.del_pezzo_form).unwrap());
        // the class of x0y0 is -x1y1 - x2y2 and belongs to (x0,y0)²
        let x0y0_class = BigradedForm::from_terms(
            1,
            1,
            vec![
                (Mono([0, 1, 0, 0, 1, 0]), rat(-1, 1)),
                (Mono([0, 0, 1, 0, 0, 1]), rat(-1, 1)),
            ],
        );
        assert!(ideal.contains(&x0y0_class).unwrap());
        // x1 y1 alone is not visibly in the ideal
        let outside = BigradedForm::from_terms(1, 1, vec![(Mono([0, 1, 0, 0, 1, 0]), rat(1, 1))]);
        assert!(!ideal.contains(&outside).unwrap());
    }

    #[test]
    fn double_conic_ideal_smoothness_flag() {
        // alpha² = 4(λ1μ1 + λ2μ2) => singular sextic
        let ideal = ConicDoubleIdeal {
            theta: (rat(1, 1), rat(0, 1)),
            zeta: (rat(1, 1), rat(0, 1)),
            alpha: rat(2, 1),
            multiplicity: 3,
        };
        assert!(!ideal.generators().unwrap().smooth_del_pezzo);
        let degenerate = ConicDoubleIdeal {
            theta: (rat(0, 1), rat(0, 1)),
            zeta: (rat(1, 1), rat(0, 1)),
            alpha: rat(0, 1),
            multiplicity: 2,
        };
        assert_eq!(degenerate.generators(), Err(CurveError::DegenerateIdealData));
    }
}
