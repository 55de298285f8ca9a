use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rational::clear_denominators;
use super::Rational;

/// Univariate polynomial over the rationals, dense coefficients, constant
/// term first. The zero polynomial is the empty coefficient vector.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Poly::new(vec![c])
    }

    /// `t - r`
    pub fn linear_root(r: &Rational) -> Self {
        Poly::new(vec![-r.clone(), Rational::one()])
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| Rational::from(BigInt::from(c))).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports degree 0 alongside `is_zero`.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn neg(&self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Poly::new(coeffs)
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        Poly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Euclidean division; panics on division by zero.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        assert!(!divisor.is_zero(), "polynomial division by zero");
        let mut rem = self.clone();
        let mut quot = vec![Rational::zero(); self.coeffs.len()];
        let dlead = divisor.leading();
        let ddeg = divisor.degree();
        while !rem.is_zero() && rem.degree() >= ddeg {
            let shift = rem.degree() - ddeg;
            let factor = rem.leading() / &dlead;
            quot[shift] = factor.clone();
            let mut sub = vec![Rational::zero(); shift];
            sub.extend(divisor.coeffs.iter().map(|c| c * &factor));
            rem = rem.sub(&Poly::new(sub));
        }
        (Poly::new(quot), rem)
    }

    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from(BigInt::from(i as i64)))
                .collect(),
        )
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let lead = self.leading();
        self.scale(&(Rational::one() / lead))
    }

    /// Squarefree decomposition (Yun): returns the list of `(factor, mult)`
    /// with each factor squarefree, pairwise coprime and monic.
    pub fn squarefree_decomposition(&self) -> Vec<(Poly, usize)> {
        assert!(!self.is_zero());
        let f = self.monic();
        if f.degree() == 0 {
            return vec![];
        }
        let df = f.derivative();
        let a0 = f.gcd(&df);
        let mut b = f.div_rem(&a0).0;
        let mut c = df.div_rem(&a0).0;
        let mut d = c.sub(&b.derivative());
        let mut out = Vec::new();
        let mut i = 1;
        loop {
            let a = b.gcd(&d);
            if a.degree() > 0 {
                out.push((a.clone(), i));
            }
            b = b.div_rem(&a).0;
            if b.degree() == 0 {
                break;
            }
            c = d.div_rem(&a).0;
            d = c.sub(&b.derivative());
            i += 1;
        }
        out
    }

    /// Rational roots with multiplicities, by the integer rational-root test
    /// on the primitive integer model.
    pub fn rational_roots(&self) -> Vec<(Rational, usize)> {
        if self.is_zero() {
            return vec![];
        }
        let mut out = Vec::new();
        for (factor, mult) in self.squarefree_decomposition() {
            for root in factor.squarefree_rational_roots() {
                out.push((root, mult));
            }
        }
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out
    }

    /// Roots of a squarefree polynomial (each simple).
    fn squarefree_rational_roots(&self) -> Vec<Rational> {
        let (ints, _) = clear_denominators(&self.coeffs);
        let mut shift = 0;
        while ints[shift].is_zero() {
            shift += 1; // factor of t
        }
        let mut roots = Vec::new();
        if shift > 0 {
            roots.push(Rational::zero());
        }
        let trailing = ints[shift].clone();
        let leading = ints.last().unwrap().clone();
        for p in divisors(&trailing) {
            for q in divisors(&leading) {
                for cand in [Rational::new(p.clone(), q.clone()), Rational::new(-p.clone(), q.clone())] {
                    if self.eval(&cand).is_zero() && !roots.contains(&cand) {
                        roots.push(cand);
                    }
                }
            }
        }
        roots
    }

    /// Strip all rational linear factors; returns (roots with multiplicity,
    /// rootless cofactor, overall leading coefficient preserved in cofactor).
    pub fn split_rational_roots(&self) -> (Vec<(Rational, usize)>, Poly) {
        let roots = self.rational_roots();
        let mut rest = self.clone();
        for (r, m) in &roots {
            let lin = Poly::linear_root(r);
            for _ in 0..*m {
                rest = rest.div_rem(&lin).0;
            }
        }
        (roots, rest)
    }

    pub fn to_display(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let coeff = super::rat_to_string(c);
            let term = match i {
                0 => coeff,
                1 if c.is_one() => var.to_string(),
                1 => format!("{coeff}*{var}"),
                _ if c.is_one() => format!("{var}^{i}"),
                _ => format!("{coeff}*{var}^{i}"),
            };
            parts.push(term);
        }
        parts.join(" + ").replace("+ -", "- ")
    }
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    if n.is_zero() {
        return vec![BigInt::one()];
    }
    let mut ds = Vec::new();
    let mut d = BigInt::one();
    // Trial division is fine: inputs come from small determinants.
    while &d * &d <= n {
        if n.is_multiple_of(&d) {
            ds.push(d.clone());
            ds.push(&n / &d);
        }
        d += 1;
    }
    ds.sort();
    ds.dedup();
    ds
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn division_round_trip() {
        let f = Poly::from_i64(&[6, 11, 6, 1]); // (t+1)(t+2)(t+3)
        let g = Poly::from_i64(&[2, 1]);
        let (q, r) = f.div_rem(&g);
        assert!(r.is_zero());
        assert_eq!(q.mul(&g), f);
    }

    #[test]
    fn squarefree_structure() {
        // (t-1)^2 (t+2)
        let f = Poly::from_i64(&[1, -2, 1]).mul(&Poly::from_i64(&[2, 1]));
        let dec = f.squarefree_decomposition();
        assert_eq!(dec.len(), 2);
        assert_eq!(dec[0], (Poly::from_i64(&[2, 1]), 1));
        assert_eq!(dec[1], (Poly::from_i64(&[-1, 1]), 2));
    }

    #[test]
    fn rational_roots_with_fractions() {
        // (2t-1)(t+3) = 2t^2+5t-3
        let f = Poly::from_i64(&[-3, 5, 2]);
        let roots = f.rational_roots();
        assert_eq!(roots, vec![(rat(-3, 1), 1), (rat(1, 2), 1)]);
    }

    #[test]
    fn irreducible_quadratic_has_no_roots() {
        let f = Poly::from_i64(&[1, 0, 1]);
        assert!(f.rational_roots().is_empty());
    }
}
