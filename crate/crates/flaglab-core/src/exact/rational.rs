use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::ExactError;

/// Arbitrary-precision rational scalar. `num_rational::BigRational` already
/// guarantees the invariants we need: always reduced, denominator positive,
/// equality is value equality.
pub type Rational = num_rational::BigRational;

/// Shorthand for small rational constants.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Render as `num/den`, omitting the denominator when it is 1.
pub fn rat_to_string(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parse `num/den` or a bare integer.
pub fn rat_from_str(s: &str) -> Result<Rational, ExactError> {
    let bad = || ExactError::BadRational(s.to_string());
    let mut split = s.splitn(2, '/');
    let numer: BigInt = split.next().ok_or_else(bad)?.trim().parse().map_err(|_| bad())?;
    match split.next() {
        None => Ok(Rational::from(numer)),
        Some(d) => {
            let denom: BigInt = d.trim().parse().map_err(|_| bad())?;
            if denom.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(numer, denom))
        }
    }
}

/// Common denominator clearing: returns integer numerators after scaling the
/// slice by the lcm of denominators, together with that lcm.
pub(crate) fn clear_denominators(row: &[Rational]) -> (Vec<BigInt>, BigInt) {
    let mut lcm = BigInt::one();
    for r in row {
        lcm = num_integer::lcm(lcm, r.denom().clone());
    }
    let ints = row
        .iter()
        .map(|r| r.numer() * (&lcm / r.denom()))
        .collect();
    (ints, lcm)
}

/// Primitive integer vector proportional to the given rational vector, with
/// positive leading nonzero entry. Returns `None` for the zero vector.
pub(crate) fn primitive_integer_vector(v: &[Rational]) -> Option<Vec<BigInt>> {
    let (ints, _) = clear_denominators(v);
    let mut gcd = BigInt::zero();
    for x in &ints {
        gcd = num_integer::gcd(gcd, x.clone());
    }
    if gcd.is_zero() {
        return None;
    }
    let mut out: Vec<BigInt> = ints.iter().map(|x| x / &gcd).collect();
    if let Some(first) = out.iter().find(|x| !x.is_zero()) {
        if first.is_negative() {
            for x in &mut out {
                *x = -(x.clone());
            }
        }
    }
    Some(out)
}
