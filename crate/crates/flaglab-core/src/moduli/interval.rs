//! Rational interval arithmetic with rigorous enclosures of sin, cos and π.
//!
//! Endpoints are dyadic fixed-point numbers `m / 2^PREC` with directed
//! rounding, so any certificate produced here (nonvanishing, sign of the
//! imaginary part) is a proof, not an estimate. Dyadics avoid the gcd
//! normalization cost of general rationals; values enter and leave as exact
//! `Rational`s.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use once_cell::sync::Lazy;

use crate::exact::{rat, Rational};

/// Working precision in fractional bits.
const PREC: u32 = 128;
/// Series tail cutoff: 2^-TAIL_BITS.
const TAIL_BITS: u32 = 100;

fn scale_unit() -> &'static BigInt {
    static P: Lazy<BigInt> = Lazy::new(|| BigInt::one() << PREC);
    &P
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Dir {
    Down,
    Up,
}

/// `floor` or `ceil` of `n / d` for `d > 0`.
fn div_dir(n: &BigInt, d: &BigInt, dir: Dir) -> BigInt {
    debug_assert!(d.is_positive());
    let (q, r) = n.div_mod_floor(d);
    match dir {
        Dir::Down => q,
        Dir::Up => {
            if r.is_zero() {
                q
            } else {
                q + 1
            }
        }
    }
}

/// mantissa of a rational, rounded in the given direction
fn mantissa_from_rational(x: &Rational, dir: Dir) -> BigInt {
    div_dir(&(x.numer() * scale_unit()), x.denom(), dir)
}

fn mantissa_to_rational(m: &BigInt) -> Rational {
    Rational::new(m.clone(), scale_unit().clone())
}

/// product of two mantissas, rescaled with directed rounding
fn mul_mantissa(a: &BigInt, b: &BigInt, dir: Dir) -> BigInt {
    div_dir(&(a * b), scale_unit(), dir)
}

/// mantissa times an exact rational, with directed rounding
fn scale_mantissa(m: &BigInt, c: &Rational, dir: Dir) -> BigInt {
    div_dir(&(m * c.numer()), c.denom(), dir)
}

/// Closed interval with dyadic endpoints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interval {
    lo: BigInt,
    hi: BigInt,
}

impl Interval {
    pub fn point(x: Rational) -> Self {
        let lo = mantissa_from_rational(&x, Dir::Down);
        let hi = mantissa_from_rational(&x, Dir::Up);
        Interval { lo, hi }
    }

    pub fn from_bounds(lo: &Rational, hi: &Rational) -> Self {
        assert!(lo <= hi, "inverted interval");
        Interval {
            lo: mantissa_from_rational(lo, Dir::Down),
            hi: mantissa_from_rational(hi, Dir::Up),
        }
    }

    pub fn lo(&self) -> Rational {
        mantissa_to_rational(&self.lo)
    }

    pub fn hi(&self) -> Rational {
        mantissa_to_rational(&self.hi)
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn midpoint(&self) -> Rational {
        (self.lo() + self.hi()) / rat(2, 1)
    }

    pub fn width(&self) -> Rational {
        self.hi() - self.lo()
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    fn abs_upper_mantissa(&self) -> BigInt {
        let a = self.lo.abs();
        let b = self.hi.abs();
        if a > b {
            a
        } else {
            b
        }
    }

    pub fn abs_upper(&self) -> Rational {
        mantissa_to_rational(&self.abs_upper_mantissa())
    }

    pub fn add(&self, other: &Interval) -> Interval {
        Interval { lo: &self.lo + &other.lo, hi: &self.hi + &other.hi }
    }

    pub fn sub(&self, other: &Interval) -> Interval {
        Interval { lo: &self.lo - &other.hi, hi: &self.hi - &other.lo }
    }

    pub fn neg(&self) -> Interval {
        Interval { lo: -self.hi.clone(), hi: -self.lo.clone() }
    }

    pub fn mul(&self, other: &Interval) -> Interval {
        let products =
            [(&self.lo, &other.lo), (&self.lo, &other.hi), (&self.hi, &other.lo), (&self.hi, &other.hi)];
        let raw: Vec<BigInt> = products.iter().map(|(a, b)| *a * *b).collect();
        let lo = raw.iter().min().unwrap();
        let hi = raw.iter().max().unwrap();
        Interval {
            lo: div_dir(lo, scale_unit(), Dir::Down),
            hi: div_dir(hi, scale_unit(), Dir::Up),
        }
    }

    pub fn scale(&self, c: &Rational) -> Interval {
        if c.is_negative() {
            Interval {
                lo: scale_mantissa(&self.hi, c, Dir::Down),
                hi: scale_mantissa(&self.lo, c, Dir::Up),
            }
        } else {
            Interval {
                lo: scale_mantissa(&self.lo, c, Dir::Down),
                hi: scale_mantissa(&self.hi, c, Dir::Up),
            }
        }
    }

    pub fn square(&self) -> Interval {
        if !self.lo.is_negative() {
            Interval {
                lo: mul_mantissa(&self.lo, &self.lo, Dir::Down),
                hi: mul_mantissa(&self.hi, &self.hi, Dir::Up),
            }
        } else if !self.hi.is_positive() {
            Interval {
                lo: mul_mantissa(&self.hi, &self.hi, Dir::Down),
                hi: mul_mantissa(&self.lo, &self.lo, Dir::Up),
            }
        } else {
            let m = self.abs_upper_mantissa();
            Interval { lo: BigInt::zero(), hi: mul_mantissa(&m, &m, Dir::Up) }
        }
    }

    /// Widen by `±bound` (mantissa units of the bound rounded up).
    fn bloat_mantissa(&self, bound: &BigInt) -> Interval {
        Interval { lo: &self.lo - bound, hi: &self.hi + bound }
    }

    pub fn lo_exceeds(&self, threshold: &Rational) -> bool {
        self.lo() > *threshold
    }
}

fn tail_bound_mantissa() -> BigInt {
    BigInt::one() << (PREC - TAIL_BITS)
}

/// Rigorous enclosure of π by Machin's formula
/// `π = 16·atan(1/5) - 4·atan(1/239)` with alternating-series brackets.
pub fn pi() -> Interval {
    static PI: Lazy<Interval> = Lazy::new(|| {
        let a = atan_inv(5);
        let b = atan_inv(239);
        a.scale(&rat(16, 1)).sub(&b.scale(&rat(4, 1)))
    });
    PI.clone()
}

/// `atan(1/x)` for integer `x >= 2`: alternating series with error bounded
/// by the first omitted term. Runs once per process; plain rationals are
/// fine here.
fn atan_inv(x: i64) -> Interval {
    let xr = rat(1, x);
    let x2 = &xr * &xr;
    let tail = Rational::new(BigInt::one(), BigInt::one() << (TAIL_BITS + 8));
    let mut term = xr.clone();
    let mut sum = Rational::zero();
    let mut k: i64 = 0;
    loop {
        let contribution = &term / rat(2 * k + 1, 1);
        if k % 2 == 0 {
            sum += contribution;
        } else {
            sum -= contribution;
        }
        term *= &x2;
        k += 1;
        let next = &term / rat(2 * k + 1, 1);
        if next < tail {
            return Interval::from_bounds(&(&sum - &next), &(&sum + &next));
        }
    }
}

/// Enclosures of `cos` and `sin` on an interval argument by Taylor series at
/// zero with a Lagrange tail bound `M^N / N!` for `M = max |θ|`. Intended for
/// `|θ| <= π`, where a few dozen terms reach the cutoff.
pub fn cos_sin(theta: &Interval) -> (Interval, Interval) {
    let m = theta.abs_upper_mantissa();
    let mut cos = Interval::point(Rational::one());
    let mut sin = theta.clone();
    // power = θ^n / n!, advanced one degree at a time
    let mut power = theta.clone();
    let mut m_pow = m.clone(); // upper-bound mantissa for M^n / n!
    let mut n: i64 = 1;
    loop {
        n += 1;
        power = power.mul(theta).scale(&rat(1, n));
        m_pow = div_dir(&(&m_pow * &m), &(scale_unit() * BigInt::from(n)), Dir::Up);
        if n % 2 == 0 {
            // contributes to cos with sign (-1)^(n/2)
            if (n / 2) % 2 == 0 {
                cos = cos.add(&power);
            } else {
                cos = cos.sub(&power);
            }
        } else if ((n - 1) / 2) % 2 == 0 {
            sin = sin.add(&power);
        } else {
            sin = sin.sub(&power);
        }
        if m_pow < tail_bound_mantissa() && n >= 4 {
            // each series has all terms of degree <= n, so the Lagrange
            // remainder is at most M^n/n! = m_pow (n >= 4 > M)
            return (cos.bloat_mantissa(&m_pow), sin.bloat_mantissa(&m_pow));
        }
        assert!(n < 200, "series did not converge; argument too large");
    }
}
