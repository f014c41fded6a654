//! Exact scalar arithmetic: arbitrary-precision rationals and quadratic
//! surds `p + q*sqrt(D)`.
//!
//! Rationals are `num_rational::BigRational`, which already guarantees
//! lowest terms and a positive denominator.  Surds cover the one extra
//! shape this crate needs: wall-endpoint abscissae `C ± R` where `R^2` is
//! rational but `R` need not be.  Sign and ordering of surds are decided
//! exactly by case analysis on the signs of `p`, `q` and the comparison of
//! `p^2` against `q^2 D`; no floating point anywhere.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// Exact rational scalar used throughout the crate.
pub type Rational = BigRational;

/// `n` as an exact rational.
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `p/q` as an exact rational. Panics on `q == 0`.
pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Floor of a nonnegative integer square root.
fn isqrt(n: &BigInt) -> BigInt {
    debug_assert!(!n.is_negative());
    n.sqrt()
}

/// Exact square root of a nonnegative rational, when it is rational.
pub fn sqrt_exact(x: &Rational) -> Option<Rational> {
    if x.is_negative() {
        return None;
    }
    let ns = isqrt(x.numer());
    let ds = isqrt(x.denom());
    if &(&ns * &ns) == x.numer() && &(&ds * &ds) == x.denom() {
        Some(Rational::new(ns, ds))
    } else {
        None
    }
}

/// Floor of `sqrt(y)` for a nonnegative rational `y = m/n`:
/// `floor(sqrt(m n) / n)`.
fn floor_sqrt(y: &Rational) -> BigInt {
    debug_assert!(!y.is_negative());
    isqrt(&(y.numer() * y.denom())).div_floor(y.denom())
}

/// A real number of the form `p + q*sqrt(D)` with `p`, `q`, `D` rational
/// and `D >= 0`.
///
/// Construction normalizes: whenever `q = 0`, `D = 0`, or `D` is a perfect
/// rational square, the value is folded into the rational part, so
/// `is_rational()` is an exact test.  All comparisons stay inside a single
/// quadratic extension; mixing two distinct irrational radicands is
/// rejected.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadraticSurd {
    rational_part: Rational,
    surd_coefficient: Rational,
    radicand: Rational,
}

impl QuadraticSurd {
    /// `p + q*sqrt(d)`; rejects `d < 0`.
    pub fn new(p: Rational, q: Rational, d: Rational) -> Result<Self> {
        if d.is_negative() {
            return Err(Error::NegativeRadicand(d.to_string()));
        }
        if q.is_zero() || d.is_zero() {
            return Ok(Self::from_rational(p));
        }
        if let Some(s) = sqrt_exact(&d) {
            return Ok(Self::from_rational(p + q * s));
        }
        Ok(QuadraticSurd {
            rational_part: p,
            surd_coefficient: q,
            radicand: d,
        })
    }

    pub fn from_rational(p: Rational) -> Self {
        QuadraticSurd {
            rational_part: p,
            surd_coefficient: Rational::zero(),
            radicand: Rational::zero(),
        }
    }

    /// `sqrt(d)` itself.
    pub fn sqrt_of(d: &Rational) -> Result<Self> {
        Self::new(Rational::zero(), Rational::one(), d.clone())
    }

    pub fn rational_part(&self) -> &Rational {
        &self.rational_part
    }

    pub fn surd_coefficient(&self) -> &Rational {
        &self.surd_coefficient
    }

    pub fn radicand(&self) -> &Rational {
        &self.radicand
    }

    pub fn is_rational(&self) -> bool {
        self.surd_coefficient.is_zero()
    }

    pub fn to_rational(&self) -> Option<Rational> {
        if self.is_rational() {
            Some(self.rational_part.clone())
        } else {
            None
        }
    }

    /// Exact sign of the represented real number: -1, 0 or +1.
    pub fn sign(&self) -> i32 {
        let p = &self.rational_part;
        let q = &self.surd_coefficient;
        if q.is_zero() {
            return rational_sign(p);
        }
        // q != 0 and D irrational here, so p + q*sqrt(D) != 0 unless both
        // comparisons below tie, which cannot happen for irrational sqrt(D)
        // with p, q rational (except p = 0 handled first).
        if p.is_zero() {
            return rational_sign(q);
        }
        match (p.is_positive(), q.is_positive()) {
            (true, true) => 1,
            (false, false) => -1,
            (true, false) => {
                // p > 0, q < 0: sign of p^2 - q^2 D
                compare_to_sign(&(p * p), &(q * q * &self.radicand))
            }
            (false, true) => {
                // p < 0, q > 0: sign of q^2 D - p^2
                compare_to_sign(&(q * q * &self.radicand), &(p * p))
            }
        }
    }

    /// Exact ordering; both operands must be rational or share a radicand.
    pub fn compare(&self, other: &QuadraticSurd) -> Result<Ordering> {
        let d = if self.is_rational() {
            other.radicand.clone()
        } else if other.is_rational() || self.radicand == other.radicand {
            self.radicand.clone()
        } else {
            return Err(Error::MixedRadicands(
                self.radicand.to_string(),
                other.radicand.to_string(),
            ));
        };
        let diff = QuadraticSurd::new(
            &self.rational_part - &other.rational_part,
            &self.surd_coefficient - &other.surd_coefficient,
            d,
        )?;
        Ok(match diff.sign() {
            s if s < 0 => Ordering::Less,
            0 => Ordering::Equal,
            _ => Ordering::Greater,
        })
    }

    /// Ordering against a plain rational (always defined).
    pub fn cmp_rational(&self, r: &Rational) -> Ordering {
        self.compare(&QuadraticSurd::from_rational(r.clone()))
            .expect("rational comparand shares any radicand")
    }

    pub fn neg(&self) -> Self {
        QuadraticSurd {
            rational_part: -&self.rational_part,
            surd_coefficient: -&self.surd_coefficient,
            radicand: self.radicand.clone(),
        }
    }

    pub fn add_rational(&self, r: &Rational) -> Self {
        QuadraticSurd {
            rational_part: &self.rational_part + r,
            surd_coefficient: self.surd_coefficient.clone(),
            radicand: self.radicand.clone(),
        }
    }

    /// Multiply by a rational scalar.
    pub fn scale(&self, k: &Rational) -> Self {
        if k.is_zero() {
            return Self::from_rational(Rational::zero());
        }
        QuadraticSurd {
            rational_part: &self.rational_part * k,
            surd_coefficient: &self.surd_coefficient * k,
            radicand: self.radicand.clone(),
        }
    }

    /// Largest integer `<=` the represented value, computed exactly.
    pub fn floor(&self) -> BigInt {
        if self.is_rational() {
            return self.rational_part.floor().to_integer();
        }
        let q = &self.surd_coefficient;
        let t = q * q * &self.radicand; // (|q| sqrt(D))^2, irrational sqrt
        let floor_abs = floor_sqrt(&t);
        let surd_floor = if q.is_positive() {
            floor_abs
        } else {
            // floor(-x) = -floor(x) - 1 for irrational x
            -floor_abs - BigInt::one()
        };
        let mut n = self.rational_part.floor().to_integer() + surd_floor;
        // floor(a) + floor(b) is within 1 of floor(a + b)
        let next = Rational::from_integer(&n + BigInt::one());
        if self.cmp_rational(&next) != Ordering::Less {
            n += BigInt::one();
        }
        debug_assert_eq!(
            self.cmp_rational(&Rational::from_integer(n.clone())),
            Ordering::Greater
        );
        n
    }

    /// Smallest integer `>=` the represented value.
    pub fn ceil(&self) -> BigInt {
        if self.is_rational() {
            return self.rational_part.ceil().to_integer();
        }
        -self.neg().floor()
    }
}

fn rational_sign(r: &Rational) -> i32 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}

fn compare_to_sign(a: &Rational, b: &Rational) -> i32 {
    match a.cmp(b) {
        Ordering::Less => -1,
        Ordering::Equal => 0,
        Ordering::Greater => 1,
    }
}

impl fmt::Display for QuadraticSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            write!(f, "{}", self.rational_part)
        } else {
            write!(
                f,
                "{} + {}*sqrt({})",
                self.rational_part, self.surd_coefficient, self.radicand
            )
        }
    }
}
