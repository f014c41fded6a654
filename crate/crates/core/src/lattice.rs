//! Intersection theory and Chern-character arithmetic on P1 x P1.
//!
//! The Neron-Severi lattice is generated by the two rulings `D1`, `D2`
//! with `D1^2 = D2^2 = 0` and `D1.D2 = 1`; a divisor `(a,b)` stands for
//! `a D1 + b D2`.  Every wall formula downstream factors through the
//! invariants `(r, d, c) = (rank, H.ch1, ch2)` for a fixed polarization
//! `H`, so this module also carries the projection, the beta-twist, the
//! Bogomolov discriminant, the Euler pairing and the Hilbert polynomial of
//! torsion classes.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::arith::{rat_int, Rational};
use crate::{Error, Result};

/// Divisor class `a D1 + b D2` on P1 x P1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Divisor {
    pub a: i64,
    pub b: i64,
}

impl Divisor {
    pub const fn new(a: i64, b: i64) -> Self {
        Divisor { a, b }
    }

    /// Intersection pairing `(a,b).(a',b') = a b' + a' b`.
    pub fn intersect(&self, other: &Divisor) -> i64 {
        self.a * other.b + other.a * self.b
    }

    /// `(a,b)^2 = 2ab`.
    pub fn self_intersection(&self) -> i64 {
        2 * self.a * self.b
    }

    /// Ample iff both coordinates are positive.
    pub fn is_ample(&self) -> bool {
        self.a > 0 && self.b > 0
    }

    pub fn is_zero(&self) -> bool {
        self.a == 0 && self.b == 0
    }
}

impl Add for Divisor {
    type Output = Divisor;
    fn add(self, rhs: Divisor) -> Divisor {
        Divisor::new(self.a + rhs.a, self.b + rhs.b)
    }
}

impl Sub for Divisor {
    type Output = Divisor;
    fn sub(self, rhs: Divisor) -> Divisor {
        Divisor::new(self.a - rhs.a, self.b - rhs.b)
    }
}

impl Neg for Divisor {
    type Output = Divisor;
    fn neg(self) -> Divisor {
        Divisor::new(-self.a, -self.b)
    }
}

impl fmt::Display for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

/// The canonical class `K = O(-2,-2)`.
pub const CANONICAL: Divisor = Divisor::new(-2, -2);

/// An ample divisor fixing the slice of the stability manifold.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Divisor", into = "Divisor")]
pub struct Polarization {
    h: Divisor,
}

impl Polarization {
    pub fn new(h: Divisor) -> Result<Self> {
        if !h.is_ample() {
            return Err(Error::NotAmple(h.a, h.b));
        }
        Ok(Polarization { h })
    }

    pub fn divisor(&self) -> Divisor {
        self.h
    }

    /// `H^2 = 2ab`.
    pub fn squared(&self) -> i64 {
        self.h.self_intersection()
    }

    /// `H . c1`.
    pub fn degree(&self, c1: &Divisor) -> i64 {
        self.h.intersect(c1)
    }
}

impl TryFrom<Divisor> for Polarization {
    type Error = Error;
    fn try_from(d: Divisor) -> Result<Self> {
        Polarization::new(d)
    }
}

impl From<Polarization> for Divisor {
    fn from(p: Polarization) -> Divisor {
        p.h
    }
}

impl fmt::Display for Polarization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.h)
    }
}

/// Chern character `(rank, c1, ch2)` of an object of the derived category.
///
/// `ch2` is rational so the type can carry twisted values; classes of
/// honest objects always have integer `ch2` and only those project to
/// [`Invariants`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ChernCharacter {
    pub rank: i64,
    pub c1: Divisor,
    pub ch2: Rational,
}

impl ChernCharacter {
    pub fn new(rank: i64, c1: Divisor, ch2: Rational) -> Self {
        ChernCharacter { rank, c1, ch2 }
    }

    pub fn from_integers(rank: i64, c1: Divisor, ch2: i64) -> Self {
        ChernCharacter::new(rank, c1, rat_int(ch2))
    }

    /// `ch O(a,b) = (1, (a,b), ab)`.
    pub fn line_bundle(a: i64, b: i64) -> Self {
        ChernCharacter::from_integers(1, Divisor::new(a, b), a * b)
    }

    pub fn zero() -> Self {
        ChernCharacter::from_integers(0, Divisor::new(0, 0), 0)
    }

    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.c1.is_zero() && self.ch2.is_zero()
    }

    pub fn integer_ch2(&self) -> Result<i64> {
        if self.ch2.is_integer() {
            i64::try_from(&self.ch2.to_integer())
                .map_err(|_| Error::OutOfRange(self.ch2.to_string()))
        } else {
            Err(Error::NonIntegerCh2(self.ch2.to_string()))
        }
    }

    /// `ch(E (x) O(L))`: `(r, c1 + r L, ch2 + c1.L + r L^2/2)`.
    pub fn tensor_line_bundle(&self, l: &Divisor) -> ChernCharacter {
        ChernCharacter::new(
            self.rank,
            Divisor::new(self.c1.a + self.rank * l.a, self.c1.b + self.rank * l.b),
            &self.ch2 + rat_int(self.c1.intersect(l) + self.rank * l.a * l.b),
        )
    }
}

impl Add for &ChernCharacter {
    type Output = ChernCharacter;
    fn add(self, rhs: &ChernCharacter) -> ChernCharacter {
        ChernCharacter::new(self.rank + rhs.rank, self.c1 + rhs.c1, &self.ch2 + &rhs.ch2)
    }
}

impl Sub for &ChernCharacter {
    type Output = ChernCharacter;
    fn sub(self, rhs: &ChernCharacter) -> ChernCharacter {
        ChernCharacter::new(self.rank - rhs.rank, self.c1 - rhs.c1, &self.ch2 - &rhs.ch2)
    }
}

impl Neg for &ChernCharacter {
    type Output = ChernCharacter;
    fn neg(self) -> ChernCharacter {
        ChernCharacter::new(-self.rank, -self.c1, -&self.ch2)
    }
}

impl fmt::Display for ChernCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.rank, self.c1, self.ch2)
    }
}

/// The compact twisted triple `(H^2 ch0^b, H ch1^b, ch2^b)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistedChern {
    pub h2_ch0: Rational,
    pub h_ch1: Rational,
    pub ch2: Rational,
}

impl TwistedChern {
    /// Twist further by `beta2 H`; composition of twists is additive in beta.
    pub fn then_twist(&self, beta2: &Rational) -> TwistedChern {
        TwistedChern {
            h2_ch0: self.h2_ch0.clone(),
            h_ch1: &self.h_ch1 - beta2 * &self.h2_ch0,
            ch2: &self.ch2 - beta2 * &self.h_ch1 + beta2 * beta2 * &self.h2_ch0 / rat_int(2),
        }
    }

    /// `(H ch1^b)^2 - 2 (H^2 ch0^b)(ch2^b)`; independent of the twist.
    pub fn discriminant(&self) -> Rational {
        &self.h_ch1 * &self.h_ch1 - rat_int(2) * &self.h2_ch0 * &self.ch2
    }
}

/// The projected triple `(r, d, c) = (rank, H.ch1, ch2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Invariants {
    pub r: i64,
    pub d: i64,
    pub c: i64,
}

impl Invariants {
    pub const fn new(r: i64, d: i64, c: i64) -> Self {
        Invariants { r, d, c }
    }

    pub fn neg(&self) -> Self {
        Invariants::new(-self.r, -self.d, -self.c)
    }

    /// Componentwise difference, used for quotient classes `v - F`.
    pub fn minus(&self, other: &Invariants) -> Self {
        Invariants::new(self.r - other.r, self.d - other.d, self.c - other.c)
    }

    /// Proportionality over the rationals (all 2x2 minors vanish).
    pub fn is_proportional_to(&self, other: &Invariants) -> bool {
        let mrd = self.r as i128 * other.d as i128 - other.r as i128 * self.d as i128;
        let mrc = self.r as i128 * other.c as i128 - other.r as i128 * self.c as i128;
        let mdc = self.d as i128 * other.c as i128 - other.d as i128 * self.c as i128;
        mrd == 0 && mrc == 0 && mdc == 0
    }
}

impl fmt::Display for Invariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.r, self.d, self.c)
    }
}

/// Project a class to its invariants; the class must have integer `ch2`.
pub fn invariants(v: &ChernCharacter, h: &Polarization) -> Result<Invariants> {
    Ok(Invariants::new(v.rank, h.degree(&v.c1), v.integer_ch2()?))
}

/// Beta-twisted compact triple
/// `(H^2 r, d - H^2 beta r, c - beta d + H^2 beta^2 r / 2)`.
pub fn twist(v: &ChernCharacter, beta: &Rational, h: &Polarization) -> TwistedChern {
    let h2 = rat_int(h.squared());
    let r = rat_int(v.rank);
    let d = rat_int(h.degree(&v.c1));
    TwistedChern {
        h2_ch0: &h2 * &r,
        h_ch1: &d - &h2 * beta * &r,
        ch2: &v.ch2 - beta * &d + &h2 * beta * beta * &r / rat_int(2),
    }
}

/// Bogomolov discriminant `d^2 - 2 H^2 r c` of an invariant triple.
pub fn discriminant(i: &Invariants, h: &Polarization) -> i64 {
    i.d * i.d - 2 * h.squared() * i.r * i.c
}

/// Euler characteristic `chi(E) = r + a + b + ch2` (Riemann-Roch with the
/// Todd class `1 + (1,1) + [pt]`).
pub fn euler_char(v: &ChernCharacter) -> Result<i64> {
    Ok(v.rank + v.c1.a + v.c1.b + v.integer_ch2()?)
}

/// Euler pairing `chi(E,F) = chi(E^v (x) F)`:
/// `rE rF + rE(aF+bF) - rF(aE+bE) + rE ch2F + rF ch2E - c1E.c1F`.
pub fn euler_pairing(e: &ChernCharacter, f: &ChernCharacter) -> Result<i64> {
    let (ce, cf) = (e.integer_ch2()?, f.integer_ch2()?);
    Ok(e.rank * f.rank + e.rank * (f.c1.a + f.c1.b) - f.rank * (e.c1.a + e.c1.b)
        + e.rank * cf
        + f.rank * ce
        - e.c1.intersect(&f.c1))
}

/// Hilbert polynomial `(a+b) m + chi` of a torsion class, returned as
/// `(leading, constant)`.
pub fn hilbert_polynomial(v: &ChernCharacter) -> Result<(i64, i64)> {
    if v.rank != 0 {
        return Err(Error::NonzeroRank);
    }
    Ok((v.c1.a + v.c1.b, euler_char(v)?))
}

/// All divisors `(a,b)` with `H.(a,b) = d` and `ab = c`, i.e. the line
/// bundles with the given rank-one invariants.  Returns an empty list for
/// ranks other than one.
pub fn line_bundle_lifts(i: &Invariants, h: &Polarization) -> Vec<Divisor> {
    if i.r != 1 {
        return Vec::new();
    }
    let hd = h.divisor();
    let mut lifts = Vec::new();
    let mut push = |cand: Divisor| {
        if hd.intersect(&cand) == i.d && cand.a * cand.b == i.c && !lifts.contains(&cand) {
            lifts.push(cand);
        }
    };
    if i.c == 0 {
        // the two coordinate axes
        if i.d % hd.a == 0 {
            push(Divisor::new(0, i.d / hd.a));
        }
        if i.d % hd.b == 0 {
            push(Divisor::new(i.d / hd.b, 0));
        }
    } else {
        let abs = i.c.unsigned_abs();
        let mut k = 1u64;
        while k * k <= abs {
            if abs % k == 0 {
                let (p, q) = (k as i64, (abs / k) as i64);
                for a in [p, -p, q, -q] {
                    push(Divisor::new(a, i.c / a));
                }
            }
            k += 1;
        }
    }
    lifts.sort();
    lifts
}
