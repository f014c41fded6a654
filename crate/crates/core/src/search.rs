//! Enumeration of every integer invariant triple that can define a wall
//! for a torsion class above a threshold radius.
//!
//! For a torsion class `v = (0, d', c')` all walls are concentric at
//! `C = c'/d'`; a destabilizing subobject of positive rank along a wall of
//! radius `R > R0` must satisfy, with `b± = C ± R0`:
//!
//! * (a) `2 H^2 r R0 < d'` — the two degree windows below overlap;
//! * (b) `H^2 b+ r < d < d' + H^2 b- r` — the heart window `0 < H.ch1^b(F)
//!   < H.ch1^b(v)` at both endpoint abscissae of the threshold circle;
//! * (c) `c > (H^2 r/2)(R0^2 - C^2) + C d` — the wall radius exceeds `R0`
//!   — and `c <= min(d^2, (d'-d)^2 + 2 H^2 r c') / (2 H^2 r)` — the
//!   Bogomolov inequality on the subobject and on the quotient.
//!
//! With `include_equal_radius` every comparison above is relaxed to its
//! non-strict form, which surfaces the threshold wall itself (the
//! collapsing wall and its endpoint-boundary subobjects).  Negative-rank
//! solutions are the complements `v - F` of the listed ones and are not
//! reported separately.
//!
//! [`brute_force_oracle`] rechecks (b), the radius condition and both
//! Bogomolov inequalities triple by triple over a finite box, without the
//! derived rank bound (a); agreement certifies that (a) loses nothing.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::arith::{rat_int, QuadraticSurd, Rational};
use crate::lattice::{
    discriminant, euler_pairing, invariants, line_bundle_lifts, twist, ChernCharacter, Divisor,
    Invariants, Polarization,
};
use crate::walls::{wall_between_invariants, Wall, WallLocus};
use crate::{Error, Result};

/// A candidate search above a threshold radius for a fixed torsion class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchProblem {
    pub v: Invariants,
    pub h: Polarization,
    pub min_radius_sq: Rational,
    pub include_equal_radius: bool,
}

impl SearchProblem {
    /// Requires a torsion class of positive degree and a nonnegative
    /// threshold.
    pub fn new(
        v: Invariants,
        h: Polarization,
        min_radius_sq: Rational,
        include_equal_radius: bool,
    ) -> Result<Self> {
        if v.r != 0 || v.d <= 0 {
            return Err(Error::NotTorsion(v.r, v.d));
        }
        if min_radius_sq.is_negative() {
            return Err(Error::NegativeThreshold);
        }
        Ok(SearchProblem {
            v,
            h,
            min_radius_sq,
            include_equal_radius,
        })
    }

    /// Wall center `C = c'/d'`.
    pub fn center(&self) -> Rational {
        rat_int(self.v.c) / rat_int(self.v.d)
    }
}

/// A positive-rank destabilizer candidate with its wall and (for rank one)
/// the line bundles realizing its invariants.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Candidate {
    pub invariants: Invariants,
    pub wall: Wall,
    pub lifts: Vec<Divisor>,
}

fn build_candidate(u: Invariants, p: &SearchProblem) -> Candidate {
    let wall = match wall_between_invariants(&u, &p.v, &p.h) {
        WallLocus::Semicircle(w) => w,
        other => unreachable!("radius condition admits only semicircles, got {other:?}"),
    };
    Candidate {
        invariants: u,
        wall,
        lifts: line_bundle_lifts(&u, &p.h),
    }
}

fn sort_candidates(mut out: Vec<Candidate>) -> Vec<Candidate> {
    out.sort_by(|x, y| {
        y.wall
            .radius_sq
            .cmp(&x.wall.radius_sq)
            .then_with(|| x.invariants.cmp(&y.invariants))
    });
    out
}

fn to_i64(n: BigInt, what: &str) -> Result<i64> {
    i64::try_from(&n).map_err(|_| Error::OutOfRange(format!("{what} = {n}")))
}

/// All candidate triples satisfying the constraint chain, sorted by
/// descending `radius_sq` with lexicographic `(r,d,c)` tie-breaking.
///
/// The threshold must be strictly positive: at `R0 = 0` the rank bound (a)
/// is vacuous and the candidate set is infinite.
pub fn enumerate_candidates(p: &SearchProblem) -> Result<Vec<Candidate>> {
    if !p.min_radius_sq.is_positive() {
        return Err(Error::NonPositiveThreshold);
    }
    let h2 = rat_int(p.h.squared());
    let center = p.center();
    let dv = rat_int(p.v.d);
    let r0 = QuadraticSurd::sqrt_of(&p.min_radius_sq)?;
    let beta_minus = r0.neg().add_rational(&center);
    let beta_plus = r0.add_rational(&center);

    let mut out = Vec::new();
    let mut r = 1i64;
    loop {
        // (a): 2 H^2 r R0 < d', compared through squares
        let lhs_sq = rat_int(4) * &h2 * &h2 * rat_int(r * r) * &p.min_radius_sq;
        let rhs_sq = &dv * &dv;
        let rank_ok = if p.include_equal_radius {
            lhs_sq <= rhs_sq
        } else {
            lhs_sq < rhs_sq
        };
        if !rank_ok {
            break;
        }

        // (b): integer window for d between the surd bounds
        let scale = &h2 * rat_int(r);
        let lower = beta_plus.scale(&scale);
        let upper = beta_minus.scale(&scale).add_rational(&dv);
        let (d_lo, d_hi) = if p.include_equal_radius {
            (lower.ceil(), upper.floor())
        } else {
            (lower.floor() + 1, upper.ceil() - 1)
        };
        let d_lo = to_i64(d_lo, "degree window lower bound")?;
        let d_hi = to_i64(d_hi, "degree window upper bound")?;

        for d in d_lo..=d_hi {
            // (c): radius condition below, Bogomolov caps above
            let radius_bound =
                &h2 * rat_int(r) / rat_int(2) * (&p.min_radius_sq - &center * &center)
                    + &center * rat_int(d);
            let c_lo = if p.include_equal_radius {
                radius_bound.ceil().to_integer()
            } else {
                radius_bound.floor().to_integer() + 1
            };
            let c_lo = to_i64(c_lo, "ch2 window lower bound")?;

            let two_h2_r = rat_int(2) * &h2 * rat_int(r);
            let bogomolov_f = (rat_int(d * d) / &two_h2_r).floor().to_integer();
            let qd = p.v.d - d;
            let bogomolov_q = (rat_int(p.v.c) + rat_int(qd * qd) / &two_h2_r)
                .floor()
                .to_integer();
            let c_hi = to_i64(bogomolov_f.min(bogomolov_q), "ch2 window upper bound")?;

            for c in c_lo..=c_hi {
                out.push(build_candidate(Invariants::new(r, d, c), p));
            }
        }
        r += 1;
    }
    Ok(sort_candidates(out))
}

/// Finite box for the oracle sweep.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleBox {
    pub r_max: i64,
    pub d_max: i64,
    pub c_max: i64,
}

/// Direct membership test over a finite box: every positive-rank triple is
/// checked against the endpoint windows, the radius condition and both
/// Bogomolov inequalities, with no derived shortcut.
pub fn brute_force_oracle(p: &SearchProblem, bounds: &OracleBox) -> Result<Vec<Candidate>> {
    let h2 = rat_int(p.h.squared());
    let center = p.center();
    let dv = rat_int(p.v.d);
    let r0 = QuadraticSurd::sqrt_of(&p.min_radius_sq)?;
    let beta_minus = r0.neg().add_rational(&center);
    let beta_plus = r0.add_rational(&center);
    let strict = !p.include_equal_radius;
    let below = |cmp: Ordering| {
        if strict {
            cmp == Ordering::Less
        } else {
            cmp != Ordering::Greater
        }
    };

    let mut out = Vec::new();
    for r in 1..=bounds.r_max {
        let scale = &h2 * rat_int(r);
        let lower = beta_plus.scale(&scale);
        let upper = beta_minus.scale(&scale).add_rational(&dv);
        for d in -bounds.d_max..=bounds.d_max {
            let d_rat = rat_int(d);
            let lo_ok = below(lower.cmp_rational(&d_rat));
            let hi_ok = below(upper.cmp_rational(&d_rat).reverse());
            if !lo_ok || !hi_ok {
                continue;
            }
            for c in -bounds.c_max..=bounds.c_max {
                let u = Invariants::new(r, d, c);
                let q = p.v.minus(&u);
                if discriminant(&u, &p.h) < 0 || discriminant(&q, &p.h) < 0 {
                    continue;
                }
                let radius_ok = match wall_between_invariants(&u, &p.v, &p.h) {
                    WallLocus::Semicircle(w) => below(match p.min_radius_sq.cmp(&w.radius_sq) {
                        Ordering::Less => Ordering::Less,
                        Ordering::Equal => Ordering::Equal,
                        Ordering::Greater => Ordering::Greater,
                    }),
                    _ => false,
                };
                if radius_ok {
                    out.push(build_candidate(u, p));
                }
            }
        }
    }
    Ok(sort_candidates(out))
}

/// Report of the numerical checks certifying a subobject/class pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairReport {
    pub wall: WallLocus,
    /// `0 < H.ch1^b(F) < H.ch1^b(v)` at the top point and both midpoints
    /// `C ± R/2` of the wall, checked surd-exactly.
    pub heart_window: Vec<WindowCheck>,
    pub discriminant_sub: i64,
    pub discriminant_quotient: i64,
    /// `chi(F, v-F)` and `chi(v-F, F)`, sanity data for Ext dimensions.
    pub euler_forward: i64,
    pub euler_backward: i64,
    pub verdict: bool,
    pub reasons: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WindowCheck {
    pub point: String,
    pub passed: bool,
}

/// Numerical verification that `(F, v - F)` is a legitimate wall pair.
pub fn verify_pair(
    f: &ChernCharacter,
    v: &ChernCharacter,
    h: &Polarization,
) -> Result<PairReport> {
    let fi = invariants(f, h)?;
    let vi = invariants(v, h)?;
    let q = &(v - f);
    let qi = vi.minus(&fi);
    let mut reasons = Vec::new();

    let wall = wall_between_invariants(&fi, &vi, h);
    let mut heart_window = Vec::new();
    if let WallLocus::Semicircle(w) = &wall {
        // H.ch1^b is affine in beta; evaluate at C and C ± R/2 in the
        // quadratic extension of R^2
        let half = rat_int(1) / rat_int(2);
        let points = [
            ("top".to_string(), rat_int(0)),
            ("midpoint-".to_string(), -&half),
            ("midpoint+".to_string(), half.clone()),
        ];
        for (label, offset) in points {
            // beta = C + offset * sqrt(R^2)
            let h_ch1 = |i: &Invariants| {
                // d - H^2 beta r as a surd in sqrt(radius_sq)
                let h2r = rat_int(h.squared() * i.r);
                QuadraticSurd::new(
                    rat_int(i.d) - &h2r * &w.center_beta,
                    -&h2r * &offset,
                    w.radius_sq.clone(),
                )
                .expect("radius_sq is positive")
            };
            let fv = h_ch1(&fi);
            let ev = h_ch1(&vi);
            let passed = fv.sign() > 0 && fv.compare(&ev).expect("shared radicand") == Ordering::Less;
            if !passed {
                reasons.push(format!("heart window fails at {label}"));
            }
            heart_window.push(WindowCheck {
                point: label,
                passed,
            });
        }
    } else {
        reasons.push("no semicircular wall between the classes".into());
    }

    let disc_f = discriminant(&fi, h);
    let disc_q = discriminant(&qi, h);
    if disc_f < 0 {
        reasons.push(format!("subobject violates Bogomolov: {disc_f}"));
    }
    if disc_q < 0 {
        reasons.push(format!("quotient violates Bogomolov: {disc_q}"));
    }

    Ok(PairReport {
        verdict: reasons.is_empty(),
        wall,
        heart_window,
        discriminant_sub: disc_f,
        discriminant_quotient: disc_q,
        euler_forward: euler_pairing(f, q)?,
        euler_backward: euler_pairing(q, f)?,
        reasons,
    })
}

/// `H.ch1^b(v)` at rational beta, used by report surfaces.
pub fn twisted_degree(v: &ChernCharacter, beta: &Rational, h: &Polarization) -> Rational {
    twist(v, beta, h).h_ch1
}
