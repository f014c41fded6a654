//! Numerical walls between classes in the (alpha, beta)-plane.
//!
//! For invariant triples `u = (r,d,c)` and `v = (r',d',c')` the wall locus
//! is cut out by
//!
//! ```text
//! (H^2/2) Wrd (beta^2 + alpha^2) - H^2 Wrc beta + Wdc = 0
//! ```
//!
//! with the pairing minors `Wrd = r d' - r' d`, `Wrc = r c' - r' c`,
//! `Wdc = d c' - d' c`.  When `Wrd != 0` this is the semicircle with
//! center `C = Wrc / Wrd` and squared radius `C^2 - 2 Wdc / (H^2 Wrd)`;
//! when only `Wrc` survives it is the vertical line `beta = Wdc/(H^2 Wrc)`.
//! Specializing to a torsion `v` recovers the single-class radius formula
//! `C^2 - 2 c' d / (H^2 d' r) + 2 c / (H^2 r)` — note the plus on the last
//! term, which the instantiation tests pin down.

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{rat_int, QuadraticSurd, Rational};
use crate::lattice::{invariants, ChernCharacter, Invariants, Polarization};
use crate::report::rational_string;
use crate::{Error, Result};

/// A semicircular wall `(beta - center)^2 + alpha^2 = radius_sq`, `alpha > 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Wall {
    #[serde(with = "rational_string")]
    pub center_beta: Rational,
    #[serde(with = "rational_string")]
    pub radius_sq: Rational,
}

impl Wall {
    /// Requires `radius_sq > 0`; an empty circle is not a wall.
    pub fn new(center_beta: Rational, radius_sq: Rational) -> Result<Self> {
        if !radius_sq.is_positive() {
            return Err(Error::OutOfRange(format!(
                "radius_sq must be positive, got {radius_sq}"
            )));
        }
        Ok(Wall {
            center_beta,
            radius_sq,
        })
    }

    /// `(beta, alpha^2)` of the highest point of the semicircle.
    pub fn top_point(&self) -> (Rational, Rational) {
        (self.center_beta.clone(), self.radius_sq.clone())
    }

    /// The two abscissae `center -/+ sqrt(radius_sq)` where the wall meets
    /// the beta-axis.
    pub fn endpoints(&self) -> (QuadraticSurd, QuadraticSurd) {
        let minus = QuadraticSurd::new(
            self.center_beta.clone(),
            rat_int(-1),
            self.radius_sq.clone(),
        )
        .expect("radius_sq is positive");
        let plus = QuadraticSurd::new(
            self.center_beta.clone(),
            rat_int(1),
            self.radius_sq.clone(),
        )
        .expect("radius_sq is positive");
        (minus, plus)
    }

    /// `alpha^2` over the point `beta` of the circle; negative off the span.
    pub fn alpha_sq_at(&self, beta: &Rational) -> Rational {
        let delta = beta - &self.center_beta;
        &self.radius_sq - &delta * &delta
    }
}

/// The unique vertical wall `beta = d / (H^2 r)` of a nonzero-rank class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerticalWall {
    #[serde(with = "rational_string")]
    pub beta: Rational,
}

/// Outcome of intersecting two classes' charge loci.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WallLocus {
    Semicircle(Wall),
    Vertical(VerticalWall),
    /// Proportional triples, or an empty circle (`radius_sq <= 0`), or an
    /// everywhere-false equation: no wall.  A value, not an error, so
    /// enumeration loops can skip.
    Degenerate,
}

impl WallLocus {
    pub fn as_semicircle(&self) -> Option<&Wall> {
        match self {
            WallLocus::Semicircle(w) => Some(w),
            _ => None,
        }
    }
}

/// Numerical wall between two invariant triples.
pub fn wall_between_invariants(u: &Invariants, v: &Invariants, h: &Polarization) -> WallLocus {
    let wrd = rat_int(u.r) * rat_int(v.d) - rat_int(v.r) * rat_int(u.d);
    let wrc = rat_int(u.r) * rat_int(v.c) - rat_int(v.r) * rat_int(u.c);
    let wdc = rat_int(u.d) * rat_int(v.c) - rat_int(v.d) * rat_int(u.c);
    let h2 = rat_int(h.squared());
    if !wrd.is_zero() {
        let center = &wrc / &wrd;
        let radius_sq = &center * &center - rat_int(2) * &wdc / (&h2 * &wrd);
        return match Wall::new(center, radius_sq) {
            Ok(w) => WallLocus::Semicircle(w),
            Err(_) => WallLocus::Degenerate,
        };
    }
    if !wrc.is_zero() {
        return WallLocus::Vertical(VerticalWall {
            beta: &wdc / (&h2 * &wrc),
        });
    }
    WallLocus::Degenerate
}

/// Numerical wall between two classes; both need integer `ch2`.
pub fn wall_between(
    u: &ChernCharacter,
    v: &ChernCharacter,
    h: &Polarization,
) -> Result<WallLocus> {
    Ok(wall_between_invariants(
        &invariants(u, h)?,
        &invariants(v, h)?,
        h,
    ))
}

/// The vertical wall `beta = d/(H^2 r)` of a class of nonzero rank.
pub fn vertical_wall(v: &ChernCharacter, h: &Polarization) -> Result<VerticalWall> {
    if v.rank == 0 {
        return Err(Error::ZeroRank);
    }
    Ok(VerticalWall {
        beta: rat_int(h.degree(&v.c1)) / (rat_int(h.squared()) * rat_int(v.rank)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::lattice::Divisor;
    use crate::tilt::{on_wall, StabilityPoint};
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use std::cmp::Ordering;

    fn h12() -> Polarization {
        Polarization::new(Divisor::new(1, 2)).unwrap()
    }

    fn h11() -> Polarization {
        Polarization::new(Divisor::new(1, 1)).unwrap()
    }

    fn semicircle(u: &ChernCharacter, v: &ChernCharacter, h: &Polarization) -> Wall {
        match wall_between(u, v, h).unwrap() {
            WallLocus::Semicircle(w) => w,
            other => panic!("expected semicircle, got {other:?}"),
        }
    }

    #[test]
    fn collapsing_wall_of_first_scenario() {
        // ideal-sheaf class (1,(1,1),-1) against (0,(2,3),-3), H=(1,2)
        let u = ChernCharacter::from_integers(1, Divisor::new(1, 1), -1);
        let v = ChernCharacter::from_integers(0, Divisor::new(2, 3), -3);
        let w = semicircle(&u, &v, &h12());
        assert_eq!(w.center_beta, rat(-3, 7));
        assert_eq!(w.radius_sq, rat(16, 49));
    }

    #[test]
    fn outermost_wall_of_second_scenario() {
        let u = ChernCharacter::line_bundle(0, 1);
        let v = ChernCharacter::from_integers(0, Divisor::new(2, 3), -4);
        let w = semicircle(&u, &v, &h11());
        assert_eq!(w.center_beta, rat(-4, 5));
        assert_eq!(w.radius_sq, rat(36, 25));
    }

    #[test]
    fn proportional_classes_are_degenerate() {
        let u = ChernCharacter::line_bundle(0, 1);
        let u2 = &u + &u;
        assert_eq!(
            wall_between(&u, &u2, &h12()).unwrap(),
            WallLocus::Degenerate
        );
        // also the O vs O^2 pair used by the third scenario's collapse
        let o = ChernCharacter::line_bundle(0, 0);
        let oo = &o + &o;
        assert_eq!(wall_between(&o, &oo, &h12()).unwrap(), WallLocus::Degenerate);
    }

    #[test]
    fn empty_circle_is_degenerate() {
        // (1,0,-1) vs (0,1,0): C = 0, Wdc = 1, radius_sq = -1/2 < 0
        let u = Invariants::new(1, 0, -1);
        let v = Invariants::new(0, 1, 0);
        assert_eq!(wall_between_invariants(&u, &v, &h12()), WallLocus::Degenerate);
    }

    #[test]
    fn vertical_wall_between_equal_rank_classes() {
        // same (r,d), different c: Wrd = 0, Wrc != 0
        let u = Invariants::new(1, 1, 0);
        let v = Invariants::new(1, 1, 2);
        match wall_between_invariants(&u, &v, &h12()) {
            WallLocus::Vertical(w) => {
                // Wrc = 2, Wdc = 2, beta = 2/(4*2) = 1/4
                assert_eq!(w.beta, rat(1, 4));
            }
            other => panic!("expected vertical wall, got {other:?}"),
        }
    }

    #[test]
    fn inconsistent_equation_is_degenerate() {
        // Wrd = Wrc = 0 but Wdc != 0: (0,1,0) vs (0,0,1)
        let u = Invariants::new(0, 1, 0);
        let v = Invariants::new(0, 0, 1);
        assert_eq!(wall_between_invariants(&u, &v, &h12()), WallLocus::Degenerate);
    }

    #[test]
    fn vertical_wall_examples() {
        let w = |v: &ChernCharacter, h: &Polarization| vertical_wall(v, h).unwrap().beta;
        assert_eq!(w(&ChernCharacter::line_bundle(0, 1), &h12()), rat(1, 4));
        assert_eq!(w(&ChernCharacter::line_bundle(1, 0), &h12()), rat(1, 2));
        assert_eq!(w(&ChernCharacter::line_bundle(0, 1), &h11()), rat(1, 2));
        assert!(vertical_wall(
            &ChernCharacter::from_integers(0, Divisor::new(2, 3), -3),
            &h12()
        )
        .is_err());
    }

    #[test]
    fn top_point_and_endpoints() {
        let w = Wall::new(rat(-3, 7), rat(16, 49)).unwrap();
        assert_eq!(w.top_point(), (rat(-3, 7), rat(16, 49)));
        let (lo, hi) = w.endpoints();
        assert_eq!(lo.to_rational().unwrap(), rat_int(-1));
        assert_eq!(hi.to_rational().unwrap(), rat(1, 7));

        let w = Wall::new(rat(-4, 5), rat(16, 25)).unwrap();
        let (lo, hi) = w.endpoints();
        assert_eq!(lo.to_rational().unwrap(), rat(-8, 5));
        assert_eq!(hi.to_rational().unwrap(), rat_int(0));

        let w = Wall::new(rat(-1, 3), rat(1, 9)).unwrap();
        let (lo, hi) = w.endpoints();
        assert_eq!(lo.to_rational().unwrap(), rat(-2, 3));
        assert_eq!(hi.to_rational().unwrap(), rat_int(0));

        // irrational radius: endpoints straddle the center exactly
        let w = Wall::new(rat(1, 2), rat(2, 9)).unwrap();
        let (lo, hi) = w.endpoints();
        assert_eq!(lo.cmp_rational(&rat(1, 2)), Ordering::Less);
        assert_eq!(hi.cmp_rational(&rat(1, 2)), Ordering::Greater);
    }

    #[test]
    fn top_point_of_outer_wall_lies_on_nu_zero_line() {
        // slope of the torsion class vanishes exactly over beta = c'/d'
        let u = ChernCharacter::line_bundle(1, 0);
        let v = ChernCharacter::from_integers(0, Divisor::new(2, 3), -3);
        let w = semicircle(&u, &v, &h12());
        let (beta, alpha_sq) = w.top_point();
        assert_eq!(beta, rat(-3, 7));
        let p = StabilityPoint::new(alpha_sq, beta).unwrap();
        assert_eq!(
            crate::tilt::slope(&v, &p, &h12()),
            crate::tilt::Slope::Finite(rat_int(0))
        );
    }

    /// Single-class radius formulas for the three scenario classes, used
    /// as the regression pinning the sign of the last term.
    fn radius_m(r: i64, d: i64, c: i64) -> Rational {
        rat(9, 49) + rat(3, 14) * rat(d, r) + rat(1, 2) * rat(c, r)
    }

    fn radius_n(r: i64, d: i64, c: i64) -> Rational {
        rat(16, 25) + rat(4, 5) * rat(d, r) + rat(c, r)
    }

    fn radius_s(r: i64, d: i64, c: i64) -> Rational {
        rat(1, 9) + rat(1, 6) * rat(d, r) + rat(1, 2) * rat(c, r)
    }

    #[test]
    fn instantiation_consistency_of_general_radius() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x3ad1);
        let m = Invariants::new(0, 7, -3);
        let n = Invariants::new(0, 5, -4);
        let s = Invariants::new(0, 6, -2);
        for _ in 0..1000 {
            let r = rng.gen_range(1..=8i64);
            let d = rng.gen_range(-20..=20i64);
            let c = rng.gen_range(-20..=20i64);
            let u = Invariants::new(r, d, c);
            for (v, h, expected) in [
                (&m, h12(), radius_m(r, d, c)),
                (&n, h11(), radius_n(r, d, c)),
                (&s, h12(), radius_s(r, d, c)),
            ] {
                match wall_between_invariants(&u, v, &h) {
                    WallLocus::Semicircle(w) => {
                        assert_eq!(w.center_beta, rat(v.c, v.d));
                        assert_eq!(w.radius_sq, expected);
                    }
                    WallLocus::Degenerate => assert!(!expected.is_positive()),
                    WallLocus::Vertical(_) => panic!("torsion target cannot give vertical wall"),
                }
            }
        }
    }

    #[test]
    fn walls_against_torsion_class_are_concentric() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0xc0c0);
        let v = Invariants::new(0, 7, -3);
        let center = rat(-3, 7);
        for _ in 0..1000 {
            let u = Invariants::new(
                rng.gen_range(1..=9i64),
                rng.gen_range(-25..=25i64),
                rng.gen_range(-25..=25i64),
            );
            if let WallLocus::Semicircle(w) = wall_between_invariants(&u, &v, &h12()) {
                assert_eq!(w.center_beta, center);
            }
        }
    }

    #[test]
    fn same_side_walls_of_fixed_rank_class_are_nested() {
        // fixed v of nonzero rank; any two semicircular walls on the same
        // side of the vertical wall never cross: the difference of the two
        // circle functions alpha^2(beta) is linear in beta, so an exact
        // check at its unique root decides
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0xae57);
        let h = h12();
        let v = Invariants::new(1, 1, 0);
        let vert = rat(1, 4); // d/(H^2 r)
        let mut same_side_pairs = 0;
        while same_side_pairs < 400 {
            let mk = |rng: &mut rand_chacha::ChaCha8Rng| {
                Invariants::new(
                    rng.gen_range(-6..=6i64),
                    rng.gen_range(-15..=15i64),
                    rng.gen_range(-15..=15i64),
                )
            };
            let (u1, u2) = (mk(&mut rng), mk(&mut rng));
            let (w1, w2) = match (
                wall_between_invariants(&u1, &v, &h),
                wall_between_invariants(&u2, &v, &h),
            ) {
                (WallLocus::Semicircle(a), WallLocus::Semicircle(b)) => (a, b),
                _ => continue,
            };
            let side = |w: &Wall| w.center_beta.cmp(&vert);
            if side(&w1) != side(&w2) || side(&w1) == Ordering::Equal {
                continue;
            }
            same_side_pairs += 1;
            if w1.center_beta == w2.center_beta {
                // concentric circles of equal radius coincide: same wall
                continue;
            }
            // root of alpha_sq_1(beta) - alpha_sq_2(beta)
            let c1sq = &w1.center_beta * &w1.center_beta;
            let c2sq = &w2.center_beta * &w2.center_beta;
            let slope = rat_int(2) * (&w1.center_beta - &w2.center_beta);
            let offset = (&w1.radius_sq - &c1sq) - (&w2.radius_sq - &c2sq);
            let root = -offset / slope;
            assert!(
                !w1.alpha_sq_at(&root).is_positive(),
                "walls {w1:?} and {w2:?} cross at beta = {root}"
            );
        }
    }

    #[test]
    fn wall_locus_matches_charge_predicate() {
        // on_wall at the top point of every non-degenerate pairing
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x7070);
        let h = h12();
        for _ in 0..300 {
            let u = ChernCharacter::from_integers(
                rng.gen_range(-4..=4),
                Divisor::new(rng.gen_range(-6..=6), rng.gen_range(-6..=6)),
                rng.gen_range(-8..=8),
            );
            let v = ChernCharacter::from_integers(
                rng.gen_range(-4..=4),
                Divisor::new(rng.gen_range(-6..=6), rng.gen_range(-6..=6)),
                rng.gen_range(-8..=8),
            );
            if let WallLocus::Semicircle(w) = wall_between(&u, &v, &h).unwrap() {
                let (beta, alpha_sq) = w.top_point();
                let p = StabilityPoint::new(alpha_sq, beta).unwrap();
                assert!(on_wall(&u, &v, &p, &h));
            }
        }
    }

    proptest! {
        // the wall does not depend on the order of its two classes
        #[test]
        fn wall_between_is_symmetric(
            r1 in -5i64..=5, d1 in -12i64..=12, c1 in -12i64..=12,
            r2 in -5i64..=5, d2 in -12i64..=12, c2 in -12i64..=12,
            hb in 1i64..=3,
        ) {
            let h = Polarization::new(Divisor::new(1, hb)).unwrap();
            let u = Invariants::new(r1, d1, c1);
            let v = Invariants::new(r2, d2, c2);
            prop_assert_eq!(
                wall_between_invariants(&u, &v, &h),
                wall_between_invariants(&v, &u, &h)
            );
        }
    }
}
