//! The stability-function layer: central charge and tilt slope at a point
//! of the (alpha, beta)-plane, numeric heart-membership tests, and the
//! equal-slope predicate defining numerical walls.
//!
//! Alpha is carried as `alpha^2` and the imaginary part of the charge is
//! stored divided by alpha, so every quantity here is an exact rational;
//! all slope and wall predicates are polynomial in `alpha^2`.

use num_traits::{Signed, Zero};

use crate::arith::{rat_int, Rational};
use crate::lattice::{twist, ChernCharacter, Polarization};
use crate::{Error, Result};

/// A point `(alpha, beta)` of the slice, with `alpha` stored squared.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilityPoint {
    alpha_sq: Rational,
    beta: Rational,
}

impl StabilityPoint {
    /// Requires `alpha^2 > 0`.
    pub fn new(alpha_sq: Rational, beta: Rational) -> Result<Self> {
        if !alpha_sq.is_positive() {
            return Err(Error::OutOfRange(format!(
                "alpha_sq must be positive, got {alpha_sq}"
            )));
        }
        Ok(StabilityPoint { alpha_sq, beta })
    }

    pub fn alpha_sq(&self) -> &Rational {
        &self.alpha_sq
    }

    pub fn beta(&self) -> &Rational {
        &self.beta
    }
}

/// Central charge `Z = re + i alpha im_over_alpha`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChargeValue {
    pub re: Rational,
    pub im_over_alpha: Rational,
}

/// Tilt slope value; the vertical-wall case is `+infinity`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Slope {
    Finite(Rational),
    Infinite,
}

impl Slope {
    pub fn as_finite(&self) -> Option<&Rational> {
        match self {
            Slope::Finite(r) => Some(r),
            Slope::Infinite => None,
        }
    }
}

/// Where a class sits relative to the torsion pair at a given beta.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HeartPosition {
    /// Torsion sheaf of positive degree; in the heart for every beta.
    TorsionSheaf,
    /// Mu-stable sheaf with `H.ch1^b > 0`: in the tilting torsion part.
    SheafInT,
    /// Mu-stable sheaf with `H.ch1^b < 0`: enters the heart as `E[1]`.
    ShiftedInF,
    /// `H.ch1^b = 0`: on the boundary between the two.
    Boundary,
}

/// `Z(E) = -(ch2^b - (alpha^2 H^2 / 2) ch0^b) + i alpha (H.ch1^b)`.
pub fn central_charge(v: &ChernCharacter, p: &StabilityPoint, h: &Polarization) -> ChargeValue {
    let t = twist(v, p.beta(), h);
    ChargeValue {
        re: -&t.ch2 + p.alpha_sq() * &t.h2_ch0 / rat_int(2),
        im_over_alpha: t.h_ch1,
    }
}

/// Tilt slope `nu = (ch2^b - (alpha^2 H^2/2) ch0^b) / (H.ch1^b)`, or
/// `+infinity` when the denominator vanishes.
pub fn slope(v: &ChernCharacter, p: &StabilityPoint, h: &Polarization) -> Slope {
    let z = central_charge(v, p, h);
    if z.im_over_alpha.is_zero() {
        Slope::Infinite
    } else {
        Slope::Finite(-&z.re / &z.im_over_alpha)
    }
}

/// Numeric heart membership at `beta`.
///
/// Valid for torsion sheaves of positive degree and for mu-stable sheaves
/// (in particular line bundles); a negative-rank class is read as `E[1]`
/// of the mu-stable sheaf `E` with the opposite character and reported
/// from `E`'s side of the torsion pair.  Rank-zero classes with `d <= 0`
/// have no certified position and are rejected.
pub fn heart_position(
    v: &ChernCharacter,
    beta: &Rational,
    h: &Polarization,
) -> Result<HeartPosition> {
    let d = h.degree(&v.c1);
    if v.rank == 0 {
        return if d > 0 {
            Ok(HeartPosition::TorsionSheaf)
        } else {
            Err(Error::HeartUndefined(0, d))
        };
    }
    let sheaf = if v.rank > 0 { v.clone() } else { -v };
    let t = twist(&sheaf, beta, h);
    Ok(if t.h_ch1.is_positive() {
        HeartPosition::SheafInT
    } else if t.h_ch1.is_zero() {
        HeartPosition::Boundary
    } else {
        HeartPosition::ShiftedInF
    })
}

/// Numerical-wall predicate: `Re Z(f) Im Z(e) = Re Z(e) Im Z(f)` at `p`
/// (the common factor alpha in the imaginary parts cancels).
pub fn on_wall(
    f: &ChernCharacter,
    e: &ChernCharacter,
    p: &StabilityPoint,
    h: &Polarization,
) -> bool {
    let zf = central_charge(f, p, h);
    let ze = central_charge(e, p, h);
    zf.re * ze.im_over_alpha == ze.re * zf.im_over_alpha
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::lattice::Divisor;
    use proptest::prelude::*;

    fn h12() -> Polarization {
        Polarization::new(Divisor::new(1, 2)).unwrap()
    }

    fn h11() -> Polarization {
        Polarization::new(Divisor::new(1, 1)).unwrap()
    }

    fn pt(alpha_sq: Rational, beta: Rational) -> StabilityPoint {
        StabilityPoint::new(alpha_sq, beta).unwrap()
    }

    #[test]
    fn charge_of_torsion_class_at_wall_center() {
        // (0,(2,3),-3), H=(1,2), beta=-3/7: purely imaginary with Im/alpha = 7
        let v = ChernCharacter::from_integers(0, Divisor::new(2, 3), -3);
        for alpha_sq in [rat(1, 9), rat_int(1), rat(30, 49)] {
            let z = central_charge(&v, &pt(alpha_sq, rat(-3, 7)), &h12());
            assert_eq!(z.re, rat_int(0));
            assert_eq!(z.im_over_alpha, rat_int(7));
        }
    }

    #[test]
    fn charge_of_structure_sheaf_on_vertical_wall() {
        let o = ChernCharacter::line_bundle(0, 0);
        let p = pt(rat(3, 5), rat_int(0));
        let z = central_charge(&o, &p, &h12());
        assert_eq!(z.re, rat(3, 5) * rat_int(4) / rat_int(2));
        assert_eq!(z.im_over_alpha, rat_int(0));
        assert_eq!(slope(&o, &p, &h12()), Slope::Infinite);
    }

    #[test]
    fn charge_hand_evaluated() {
        // (0,(2,3),-4), H=(1,1), beta=0 -> (4, 5)
        let v = ChernCharacter::from_integers(0, Divisor::new(2, 3), -4);
        let z = central_charge(&v, &pt(rat_int(1), rat_int(0)), &h11());
        assert_eq!(z.re, rat_int(4));
        assert_eq!(z.im_over_alpha, rat_int(5));
    }

    #[test]
    fn torsion_slope_is_affine_in_beta() {
        // nu = c'/d' - beta, independent of alpha
        let v = ChernCharacter::from_integers(0, Divisor::new(2, 3), -3);
        for k in 1..=12 {
            let p = pt(rat(k, 7), rat(-3, 7));
            assert_eq!(slope(&v, &p, &h12()), Slope::Finite(rat_int(0)));
            let q = pt(rat(k, 5), rat(1, 3));
            assert_eq!(
                slope(&v, &q, &h12()),
                Slope::Finite(rat(-3, 7) - rat(1, 3))
            );
        }
    }

    #[test]
    fn heart_position_examples() {
        let o01 = ChernCharacter::line_bundle(0, 1);
        // O(0,1) is in T for beta < 1/4 when H=(1,2)
        assert_eq!(
            heart_position(&o01, &rat_int(0), &h12()).unwrap(),
            HeartPosition::SheafInT
        );
        assert_eq!(
            heart_position(&o01, &rat(1, 4), &h12()).unwrap(),
            HeartPosition::Boundary
        );
        assert_eq!(
            heart_position(&o01, &rat(1, 2), &h12()).unwrap(),
            HeartPosition::ShiftedInF
        );
        // O(-1,-2): d - H^2 beta r = -4 - 4 beta: boundary at beta = -1
        let om = ChernCharacter::line_bundle(-1, -2);
        assert_eq!(
            heart_position(&om, &rat_int(-1), &h12()).unwrap(),
            HeartPosition::Boundary
        );
        assert_eq!(
            heart_position(&om, &rat(-1, 2), &h12()).unwrap(),
            HeartPosition::ShiftedInF
        );
        // any torsion class with d > 0
        let v = ChernCharacter::from_integers(0, Divisor::new(2, 3), -3);
        assert_eq!(
            heart_position(&v, &rat_int(17), &h12()).unwrap(),
            HeartPosition::TorsionSheaf
        );
        // rank 0 with d <= 0 rejected
        let bad = ChernCharacter::from_integers(0, Divisor::new(-1, 0), 0);
        assert!(heart_position(&bad, &rat_int(0), &h12()).is_err());
    }

    #[test]
    fn shifted_class_mirrors_underlying_sheaf() {
        // ch(O(-1,-2)[1]) = -(1,(-1,-2),2); at beta = -2 the sheaf is in T
        let shifted = -&ChernCharacter::line_bundle(-1, -2);
        assert_eq!(
            heart_position(&shifted, &rat_int(-2), &h12()).unwrap(),
            HeartPosition::SheafInT
        );
        assert_eq!(
            heart_position(&shifted, &rat_int(0), &h12()).unwrap(),
            HeartPosition::ShiftedInF
        );
    }

    #[test]
    fn on_wall_examples() {
        let f = ChernCharacter::line_bundle(1, 0);
        let e = ChernCharacter::from_integers(0, Divisor::new(2, 3), -3);
        let h = h12();
        // top point of the wall between them: (beta, alpha^2) = (-3/7, 30/49)
        assert!(on_wall(&f, &e, &pt(rat(30, 49), rat(-3, 7)), &h));
        // another point of the same circle: (beta+3/7)^2 + alpha^2 = 30/49,
        // beta = 1/7 gives alpha^2 = 30/49 - 16/49 = 2/7
        assert!(on_wall(&f, &e, &pt(rat(2, 7), rat(1, 7)), &h));
        // generic point off the circle
        assert!(!on_wall(&f, &e, &pt(rat(1, 2), rat(-3, 7)), &h));
        // proportional classes are on a common wall everywhere
        let f2 = &(&f + &f) + &f;
        assert!(on_wall(&f, &f2, &pt(rat(9, 5), rat(22, 7)), &h));
    }

    proptest! {
        // -Re Z = nu * (Im Z / alpha) at every point where the slope is
        // finite; checking two alpha^2 per beta pins both coefficients of
        // the affine-in-alpha^2 identity
        #[test]
        fn slope_reconstructs_charge(
            r in -5i64..=5, a in -7i64..=7, b in -7i64..=7, c2 in -8i64..=8,
            bn in -9i64..=9, bd in 1i64..=5, a1 in 1i64..=9, a2 in 10i64..=19,
            hb in 1i64..=3,
        ) {
            let h = Polarization::new(Divisor::new(1, hb)).unwrap();
            let v = ChernCharacter::from_integers(r, Divisor::new(a, b), c2);
            for asq in [rat(a1, 4), rat(a2, 4)] {
                let p = pt(asq, rat(bn, bd));
                let z = central_charge(&v, &p, &h);
                match slope(&v, &p, &h) {
                    Slope::Finite(nu) => prop_assert_eq!(-&z.re, nu * &z.im_over_alpha),
                    Slope::Infinite => prop_assert_eq!(z.im_over_alpha, rat_int(0)),
                }
            }
        }

        // heart position of a line bundle is monotone in beta with
        // threshold d / (H^2 r)
        #[test]
        fn heart_threshold_for_line_bundles(
            a in -7i64..=7, b in -7i64..=7, bn in -30i64..=30, bd in 1i64..=7, hb in 1i64..=3,
        ) {
            let h = Polarization::new(Divisor::new(1, hb)).unwrap();
            let v = ChernCharacter::line_bundle(a, b);
            let threshold = rat_int(h.degree(&v.c1)) / rat_int(h.squared());
            let beta = rat(bn, bd);
            let got = heart_position(&v, &beta, &h).unwrap();
            let want = if beta < threshold {
                HeartPosition::SheafInT
            } else if beta == threshold {
                HeartPosition::Boundary
            } else {
                HeartPosition::ShiftedInF
            };
            prop_assert_eq!(got, want);
        }
    }
}
