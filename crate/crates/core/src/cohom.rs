//! Cohomology of line bundles on P1 x P1 and hyper-Ext dimensions of
//! two-term complexes, via the long exact sequence of the defining
//! triangle.
//!
//! A [`TwoTermComplex`] `[A -> B]` (A in degree -1, B in degree 0, generic
//! map) is the cone of `A -> B`; sheaves with a length-one line-bundle
//! resolution `0 -> A -> B -> E -> 0` are the same object up to
//! quasi-isomorphism, and a pure shift `L[1]` is `[L -> 0]`.  Applying
//! `Hom(L,-)` or `Hom(-,L)` to the triangle leaves one unknown per
//! segment: the rank of the induced map between known line-bundle Ext
//! groups.  Ranks are never guessed.  A degree comes out exact only when
//! every adjacent rank is forced — by a zero group or by an
//! [`AssertedVanishing`] supplied with its justification — and is reported
//! as an interval otherwise.  The Euler characteristic is exact always and
//! is checked against the lattice pairing on every call.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::lattice::{euler_pairing, ChernCharacter, Divisor, CANONICAL};
use crate::report::line_bundle_list;
use crate::{Error, Result};

/// `(h0, h1)` of `O(a)` on P1.
pub fn cohomology_p1(a: i64) -> (u64, u64) {
    ((a + 1).max(0) as u64, (-a - 1).max(0) as u64)
}

/// `(h0, h1, h2)` of `O(a,b)` by the Kunneth formula.
pub fn cohomology(l: &Divisor) -> (u64, u64, u64) {
    let (a0, a1) = cohomology_p1(l.a);
    let (b0, b1) = cohomology_p1(l.b);
    (a0 * b0, a0 * b1 + a1 * b0, a1 * b1)
}

/// `(ext0, ext1, ext2)` between line bundles:
/// `Ext^i(O(L1), O(L2)) = H^i(O(L2 - L1))`.
pub fn ext_line_bundles(l1: &Divisor, l2: &Divisor) -> (u64, u64, u64) {
    cohomology(&(*l2 - *l1))
}

/// The Serre-dual description of `Ext^i(A, B)`:
/// `Ext^{2-i}(B, A (x) K)` with `K = O(-2,-2)`, of equal dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SerreDual {
    pub degree: u8,
    pub source: Divisor,
    pub target: Divisor,
    pub dim: u64,
}

pub fn serre_dual(i: u8, a: &Divisor, b: &Divisor) -> SerreDual {
    debug_assert!(i <= 2);
    let degree = 2 - i;
    let target = *a + CANONICAL;
    let exts = ext_line_bundles(b, &target);
    let dim = [exts.0, exts.1, exts.2][degree as usize];
    SerreDual {
        degree,
        source: *b,
        target,
        dim,
    }
}

/// A formal direct sum of line bundles; empty means the zero object.
#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LineBundleSum {
    #[serde(with = "line_bundle_list")]
    pub summands: Vec<Divisor>,
}

impl LineBundleSum {
    pub fn new(summands: Vec<Divisor>) -> Self {
        LineBundleSum { summands }
    }

    pub fn single(a: i64, b: i64) -> Self {
        LineBundleSum::new(vec![Divisor::new(a, b)])
    }

    pub fn is_zero(&self) -> bool {
        self.summands.is_empty()
    }

    pub fn ch(&self) -> ChernCharacter {
        self.summands
            .iter()
            .fold(ChernCharacter::zero(), |acc, l| {
                &acc + &ChernCharacter::line_bundle(l.a, l.b)
            })
    }

    /// `(ext0, ext1, ext2)` from this sum to another.
    fn ext_to(&self, other: &LineBundleSum) -> [u64; 3] {
        let mut dims = [0u64; 3];
        for l in &self.summands {
            for m in &other.summands {
                let (e0, e1, e2) = ext_line_bundles(l, m);
                dims[0] += e0;
                dims[1] += e1;
                dims[2] += e2;
            }
        }
        dims
    }
}

impl fmt::Display for LineBundleSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.summands.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .summands
            .iter()
            .map(crate::report::format_line_bundle)
            .collect();
        write!(f, "{}", parts.join("+"))
    }
}

/// Which Hom functor a vanishing assumption (or a hyperext call) refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Direction {
    /// `Hom(probe, -)` groups.
    FromProbe,
    /// `Hom(-, probe)` groups.
    ToProbe,
}

/// Side selector for [`hyperext`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    ProbeToTarget,
    TargetToProbe,
}

impl Side {
    fn direction(self) -> Direction {
        match self {
            Side::ProbeToTarget => Direction::FromProbe,
            Side::TargetToProbe => Direction::ToProbe,
        }
    }
}

/// An externally justified vanishing `Ext^degree = 0`.
///
/// Only ever forces a group to zero; an assumption can never raise a
/// dimension, and one that contradicts the surrounding exact sequence is
/// reported as an error.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssertedVanishing {
    pub degree: i32,
    pub direction: Direction,
    pub justification: String,
}

/// Formal complex `[A -> B]`, A in degree -1, B in degree 0, generic map.
#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct TwoTermComplex {
    pub deg_minus_1: LineBundleSum,
    pub deg_0: LineBundleSum,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub assumptions: Vec<AssertedVanishing>,
}

impl TwoTermComplex {
    pub fn new(deg_minus_1: LineBundleSum, deg_0: LineBundleSum) -> Self {
        TwoTermComplex {
            deg_minus_1,
            deg_0,
            assumptions: Vec::new(),
        }
    }

    /// A sheaf presented by itself (no degree -1 part).
    pub fn sheaf(sum: LineBundleSum) -> Self {
        TwoTermComplex::new(LineBundleSum::default(), sum)
    }

    /// A shifted sum `L[1] = [L -> 0]`.
    pub fn shifted(sum: LineBundleSum) -> Self {
        TwoTermComplex::new(sum, LineBundleSum::default())
    }

    pub fn with_assumptions(mut self, assumptions: Vec<AssertedVanishing>) -> Self {
        self.assumptions = assumptions;
        self
    }

    /// `ch = ch(B) - ch(A)`, additive on the defining triangle.
    pub fn ch(&self) -> ChernCharacter {
        &self.deg_0.ch() - &self.deg_minus_1.ch()
    }
}

impl fmt::Display for TwoTermComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} -> {}]", self.deg_minus_1, self.deg_0)
    }
}

/// A single hyper-Ext dimension: pinned exactly or bounded to an interval.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DimValue {
    Exact(u64),
    Interval { lo: u64, hi: u64 },
}

impl DimValue {
    pub fn bounds(&self) -> (u64, u64) {
        match *self {
            DimValue::Exact(n) => (n, n),
            DimValue::Interval { lo, hi } => (lo, hi),
        }
    }

    pub fn exact(&self) -> Option<u64> {
        match *self {
            DimValue::Exact(n) => Some(n),
            DimValue::Interval { .. } => None,
        }
    }

    fn from_bounds(lo: u64, hi: u64) -> Self {
        if lo == hi {
            DimValue::Exact(lo)
        } else {
            DimValue::Interval { lo, hi }
        }
    }
}

/// Per-degree hyper-Ext dimensions plus the exact Euler characteristic.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtDims {
    pub dims: BTreeMap<i32, DimValue>,
    pub euler: i64,
}

impl ExtDims {
    pub fn get(&self, degree: i32) -> DimValue {
        self.dims
            .get(&degree)
            .copied()
            .unwrap_or(DimValue::Exact(0))
    }

    /// Exact dimension in one degree, when the sequence forces it.
    pub fn exact(&self, degree: i32) -> Option<u64> {
        self.get(degree).exact()
    }
}

/// One unknown rank `r` of a map `h: M -> N` in the long exact sequence,
/// together with the interval of values not yet excluded.
#[derive(Clone, Copy, Debug)]
struct RankVar {
    m: u64,
    n: u64,
    lo: u64,
    hi: u64,
}

impl RankVar {
    fn new(m: u64, n: u64) -> Self {
        RankVar {
            m,
            n,
            lo: 0,
            hi: m.min(n),
        }
    }

    fn pin(&mut self, value: u64, degree: i32, what: &str) -> Result<()> {
        if value < self.lo || value > self.hi {
            return Err(Error::InfeasibleAssumption {
                degree,
                detail: format!(
                    "{what} needs rank {value} in [{}..{}] between groups of dimensions {} and {}",
                    self.lo, self.hi, self.m, self.n
                ),
            });
        }
        self.lo = value;
        self.hi = value;
        Ok(())
    }

    fn kernel_bounds(&self) -> (u64, u64) {
        (self.m - self.hi, self.m - self.lo)
    }

    fn cokernel_bounds(&self) -> (u64, u64) {
        (self.n - self.hi, self.n - self.lo)
    }
}

/// Hyper-Ext dimensions between a line-bundle sum and a two-term complex.
///
/// `ProbeToTarget` computes `Ext^i(probe, target)` for `i = -1..=2`;
/// `TargetToProbe` computes `Ext^i(target, probe)` for `i = 0..=3`.
/// Assumptions attached to the target are applied when their direction
/// matches the requested side.
pub fn hyperext(probe: &LineBundleSum, target: &TwoTermComplex, side: Side) -> Result<ExtDims> {
    let a = &target.deg_minus_1;
    let b = &target.deg_0;
    // The long exact sequence has the uniform shape
    //   0 -> X_first -> M0 -> N0 -> X -> M1 -> N1 -> X -> M2 -> N2 -> X_last -> 0
    // where for Hom(L,-): M_i = Ext^i(L,A), N_i = Ext^i(L,B), X degrees
    // starting at -1; for Hom(-,L): M_i = Ext^i(B,L), N_i = Ext^i(A,L),
    // X degrees starting at 0.
    let (m, n, first_degree, euler) = match side {
        Side::ProbeToTarget => (
            probe.ext_to(a),
            probe.ext_to(b),
            -1,
            euler_pairing(&probe.ch(), &target.ch())?,
        ),
        Side::TargetToProbe => (
            b.ext_to(probe),
            a.ext_to(probe),
            0,
            euler_pairing(&target.ch(), &probe.ch())?,
        ),
    };

    let mut ranks = [
        RankVar::new(m[0], n[0]),
        RankVar::new(m[1], n[1]),
        RankVar::new(m[2], n[2]),
    ];

    let wanted = side.direction();
    for assumption in target.assumptions.iter().filter(|v| v.direction == wanted) {
        let deg = assumption.degree;
        let what = &assumption.justification;
        let slot = deg - first_degree;
        if !(0..=3).contains(&slot) {
            // out of the possible range: vacuous
            continue;
        }
        // X at slot s vanishes: kernel of h_s is zero (s <= 2) and
        // cokernel of h_{s-1} is zero (s >= 1)
        if slot <= 2 {
            let i = slot as usize;
            let pin = ranks[i].m;
            ranks[i].pin(pin, deg, what)?;
        }
        if slot >= 1 {
            let i = (slot - 1) as usize;
            let pin = ranks[i].n;
            ranks[i].pin(pin, deg, what)?;
        }
    }

    let mut dims = BTreeMap::new();
    let (k_lo, k_hi) = ranks[0].kernel_bounds();
    dims.insert(first_degree, DimValue::from_bounds(k_lo, k_hi));
    for i in 0..2 {
        let (c_lo, c_hi) = ranks[i].cokernel_bounds();
        let (k_lo, k_hi) = ranks[i + 1].kernel_bounds();
        dims.insert(
            first_degree + 1 + i as i32,
            DimValue::from_bounds(c_lo + k_lo, c_hi + k_hi),
        );
    }
    let (c_lo, c_hi) = ranks[2].cokernel_bounds();
    dims.insert(first_degree + 3, DimValue::from_bounds(c_lo, c_hi));

    // the alternating sum is rank-independent; check it against the
    // lattice pairing on the lower bounds
    let alt: i64 = dims
        .iter()
        .map(|(deg, v)| {
            let (lo, _) = v.bounds();
            let sign = if deg.rem_euclid(2) == 0 { 1 } else { -1 };
            sign * lo as i64
        })
        .sum();
    debug_assert_eq!(alt, euler, "exact-sequence Euler sum disagrees with pairing");

    Ok(ExtDims { dims, euler })
}

/// Hom and Ext from a probe into a sheaf given by its resolution; alias of
/// [`hyperext`] in the `ProbeToTarget` direction.
pub fn hom_sheaf_with_resolution(probe: &LineBundleSum, e: &TwoTermComplex) -> Result<ExtDims> {
    hyperext(probe, e, Side::ProbeToTarget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::Divisor;

    fn lb(a: i64, b: i64) -> Divisor {
        Divisor::new(a, b)
    }

    #[test]
    fn p1_cohomology() {
        assert_eq!(cohomology_p1(1), (2, 0));
        assert_eq!(cohomology_p1(-1), (0, 0));
        assert_eq!(cohomology_p1(-3), (0, 2));
        assert_eq!(cohomology_p1(0), (1, 0));
    }

    #[test]
    fn kunneth_examples() {
        assert_eq!(cohomology(&lb(1, 2)), (6, 0, 0));
        assert_eq!(cohomology(&lb(-1, -4)), (0, 0, 0));
        assert_eq!(cohomology(&lb(-2, -3)), (0, 0, 2));
        assert_eq!(cohomology(&lb(0, -2)), (0, 1, 0));
    }

    #[test]
    fn kunneth_euler_consistency_exhaustive() {
        for a in -10..=10i64 {
            for b in -10..=10i64 {
                let (h0, h1, h2) = cohomology(&lb(a, b));
                assert_eq!(
                    h0 as i64 - h1 as i64 + h2 as i64,
                    (a + 1) * (b + 1),
                    "O({a},{b})"
                );
            }
        }
    }

    #[test]
    fn ext_between_line_bundles() {
        assert_eq!(ext_line_bundles(&lb(-1, -1), &lb(0, 1)), (6, 0, 0));
        assert_eq!(ext_line_bundles(&lb(-2, -1), &lb(0, 1)), (9, 0, 0));
        assert_eq!(ext_line_bundles(&lb(-1, -2), &lb(0, 1)), (8, 0, 0));
    }

    #[test]
    fn serre_duality_exhaustive() {
        for a1 in -6..=6i64 {
            for b1 in -6..=6i64 {
                for a2 in -6..=6i64 {
                    for b2 in -6..=6i64 {
                        let fwd = ext_line_bundles(&lb(a1, b1), &lb(a2, b2));
                        let dual =
                            ext_line_bundles(&lb(a2, b2), &(lb(a1, b1) + CANONICAL));
                        assert_eq!((fwd.0, fwd.1, fwd.2), (dual.2, dual.1, dual.0));
                    }
                }
            }
        }
    }

    #[test]
    fn serre_dual_examples() {
        let d = serre_dual(2, &lb(0, 1), &lb(-2, -1));
        assert_eq!(d.degree, 0);
        assert_eq!(d.source, lb(-2, -1));
        assert_eq!(d.target, lb(-2, -1));
        assert_eq!(d.dim, 1);

        let d = serre_dual(2, &lb(1, 0), &lb(-1, -3));
        assert_eq!((d.degree, d.source, d.target, d.dim), (0, lb(-1, -3), lb(-1, -2), 2));

        let d = serre_dual(0, &lb(0, 0), &lb(0, 0));
        assert_eq!((d.degree, d.dim), (2, 1));
    }

    /// The quotient complex of the middle wall of the first scenario.
    fn q_complex() -> TwoTermComplex {
        TwoTermComplex::new(
            LineBundleSum::new(vec![lb(-2, -1), lb(-1, -2)]),
            LineBundleSum::single(-1, -1),
        )
    }

    fn hom_q_vanishes() -> AssertedVanishing {
        AssertedVanishing {
            degree: 0,
            direction: Direction::ToProbe,
            justification: "no degree-zero maps from the shifted free part to a sheaf in the \
                            torsion side of the heart on this wall"
                .into(),
        }
    }

    #[test]
    fn ext_from_quotient_to_probe_needs_assumption() {
        let probe = LineBundleSum::single(0, 1);
        // without the assumption only an interval is known
        let free = hyperext(&probe, &q_complex(), Side::TargetToProbe).unwrap();
        assert_eq!(free.euler, -11);
        assert_eq!(free.get(0), DimValue::Interval { lo: 0, hi: 6 });
        assert_eq!(free.get(1), DimValue::Interval { lo: 11, hi: 17 });

        // the heart argument pins Hom(Q, O(0,1)) = 0 and with it ext1 = 11
        let target = q_complex().with_assumptions(vec![hom_q_vanishes()]);
        let pinned = hyperext(&probe, &target, Side::TargetToProbe).unwrap();
        assert_eq!(pinned.exact(0), Some(0));
        assert_eq!(pinned.exact(1), Some(11));
        assert_eq!(pinned.exact(2), Some(0));
        assert_eq!(pinned.exact(3), Some(0));
    }

    #[test]
    fn ext_from_probe_to_quotient_is_forced() {
        // Ext^1(O(0,1), Q) = 1 with no assumptions
        let probe = LineBundleSum::single(0, 1);
        let dims = hyperext(&probe, &q_complex(), Side::ProbeToTarget).unwrap();
        assert_eq!(dims.exact(1), Some(1));
        assert_eq!(dims.exact(0), Some(0));
        assert_eq!(dims.euler, -1);
    }

    #[test]
    fn collapsing_pair_of_first_scenario_vanishes() {
        // Ext^2 of the ideal-sheaf complex [O(-1,-1) -> O^2] against
        // O(-1,-2) is zero, i.e. Ext^1 against O(-1,-2)[1]
        let ideal = TwoTermComplex::new(
            LineBundleSum::single(-1, -1),
            LineBundleSum::new(vec![lb(0, 0), lb(0, 0)]),
        );
        let probe = LineBundleSum::single(-1, -2);
        let dims = hyperext(&probe, &ideal, Side::TargetToProbe).unwrap();
        assert_eq!(dims.exact(2), Some(0));
    }

    #[test]
    fn hom_vanishing_on_resolutions() {
        // open stratum of the first scenario
        let res1 = TwoTermComplex::new(
            LineBundleSum::new(vec![lb(-1, -2), lb(-1, -1)]),
            LineBundleSum::new(vec![lb(0, 0), lb(0, 0)]),
        );
        let hom = |probe: &LineBundleSum, e: &TwoTermComplex| {
            hom_sheaf_with_resolution(probe, e).unwrap().exact(0)
        };
        assert_eq!(hom(&LineBundleSum::single(0, 2), &res1), Some(0));
        assert_eq!(hom(&LineBundleSum::single(0, 1), &res1), Some(0));
        assert_eq!(hom(&LineBundleSum::single(1, 0), &res1), Some(0));

        // codimension-1 stratum
        let res2 = TwoTermComplex::new(
            LineBundleSum::new(vec![lb(-1, -2), lb(-2, -1)]),
            LineBundleSum::new(vec![lb(-1, -1), lb(0, 1)]),
        );
        assert_eq!(hom(&LineBundleSum::single(1, 0), &res2), Some(0));
        assert_eq!(hom(&LineBundleSum::single(0, 1), &res2), Some(1));

        // codimension-2 stratum
        let res3 = TwoTermComplex::new(
            LineBundleSum::single(-1, -3),
            LineBundleSum::single(1, 0),
        );
        assert_eq!(hom(&LineBundleSum::single(1, 0), &res3), Some(1));
        assert_eq!(hom(&LineBundleSum::single(0, 2), &res3), Some(0));
    }

    #[test]
    fn shifted_target_reads_off_line_bundle_cohomology() {
        // Ext^i(L', A[1]) = Ext^{i+1}(L', A)
        let probe = LineBundleSum::single(0, 1);
        let target = TwoTermComplex::shifted(LineBundleSum::single(-2, -2));
        let dims = hyperext(&probe, &target, Side::ProbeToTarget).unwrap();
        // H^*(O(-2,-3)) = (0,0,2)
        assert_eq!(dims.exact(-1), Some(0));
        assert_eq!(dims.exact(0), Some(0));
        assert_eq!(dims.exact(1), Some(2));
        assert_eq!(dims.exact(2), Some(0));
    }

    #[test]
    fn infeasible_assumption_is_an_error() {
        // Hom(E, O) with E = [0 -> O]: Hom = 1, cannot be forced to zero
        let target = TwoTermComplex::sheaf(LineBundleSum::single(0, 0)).with_assumptions(vec![
            AssertedVanishing {
                degree: 0,
                direction: Direction::ToProbe,
                justification: "wrong on purpose".into(),
            },
        ]);
        let probe = LineBundleSum::single(0, 0);
        assert!(matches!(
            hyperext(&probe, &target, Side::TargetToProbe),
            Err(Error::InfeasibleAssumption { degree: 0, .. })
        ));
    }

    #[test]
    fn assumptions_only_narrow_intervals() {
        let probe = LineBundleSum::single(0, 1);
        let free = hyperext(&probe, &q_complex(), Side::TargetToProbe).unwrap();
        let pinned = hyperext(
            &probe,
            &q_complex().with_assumptions(vec![hom_q_vanishes()]),
            Side::TargetToProbe,
        )
        .unwrap();
        for degree in 0..=3 {
            let (flo, fhi) = free.get(degree).bounds();
            let (plo, phi) = pinned.get(degree).bounds();
            assert!(flo <= plo && phi <= fhi, "degree {degree} widened");
        }
        // and every exact report sits inside the assumption-free interval
        for (degree, v) in &pinned.dims {
            if let Some(n) = v.exact() {
                let (lo, hi) = free.get(*degree).bounds();
                assert!(lo <= n && n <= hi);
            }
        }
    }

    #[test]
    fn euler_matches_lattice_pairing_both_sides() {
        let probe = LineBundleSum::new(vec![lb(0, 1), lb(1, 0)]);
        let targets = [
            q_complex(),
            TwoTermComplex::sheaf(LineBundleSum::single(2, 3)),
            TwoTermComplex::shifted(LineBundleSum::single(-1, -2)),
            TwoTermComplex::new(
                LineBundleSum::new(vec![lb(-1, -2), lb(-1, -2)]),
                LineBundleSum::single(0, -1),
            ),
        ];
        for t in targets {
            let fwd = hyperext(&probe, &t, Side::ProbeToTarget).unwrap();
            assert_eq!(fwd.euler, euler_pairing(&probe.ch(), &t.ch()).unwrap());
            let bwd = hyperext(&probe, &t, Side::TargetToProbe).unwrap();
            assert_eq!(bwd.euler, euler_pairing(&t.ch(), &probe.ch()).unwrap());
        }
    }

    #[test]
    fn zero_probe_gives_zero() {
        let dims = hyperext(
            &LineBundleSum::default(),
            &q_complex(),
            Side::ProbeToTarget,
        )
        .unwrap();
        assert_eq!(dims.euler, 0);
        for v in dims.dims.values() {
            assert_eq!(*v, DimValue::Exact(0));
        }
    }
}
