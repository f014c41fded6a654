//! Exact-arithmetic wall-and-chamber computations for tilt stability on
//! the quadric surface P1 x P1.
//!
//! Everything in this crate runs over arbitrary-precision rationals (and
//! quadratic surds where wall endpoints are irrational); no floating point
//! enters any computation path.  The crate provides:
//!
//! * [`arith`] — exact rationals and `p + q*sqrt(D)` surds with exact sign
//!   and ordering;
//! * [`lattice`] — divisors, Chern characters, twists, discriminants, Euler
//!   pairings and Hilbert polynomials on P1 x P1;
//! * [`tilt`] — the central charge and tilt slope on a slice of the
//!   stability manifold, plus numeric heart-membership tests;
//! * [`walls`] — numerical walls between classes: semicircle centers,
//!   radii, endpoints and vertical walls;
//! * [`search`] — enumeration of all destabilizer candidates above a
//!   threshold radius, with an independent brute-force oracle;
//! * [`cohom`] — line-bundle cohomology via Kunneth, Serre duality, and a
//!   long-exact-sequence engine for hyper-Ext dimensions of two-term
//!   complexes;
//! * [`scenarios`] — shipped fixtures for three Simpson moduli spaces of
//!   torsion sheaves, with end-to-end verified wall reports;
//! * [`report`] — serialization of all of the above with rationals kept as
//!   exact `p/q` strings.

pub mod arith;
pub mod cohom;
pub mod lattice;
pub mod report;
pub mod scenarios;
pub mod search;
pub mod tilt;
pub mod walls;

use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("negative radicand {0}: surds represent real numbers only")]
    NegativeRadicand(String),
    #[error("cannot compare surds over distinct radicands {0} and {1}")]
    MixedRadicands(String, String),
    #[error("ch2 = {0} is not an integer")]
    NonIntegerCh2(String),
    #[error("divisor ({0},{1}) is not ample")]
    NotAmple(i64, i64),
    #[error("rank must be nonzero")]
    ZeroRank,
    #[error("rank must be zero")]
    NonzeroRank,
    #[error("class is not torsion of positive degree: (r,d) = ({0},{1})")]
    NotTorsion(i64, i64),
    #[error("threshold radius_sq must be positive for candidate enumeration")]
    NonPositiveThreshold,
    #[error("negative threshold radius_sq")]
    NegativeThreshold,
    #[error("heart position undefined for class with (r,d) = ({0},{1})")]
    HeartUndefined(i64, i64),
    #[error("vanishing assumption in degree {degree} is inconsistent: {detail}")]
    InfeasibleAssumption { degree: i32, detail: String },
    #[error("ext dimensions need at least one side to be a (possibly shifted) sum of line bundles")]
    UnsupportedExtPair,
    #[error("unknown scenario {0:?} (expected M, N or S)")]
    UnknownScenario(String),
    #[error("fixture data invalid: {0}")]
    BadFixture(String),
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("value out of range: {0}")]
    OutOfRange(String),
}

pub type Result<T> = std::result::Result<T, Error>;
