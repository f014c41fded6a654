//! Exact serialization and the small input grammars.
//!
//! Rationals cross every serialized surface as `p/q` strings (plain `p`
//! for integers), never as floats, so report documents and fixtures
//! round-trip bit-exactly.  The text grammars accepted here:
//!
//! * rationals: `-3/7`, `5`
//! * classes: `r,(a,b),c` as in `1,(1,1),-1`
//! * polarizations: `(1,2)`
//! * line bundles: `O(-1,-2)`
//! * objects: `O(a,b)`, a sum `O(a,b)+O(c,d)`, a shift suffix `[1]`, or a
//!   two-term complex `[O(-1,-2)+O(-2,-1) -> O(-1,-1)]` with `0` for an
//!   empty side
//!
//! Parse errors carry the byte position of the offending token.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::{QuadraticSurd, Rational};
use crate::lattice::{ChernCharacter, Divisor, Polarization};
use crate::{Error, Result};

/// Canonical `p/q` rendering of a rational (plain `p` when integral).
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// `O(a,b)` rendering of a line bundle divisor.
pub fn format_line_bundle(d: &Divisor) -> String {
    format!("O({},{})", d.a, d.b)
}

/// `r,(a,b),c` rendering of a class.
pub fn format_class(v: &ChernCharacter) -> String {
    format!(
        "{},({},{}),{}",
        v.rank,
        v.c1.a,
        v.c1.b,
        format_rational(&v.ch2)
    )
}

/// Serde adapter: `Rational` as an exact `p/q` string.
pub mod rational_string {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        parse_rational(&text).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter: `ChernCharacter` as an `r,(a,b),c` string.
pub mod class_string {
    use super::*;

    pub fn serialize<S: Serializer>(
        v: &ChernCharacter,
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_class(v))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<ChernCharacter, D::Error> {
        let text = String::deserialize(d)?;
        parse_class(&text).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter: `Polarization` as an `(a,b)` string.
pub mod polarization_string {
    use super::*;

    pub fn serialize<S: Serializer>(
        p: &Polarization,
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&p.divisor().to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Polarization, D::Error> {
        let text = String::deserialize(d)?;
        parse_polarization(&text).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter: `Vec<Divisor>` as a list of `O(a,b)` strings.
pub mod line_bundle_list {
    use super::*;

    pub fn serialize<S: Serializer>(
        v: &[Divisor],
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        let strings: Vec<String> = v.iter().map(format_line_bundle).collect();
        strings.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Vec<Divisor>, D::Error> {
        let strings = Vec::<String>::deserialize(d)?;
        strings
            .iter()
            .map(|t| parse_line_bundle(t).map_err(serde::de::Error::custom))
            .collect()
    }
}

/// Exact record of a quadratic surd `p + q*sqrt(D)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurdRecord {
    #[serde(with = "rational_string")]
    pub rational_part: Rational,
    #[serde(with = "rational_string")]
    pub surd_coefficient: Rational,
    #[serde(with = "rational_string")]
    pub radicand: Rational,
}

impl From<&QuadraticSurd> for SurdRecord {
    fn from(x: &QuadraticSurd) -> Self {
        SurdRecord {
            rational_part: x.rational_part().clone(),
            surd_coefficient: x.surd_coefficient().clone(),
            radicand: x.radicand().clone(),
        }
    }
}

impl TryFrom<&SurdRecord> for QuadraticSurd {
    type Error = Error;
    fn try_from(r: &SurdRecord) -> Result<QuadraticSurd> {
        QuadraticSurd::new(
            r.rational_part.clone(),
            r.surd_coefficient.clone(),
            r.radicand.clone(),
        )
    }
}

/// A parsed object expression: line-bundle sums in degrees -1 and 0.
///
/// `O(a,b)` puts the sum in degree 0; a `[1]` suffix moves it to degree
/// -1; a bracketed complex fills both sides.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ObjectSpec {
    pub deg_minus_1: Vec<Divisor>,
    pub deg_0: Vec<Divisor>,
}

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        Cursor { text, pos: 0 }
    }

    fn error(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            position: self.pos,
            message: message.into(),
        }
    }

    fn rest(&self) -> &'a str {
        &self.text[self.pos..]
    }

    fn skip_ws(&mut self) {
        while self.rest().starts_with(' ') {
            self.pos += 1;
        }
    }

    fn eat(&mut self, token: &str) -> Result<()> {
        self.skip_ws();
        if self.rest().starts_with(token) {
            self.pos += token.len();
            Ok(())
        } else {
            Err(self.error(format!("expected {token:?}")))
        }
    }

    fn try_eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn integer(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        let bytes = self.text.as_bytes();
        let mut end = start;
        if end < bytes.len() && (bytes[end] == b'-' || bytes[end] == b'+') {
            end += 1;
        }
        while end < bytes.len() && bytes[end].is_ascii_digit() {
            end += 1;
        }
        let slice = &self.text[start..end];
        if slice.is_empty() || slice == "-" || slice == "+" {
            return Err(self.error("expected an integer"));
        }
        self.pos = end;
        slice
            .parse::<i64>()
            .map_err(|e| Error::Parse {
                position: start,
                message: format!("integer out of range: {e}"),
            })
    }

    fn big_integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        let bytes = self.text.as_bytes();
        let mut end = start;
        if end < bytes.len() && (bytes[end] == b'-' || bytes[end] == b'+') {
            end += 1;
        }
        while end < bytes.len() && bytes[end].is_ascii_digit() {
            end += 1;
        }
        let slice = &self.text[start..end];
        if slice.is_empty() || slice == "-" || slice == "+" {
            return Err(self.error("expected an integer"));
        }
        self.pos = end;
        slice.parse::<BigInt>().map_err(|e| Error::Parse {
            position: start,
            message: format!("bad integer: {e}"),
        })
    }

    fn rational(&mut self) -> Result<Rational> {
        let numer = self.big_integer()?;
        if self.try_eat("/") {
            let pos = self.pos;
            let denom = self.big_integer()?;
            if denom.is_zero() {
                return Err(Error::Parse {
                    position: pos,
                    message: "zero denominator".into(),
                });
            }
            Ok(Rational::new(numer, denom))
        } else {
            Ok(Rational::from_integer(numer))
        }
    }

    fn divisor_pair(&mut self) -> Result<Divisor> {
        self.eat("(")?;
        let a = self.integer()?;
        self.eat(",")?;
        let b = self.integer()?;
        self.eat(")")?;
        Ok(Divisor::new(a, b))
    }

    fn line_bundle(&mut self) -> Result<Divisor> {
        self.eat("O")?;
        self.divisor_pair()
    }

    fn line_bundle_sum(&mut self) -> Result<Vec<Divisor>> {
        self.skip_ws();
        if self.try_eat("0") {
            return Ok(Vec::new());
        }
        let mut sum = vec![self.line_bundle()?];
        while self.try_eat("+") {
            sum.push(self.line_bundle()?);
        }
        Ok(sum)
    }

    fn finish(&mut self) -> Result<()> {
        self.skip_ws();
        if self.rest().is_empty() {
            Ok(())
        } else {
            Err(self.error("trailing input"))
        }
    }
}

/// Parse an exact rational `p` or `p/q`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let mut c = Cursor::new(text);
    let r = c.rational()?;
    c.finish()?;
    Ok(r)
}

/// Parse a class `r,(a,b),c` (the `c` component may be rational).
pub fn parse_class(text: &str) -> Result<ChernCharacter> {
    let mut c = Cursor::new(text);
    let rank = c.integer()?;
    c.eat(",")?;
    let c1 = c.divisor_pair()?;
    c.eat(",")?;
    let ch2 = c.rational()?;
    c.finish()?;
    Ok(ChernCharacter::new(rank, c1, ch2))
}

/// Parse a polarization `(a,b)`; must be ample.
pub fn parse_polarization(text: &str) -> Result<Polarization> {
    let mut c = Cursor::new(text);
    let d = c.divisor_pair()?;
    c.finish()?;
    Polarization::new(d)
}

/// Parse a line bundle `O(a,b)`.
pub fn parse_line_bundle(text: &str) -> Result<Divisor> {
    let mut c = Cursor::new(text);
    let d = c.line_bundle()?;
    c.finish()?;
    Ok(d)
}

/// Parse an object expression (see module docs for the grammar).
pub fn parse_object(text: &str) -> Result<ObjectSpec> {
    let mut c = Cursor::new(text);
    let spec = if c.try_eat("[") {
        let lhs = c.line_bundle_sum()?;
        c.eat("->")?;
        let rhs = c.line_bundle_sum()?;
        c.eat("]")?;
        ObjectSpec {
            deg_minus_1: lhs,
            deg_0: rhs,
        }
    } else {
        let sum = c.line_bundle_sum()?;
        if c.try_eat("[") {
            c.eat("1")?;
            c.eat("]")?;
            ObjectSpec {
                deg_minus_1: sum,
                deg_0: Vec::new(),
            }
        } else {
            ObjectSpec {
                deg_minus_1: Vec::new(),
                deg_0: sum,
            }
        }
    };
    c.finish()?;
    Ok(spec)
}
