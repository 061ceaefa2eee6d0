//! Serialization helpers for exact values.

use rug::Rational;
use serde::Serializer;

use crate::rational::format_fraction;

/// Serializes an exact rational as a `"num/den"` string.
pub fn ser_rational<S: Serializer>(x: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&format_fraction(x))
}

pub fn ser_rational_vec<S: Serializer>(xs: &[Rational], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(xs.len()))?;
    for x in xs {
        seq.serialize_element(&format_fraction(x))?;
    }
    seq.end()
}
