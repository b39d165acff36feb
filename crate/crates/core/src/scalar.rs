//! The coefficient field.
//!
//! Everything in this crate is generic over [`Scalar`], a field element type
//! with exact equality. The intended instantiation is [`BigRational`]; any
//! `num_traits` field type (`Ratio<i64>`, `f64`) also satisfies the bound,
//! though only exact types make the identity checks meaningful.

use std::fmt::{Debug, Display};
use std::ops::Neg;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, One, Signed, Zero};

use crate::Error;

/// A field element usable as a coefficient.
pub trait Scalar:
    Clone
    + Debug
    + Display
    + PartialEq
    + Num
    + Neg<Output = Self>
    + FromPrimitive
    + Send
    + Sync
    + 'static
{
    fn from_int(n: i64) -> Self {
        Self::from_i64(n).expect("every i64 embeds into the scalar field")
    }

    /// `num / den`; panics on `den == 0`.
    fn ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::from_int(num) / Self::from_int(den)
    }
}

impl<T> Scalar for T where
    T: Clone
        + Debug
        + Display
        + PartialEq
        + Num
        + Neg<Output = T>
        + FromPrimitive
        + Send
        + Sync
        + 'static
{
}

/// Parse a fraction string such as `"3"`, `"-1/2"` or `"6/4"` (normalized to lowest terms).
///
/// The typographic minus sign `−` is accepted as `-`.
pub fn parse_rational(s: &str) -> Result<BigRational, Error> {
    let cleaned = s.trim().replace('\u{2212}', "-");
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    let (num, den) = match cleaned.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (cleaned.as_str(), "1"),
    };
    let num = BigInt::from_str(num).map_err(|_| bad())?;
    let den = BigInt::from_str(den).map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(BigRational::new(num, den))
}

/// Lowest-terms fraction string, `"p"` for integers and `"p/q"` otherwise.
pub fn format_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// LaTeX rendering of a rational coefficient, e.g. `-\tfrac{3}{2}`.
pub fn latex_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        let sign = if q.is_negative() { "-" } else { "" };
        format!("{sign}\\tfrac{{{}}}{{{}}}", q.numer().abs(), q.denom())
    }
}
