//! Scalar plumbing shared by the float and exact-rational code paths.

use std::fmt;
use std::ops::{Add, Div, Mul, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Relative tolerance used to declare two floating-point scores tied.
pub const FLOAT_TIE_TOL: f64 = 1e-12;

/// A probability-like scalar: `f64` for the numeric path, [`BigRational`] for exact arithmetic.
pub trait Weight:
    Clone
    + fmt::Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + PartialOrd
    + Send
    + Sync
{
    fn ratio(num: u64, den: u64) -> Self;
    fn to_f64(&self) -> f64;
    /// Equality for tie detection: exact for rationals, relative tolerance for floats.
    fn ties(&self, other: &Self) -> bool;
    fn into_prob(self) -> Prob;
}

impl Weight for f64 {
    fn ratio(num: u64, den: u64) -> Self {
        num as f64 / den as f64
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn ties(&self, other: &Self) -> bool {
        let scale = 1f64.max(self.abs()).max(other.abs());
        (self - other).abs() <= FLOAT_TIE_TOL * scale
    }

    fn into_prob(self) -> Prob {
        Prob::Float(self)
    }
}

impl Weight for BigRational {
    fn ratio(num: u64, den: u64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn to_f64(&self) -> f64 {
        rational_to_f64(self)
    }

    fn ties(&self, other: &Self) -> bool {
        self == other
    }

    fn into_prob(self) -> Prob {
        Prob::Exact(self)
    }
}

/// Converts without overflowing on huge numerators/denominators.
pub fn rational_to_f64(r: &BigRational) -> f64 {
    if let (Some(n), Some(d)) = (r.numer().to_f64(), r.denom().to_f64()) {
        if n.is_finite() && d.is_finite() && d != 0.0 {
            return n / d;
        }
    }
    let shift = r.numer().bits().max(r.denom().bits()).saturating_sub(900);
    let n = (r.numer() >> shift).to_f64().unwrap_or(f64::NAN);
    let d = (r.denom() >> shift).to_f64().unwrap_or(f64::NAN);
    n / d
}

/// Parses `"p/q"`, a decimal such as `"0.125"` or `"1.5e-2"`, or an integer, exactly.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let s = text.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty probability literal".into()));
    }
    if let Some((num, den)) = s.split_once('/') {
        let num: BigInt = num
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad numerator in `{s}`")))?;
        let den: BigInt = den
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad denominator in `{s}`")))?;
        if den.is_zero() {
            return Err(Error::Parse(format!("zero denominator in `{s}`")));
        }
        return Ok(BigRational::new(num, den));
    }
    parse_decimal(s)
}

fn parse_decimal(s: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("not a decimal number: `{s}`"));
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(pos) => {
            let exp: i32 = s[pos + 1..].parse().map_err(|_| bad())?;
            (&s[..pos], exp)
        }
        None => (s, 0),
    };
    let (negative, mantissa) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits = format!("{int_part}{frac_part}");
    let mut numer: BigInt = if digits.is_empty() {
        BigInt::zero()
    } else {
        digits.parse().map_err(|_| bad())?
    };
    if negative {
        numer = -numer;
    }
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10u32);
    let value = if scale >= 0 {
        BigRational::from_integer(numer * num_traits::pow(ten, scale as usize))
    } else {
        BigRational::new(numer, num_traits::pow(ten, (-scale) as usize))
    };
    Ok(value)
}

pub fn format_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// A probability reported either exactly or as a float.
#[derive(Clone, Debug, PartialEq)]
pub enum Prob {
    Exact(BigRational),
    Float(f64),
}

impl Prob {
    pub fn to_f64(&self) -> f64 {
        match self {
            Prob::Exact(r) => rational_to_f64(r),
            Prob::Float(x) => *x,
        }
    }

    pub fn exact(&self) -> Option<&BigRational> {
        match self {
            Prob::Exact(r) => Some(r),
            Prob::Float(_) => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Prob::Exact(r) => r.is_zero(),
            Prob::Float(x) => *x == 0.0,
        }
    }

    pub fn in_unit_interval(&self) -> bool {
        match self {
            Prob::Exact(r) => !r.is_negative() && *r <= BigRational::one(),
            Prob::Float(x) => (-1e-12..=1.0 + 1e-12).contains(x),
        }
    }
}

impl fmt::Display for Prob {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Prob::Exact(r) => f.write_str(&format_rational(r)),
            Prob::Float(x) => write!(f, "{x}"),
        }
    }
}

impl Serialize for Prob {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Prob::Exact(r) => serializer.serialize_str(&format_rational(r)),
            Prob::Float(x) => serializer.serialize_f64(*x),
        }
    }
}

impl<'de> Deserialize<'de> for Prob {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Text(String),
            Number(f64),
        }
        match Raw::deserialize(deserializer)? {
            Raw::Text(s) => parse_rational(&s).map(Prob::Exact).map_err(serde::de::Error::custom),
            Raw::Number(x) => Ok(Prob::Float(x)),
        }
    }
}
