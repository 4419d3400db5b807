//! Numeric plumbing shared by the exact (rational) and floating-point paths.

use std::fmt::Debug;

use num::bigint::BigInt;
use num::{BigRational, FromPrimitive, ToPrimitive, Zero};

pub type Rational = BigRational;

/// Field operations needed by game evaluation. Implemented by `f64` and
/// [`Rational`].
pub trait Scalar:
    Clone + Debug + PartialOrd + num::Num + FromPrimitive + Send + Sync + 'static
{
    fn from_ratio(numer: i64, denom: i64) -> Self {
        Self::from_i64(numer).unwrap() / Self::from_i64(denom).unwrap()
    }

    fn to_f64(&self) -> f64;

    /// Text form used in profile files.
    fn format_prob(&self) -> String;

    /// Parses a decimal (`0.375`) or fraction (`3/8`) token.
    fn parse_prob(token: &str) -> Option<Self>;
}

impl Scalar for f64 {
    fn to_f64(&self) -> f64 {
        *self
    }

    fn format_prob(&self) -> String {
        // Display prints the shortest string that parses back to the same value.
        format!("{self}")
    }

    fn parse_prob(token: &str) -> Option<Self> {
        if let Some((n, d)) = token.split_once('/') {
            let n: u64 = n.parse().ok()?;
            let d: u64 = d.parse().ok()?;
            if d == 0 {
                return None;
            }
            return Some(n as f64 / d as f64);
        }
        let v: f64 = token.parse().ok()?;
        v.is_finite().then_some(v)
    }
}

impl Scalar for Rational {
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn format_prob(&self) -> String {
        if self.is_integer() {
            self.numer().to_string()
        } else {
            format!("{}/{}", self.numer(), self.denom())
        }
    }

    fn parse_prob(token: &str) -> Option<Self> {
        parse_exact(token)
    }
}

/// Exact parse of an unsigned decimal or fraction.
pub fn parse_exact(token: &str) -> Option<Rational> {
    let digits = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());
    if let Some((n, d)) = token.split_once('/') {
        if !digits(n) || !digits(d) {
            return None;
        }
        let d: BigInt = d.parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(Rational::new(n.parse().ok()?, d));
    }
    let (int, frac) = token.split_once('.').unwrap_or((token, ""));
    if !(digits(int) || (int.is_empty() && digits(frac))) || !(frac.is_empty() || digits(frac)) {
        return None;
    }
    let int: BigInt = if int.is_empty() {
        BigInt::zero()
    } else {
        int.parse().ok()?
    };
    let scale = num::pow(BigInt::from(10), frac.len());
    let frac: BigInt = if frac.is_empty() {
        BigInt::zero()
    } else {
        frac.parse().ok()?
    };
    Some(Rational::new(int * &scale + frac, scale))
}

pub fn ratio(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Exact conversion of a finite float.
pub fn rational_from_f64(x: f64) -> Rational {
    Rational::from_float(x).expect("finite float")
}

pub fn is_probability<T: Scalar>(x: &T) -> bool {
    *x >= T::zero() && *x <= T::one()
}
