//! Scalar backends.
//!
//! Every geometric routine in the crate is generic over [`Scalar`]. Two
//! backends are provided:
//!
//! * [`Rational`] (arbitrary precision): arithmetic is closed and exact, so
//!   every identity is checked with `==`.
//! * `f64`: comparisons go through a [`Tolerance`], scaled by the magnitude
//!   of the operands.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::Value;

/// Exact rational number backed by big integers.
pub type Rational = num_rational::BigRational;

/// Relative comparison tolerance for the float backend.
///
/// Two values `a`, `b` are considered equal when
/// `|a - b| <= eps * max(1, |a|, |b|)`. The exact backend ignores it.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerance {
    pub eps: f64,
}

impl Tolerance {
    pub const DEFAULT_EPS: f64 = 1e-9;

    pub fn new(eps: f64) -> Self {
        Self { eps }
    }

    /// `|x| <= eps * max(1, scale)`.
    pub fn negligible(&self, x: f64, scale: f64) -> bool {
        x.abs() <= self.eps * scale.abs().max(1.0)
    }

    pub fn close(&self, a: f64, b: f64) -> bool {
        self.negligible(a - b, a.abs().max(b.abs()))
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Self::new(Self::DEFAULT_EPS)
    }
}

pub trait Scalar:
    Clone
    + PartialEq
    + PartialOrd
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// `true` for backends whose arithmetic never rounds.
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_int(v: i64) -> Self;
    /// Panics when `den == 0`.
    fn from_ratio(num: i64, den: i64) -> Self;
    fn from_rational(q: &Rational) -> Self;
    /// Exact binary value for rationals; panics on non-finite input.
    fn from_f64(x: f64) -> Self;
    fn to_f64(&self) -> f64;
    fn abs(&self) -> Self;
    fn is_exact_zero(&self) -> bool;

    /// Square root when it is representable in the backend.
    /// For rationals this means both numerator and denominator are perfect
    /// squares; for floats any non-negative value qualifies.
    fn sqrt(&self) -> Option<Self>;

    /// Zero test relative to `scale` (see [`Tolerance`]).
    fn near_zero(&self, scale: f64, tol: Tolerance) -> bool;

    fn near(&self, other: &Self, tol: Tolerance) -> bool {
        let scale = self.to_f64().abs().max(other.to_f64().abs());
        (self.clone() - other.clone()).near_zero(scale, tol)
    }

    fn half(&self) -> Self {
        self.clone() / Self::from_int(2)
    }

    fn max_of(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }

    /// JSON form: `"num/den"` strings for rationals, numbers for floats.
    fn to_json(&self) -> Value;

    /// Parses a textual coordinate (`"3"`, `"-2/7"`, `"1.25"`, `"1e-3"`).
    fn parse(text: &str) -> Result<Self, ParseScalarError>;
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseScalarError {
    #[error("empty number")]
    Empty,
    #[error("invalid number `{0}`")]
    Invalid(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
    #[error("`{0}` is not finite")]
    NotFinite(String),
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn zero() -> Self {
        Zero::zero()
    }

    fn one() -> Self {
        One::one()
    }

    fn from_int(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Rational::new(BigInt::from(num), BigInt::from(den))
    }

    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }

    fn from_f64(x: f64) -> Self {
        Rational::from_float(x).expect("finite float")
    }

    fn to_f64(&self) -> f64 {
        rational_to_f64(self)
    }

    fn abs(&self) -> Self {
        Signed::abs(self)
    }

    fn is_exact_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn sqrt(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        let num = perfect_sqrt(self.numer())?;
        let den = perfect_sqrt(self.denom())?;
        Some(Rational::new(num, den))
    }

    fn near_zero(&self, _scale: f64, _tol: Tolerance) -> bool {
        Zero::is_zero(self)
    }

    fn near(&self, other: &Self, _tol: Tolerance) -> bool {
        self == other
    }

    fn to_json(&self) -> Value {
        Value::String(self.to_string())
    }

    fn parse(text: &str) -> Result<Self, ParseScalarError> {
        parse_rational(text)
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn zero() -> Self {
        0.0
    }

    fn one() -> Self {
        1.0
    }

    fn from_int(v: i64) -> Self {
        v as f64
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        num as f64 / den as f64
    }

    fn from_rational(q: &Rational) -> Self {
        rational_to_f64(q)
    }

    fn from_f64(x: f64) -> Self {
        x
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn abs(&self) -> Self {
        f64::abs(*self)
    }

    fn is_exact_zero(&self) -> bool {
        *self == 0.0
    }

    fn sqrt(&self) -> Option<Self> {
        // tiny negative values come from rounding of quantities that are
        // squared norms
        if *self < 0.0 {
            if *self > -1e-300 {
                return Some(0.0);
            }
            return None;
        }
        Some(f64::sqrt(*self))
    }

    fn near_zero(&self, scale: f64, tol: Tolerance) -> bool {
        tol.negligible(*self, scale)
    }

    fn to_json(&self) -> Value {
        serde_json::Number::from_f64(*self)
            .map(Value::Number)
            .unwrap_or(Value::Null)
    }

    fn parse(text: &str) -> Result<Self, ParseScalarError> {
        let q = parse_rational(text)?;
        let v = rational_to_f64(&q);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(ParseScalarError::NotFinite(text.to_string()))
        }
    }
}

fn perfect_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.sign() == Sign::Minus {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// Correctly scaled conversion that does not overflow for huge numerators
/// and denominators.
pub fn rational_to_f64(q: &Rational) -> f64 {
    if let (Some(n), Some(d)) = (q.numer().to_f64(), q.denom().to_f64()) {
        if n.is_finite() && d.is_finite() {
            return n / d;
        }
    }
    // shift both to ~60 significant bits
    let nb = q.numer().bits() as i64;
    let db = q.denom().bits() as i64;
    let shift_n = (nb - 60).max(0);
    let shift_d = (db - 60).max(0);
    let n = (q.numer() >> shift_n as usize).to_f64().unwrap_or(0.0);
    let d = (q.denom() >> shift_d as usize).to_f64().unwrap_or(1.0);
    (n / d) * 2f64.powi((shift_n - shift_d) as i32)
}

/// Parses `"a"`, `"a/b"`, or a decimal with optional exponent into an exact
/// rational. Decimal text is read digit by digit, so `"0.1"` is exactly
/// `1/10`.
pub fn parse_rational(text: &str) -> Result<Rational, ParseScalarError> {
    let s = text.trim();
    if s.is_empty() {
        return Err(ParseScalarError::Empty);
    }
    if let Some((num, den)) = s.split_once('/') {
        let num = parse_decimal(num.trim()).ok_or_else(|| invalid(s))?;
        let den = parse_decimal(den.trim()).ok_or_else(|| invalid(s))?;
        if Zero::is_zero(&den) {
            return Err(ParseScalarError::ZeroDenominator(s.to_string()));
        }
        return Ok(num / den);
    }
    parse_decimal(s).ok_or_else(|| invalid(s))
}

fn invalid(s: &str) -> ParseScalarError {
    ParseScalarError::Invalid(s.to_string())
}

fn parse_decimal(s: &str) -> Option<Rational> {
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.as_bytes().first()? {
        b'-' => (true, &mantissa[1..]),
        b'+' => (false, &mantissa[1..]),
        _ => (false, mantissa),
    };
    let (int_part, frac_part) = match digits.split_once('.') {
        Some((i, f)) => (i, f),
        None => (digits, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.bytes().chain(frac_part.bytes()).all(|b| b.is_ascii_digit()) {
        return None;
    }
    let all_digits = format!("{int_part}{frac_part}");
    let mut value = Rational::from_integer(BigInt::from_str(&all_digits).ok()?);
    let scale = exponent - frac_part.len() as i32;
    let ten = Rational::from_integer(BigInt::from(10));
    if scale >= 0 {
        value *= num_traits::pow(ten, scale as usize);
    } else {
        value /= num_traits::pow(ten, (-scale) as usize);
    }
    Some(if negative { -value } else { value })
}

/// Best rational approximation of `x` with denominator at most `max_den`,
/// from the continued-fraction convergents and the final semiconvergent.
pub fn snap_to_rational(x: f64, max_den: u64) -> Rational {
    assert!(x.is_finite(), "cannot snap a non-finite value");
    let max_den = max_den.max(1) as i128;
    let negative = x < 0.0;
    let exact = Rational::from_float(x.abs()).expect("finite");

    // convergents h/k of the exact binary value
    let (mut h_prev, mut h) = (BigInt::from(0), BigInt::from(1));
    let (mut k_prev, mut k) = (BigInt::from(1), BigInt::from(0));
    let mut rem = exact.clone();
    let bound = BigInt::from(max_den);
    loop {
        let a = rem.floor().to_integer();
        let h_next = &a * &h + &h_prev;
        let k_next = &a * &k + &k_prev;
        if k_next > bound {
            // largest semiconvergent still within the bound
            let t = (&bound - &k_prev) / &k;
            let semi_h = &t * &h + &h_prev;
            let semi_k = &t * &k + &k_prev;
            let best = Rational::new(h.clone(), k.clone());
            if semi_k > BigInt::from(0) {
                let semi = Rational::new(semi_h, semi_k);
                if Signed::abs(&(semi.clone() - &exact)) < Signed::abs(&(best.clone() - &exact)) {
                    return if negative { -semi } else { semi };
                }
            }
            return if negative { -best } else { best };
        }
        h_prev = std::mem::replace(&mut h, h_next);
        k_prev = std::mem::replace(&mut k, k_next);
        let frac = rem.clone() - Rational::from_integer(a);
        if Zero::is_zero(&frac) {
            let q = Rational::new(h, k);
            return if negative { -q } else { q };
        }
        rem = frac.recip();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    #[test]
    fn parses_fractions_and_decimals_exactly() {
        assert_eq!(parse_rational("3").unwrap(), q(3, 1));
        assert_eq!(parse_rational("-2/7").unwrap(), q(-2, 7));
        assert_eq!(parse_rational("0.1").unwrap(), q(1, 10));
        assert_eq!(parse_rational("-1.25e2").unwrap(), q(-125, 1));
        assert_eq!(parse_rational("5e-3").unwrap(), q(1, 200));
        assert_eq!(parse_rational(".5").unwrap(), q(1, 2));
        assert_eq!(parse_rational("1.5/0.5").unwrap(), q(3, 1));
    }

    #[test]
    fn rejects_bad_numbers() {
        assert_eq!(parse_rational(""), Err(ParseScalarError::Empty));
        assert!(matches!(
            parse_rational("1/0"),
            Err(ParseScalarError::ZeroDenominator(_))
        ));
        assert!(matches!(parse_rational("abc"), Err(ParseScalarError::Invalid(_))));
        assert!(matches!(parse_rational("1..2"), Err(ParseScalarError::Invalid(_))));
        assert!(matches!(parse_rational("-"), Err(ParseScalarError::Invalid(_))));
    }

    #[test]
    fn exact_sqrt_only_for_perfect_squares() {
        assert_eq!(Scalar::sqrt(&q(9, 4)), Some(q(3, 2)));
        assert_eq!(Scalar::sqrt(&q(2, 1)), None);
        assert_eq!(Scalar::sqrt(&q(-4, 1)), None);
        assert_eq!(Scalar::sqrt(&9.0f64), Some(3.0));
    }

    #[test]
    fn float_tolerance_is_relative() {
        let tol = Tolerance::default();
        assert!(1e12f64.near(&(1e12 + 1.0), tol));
        assert!(!1.0f64.near(&1.001, tol));
        assert!(1e-12f64.near_zero(1.0, tol));
        assert!(!1e-3f64.near_zero(1.0, tol));
    }

    #[test]
    fn snapping_recovers_small_fractions() {
        assert_eq!(snap_to_rational(1.0 / 3.0, 1_000_000), q(1, 3));
        assert_eq!(snap_to_rational(-22.0 / 7.0, 1_000_000), q(-22, 7));
        assert_eq!(snap_to_rational(0.0, 1_000_000), q(0, 1));
        assert_eq!(snap_to_rational(2.5, 1_000_000), q(5, 2));
        let pi = snap_to_rational(std::f64::consts::PI, 1000);
        assert_eq!(pi, q(355, 113));
    }

    #[test]
    fn huge_rationals_convert_without_overflow() {
        let big = Rational::new(
            BigInt::from(3) * num_traits::pow(BigInt::from(10), 400),
            num_traits::pow(BigInt::from(10), 400),
        );
        assert!((rational_to_f64(&big) - 3.0).abs() < 1e-12);
    }
}
