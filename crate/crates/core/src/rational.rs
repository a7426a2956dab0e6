//! Exact rational helpers shared by every module.

use num::{BigInt, BigRational, One, Signed, Zero};
use std::str::FromStr;

use crate::error::{Error, Result};

/// Parses `"p/q"`, an integer, or a positional decimal such as `"-0.25"`
/// into an exact rational. Decimals are never routed through `f64`.
pub fn parse_rational(input: &str) -> Result<BigRational> {
    let s = input.trim();
    let err = || Error::InvalidRational(input.to_string());
    if s.is_empty() {
        return Err(err());
    }
    if let Some((num, den)) = s.split_once('/') {
        let num = parse_int(num.trim()).ok_or_else(err)?;
        let den = parse_int(den.trim()).ok_or_else(err)?;
        if den.is_zero() {
            return Err(err());
        }
        return Ok(BigRational::new(num, den));
    }
    if let Some((int_part, frac_part)) = s.split_once('.') {
        let (negative, int_digits) = match int_part.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, int_part.strip_prefix('+').unwrap_or(int_part)),
        };
        let all_digits = |t: &str| t.bytes().all(|b| b.is_ascii_digit());
        if !all_digits(int_digits) || !all_digits(frac_part) {
            return Err(err());
        }
        if int_digits.is_empty() && frac_part.is_empty() {
            return Err(err());
        }
        let digits = format!("{int_digits}{frac_part}");
        let mantissa = if digits.is_empty() {
            BigInt::zero()
        } else {
            BigInt::from_str(&digits).map_err(|_| err())?
        };
        let scale = num::pow(BigInt::from(10u32), frac_part.len());
        let value = BigRational::new(mantissa, scale);
        return Ok(if negative { -value } else { value });
    }
    parse_int(s).map(BigRational::from_integer).ok_or_else(err)
}

fn parse_int(s: &str) -> Option<BigInt> {
    let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    BigInt::from_str(s.strip_prefix('+').unwrap_or(s)).ok()
}

/// `p / q` as a rational.
pub fn ratio(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

pub fn int(p: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(p))
}

/// Largest integer not above `r`, saturated into `[lo, hi]`.
pub(crate) fn floor_clamped(r: &BigRational, lo: i64, hi: i64) -> i64 {
    let f = r.floor().to_integer();
    if f < BigInt::from(lo) {
        lo
    } else if f > BigInt::from(hi) {
        hi
    } else {
        i64::try_from(f).expect("value within clamp range")
    }
}

/// Lossy conversion for plotting and continuum work.
pub fn to_f64(r: &BigRational) -> f64 {
    use num::ToPrimitive;
    r.to_f64().unwrap_or_else(|| {
        if r.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

pub(crate) fn is_integral(r: &BigRational) -> bool {
    r.denom().is_one()
}
