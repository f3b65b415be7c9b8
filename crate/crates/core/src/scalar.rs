//! Scalars shared by the exact (rational) and floating-point evaluation paths.
//!
//! Every region formula in this crate is written once over [`Scalar`], so the
//! same vertex list or inequality system can be evaluated either in `f64` or
//! exactly in [`BigRational`].

use std::fmt::Debug;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_integer::Integer;
use num_traits::{FromPrimitive, Num, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub trait Scalar:
    Clone + Debug + PartialOrd + Num + Signed + FromPrimitive + ToPrimitive + Send + Sync
{
    fn int(n: i64) -> Self {
        Self::from_i64(n).expect("integer is representable")
    }

    /// `n / m` in this scalar type.
    fn ratio(n: i64, m: i64) -> Self {
        Self::int(n) / Self::int(m)
    }

    fn from_rational(r: &BigRational) -> Self;

    fn to_f64_lossy(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    /// True when arithmetic is exact, so "boundary" means exact equality.
    const EXACT: bool;

    /// A positive factor that brings a coefficient vector to a canonical
    /// scale: coprime integers for rationals, unit max-norm for floats.
    fn canonical_factor(v: &[Self]) -> Self;

    /// Sign with a scale-relative zero band in floating point; exact otherwise.
    fn sign_rel(&self, scale: f64) -> i8;
}

const FLOAT_ZERO_REL: f64 = 1e-12;

impl Scalar for f64 {
    fn from_rational(r: &BigRational) -> Self {
        rational_to_f64(r)
    }

    const EXACT: bool = false;

    fn canonical_factor(v: &[Self]) -> Self {
        let m = v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        if m > 0.0 {
            1.0 / m
        } else {
            1.0
        }
    }

    fn sign_rel(&self, scale: f64) -> i8 {
        if self.abs() <= FLOAT_ZERO_REL * scale.max(1.0) {
            0
        } else if *self > 0.0 {
            1
        } else {
            -1
        }
    }
}

impl Scalar for BigRational {
    fn from_rational(r: &BigRational) -> Self {
        r.clone()
    }

    const EXACT: bool = true;

    fn canonical_factor(v: &[Self]) -> Self {
        let mut lcm = BigInt::one();
        let mut gcd = BigInt::zero();
        for x in v {
            lcm = lcm.lcm(x.denom());
            gcd = gcd.gcd(x.numer());
        }
        if gcd.is_zero() {
            return BigRational::one();
        }
        BigRational::new(lcm, gcd.abs())
    }

    fn sign_rel(&self, _scale: f64) -> i8 {
        if self.is_zero() {
            0
        } else if self.is_positive() {
            1
        } else {
            -1
        }
    }
}

/// Converts a rational to the nearest double without overflowing on large
/// numerators and denominators.
pub fn rational_to_f64(r: &BigRational) -> f64 {
    if let (Some(n), Some(d)) = (r.numer().to_f64(), r.denom().to_f64()) {
        if n.is_finite() && d.is_finite() && d != 0.0 {
            return n / d;
        }
    }
    r.to_f64().unwrap_or(f64::NAN)
}

pub fn rational_to_string(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `"n/m"`, an integer, or a decimal such as `"-0.125"` or `"1e-3"`
/// into an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse(s.to_string()));
    }
    if s.contains('/') {
        let r = BigRational::from_str(s).map_err(|_| Error::Parse(s.to_string()))?;
        return Ok(r);
    }
    parse_decimal(s).ok_or_else(|| Error::Parse(s.to_string()))
}

fn parse_decimal(s: &str) -> Option<BigRational> {
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = match digits.split_once('.') {
        Some((i, f)) => (i, f),
        None => (digits, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let all_digits = format!("{int_part}{frac_part}");
    let numer = BigInt::from_str(&all_digits).ok()?;
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10u8);
    let mut r = BigRational::from_integer(numer);
    if scale >= 0 {
        r *= BigRational::from_integer(num_traits::pow(ten, scale as usize));
    } else {
        r /= BigRational::from_integer(num_traits::pow(ten, (-scale) as usize));
    }
    if negative {
        r = -r;
    }
    Some(r)
}

/// Parses a number for the floating-point path; accepts the same syntax as
/// [`parse_rational`] and rejects non-finite values.
pub fn parse_f64(s: &str) -> Result<f64> {
    let t = s.trim();
    let v = if t.contains('/') {
        rational_to_f64(&parse_rational(t)?)
    } else {
        t.parse::<f64>().map_err(|_| Error::Parse(s.to_string()))?
    };
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::NonFinite(s.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, m: i64) -> BigRational {
        BigRational::new(n.into(), m.into())
    }

    #[test]
    fn parses_fractions_and_decimals_exactly() {
        assert_eq!(parse_rational("-1/11").unwrap(), q(-1, 11));
        assert_eq!(parse_rational("0.4").unwrap(), q(2, 5));
        assert_eq!(parse_rational("-0.125").unwrap(), q(-1, 8));
        assert_eq!(parse_rational("3").unwrap(), q(3, 1));
        assert_eq!(parse_rational("1e-3").unwrap(), q(1, 1000));
        assert_eq!(parse_rational("2.5E2").unwrap(), q(250, 1));
        assert_eq!(parse_rational(".5").unwrap(), q(1, 2));
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("").is_err());
        assert!(parse_rational("1/0x").is_err());
        assert!(parse_f64("inf").is_err());
        assert!(parse_f64("NaN").is_err());
    }

    #[test]
    fn float_parse_accepts_fractions() {
        assert!((parse_f64("-1/11").unwrap() + 1.0 / 11.0).abs() < 1e-16);
        assert_eq!(parse_f64("0.25").unwrap(), 0.25);
    }

    #[test]
    fn canonical_factor_makes_coprime_integers() {
        let v = [q(2, 3), q(-4, 9), q(0, 1)];
        let f = BigRational::canonical_factor(&v);
        let scaled: Vec<_> = v.iter().map(|x| x * &f).collect();
        assert_eq!(scaled, vec![q(3, 1), q(-2, 1), q(0, 1)]);
        assert_eq!(f64::canonical_factor(&[0.5, -2.0]), 0.5);
    }

    #[test]
    fn rational_display() {
        assert_eq!(rational_to_string(&q(-2, 18)), "-1/9");
        assert_eq!(rational_to_string(&q(4, 2)), "2");
    }
}
