//! Helpers for exact rationals: parsing user input and rendering decimals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{HatError, Result};

/// Parses `a/b` or a decimal literal (`0.9`, `.55`, `1e-1` is not accepted) into an exact rational.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let s = text.trim();
    let bad = || HatError::ProbabilitySyntax(text.to_string());
    if let Some((num, den)) = s.split_once('/') {
        let num: BigInt = num.trim().parse().map_err(|_| bad())?;
        let den: BigInt = den.trim().parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(num, den));
    }
    let (negative, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part
        .chars()
        .chain(frac_part.chars())
        .all(|c| c.is_ascii_digit())
    {
        return Err(bad());
    }
    let digits = format!("{int_part}{frac_part}");
    let num: BigInt = if digits.is_empty() {
        BigInt::zero()
    } else {
        digits.parse().map_err(|_| bad())?
    };
    let den = num_traits::pow(BigInt::from(10u32), frac_part.len());
    let value = BigRational::new(num, den);
    Ok(if negative { -value } else { value })
}

/// Renders `value` with at most `sig` significant digits, rounding half to even,
/// without exponent and with trailing zeros removed.
pub fn to_decimal(value: &BigRational, sig: usize) -> String {
    if value.is_zero() {
        return "0".to_string();
    }
    let negative = value.is_negative();
    let v = value.abs();
    // Find e with 10^e <= v < 10^(e+1).
    let ten = BigRational::from_integer(BigInt::from(10u32));
    let mut e: i64 = 0;
    let mut scaled = v.clone();
    while scaled >= ten {
        scaled /= &ten;
        e += 1;
    }
    while scaled < BigRational::one() {
        scaled *= &ten;
        e -= 1;
    }
    // Number of fractional digits to keep.
    let frac_digits = sig as i64 - 1 - e;
    let shifted = if frac_digits >= 0 {
        &v * BigRational::from_integer(num_traits::pow(BigInt::from(10u32), frac_digits as usize))
    } else {
        &v / BigRational::from_integer(num_traits::pow(
            BigInt::from(10u32),
            (-frac_digits) as usize,
        ))
    };
    let rounded = round_half_even(&shifted);
    let mut digits = rounded.to_string();
    let out = if frac_digits > 0 {
        let fd = frac_digits as usize;
        if digits.len() <= fd {
            digits = format!("{}{}", "0".repeat(fd + 1 - digits.len()), digits);
        }
        let split = digits.len() - fd;
        let (ip, fp) = digits.split_at(split);
        let fp = fp.trim_end_matches('0');
        if fp.is_empty() {
            ip.to_string()
        } else {
            format!("{ip}.{fp}")
        }
    } else {
        format!("{digits}{}", "0".repeat((-frac_digits) as usize))
    };
    if negative {
        format!("-{out}")
    } else {
        out
    }
}

/// Rounds a nonnegative rational to the nearest integer, ties to even.
pub fn round_half_even(v: &BigRational) -> BigInt {
    let (q, r) = v.numer().div_rem(v.denom());
    let twice = &r * 2u32;
    match twice.cmp(v.denom()) {
        std::cmp::Ordering::Less => q,
        std::cmp::Ordering::Greater => q + 1u32,
        std::cmp::Ordering::Equal => {
            if q.is_even() {
                q
            } else {
                q + 1u32
            }
        }
    }
}

/// `num/den` rendering (integers render as `num/1`).
pub fn to_fraction(value: &BigRational) -> String {
    format!("{}/{}", value.numer(), value.denom())
}

/// Lossy conversion used only for display and plotting data.
pub fn to_f64(value: &BigRational) -> f64 {
    to_decimal(value, 17).parse().unwrap_or(f64::NAN)
}

pub(crate) mod serde_rational {
    use num_rational::BigRational;
    use serde::Serializer;

    pub fn serialize<S: Serializer>(value: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&super::to_fraction(value))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn parses_decimal_and_fraction() {
        assert_eq!(parse_rational("0.9").unwrap(), r(9, 10));
        assert_eq!(parse_rational(".55").unwrap(), r(11, 20));
        assert_eq!(parse_rational("11/20").unwrap(), r(11, 20));
        assert_eq!(parse_rational(" 1 ").unwrap(), r(1, 1));
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational(".").is_err());
        assert!(parse_rational("1e-3").is_err());
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(to_decimal(&r(9, 100), 12), "0.09");
        assert_eq!(to_decimal(&r(25, 32), 12), "0.78125");
        assert_eq!(to_decimal(&r(1, 3), 12), "0.333333333333");
        assert_eq!(to_decimal(&r(2, 3), 12), "0.666666666667");
        assert_eq!(to_decimal(&r(1, 1), 12), "1");
        assert_eq!(to_decimal(&r(0, 1), 12), "0");
        assert_eq!(to_decimal(&r(1234567, 1), 2), "1200000");
        assert_eq!(to_decimal(&r(-1, 8), 12), "-0.125");
        // ties to even
        assert_eq!(to_decimal(&r(125, 1000), 2), "0.12");
        assert_eq!(to_decimal(&r(135, 1000), 2), "0.14");
    }
}
