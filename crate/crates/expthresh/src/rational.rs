//! Helpers for exact rational values: construction, parsing, formatting,
//! and the small amount of integer combinatorics the crate needs.

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational from an integer numerator and denominator.
///
/// Panics if `den == 0`; intended for literals in code, not user input.
pub fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Exact rational from an integer.
pub fn rat_int(num: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(num))
}

/// The constant 1/2, the cheapness cutoff used throughout.
pub fn one_half() -> BigRational {
    rat(1, 2)
}

/// Binomial coefficient `C(n, k)` as an exact integer.
pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Parses an exact rational from `a/b`, integer, or finite-decimal text.
///
/// Accepted forms: `3/4`, `-3/4`, `7`, `-7`, `0.25`, `-1.5`. Decimals are
/// converted exactly (no floating point). Surrounding whitespace is fine.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let s = text.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty rational".into()));
    }
    let bad = |why: &str| Error::Parse(format!("invalid rational {s:?}: {why}"));

    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num
            .trim()
            .parse()
            .map_err(|_| bad("numerator is not an integer"))?;
        let d: BigInt = den
            .trim()
            .parse()
            .map_err(|_| bad("denominator is not an integer"))?;
        if d.is_zero() {
            return Err(bad("denominator is zero"));
        }
        return Ok(BigRational::new(n, d));
    }

    if let Some((int_part, frac_part)) = s.split_once('.') {
        if frac_part.is_empty() || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad("fractional digits expected after the point"));
        }
        let (sign, int_digits) = match int_part.as_bytes().first() {
            Some(b'-') => (-1, &int_part[1..]),
            Some(b'+') => (1, &int_part[1..]),
            _ => (1, int_part),
        };
        if !int_digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad("integer digits expected before the point"));
        }
        let digits = format!("{int_digits}{frac_part}");
        let n: BigInt = digits.parse().map_err(|_| bad("not a number"))?;
        let d = BigInt::from(10u32).pow(frac_part.len() as u32);
        return Ok(BigRational::new(BigInt::from(sign) * n, d));
    }

    let n: BigInt = s.parse().map_err(|_| bad("not a number"))?;
    Ok(BigRational::from_integer(n))
}

/// Canonical `num/den` text with a positive denominator; used in files.
pub fn format_rational(value: &BigRational) -> String {
    format!("{}/{}", value.numer(), value.denom())
}

/// Human-oriented exact text: `a/b`, or just `a` for integers.
pub fn display_rational(value: &BigRational) -> String {
    if value.is_integer() {
        value.numer().to_string()
    } else {
        format_rational(value)
    }
}

/// Rounded decimal rendering with `sig` significant digits.
///
/// This is the only deliberately inexact rendering in the crate; callers
/// must mark it as approximate when showing it next to exact values.
pub fn decimal_approx(value: &BigRational, sig: usize) -> String {
    let sig = sig.max(1);
    if value.is_zero() {
        return "0".to_string();
    }
    let negative = value.is_negative();
    let magnitude = value.abs();

    // Decimal exponent e with 10^e <= magnitude < 10^(e+1), found from
    // digit counts and corrected by at most one comparison step.
    let digits_n = magnitude.numer().to_string().len() as i64;
    let digits_d = magnitude.denom().to_string().len() as i64;
    let mut e = digits_n - digits_d;
    let pow10 = |k: i64| -> BigRational {
        let p = BigInt::from(10u32).pow(k.unsigned_abs() as u32);
        if k >= 0 {
            BigRational::from_integer(p)
        } else {
            BigRational::new(BigInt::one(), p)
        }
    };
    while magnitude < pow10(e) {
        e -= 1;
    }
    while magnitude >= pow10(e + 1) {
        e += 1;
    }

    // Round magnitude * 10^(sig-1-e) to the nearest integer: sig digits.
    let scaled = &magnitude * pow10(sig as i64 - 1 - e);
    let mut digits = (scaled.round()).to_integer().to_string();
    if digits.len() > sig {
        digits.truncate(sig);
        e += 1;
    }

    let body = if e >= sig as i64 && e <= sig as i64 + 2 {
        // Small headroom above sig digits: pad with zeros, no point needed.
        format!("{digits}{}", "0".repeat((e + 1 - sig as i64) as usize))
    } else if e >= 0 && e < sig as i64 {
        let split = (e + 1) as usize;
        let (int_part, frac_part) = digits.split_at(split);
        let frac_part = frac_part.trim_end_matches('0');
        if frac_part.is_empty() {
            int_part.to_string()
        } else {
            format!("{int_part}.{frac_part}")
        }
    } else if e < 0 && e >= -4 {
        let frac = format!("{}{}", "0".repeat((-e - 1) as usize), digits);
        format!("0.{}", frac.trim_end_matches('0'))
    } else {
        let (head, tail) = digits.split_at(1);
        let tail = tail.trim_end_matches('0');
        if tail.is_empty() {
            format!("{head}e{e}")
        } else {
            format!("{head}.{tail}e{e}")
        }
    };
    if negative {
        format!("-{body}")
    } else {
        body
    }
}

/// True if `value` has a power-of-two denominator (after reduction).
pub fn is_dyadic(value: &BigRational) -> bool {
    let den = value.denom();
    match den.sign() {
        Sign::Plus => {
            let (_, bytes) = den.to_u32_digits();
            bytes.iter().take(bytes.len().saturating_sub(1)).all(|w| *w == 0)
                && bytes.last().is_some_and(|w| w.is_power_of_two())
        }
        _ => false,
    }
}

/// Converts to `f64` for display ordering only; never used in computation.
pub fn to_f64_lossy(value: &BigRational) -> f64 {
    value.to_f64().unwrap_or(f64::NAN)
}
