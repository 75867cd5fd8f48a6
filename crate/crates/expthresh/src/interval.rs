//! Directed rational enclosures for the transcendental quantities used
//! by the bound checker: binary logarithms, decaying exponentials, and
//! real powers with fractional exponents.
//!
//! Nothing here touches floating point. Every function returns an
//! [`Enclosure`] whose endpoints are exact rationals proven to bracket
//! the true value: logarithms by binary digit extraction with interval
//! squaring, exponentials by alternating-series partial sums, and powers
//! by square-and-multiply ladders with outward dyadic rounding at every
//! step.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::enclosure::Enclosure;
use crate::error::{Error, Result};
use crate::rational::{one_half, rat, rat_int};

/// Guard precision (bits) carried beyond the requested width.
const GUARD_BITS: u32 = 32;

/// Retry ceiling for digit extraction when an interval straddles a
/// decision boundary.
const PRECISION_RETRIES: u32 = 8;

fn validate_width(width: &BigRational) -> Result<()> {
    if !width.is_positive() {
        return Err(Error::OutOfRange {
            name: "width",
            value: width.to_string(),
            range: "(0, inf)",
        });
    }
    Ok(())
}

/// Bits needed so that 2^-bits is at most `width`.
fn bits_for_width(width: &BigRational) -> u32 {
    let mut bits = 1u32;
    let mut step = one_half();
    while step > *width && bits < 1 << 20 {
        step /= rat_int(2);
        bits += 1;
    }
    bits
}

fn pow2(bits: u32) -> BigInt {
    BigInt::one() << bits
}

/// Largest dyadic with denominator 2^bits not above x.
fn round_down(x: &BigRational, bits: u32) -> BigRational {
    let scaled = x * BigRational::from_integer(pow2(bits));
    BigRational::new(scaled.floor().to_integer(), pow2(bits))
}

/// Smallest dyadic with denominator 2^bits not below x.
fn round_up(x: &BigRational, bits: u32) -> BigRational {
    let scaled = x * BigRational::from_integer(pow2(bits));
    BigRational::new(scaled.ceil().to_integer(), pow2(bits))
}

/// Encloses log2(l) for an integer l >= 1 within `width`.
///
/// Powers of two collapse to exact points. Otherwise the fractional part
/// is extracted digit by digit: squaring an interval around the mantissa
/// decides each binary digit, with outward rounding kept tight enough to
/// avoid stalls (precision doubles on the rare straddle).
pub fn log2_enclosure(l: u64, width: &BigRational) -> Result<Enclosure> {
    validate_width(width)?;
    if l == 0 {
        return Err(Error::OutOfRange {
            name: "l",
            value: "0".into(),
            range: "[1, inf)",
        });
    }
    if l.is_power_of_two() {
        return Ok(Enclosure::point(rat_int(l.trailing_zeros() as i64)));
    }
    let digits = bits_for_width(width) + 1;
    let whole = 63 - l.leading_zeros(); // floor(log2 l), l not a power of 2
    let mantissa = rat(l as i64, 1) / BigRational::from_integer(pow2(whole)); // in (1, 2)
    let mut precision = digits + GUARD_BITS;
    'retry: for _ in 0..PRECISION_RETRIES {
        let mut lo = round_down(&mantissa, precision);
        let mut hi = round_up(&mantissa, precision);
        let mut frac_lo = BigRational::zero();
        let mut frac_hi = BigRational::zero();
        let two = rat_int(2);
        for digit in 1..=digits {
            lo = round_down(&(&lo * &lo), precision);
            hi = round_up(&(&hi * &hi), precision);
            let place = BigRational::new(BigInt::one(), pow2(digit));
            if lo >= two {
                frac_lo += &place;
                frac_hi += &place;
                lo /= &two;
                hi /= &two;
            } else if hi < two {
                // digit 0: nothing to add
            } else {
                precision *= 2;
                continue 'retry;
            }
        }
        // After `digits` extracted digits the remaining fractional part
        // lies in [0, 2^-digits).
        let whole = rat_int(whole as i64);
        let tail = BigRational::new(BigInt::one(), pow2(digits));
        return Ok(Enclosure::new(&whole + frac_lo, whole + frac_hi + tail));
    }
    Err(Error::Internal(
        "binary log digit extraction failed to converge".into(),
    ))
}

/// Encloses e^-x for rational x >= 0 within `width`.
///
/// Uses the alternating series for e^-x: once terms decrease, two
/// consecutive partial sums bracket the value.
pub fn exp_neg_enclosure(x: &BigRational, width: &BigRational) -> Result<Enclosure> {
    validate_width(width)?;
    if x.is_negative() {
        return Err(Error::OutOfRange {
            name: "x",
            value: x.to_string(),
            range: "[0, inf)",
        });
    }
    if x.is_zero() {
        return Ok(Enclosure::point(BigRational::one()));
    }
    let mut partial = BigRational::one();
    let mut term = BigRational::one();
    let mut n: u64 = 0;
    loop {
        n += 1;
        term = term * x / rat_int(n as i64);
        if n % 2 == 1 {
            partial -= &term;
        } else {
            partial += &term;
        }
        // Terms decrease once n exceeds x; from there consecutive
        // partial sums bracket the limit.
        if rat_int(n as i64) > *x && term < *width {
            break;
        }
        if n > 10_000 {
            return Err(Error::Internal(
                "exponential series failed to converge".into(),
            ));
        }
    }
    let (lo, hi) = if n % 2 == 1 {
        (partial.clone(), partial + term)
    } else {
        (partial.clone() - term, partial)
    };
    let lo = if lo.is_negative() { BigRational::zero() } else { lo };
    Ok(Enclosure::new(lo, hi))
}

/// Encloses the positive solution of y^n = target for target in (0, 1]
/// within `width`; hits exact rational roots as points.
pub fn root_enclosure(target: &BigRational, n: u64, width: &BigRational) -> Result<Enclosure> {
    validate_width(width)?;
    if n == 0 {
        return Err(Error::OutOfRange {
            name: "n",
            value: "0".into(),
            range: "[1, inf)",
        });
    }
    if !target.is_positive() || *target > BigRational::one() {
        return Err(Error::OutOfRange {
            name: "target",
            value: target.to_string(),
            range: "(0, 1]",
        });
    }
    if n == 1 || target.is_one() {
        return Ok(Enclosure::point(target.clone()));
    }
    let two = rat_int(2);
    let mut lo = BigRational::zero();
    let mut hi = BigRational::one();
    while &hi - &lo > *width {
        let mid = (&lo + &hi) / &two;
        let p = mid.pow(n.min(i32::MAX as u64) as i32);
        match p.cmp(target) {
            std::cmp::Ordering::Equal => return Ok(Enclosure::point(mid)),
            std::cmp::Ordering::Less => lo = mid,
            std::cmp::Ordering::Greater => hi = mid,
        }
    }
    Ok(Enclosure::new(lo, hi))
}

/// Encloses base^exponent for base in [0, 1] and exponent > 0 within
/// roughly `width` plus the inherited spread of the inputs.
///
/// Such powers are increasing in the base and decreasing in the
/// exponent, so the enclosure pairs the low base with the high exponent
/// and vice versa. Fractional exponents u/2^j are evaluated as the
/// 2^j-th root of the u-th power, with all ladder steps rounded outward.
pub fn pow_enclosure(
    base: &Enclosure,
    exponent: &Enclosure,
    width: &BigRational,
) -> Result<Enclosure> {
    validate_width(width)?;
    if base.lo().is_negative() || *base.hi() > BigRational::one() {
        return Err(Error::OutOfRange {
            name: "base",
            value: format!("{:?}", base),
            range: "[0, 1]",
        });
    }
    if !exponent.lo().is_positive() {
        return Err(Error::OutOfRange {
            name: "exponent",
            value: format!("{:?}", exponent),
            range: "(0, inf)",
        });
    }
    let bits = bits_for_width(width) + GUARD_BITS;
    let lo = directed_pow(base.lo(), exponent.hi(), bits, false)?;
    let hi = directed_pow(base.hi(), exponent.lo(), bits, true)?;
    // Outward rounding can let a degenerate product cross; hull fixes
    // only the representation, the bounds stay valid.
    Ok(Enclosure::new(lo.clone(), hi.clone().max(lo)))
}

/// Positive value as mantissa * 2^shift with a fixed mantissa width, so
/// power ladders never underflow the representable range.
#[derive(Clone)]
struct Scaled {
    mantissa: BigInt,
    shift: i64,
    bits: u32,
}

impl Scaled {
    /// Directed conversion: the result is <= x (down) or >= x (up).
    fn from_rational(x: &BigRational, bits: u32, upper: bool) -> Scaled {
        debug_assert!(x.is_positive());
        // Find shift so that x * 2^-shift lands in [2^(bits-1), 2^bits).
        let num_bits = x.numer().bits() as i64;
        let den_bits = x.denom().bits() as i64;
        let shift = num_bits - den_bits - bits as i64;
        let (num, den) = if shift <= 0 {
            (shifted(x.numer(), -shift), x.denom().clone())
        } else {
            (x.numer().clone(), shifted(x.denom(), shift))
        };
        let mantissa = Self::div_directed(num, den, upper);
        Scaled {
            mantissa,
            shift,
            bits,
        }
        .normalized(upper)
    }

    fn div_directed(num: BigInt, den: BigInt, upper: bool) -> BigInt {
        let (q, r) = num.div_rem(&den);
        if upper && !r.is_zero() {
            q + 1
        } else {
            q
        }
    }

    /// Restores the mantissa into [2^(bits-1), 2^bits).
    fn normalized(mut self, upper: bool) -> Scaled {
        let lo = BigInt::one() << (self.bits - 1);
        let hi = BigInt::one() << self.bits;
        while self.mantissa >= hi {
            let rounded_up = upper && self.mantissa.is_odd();
            self.mantissa >>= 1;
            if rounded_up {
                self.mantissa += 1;
            }
            self.shift += 1;
        }
        while self.mantissa < lo {
            self.mantissa <<= 1;
            self.shift -= 1;
        }
        self
    }

    fn mul(&self, other: &Scaled, upper: bool) -> Scaled {
        let wide = &self.mantissa * &other.mantissa;
        let mantissa = Self::div_directed(wide, BigInt::one() << self.bits, upper);
        Scaled {
            mantissa,
            shift: self.shift + other.shift + self.bits as i64,
            bits: self.bits,
        }
        .normalized(upper)
    }

    /// Directed square root via integer square roots on the mantissa.
    fn sqrt(&self, upper: bool) -> Scaled {
        // Align to an even shift and widen the mantissa so the root
        // keeps full precision.
        let pad = if self.shift.rem_euclid(2) == 0 {
            self.bits
        } else {
            self.bits + 1
        };
        let wide = &self.mantissa << pad;
        let shift = (self.shift - pad as i64) / 2;
        let root = wide.sqrt();
        let mantissa = if upper && &root * &root != wide {
            root + 1
        } else {
            root
        };
        Scaled {
            mantissa,
            shift,
            bits: self.bits,
        }
        .normalized(upper)
    }

    fn pow(&self, exp: u64, upper: bool) -> Scaled {
        let mut result: Option<Scaled> = None;
        let mut factor = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = Some(match result {
                    None => factor.clone(),
                    Some(r) => r.mul(&factor, upper),
                });
            }
            e >>= 1;
            if e > 0 {
                factor = factor.mul(&factor, upper);
            }
        }
        result.expect("pow called with zero exponent")
    }

    fn to_rational(&self) -> BigRational {
        let base = BigRational::from_integer(self.mantissa.clone());
        if self.shift >= 0 {
            base * BigRational::from_integer(shifted(&BigInt::one(), self.shift))
        } else {
            base / BigRational::from_integer(shifted(&BigInt::one(), -self.shift))
        }
    }
}

fn shifted(x: &BigInt, by: i64) -> BigInt {
    debug_assert!(by >= 0);
    x << (by as u64)
}

/// Directed bound on base^exponent, base in [0,1], exponent > 0
/// rational.
///
/// The exponent is rounded outward to a dyadic u/2^j (down when an upper
/// bound is wanted on a base below one, up otherwise), reduced to odd u,
/// then base^(u/2^j) = sqrt applied j times to base^u, all in directed
/// floating arithmetic.
fn directed_pow(
    base: &BigRational,
    exponent: &BigRational,
    bits: u32,
    upper: bool,
) -> Result<BigRational> {
    debug_assert!(!base.is_negative() && *base <= BigRational::one());
    if base.is_zero() {
        return Ok(BigRational::zero());
    }
    if base.is_one() {
        return Ok(BigRational::one());
    }
    // Base in (0,1): larger exponent means smaller value, so an upper
    // bound may shrink the exponent and a lower bound must grow it.
    let mut j: u32 = 24;
    let dyadic = if upper {
        round_down(exponent, j)
    } else {
        round_up(exponent, j)
    };
    let u = (dyadic * BigRational::from_integer(pow2(j))).to_integer();
    let mut u: u64 = u.try_into().map_err(|_| Error::OutOfRange {
        name: "exponent",
        value: exponent.to_string(),
        range: "(0, 2^40)",
    })?;
    if u == 0 {
        // Exponent rounded to zero from above: bound by base^0 = 1.
        return Ok(BigRational::one());
    }
    while u & 1 == 0 && j > 0 {
        u >>= 1;
        j -= 1;
    }
    let x = Scaled::from_rational(base, bits, upper);
    let mut value = x.pow(u, upper);
    for _ in 0..j {
        value = value.sqrt(upper);
    }
    Ok(value.to_rational().min(BigRational::one()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn width() -> BigRational {
        rat(1, 1 << 20)
    }

    /// log2(3) to 18 decimal digits, used as a cross-check constant.
    fn log2_3() -> BigRational {
        BigRational::new(
            BigInt::from(1_584_962_500_721_156_181u64),
            BigInt::from(1_000_000_000_000_000_000u64),
        )
    }

    #[test]
    fn log_of_powers_of_two_is_exact() {
        for (l, expect) in [(1u64, 0i64), (2, 1), (4, 2), (8, 3), (1 << 20, 20)] {
            let e = log2_enclosure(l, &width()).unwrap();
            assert!(e.is_point());
            assert_eq!(e.lo(), &rat_int(expect));
        }
    }

    #[test]
    fn log_of_three_brackets_the_known_value() {
        let e = log2_enclosure(3, &width()).unwrap();
        assert!(e.width() <= width());
        assert!(e.contains(&log2_3()), "{:?}", e);
        // And refines consistently: a tighter request nests inside.
        let tight = log2_enclosure(3, &rat(1, 1 << 30)).unwrap();
        assert!(e.encloses(&tight));
    }

    #[test]
    fn log_is_monotone_across_integers() {
        let mut prev = log2_enclosure(2, &width()).unwrap();
        for l in 3..=40 {
            let next = log2_enclosure(l, &width()).unwrap();
            assert!(
                prev.lo() < next.hi(),
                "log2({l}) not above log2({})",
                l - 1
            );
            prev = next;
        }
    }

    #[test]
    fn exponential_decay_brackets_reference_values() {
        // 1/e to 18 digits.
        let inv_e = BigRational::new(
            BigInt::from(367_879_441_171_442_322u64),
            BigInt::from(1_000_000_000_000_000_000u64),
        );
        let e1 = exp_neg_enclosure(&rat_int(1), &width()).unwrap();
        assert!(e1.contains(&inv_e));
        assert!(e1.width() <= width());
        assert!(exp_neg_enclosure(&rat_int(0), &width()).unwrap().is_point());
        // e^-8 used by the shared-singleton bound example: about
        // 0.000335462627902512.
        let e8 = exp_neg_enclosure(&rat_int(8), &width()).unwrap();
        let reference = BigRational::new(
            BigInt::from(335_462_627_902_512u64),
            BigInt::from(1_000_000_000_000_000_000u64),
        );
        assert!(e8.contains(&reference), "{:?}", e8);
    }

    #[test]
    fn exponential_respects_the_product_rule() {
        let a = exp_neg_enclosure(&rat(3, 2), &width()).unwrap();
        let b = exp_neg_enclosure(&rat(5, 2), &width()).unwrap();
        let ab = exp_neg_enclosure(&rat_int(4), &width()).unwrap();
        let product = a.mul(&b);
        // The product of enclosures must overlap the direct enclosure.
        assert!(product.lo() <= ab.hi() && ab.lo() <= product.hi());
    }

    #[test]
    fn roots_self_certify_by_powering_back() {
        for (target, n) in [(rat(1, 2), 2u64), (rat(1, 2), 3), (rat(3, 7), 5)] {
            let e = root_enclosure(&target, n, &width()).unwrap();
            assert!(e.lo().pow(n as i32) < target);
            assert!(e.hi().pow(n as i32) > target);
            assert!(e.width() <= width());
        }
        // Exact rational root collapses: y^3 = 1/8.
        let e = root_enclosure(&rat(1, 8), 3, &width()).unwrap();
        assert!(e.is_point());
        assert_eq!(e.lo(), &rat(1, 2));
    }

    #[test]
    fn pow_agrees_with_root_on_reciprocal_exponents() {
        // (1/2)^(1/2) computed through the general power routine must
        // overlap the bisected square root of 1/2.
        let base = Enclosure::point(one_half());
        let exponent = Enclosure::point(one_half());
        let via_pow = pow_enclosure(&base, &exponent, &width()).unwrap();
        let via_root = root_enclosure(&one_half(), 2, &width()).unwrap();
        assert!(via_pow.lo() <= via_root.hi() && via_root.lo() <= via_pow.hi());
        assert!(via_pow.width() <= rat(1, 1 << 10));
    }

    #[test]
    fn pow_brackets_exact_integer_cases() {
        let base = Enclosure::point(rat(1, 2));
        let exponent = Enclosure::point(rat_int(3));
        let e = pow_enclosure(&base, &exponent, &width()).unwrap();
        assert!(e.contains(&rat(1, 8)));
        assert!(e.width() <= rat(1, 1 << 10));
        // Power of a genuine interval: (1-16q)^(log2 3) for q in a small
        // interval stays inside [0,1] and is ordered sanely.
        let base = Enclosure::new(rat(1, 4), rat(1, 3));
        let exponent = log2_enclosure(3, &width()).unwrap();
        let e = pow_enclosure(&base, &exponent, &width()).unwrap();
        assert!(e.lo() < e.hi());
        assert!(!e.lo().is_negative() && *e.hi() <= BigRational::one());
        // Monotone in the base: a bigger base interval gives a bigger
        // upper end.
        let wider = Enclosure::new(rat(1, 4), rat(1, 2));
        let e2 = pow_enclosure(&wider, &exponent, &width()).unwrap();
        assert!(e2.hi() >= e.hi());
    }

    #[test]
    fn directed_rounding_never_inverts_monotonicity() {
        // Squeeze check on the ladder: for base in (0,1), larger
        // exponents give smaller values even after outward rounding.
        let base = Enclosure::point(rat(9, 10));
        let small = pow_enclosure(&base, &Enclosure::point(rat(3, 2)), &width()).unwrap();
        let large = pow_enclosure(&base, &Enclosure::point(rat(5, 2)), &width()).unwrap();
        assert!(large.lo() <= small.hi());
        assert!(large.hi() <= small.hi());
    }

    #[test]
    fn rejects_domain_violations() {
        assert!(log2_enclosure(0, &width()).is_err());
        assert!(exp_neg_enclosure(&rat(-1, 2), &width()).is_err());
        assert!(root_enclosure(&rat_int(0), 2, &width()).is_err());
        assert!(root_enclosure(&rat_int(2), 2, &width()).is_err());
        assert!(root_enclosure(&one_half(), 0, &width()).is_err());
        assert!(pow_enclosure(
            &Enclosure::point(rat_int(2)),
            &Enclosure::point(rat_int(1)),
            &width()
        )
        .is_err());
        assert!(log2_enclosure(3, &rat_int(0)).is_err());
    }
}
