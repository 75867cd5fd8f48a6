//! Exact rational intervals.
//!
//! An [`Enclosure`] `[lo, hi]` asserts that some real quantity lies between
//! two exact rationals. Threshold computations return enclosures narrowed
//! by bisection; verification combines them with outward-rounded interval
//! arithmetic, so every derived enclosure still contains the true value.

use std::fmt;

use num_rational::BigRational;
use num_traits::Signed;

use crate::rational::{decimal_approx, display_rational};

/// A closed interval `[lo, hi]` with exact rational endpoints.
#[derive(Clone, PartialEq, Eq)]
pub struct Enclosure {
    lo: BigRational,
    hi: BigRational,
}

impl Enclosure {
    /// Interval from endpoints; panics if `lo > hi`.
    pub fn new(lo: BigRational, hi: BigRational) -> Enclosure {
        assert!(lo <= hi, "enclosure endpoints out of order");
        Enclosure { lo, hi }
    }

    /// Degenerate interval holding exactly one value.
    pub fn point(value: BigRational) -> Enclosure {
        Enclosure {
            lo: value.clone(),
            hi: value,
        }
    }

    /// Lower endpoint.
    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    /// Upper endpoint.
    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    /// `hi - lo`.
    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    /// True if the interval has collapsed to a single exact value.
    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    /// True if `value` lies inside.
    pub fn contains(&self, value: &BigRational) -> bool {
        self.lo <= *value && *value <= self.hi
    }

    /// True if zero lies inside.
    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    /// True if `other` lies entirely inside `self`.
    pub fn encloses(&self, other: &Enclosure) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    /// True if every value of `self` is `<=` every value of `other`.
    pub fn surely_le(&self, other: &Enclosure) -> bool {
        self.hi <= other.lo
    }

    /// True if every value of `self` is `>` every value of `other`,
    /// i.e. the claim `self <= other` is certainly false.
    pub fn surely_gt(&self, other: &Enclosure) -> bool {
        self.lo > other.hi
    }

    /// Interval sum.
    pub fn add(&self, other: &Enclosure) -> Enclosure {
        Enclosure {
            lo: &self.lo + &other.lo,
            hi: &self.hi + &other.hi,
        }
    }

    /// Interval difference `self - other`.
    pub fn sub(&self, other: &Enclosure) -> Enclosure {
        Enclosure {
            lo: &self.lo - &other.hi,
            hi: &self.hi - &other.lo,
        }
    }

    /// Interval negation.
    pub fn neg(&self) -> Enclosure {
        Enclosure {
            lo: -self.hi.clone(),
            hi: -self.lo.clone(),
        }
    }

    /// Interval product (sign-exact: minimum and maximum of the four
    /// endpoint products).
    pub fn mul(&self, other: &Enclosure) -> Enclosure {
        let products = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let lo = products.iter().min().unwrap().clone();
        let hi = products.iter().max().unwrap().clone();
        Enclosure { lo, hi }
    }

    /// Scales both endpoints by an exact nonnegative factor.
    pub fn scale(&self, factor: &BigRational) -> Enclosure {
        assert!(!factor.is_negative(), "scale factor must be nonnegative");
        Enclosure {
            lo: &self.lo * factor,
            hi: &self.hi * factor,
        }
    }

    /// Divides both endpoints by an exact positive divisor.
    pub fn div_exact(&self, divisor: &BigRational) -> Enclosure {
        assert!(divisor.is_positive(), "divisor must be positive");
        Enclosure {
            lo: &self.lo / divisor,
            hi: &self.hi / divisor,
        }
    }

    /// Smallest interval containing both.
    pub fn hull(&self, other: &Enclosure) -> Enclosure {
        Enclosure {
            lo: self.lo.clone().min(other.lo.clone()),
            hi: self.hi.clone().max(other.hi.clone()),
        }
    }
}

impl fmt::Debug for Enclosure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_point() {
            write!(f, "[{}]", display_rational(&self.lo))
        } else {
            write!(
                f,
                "[{}, {}]",
                display_rational(&self.lo),
                display_rational(&self.hi)
            )
        }
    }
}

impl fmt::Display for Enclosure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_point() {
            write!(
                f,
                "= {} (≈ {})",
                display_rational(&self.lo),
                decimal_approx(&self.lo, 6)
            )
        } else {
            write!(
                f,
                "in [{}, {}] (≈ [{}, {}])",
                display_rational(&self.lo),
                display_rational(&self.hi),
                decimal_approx(&self.lo, 6),
                decimal_approx(&self.hi, 6)
            )
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};
    use num_traits::Zero;

    #[test]
    fn interval_arithmetic_is_outward() {
        let a = Enclosure::new(rat(1, 4), rat(1, 2));
        let b = Enclosure::new(rat(-1, 3), rat(1, 3));
        let sum = a.add(&b);
        assert_eq!(sum.lo(), &rat(-1, 12));
        assert_eq!(sum.hi(), &rat(5, 6));
        let diff = a.sub(&a);
        assert!(diff.contains_zero());
        assert_eq!(diff.lo(), &rat(-1, 4));

        let prod = a.mul(&b);
        assert_eq!(prod.lo(), &rat(-1, 6));
        assert_eq!(prod.hi(), &rat(1, 6));
    }

    #[test]
    fn ordering_predicates() {
        let a = Enclosure::new(rat(1, 4), rat(1, 2));
        let b = Enclosure::new(rat(1, 2), rat(3, 4));
        let c = Enclosure::new(rat(3, 5), rat(4, 5));
        assert!(a.surely_le(&b));
        assert!(!b.surely_le(&a));
        assert!(c.surely_gt(&a));
        assert!(!b.surely_gt(&a));
        assert!(a.hull(&c).encloses(&b));
    }

    #[test]
    fn points_collapse() {
        let p = Enclosure::point(rat(1, 2));
        assert!(p.is_point());
        assert!(p.width().is_zero());
        assert!(p.contains(&rat(1, 2)));
        assert!(!p.contains(&rat(1, 3)));
    }

    #[test]
    fn display_shows_exact_and_approximate() {
        let p = Enclosure::point(rat(1, 2));
        assert_eq!(format!("{p}"), "= 1/2 (≈ 0.5)");
        let e = Enclosure::new(rat_int(0), rat(1, 8));
        assert_eq!(format!("{e}"), "in [0, 1/8] (≈ [0, 0.125])");
    }
}
