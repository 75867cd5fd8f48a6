//! Membership probability and the probability threshold.
//!
//! For a family F over n elements, the random set that keeps each element
//! independently with probability p is a member with probability
//! `P(p) = Σ_s c_s p^s (1-p)^(n-s)`, where `c_s` counts members of size s.
//! P is a polynomial with integer coefficients, strictly increasing on
//! \[0, 1\] for proper families, so the threshold `p_c` — the unique p with
//! P(p) = 1/2 — is well-defined and can be bisected to any width.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::enclosure::Enclosure;
use crate::error::{Error, Result};
use crate::family::Family;
use crate::rational::{binomial, one_half, rat_int};

/// The membership polynomial of a family in the standard power basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyPoly {
    coeffs: Vec<BigInt>,
}

impl FamilyPoly {
    /// Computes the polynomial of `family`, choosing the cheaper counting
    /// strategy automatically.
    pub fn new(family: &Family) -> Result<FamilyPoly> {
        Ok(FamilyPoly::from_profile(family.n(), &family.size_profile()?))
    }

    /// Expands a size profile into power-basis coefficients:
    /// `Σ_s c_s p^s (1-p)^(n-s)` with `(1-p)^(n-s)` multiplied out.
    pub fn from_profile(n: usize, profile: &[BigInt]) -> FamilyPoly {
        assert_eq!(profile.len(), n + 1, "profile must have n + 1 entries");
        let mut coeffs = vec![BigInt::zero(); n + 1];
        for (s, count) in profile.iter().enumerate() {
            if count.is_zero() {
                continue;
            }
            for t in 0..=(n - s) {
                let term = count * binomial(n - s, t);
                if t % 2 == 0 {
                    coeffs[s + t] += term;
                } else {
                    coeffs[s + t] -= term;
                }
            }
        }
        FamilyPoly { coeffs }
    }

    /// Power-basis coefficients, constant term first.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Exact evaluation at a rational point.
    pub fn eval(&self, p: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * p + BigRational::from_integer(c.clone());
        }
        acc
    }
}

/// Probability that the p-random subset is a member of `family`.
///
/// Exact in, exact out; requires `0 <= p <= 1`.
pub fn prob_in_family(family: &Family, p: &BigRational) -> Result<BigRational> {
    if p.is_negative() || *p > rat_int(1) {
        return Err(Error::OutOfRange {
            name: "p",
            value: p.to_string(),
            range: "[0, 1]",
        });
    }
    Ok(FamilyPoly::new(family)?.eval(p))
}

/// Encloses the probability threshold `p_c` — the unique p in (0, 1) with
/// membership probability exactly 1/2 — within `width`.
///
/// Bisection keeps every probe a dyadic rational, so all evaluations are
/// exact; if a probe lands exactly on the threshold the enclosure
/// collapses to that point.
pub fn p_c(family: &Family, width: &BigRational) -> Result<Enclosure> {
    if !width.is_positive() {
        return Err(Error::OutOfRange {
            name: "width",
            value: width.to_string(),
            range: "(0, inf)",
        });
    }
    let poly = FamilyPoly::new(family)?;
    debug_assert!(poly.eval(&rat_int(0)).is_zero());
    debug_assert!(poly.eval(&rat_int(1)).is_one());
    let half = one_half();
    let two = rat_int(2);
    let mut lo = rat_int(0);
    let mut hi = rat_int(1);
    while &hi - &lo > *width {
        let mid = (&lo + &hi) / &two;
        match poly.eval(&mid).cmp(&half) {
            Ordering::Less => lo = mid,
            Ordering::Greater => hi = mid,
            Ordering::Equal => return Ok(Enclosure::point(mid)),
        }
    }
    Ok(Enclosure::new(lo, hi))
}
