//! Expectation thresholds: the largest rates at which cheap covers exist.
//!
//! A family is q-cheap if some cover has cost at most 1/2 at rate q, and
//! fractionally q-cheap if some fractional cover does. The integral and
//! fractional expectation thresholds are the suprema of the cheap rates;
//! minimum cover cost is strictly increasing in q (until it saturates at
//! 1, above any crossing), so both are genuine crossing points. Bisection
//! over dyadic rationals encloses them, and every probe leaves behind an
//! exactly re-checkable certificate: a cheap cover below, a search
//! exhaustion or a dual vector above.

use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::cover::{candidate_pool, Cover};
use crate::enclosure::Enclosure;
use crate::error::{Error, Result};
use crate::family::Family;
use crate::lp::{min_fractional_cover_cost, FractionalCover};
use crate::rational::{one_half, rat_int};
use crate::solver::{solve_capped, CappedSearch};

/// Witness that the family is cheap at `q`: a cover of cost at most 1/2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheapWitness {
    pub q: BigRational,
    pub cover: Cover,
}

/// How "no cover costs at most 1/2 at `q`" (or exactly 1/2) was proven.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExpensiveProof {
    /// Branch-and-bound exhausted every branch below the cap.
    SearchExhausted,
    /// The search proved the minimum is exactly 1/2, so the threshold is
    /// this very rate.
    MinimumEqualsHalf,
    /// At q = 1 every cover costs at least 1 because all members cost 1.
    UnitCostFloor,
}

/// Upper-bound certificate for the integral threshold.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpensiveWitness {
    pub q: BigRational,
    pub proof: ExpensiveProof,
}

/// Integral expectation-threshold enclosure with both certificates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QcOutcome {
    pub enclosure: Enclosure,
    pub lower: CheapWitness,
    pub upper: ExpensiveWitness,
}

/// Witness that the family is fractionally cheap at `q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FractionalCheapWitness {
    pub q: BigRational,
    pub weighting: FractionalCover,
}

/// Proof that the fractional optimum at `q` is at least (or above) 1/2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FractionalExpensiveProof {
    /// A feasible dual vector whose total is the LP optimum.
    Dual(Vec<BigRational>),
    /// At q = 1 every fractional cover costs at least 1.
    UnitCostFloor,
}

/// Upper-bound certificate for the fractional threshold.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FractionalExpensiveWitness {
    pub q: BigRational,
    pub proof: FractionalExpensiveProof,
}

/// Fractional expectation-threshold enclosure with both certificates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QfOutcome {
    pub enclosure: Enclosure,
    pub lower: FractionalCheapWitness,
    pub upper: FractionalExpensiveWitness,
}

/// True if some cover costs at most 1/2 at rate `q`.
pub fn is_cheap(family: &Family, q: &BigRational) -> Result<bool> {
    Ok(!matches!(
        solve_capped(family, q, &one_half())?,
        CappedSearch::Expensive
    ))
}

/// True if some fractional cover costs at most 1/2 at rate `q`.
pub fn is_fractionally_cheap(family: &Family, q: &BigRational) -> Result<bool> {
    Ok(min_fractional_cover_cost(family, q)?.value <= one_half())
}

/// Encloses the integral expectation threshold within `width`.
///
/// Every probe is decided exactly by the capped cover search; a probe
/// whose minimum is exactly 1/2 collapses the enclosure to a point.
pub fn q_c(family: &Family, width: &BigRational) -> Result<QcOutcome> {
    validate_width(width)?;
    let half = one_half();
    let two = rat_int(2);
    let mut lo = rat_int(0);
    let mut hi = rat_int(1);
    // Generators as a cover cost Σ q^|M|, which vanishes at q = 0.
    let mut lower = CheapWitness {
        q: rat_int(0),
        cover: Cover::new(family.generators().iter().copied()),
    };
    let mut upper = ExpensiveWitness {
        q: rat_int(1),
        proof: ExpensiveProof::UnitCostFloor,
    };
    while &hi - &lo > *width {
        let mid = (&lo + &hi) / &two;
        match solve_capped(family, &mid, &half)? {
            CappedSearch::Cheap(cover) => {
                lower = CheapWitness {
                    q: mid.clone(),
                    cover,
                };
                lo = mid;
            }
            CappedSearch::Exactly(cover) => {
                return Ok(QcOutcome {
                    enclosure: Enclosure::point(mid.clone()),
                    lower: CheapWitness {
                        q: mid.clone(),
                        cover,
                    },
                    upper: ExpensiveWitness {
                        q: mid,
                        proof: ExpensiveProof::MinimumEqualsHalf,
                    },
                });
            }
            CappedSearch::Expensive => {
                upper = ExpensiveWitness {
                    q: mid.clone(),
                    proof: ExpensiveProof::SearchExhausted,
                };
                hi = mid;
            }
        }
    }
    Ok(QcOutcome {
        enclosure: Enclosure::new(lo, hi),
        lower,
        upper,
    })
}

/// Encloses the fractional expectation threshold within `width`.
pub fn q_f(family: &Family, width: &BigRational) -> Result<QfOutcome> {
    validate_width(width)?;
    let half = one_half();
    let two = rat_int(2);
    let mut lo = rat_int(0);
    let mut hi = rat_int(1);
    let mut lower = FractionalCheapWitness {
        q: rat_int(0),
        weighting: FractionalCover::from_cover(&Cover::new(
            family.generators().iter().copied(),
        )),
    };
    let mut upper = FractionalExpensiveWitness {
        q: rat_int(1),
        proof: FractionalExpensiveProof::UnitCostFloor,
    };
    while &hi - &lo > *width {
        let mid = (&lo + &hi) / &two;
        let lp = min_fractional_cover_cost(family, &mid)?;
        if lp.value < half {
            lower = FractionalCheapWitness {
                q: mid.clone(),
                weighting: lp.optimum,
            };
            lo = mid;
        } else if lp.value == half {
            return Ok(QfOutcome {
                enclosure: Enclosure::point(mid.clone()),
                lower: FractionalCheapWitness {
                    q: mid.clone(),
                    weighting: lp.optimum,
                },
                upper: FractionalExpensiveWitness {
                    q: mid,
                    proof: FractionalExpensiveProof::Dual(lp.dual),
                },
            });
        } else {
            upper = FractionalExpensiveWitness {
                q: mid.clone(),
                proof: FractionalExpensiveProof::Dual(lp.dual),
            };
            hi = mid;
        }
    }
    Ok(QfOutcome {
        enclosure: Enclosure::new(lo, hi),
        lower,
        upper,
    })
}

/// Re-checks a cheap-cover certificate from first principles.
pub fn verify_cheap_witness(family: &Family, witness: &CheapWitness) -> bool {
    !witness.q.is_negative()
        && witness.q <= BigRational::one()
        && witness.cover.is_cover_of(family)
        && witness.cover.cost(&witness.q) <= one_half()
}

/// Re-checks an expensive certificate; search-based proofs are re-run.
pub fn verify_expensive_witness(family: &Family, witness: &ExpensiveWitness) -> Result<bool> {
    match &witness.proof {
        ExpensiveProof::UnitCostFloor => Ok(witness.q == BigRational::one()),
        ExpensiveProof::SearchExhausted => Ok(matches!(
            solve_capped(family, &witness.q, &one_half())?,
            CappedSearch::Expensive
        )),
        ExpensiveProof::MinimumEqualsHalf => Ok(matches!(
            solve_capped(family, &witness.q, &one_half())?,
            CappedSearch::Exactly(_)
        )),
    }
}

/// Re-checks a fractional cheap certificate from first principles.
pub fn verify_fractional_cheap_witness(
    family: &Family,
    witness: &FractionalCheapWitness,
) -> bool {
    !witness.q.is_negative()
        && witness.q <= BigRational::one()
        && witness.weighting.is_fractional_cover_of(family)
        && witness.weighting.cost(&witness.q) <= one_half()
}

/// Re-checks a fractional expensive certificate.
///
/// A dual vector is valid if it is nonnegative, feasible against every
/// pool subset at the witness rate, and totals at least 1/2.
pub fn verify_fractional_expensive_witness(
    family: &Family,
    witness: &FractionalExpensiveWitness,
) -> Result<bool> {
    match &witness.proof {
        FractionalExpensiveProof::UnitCostFloor => Ok(witness.q == BigRational::one()),
        FractionalExpensiveProof::Dual(dual) => {
            if dual.len() != family.num_generators() {
                return Ok(false);
            }
            if dual.iter().any(|y| y.is_negative()) {
                return Ok(false);
            }
            let total: BigRational = dual.iter().cloned().sum();
            if total < one_half() {
                return Ok(false);
            }
            let pool = candidate_pool(family)?;
            let gens = family.generators();
            for subset in pool {
                let packed: BigRational = gens
                    .iter()
                    .zip(dual)
                    .filter(|(gen, _)| subset.is_subset_of(**gen))
                    .map(|(_, y)| y.clone())
                    .sum();
                if packed > witness.q.pow(subset.size() as i32) {
                    return Ok(false);
                }
            }
            Ok(true)
        }
    }
}

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

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ground::{GroundSet, Mask};
    use num_traits::Zero;
    use crate::rational::rat;

    fn fam(n: usize, gens: &[&[usize]]) -> Family {
        Family::new(
            GroundSet::numbered(n).unwrap(),
            gens.iter().map(|g| Mask::from_indices(g.iter().copied())),
        )
        .unwrap()
    }

    fn width() -> BigRational {
        rat(1, 1 << 20)
    }

    #[test]
    fn shared_singleton_family_collapses_to_half() {
        // <{1,2},{1,3}>: the cover {{1}} costs exactly 1/2 at q = 1/2 and
        // nothing is cheaper, so the threshold is exactly 1/2.
        let f = fam(3, &[&[0, 1], &[0, 2]]);
        let out = q_c(&f, &width()).unwrap();
        assert!(out.enclosure.is_point());
        assert_eq!(out.enclosure.lo(), &rat(1, 2));
        assert_eq!(out.upper.proof, ExpensiveProof::MinimumEqualsHalf);
        assert!(verify_cheap_witness(&f, &out.lower));
        assert!(verify_expensive_witness(&f, &out.upper).unwrap());
    }

    #[test]
    fn two_disjoint_singletons_collapse_to_quarter() {
        // <{1},{2}>: minimum cover cost is min(2q, 1), which hits 1/2
        // exactly at q = 1/4.
        let f = fam(2, &[&[0], &[1]]);
        let out = q_c(&f, &width()).unwrap();
        assert!(out.enclosure.is_point());
        assert_eq!(out.enclosure.lo(), &rat(1, 4));
        assert!(verify_cheap_witness(&f, &out.lower));
    }

    #[test]
    fn single_pair_threshold_is_inverse_sqrt_two() {
        // <{1,2}>: minimum cost q^2 crosses 1/2 at the irrational
        // 1/sqrt(2); the enclosure brackets it and never collapses.
        let f = fam(2, &[&[0, 1]]);
        let out = q_c(&f, &width()).unwrap();
        assert!(!out.enclosure.is_point());
        assert!(out.enclosure.width() <= width());
        let lo = out.enclosure.lo();
        let hi = out.enclosure.hi();
        assert!(lo * lo < rat(1, 2));
        assert!(hi * hi > rat(1, 2));
        assert!(verify_cheap_witness(&f, &out.lower));
        assert!(verify_expensive_witness(&f, &out.upper).unwrap());
        assert_eq!(out.upper.proof, ExpensiveProof::SearchExhausted);
    }

    #[test]
    fn fractional_threshold_of_triangle_is_inverse_sqrt_six() {
        // Pairs of a triangle: the fractional optimum near the crossing
        // is 3q^2, so the threshold solves 3q^2 = 1/2.
        let f = fam(3, &[&[0, 1], &[0, 2], &[1, 2]]);
        let out = q_f(&f, &width()).unwrap();
        assert!(!out.enclosure.is_point());
        let lo = out.enclosure.lo();
        let hi = out.enclosure.hi();
        assert!(lo * lo < rat(1, 6));
        assert!(hi * hi > rat(1, 6));
        assert!(verify_fractional_cheap_witness(&f, &out.lower));
        assert!(verify_fractional_expensive_witness(&f, &out.upper).unwrap());
    }

    #[test]
    fn fractional_never_below_integral_threshold() {
        // Fractional covers are at most as costly as integral ones, so
        // the fractional threshold sits at or above the integral one.
        let families = [
            fam(3, &[&[0, 1], &[0, 2]]),
            fam(3, &[&[0], &[1], &[2]]),
            fam(4, &[&[0, 1], &[1, 2], &[2, 3]]),
            fam(4, &[&[0, 1, 2], &[0, 3]]),
        ];
        for f in &families {
            let qc = q_c(f, &width()).unwrap();
            let qf = q_f(f, &width()).unwrap();
            assert!(
                qc.enclosure.lo() <= qf.enclosure.hi(),
                "q_c {:?} above q_f {:?} for {:?}",
                qc.enclosure,
                qf.enclosure,
                f.generators()
            );
            // Any rate where an integral cheap cover exists is also
            // fractionally cheap.
            if !qc.enclosure.lo().is_zero() {
                assert!(is_fractionally_cheap(f, qc.enclosure.lo()).unwrap());
            }
        }
    }

    #[test]
    fn cheapness_predicates_match_thresholds() {
        let f = fam(2, &[&[0], &[1]]);
        assert!(is_cheap(&f, &rat(1, 4)).unwrap());
        assert!(is_cheap(&f, &rat(1, 5)).unwrap());
        assert!(!is_cheap(&f, &rat(1, 3)).unwrap());
        assert!(is_fractionally_cheap(&f, &rat(1, 4)).unwrap());
        assert!(!is_fractionally_cheap(&f, &rat(1, 3)).unwrap());
    }

    #[test]
    fn enclosures_nest_as_width_shrinks() {
        let f = fam(2, &[&[0, 1]]);
        let coarse = q_c(&f, &rat(1, 256)).unwrap();
        let fine = q_c(&f, &width()).unwrap();
        assert!(coarse.enclosure.encloses(&fine.enclosure));
        assert!(coarse.enclosure.width() <= rat(1, 256));
    }

    #[test]
    fn tampered_certificates_fail_verification() {
        let f = fam(3, &[&[0, 1], &[0, 2]]);
        let out = q_c(&f, &width()).unwrap();
        // Raising the witness rate far enough breaks the cost bound.
        let bad = CheapWitness {
            q: rat(99, 100),
            cover: out.lower.cover.clone(),
        };
        assert!(!verify_cheap_witness(&f, &bad));
        // A cover that misses a generator is no witness at any rate.
        let not_cover = CheapWitness {
            q: rat(1, 8),
            cover: Cover::new([Mask::from_indices([1])]),
        };
        assert!(!verify_cheap_witness(&f, &not_cover));
    }

    #[test]
    fn dual_certificates_reject_tampering() {
        let f = fam(3, &[&[0, 1], &[0, 2], &[1, 2]]);
        let out = q_f(&f, &width()).unwrap();
        let FractionalExpensiveProof::Dual(dual) = &out.upper.proof else {
            panic!("expected a dual certificate");
        };
        // Same dual at a much smaller rate violates feasibility.
        let moved = FractionalExpensiveWitness {
            q: rat(1, 100),
            proof: FractionalExpensiveProof::Dual(dual.clone()),
        };
        assert!(!verify_fractional_expensive_witness(&f, &moved).unwrap());
        // A scaled-down dual no longer reaches 1/2.
        let shrunk = FractionalExpensiveWitness {
            q: out.upper.q.clone(),
            proof: FractionalExpensiveProof::Dual(
                dual.iter().map(|y| y / rat_int(100)).collect(),
            ),
        };
        assert!(!verify_fractional_expensive_witness(&f, &shrunk).unwrap());
    }

    #[test]
    fn rejects_nonpositive_width() {
        let f = fam(2, &[&[0, 1]]);
        assert!(q_c(&f, &rat_int(0)).is_err());
        assert!(q_f(&f, &rat(-1, 4)).is_err());
    }
}
