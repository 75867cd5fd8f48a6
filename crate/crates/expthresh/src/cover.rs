//! Covers of a family and their q-cost.
//!
//! A cover is a collection G of subsets such that every generator (hence
//! every member) of the family contains some element of G. Its cost at a
//! rate q in (0, 1) is `Σ_{S in G} q^|S|` — the expected number of sets of
//! G contained in the q-random set, by linearity. A cover of cost at most
//! 1/2 is called cheap; the empty set as a cover member costs exactly 1
//! and covers everything.

use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::family::Family;
use crate::ground::Mask;

/// Upper bound on the total candidate-pool size for cover optimization.
pub const POOL_CAP: usize = 1 << 20;

/// A finite collection of subsets, stored sorted and deduplicated.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cover {
    members: Vec<Mask>,
}

/// Covers order canonically: fewer members first, then lexicographically
/// on the sorted member lists. Used to break ties among equal-cost optima.
impl Ord for Cover {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.members
            .len()
            .cmp(&other.members.len())
            .then_with(|| self.members.cmp(&other.members))
    }
}

impl PartialOrd for Cover {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Cover {
    /// Builds a cover from arbitrary members (sorted, deduplicated).
    pub fn new<I: IntoIterator<Item = Mask>>(members: I) -> Cover {
        let mut members: Vec<Mask> = members.into_iter().collect();
        members.sort();
        members.dedup();
        Cover { members }
    }

    /// The members in canonical order.
    pub fn members(&self) -> &[Mask] {
        &self.members
    }

    /// Number of member sets.
    pub fn len(&self) -> usize {
        self.members.len()
    }

    /// True if the cover has no members (covers nothing).
    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Exact cost `Σ q^|S|` over the members.
    pub fn cost(&self, q: &BigRational) -> BigRational {
        let mut total = BigRational::new(0.into(), 1.into());
        for member in &self.members {
            total += q.pow(member.size() as i32);
        }
        total
    }

    /// True if every generator of `family` contains some member.
    pub fn is_cover_of(&self, family: &Family) -> bool {
        family
            .generators()
            .iter()
            .all(|gen| self.members.iter().any(|s| s.is_subset_of(*gen)))
    }

    /// True if the cover stays a cover after removing any single member.
    pub fn is_redundant_for(&self, family: &Family) -> bool {
        (0..self.members.len()).any(|skip| {
            let without: Vec<Mask> = self
                .members
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != skip)
                .map(|(_, m)| *m)
                .collect();
            family
                .generators()
                .iter()
                .all(|gen| without.iter().any(|s| s.is_subset_of(*gen)))
        })
    }
}

/// All subsets of generators — every set that can usefully appear in a
/// minimum-cost cover, including the empty set (which covers everything
/// at cost 1). Sorted canonically, deduplicated.
///
/// Fails if the pool would exceed [`POOL_CAP`] entries before dedup.
pub fn candidate_pool(family: &Family) -> Result<Vec<Mask>> {
    let mut work: usize = 0;
    for gen in family.generators() {
        let subsets = 1usize
            .checked_shl(gen.size() as u32)
            .ok_or(Error::PoolCapExceeded {
                size: usize::MAX,
                cap: POOL_CAP,
            })?;
        work = work.saturating_add(subsets);
        if work > POOL_CAP {
            return Err(Error::PoolCapExceeded {
                size: work,
                cap: POOL_CAP,
            });
        }
    }
    let mut pool: Vec<Mask> = Vec::new();
    for gen in family.generators() {
        // Walk all submasks of the generator via the standard decrement
        // trick, including the empty set.
        let bits = gen.0;
        let mut sub = bits;
        loop {
            pool.push(Mask(sub));
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & bits;
        }
    }
    pool.sort();
    pool.dedup();
    Ok(pool)
}

/// Validates a cost rate: exclusive range (0, 1).
pub fn validate_rate(q: &BigRational) -> Result<()> {
    if *q <= BigRational::new(0.into(), 1.into()) || *q >= BigRational::one() {
        return Err(Error::OutOfRange {
            name: "q",
            value: q.to_string(),
            range: "(0, 1)",
        });
    }
    Ok(())
}
