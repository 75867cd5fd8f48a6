//! Increasing set families presented by their minimal generators.
//!
//! A family is the up-closure of a finite antichain of nonempty subsets:
//! a set is a member iff it contains some generator. Construction reduces
//! any presentation to the canonical antichain form, so two equal families
//! always compare equal structurally.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::ground::{enumeration_cap, GroundSet, Mask};
use crate::rational::binomial;

/// An increasing family over a labeled ground set, stored as the sorted
/// antichain of its minimal generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Family {
    ground: GroundSet,
    generators: Vec<Mask>,
}

impl Family {
    /// Builds a family from any presentation, reducing it to minimal
    /// generators in canonical order.
    ///
    /// Rejects empty presentations (the empty family has no thresholds)
    /// and empty generators (those generate everything, which likewise
    /// has no threshold behavior).
    pub fn new<I: IntoIterator<Item = Mask>>(ground: GroundSet, generators: I) -> Result<Family> {
        let full = ground.full_mask();
        let mut gens: Vec<Mask> = Vec::new();
        for gen in generators {
            if gen.is_empty() {
                return Err(Error::EmptyGenerator);
            }
            if !gen.is_subset_of(full) {
                return Err(Error::ForeignSet);
            }
            gens.push(gen);
        }
        if gens.is_empty() {
            return Err(Error::EmptyFamily);
        }
        gens.sort();
        gens.dedup();
        // Keep only minimal sets. Sorting put smaller sets first, so any
        // strict superset appears after everything that kills it.
        let mut minimal: Vec<Mask> = Vec::new();
        for gen in gens {
            if !minimal.iter().any(|m| m.is_subset_of(gen)) {
                minimal.push(gen);
            }
        }
        Ok(Family {
            ground,
            generators: minimal,
        })
    }

    /// The ground set.
    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    /// Ground-set size.
    pub fn n(&self) -> usize {
        self.ground.len()
    }

    /// The minimal generators, sorted canonically (size, then lex).
    pub fn generators(&self) -> &[Mask] {
        &self.generators
    }

    /// Number of minimal generators.
    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    /// Size of the largest minimal generator.
    pub fn largest_minimal_size(&self) -> usize {
        self.generators.iter().map(|g| g.size()).max().unwrap_or(0)
    }

    /// Size of the smallest minimal generator.
    pub fn smallest_minimal_size(&self) -> usize {
        self.generators.iter().map(|g| g.size()).min().unwrap_or(0)
    }

    /// Membership test: does `set` contain some generator?
    ///
    /// Panics if `set` uses elements outside the ground set; membership
    /// is only defined over the family's own ground.
    pub fn contains(&self, set: Mask) -> bool {
        assert!(
            set.is_subset_of(self.ground.full_mask()),
            "membership query outside the ground set"
        );
        self.generators.iter().any(|g| g.is_subset_of(set))
    }

    /// Number of member sets.
    pub fn member_count(&self) -> Result<BigInt> {
        Ok(self.size_profile()?.iter().sum())
    }

    /// Count of members of each size: entry `s` is the number of members
    /// with exactly `s` elements.
    ///
    /// Picks whichever of the two counting strategies is cheaper; they
    /// are also exposed separately so tests can cross-check them.
    pub fn size_profile(&self) -> Result<Vec<BigInt>> {
        if self.n() <= self.generators.len() {
            self.size_profile_by_enumeration()
        } else {
            self.size_profile_by_inclusion_exclusion()
        }
    }

    /// Size profile by walking all 2^n subsets. Requires n within the
    /// enumeration cap.
    pub fn size_profile_by_enumeration(&self) -> Result<Vec<BigInt>> {
        let n = self.n();
        let cap = enumeration_cap();
        if n > cap {
            return Err(Error::EnumerationCapExceeded { n, cap });
        }
        let mut profile = vec![0u64; n + 1];
        for bits in 0..(1u128 << n) {
            let set = Mask(bits);
            if self.generators.iter().any(|g| g.is_subset_of(set)) {
                profile[set.size()] += 1;
            }
        }
        Ok(profile.into_iter().map(BigInt::from).collect())
    }

    /// Size profile by inclusion–exclusion over unions of generators.
    /// Requires the generator count within the enumeration cap.
    ///
    /// For each nonempty generator subset T with |∪T| = u, the members of
    /// size s containing ∪T number C(n-u, s-u), signed by (-1)^(|T|+1).
    /// Subtrees whose partial union is already the full ground set cancel
    /// to zero and are skipped.
    pub fn size_profile_by_inclusion_exclusion(&self) -> Result<Vec<BigInt>> {
        let n = self.n();
        let m = self.generators.len();
        let cap = enumeration_cap();
        if m > cap {
            return Err(Error::EnumerationCapExceeded { n: m, cap });
        }
        // Signed count of generator subsets by union size: entry u sums
        // (-1)^(|T|+1) over nonempty T with |∪T| = u.
        let mut signed_by_union = vec![BigInt::zero(); n + 1];
        let full = self.ground.full_mask();
        let mut stack: Vec<(usize, Mask, bool)> = vec![(0, Mask::EMPTY, false)];
        while let Some((next, union, odd)) = stack.pop() {
            if next == m {
                // The empty selection is not part of the alternating sum;
                // generators are nonempty, so it is exactly union == ∅.
                if !union.is_empty() {
                    if odd {
                        signed_by_union[union.size()] += 1;
                    } else {
                        signed_by_union[union.size()] -= 1;
                    }
                }
                continue;
            }
            if union == full {
                // Each completion pairs an even with an odd extension of
                // the same (full) union, so the subtree cancels to zero.
                continue;
            }
            stack.push((next + 1, union, odd));
            stack.push((next + 1, union.union(self.generators[next]), !odd));
        }
        let mut profile = vec![BigInt::zero(); n + 1];
        for (u, signed) in signed_by_union.iter().enumerate() {
            if signed.is_zero() {
                continue;
            }
            for s in u..=n {
                profile[s] += signed * binomial(n - u, s - u);
            }
        }
        debug_assert!(profile.iter().all(|c| !c.is_negative()));
        Ok(profile)
    }

    /// Convenience: member count as `u64` when it fits (n <= 63).
    pub fn member_count_u64(&self) -> Result<u64> {
        let count = self.member_count()?;
        count
            .to_u64()
            .ok_or_else(|| Error::Internal("member count exceeds u64".into()))
    }
}

/// Reduces a raw generator list to the canonical minimal-antichain family.
///
/// This is the same operation as [`Family::new`], named for use at call
/// sites that read as data cleanup rather than construction.
pub fn normalize(ground: GroundSet, generators: Vec<Mask>) -> Result<Family> {
    Family::new(ground, generators)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat_int;
    use num_rational::BigRational;

    fn fam(n: usize, gens: &[&[usize]]) -> Family {
        let ground = GroundSet::numbered(n).unwrap();
        Family::new(
            ground,
            gens.iter().map(|g| Mask::from_indices(g.iter().copied())),
        )
        .unwrap()
    }

    #[test]
    fn normalization_removes_supersets_and_duplicates() {
        // {1,2} absorbs {1,2,3}; duplicates collapse.
        let f = fam(3, &[&[0, 1, 2], &[0, 1], &[0, 1]]);
        assert_eq!(f.generators(), &[Mask::from_indices([0, 1])]);

        // An antichain is untouched but canonically sorted.
        let f = fam(3, &[&[1, 2], &[0]]);
        assert_eq!(
            f.generators(),
            &[Mask::from_indices([0]), Mask::from_indices([1, 2])]
        );
    }

    #[test]
    fn construction_rejects_degenerate_input() {
        let g = GroundSet::numbered(3).unwrap();
        assert!(matches!(
            Family::new(g.clone(), []),
            Err(Error::EmptyFamily)
        ));
        assert!(matches!(
            Family::new(g.clone(), [Mask::EMPTY]),
            Err(Error::EmptyGenerator)
        ));
        assert!(matches!(
            Family::new(g, [Mask::singleton(7)]),
            Err(Error::ForeignSet)
        ));
    }

    #[test]
    fn membership_is_containment_of_a_generator() {
        let f = fam(3, &[&[0, 1], &[0, 2]]);
        assert!(f.contains(Mask::from_indices([0, 1])));
        assert!(f.contains(Mask::from_indices([0, 1, 2])));
        assert!(!f.contains(Mask::from_indices([1, 2])));
        assert!(!f.contains(Mask::EMPTY));
    }

    #[test]
    fn membership_is_monotone_small_exhaustive() {
        // Over every family on [3] with up to two generators: if A is a
        // member then every superset is too.
        let n = 3usize;
        for g1 in 1u128..8 {
            for g2 in 1u128..8 {
                let f = fam(n, &[
                    &Mask(g1).indices().collect::<Vec<_>>()[..],
                    &Mask(g2).indices().collect::<Vec<_>>()[..],
                ]);
                for bits in 0..(1u128 << n) {
                    let a = Mask(bits);
                    if f.contains(a) {
                        for sup in 0..(1u128 << n) {
                            if a.is_subset_of(Mask(sup)) {
                                assert!(f.contains(Mask(sup)));
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn counting_strategies_agree_exhaustively() {
        // All antichain presentations with up to 3 generators over [4].
        let n = 4usize;
        let subsets: Vec<u128> = (1..(1u128 << n)).collect();
        for i in 0..subsets.len() {
            for j in i..subsets.len() {
                for k in j..subsets.len() {
                    let f = Family::new(
                        GroundSet::numbered(n).unwrap(),
                        [Mask(subsets[i]), Mask(subsets[j]), Mask(subsets[k])],
                    )
                    .unwrap();
                    assert_eq!(
                        f.size_profile_by_enumeration().unwrap(),
                        f.size_profile_by_inclusion_exclusion().unwrap(),
                        "profiles disagree for {:?}",
                        f.generators()
                    );
                }
            }
        }
    }

    #[test]
    fn member_count_of_single_generator_family() {
        // Members of <{1,2}> over [n] are the 2^(n-2) supersets of {1,2}.
        for n in 2..=10usize {
            let f = fam(n, &[&[0, 1]]);
            assert_eq!(f.member_count_u64().unwrap(), 1u64 << (n - 2));
        }
    }

    #[test]
    fn member_count_matches_hand_computed_antichain() {
        // F = <{1,2,3}, {1,2}, {1,3}> reduces to <{1,2}, {1,3}> whose
        // members over [3] are {1,2}, {1,3}, {1,2,3}.
        let f = fam(3, &[&[0, 1, 2], &[0, 1], &[0, 2]]);
        assert_eq!(f.num_generators(), 2);
        assert_eq!(f.member_count_u64().unwrap(), 3);
        let profile = f.size_profile().unwrap();
        assert_eq!(profile, vec![
            BigInt::zero(),
            BigInt::zero(),
            BigInt::from(2),
            BigInt::from(1)
        ]);
    }

    #[test]
    fn profile_sums_to_count_and_respects_bounds() {
        let f = fam(5, &[&[0], &[1, 2], &[3, 4]]);
        let profile = f.size_profile().unwrap();
        let total: BigInt = profile.iter().sum();
        assert_eq!(total, f.member_count().unwrap());
        // Every set of size >= n - 0 containing the full set is a member;
        // the full set itself always is.
        assert_eq!(profile[5], BigInt::from(1));
        assert!(profile[0].is_zero());
    }

    #[test]
    fn enumeration_cap_is_enforced() {
        let ground = GroundSet::numbered(30).unwrap();
        let f = Family::new(ground, [Mask::from_indices([0, 1])]).unwrap();
        // 2^30 subsets is over the default cap; inclusion-exclusion over
        // a single generator is trivial and must be chosen automatically.
        assert!(f.size_profile_by_enumeration().is_err());
        assert_eq!(f.member_count_u64().unwrap(), 1u64 << 28);
    }

    #[test]
    fn largest_and_smallest_minimal_sizes() {
        let f = fam(4, &[&[0], &[1, 2, 3]]);
        assert_eq!(f.largest_minimal_size(), 3);
        assert_eq!(f.smallest_minimal_size(), 1);
    }

    #[test]
    fn normalize_is_idempotent() {
        let f = fam(4, &[&[0, 1, 2], &[0, 1], &[2, 3], &[1, 2, 3]]);
        let again = Family::new(f.ground().clone(), f.generators().to_vec()).unwrap();
        assert_eq!(f, again);
    }

    #[test]
    fn rational_profile_weights_sum_to_one_at_half() {
        // Sanity bridge to probability work: sum of c_s (1/2)^n over the
        // profile equals member_count / 2^n.
        let f = fam(4, &[&[0, 1], &[1, 2], &[2, 3]]);
        let profile = f.size_profile().unwrap();
        let total: BigInt = profile.iter().sum();
        let frac = BigRational::new(total, BigInt::from(16));
        assert_eq!(
            frac,
            BigRational::new(f.member_count().unwrap(), BigInt::from(16))
        );
        assert!(frac > rat_int(0) && frac < rat_int(1));
    }
}
