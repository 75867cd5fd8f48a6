//! Permutation symmetry of families and of their cheapest covers.
//!
//! A permutation group acting on the ground set partitions cover
//! candidates into orbits; a cover is symmetric when it is a union of
//! orbits. The minimum cost over symmetric covers is found by the same
//! branch-and-bound as the unconstrained optimum, with each orbit priced
//! as an all-or-nothing block. Comparing the two optima decides whether
//! symmetry is free at a given rate — it is not always.

use std::collections::BTreeSet;

use num_rational::BigRational;

use crate::cover::{candidate_pool, Cover};
use crate::error::{Error, Result};
use crate::family::Family;
use crate::ground::Mask;
use crate::solver::{min_cost_cover, min_cost_over_groups, CandidateGroup};

/// Largest permutation-group order the closure computation will build.
pub const GROUP_CAP: usize = 1 << 16;

/// A permutation group on ground indices, stored as its full element
/// list.
///
/// Permutations map index `i` to `perm[i]`. The element list is closed
/// under composition, contains the identity, and is kept sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermutationGroup {
    n: usize,
    elements: Vec<Vec<usize>>,
}

impl PermutationGroup {
    /// The trivial group on `n` points.
    pub fn identity(n: usize) -> Self {
        PermutationGroup {
            n,
            elements: vec![(0..n).collect()],
        }
    }

    /// Closes the given generators under composition.
    ///
    /// Fails on malformed generators and when the group would exceed
    /// [`GROUP_CAP`] elements.
    pub fn generate(n: usize, generators: &[Vec<usize>]) -> Result<Self> {
        for perm in generators {
            validate_permutation(n, perm)?;
        }
        let mut elements: BTreeSet<Vec<usize>> = BTreeSet::new();
        elements.insert((0..n).collect());
        let mut frontier: Vec<Vec<usize>> = elements.iter().cloned().collect();
        while let Some(current) = frontier.pop() {
            for gen in generators {
                let composed: Vec<usize> = (0..n).map(|i| gen[current[i]]).collect();
                if elements.insert(composed.clone()) {
                    if elements.len() > GROUP_CAP {
                        return Err(Error::GroupCapExceeded { cap: GROUP_CAP });
                    }
                    frontier.push(composed);
                }
            }
        }
        Ok(PermutationGroup {
            n,
            elements: elements.into_iter().collect(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Vec<usize>] {
        &self.elements
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    /// Image of a mask under one permutation.
    pub fn apply(perm: &[usize], mask: Mask) -> Mask {
        Mask::from_indices(mask.indices().map(|i| perm[i]))
    }

    /// True if every group element maps the family onto itself.
    ///
    /// Minimal generators are canonical for a family, so invariance is
    /// checked on the generator list.
    pub fn stabilizes(&self, family: &Family) -> bool {
        if family.n() != self.n {
            return false;
        }
        let gens: BTreeSet<Mask> = family.generators().iter().copied().collect();
        self.elements.iter().all(|perm| {
            gens.iter()
                .map(|g| Self::apply(perm, *g))
                .collect::<BTreeSet<_>>()
                == gens
        })
    }

    /// Partitions the masks into orbits, each sorted canonically.
    ///
    /// Orbits are returned in canonical order of their smallest member.
    pub fn orbits(&self, masks: &[Mask]) -> Vec<Vec<Mask>> {
        let mut remaining: BTreeSet<Mask> = masks.iter().copied().collect();
        let mut out = Vec::new();
        while let Some(seed) = remaining.iter().next().copied() {
            let orbit: BTreeSet<Mask> = self
                .elements
                .iter()
                .map(|perm| Self::apply(perm, seed))
                .collect();
            for m in &orbit {
                remaining.remove(m);
            }
            out.push(orbit.into_iter().collect());
        }
        out
    }
}

fn validate_permutation(n: usize, perm: &[usize]) -> Result<()> {
    if perm.len() != n {
        return Err(Error::InvalidPermutation {
            reason: format!("expected {n} entries, got {}", perm.len()),
        });
    }
    let mut seen = vec![false; n];
    for &image in perm {
        if image >= n {
            return Err(Error::InvalidPermutation {
                reason: format!("image {image} outside 0..{n}"),
            });
        }
        if seen[image] {
            return Err(Error::InvalidPermutation {
                reason: format!("image {image} repeated"),
            });
        }
        seen[image] = true;
    }
    Ok(())
}

/// Outcome of comparing unconstrained and symmetric cover optima.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetricSearch {
    /// Minimum cover cost with no symmetry constraint.
    pub min_cost: BigRational,
    /// Canonical unconstrained optimum.
    pub min_cover: Cover,
    /// Minimum cost over covers that are unions of candidate orbits.
    pub symmetric_cost: BigRational,
    /// Canonical cheapest symmetric cover.
    pub symmetric_cover: Cover,
}

impl SymmetricSearch {
    /// True if symmetry costs nothing: some cheapest cover is a union of
    /// orbits.
    pub fn symmetry_is_free(&self) -> bool {
        self.symmetric_cost == self.min_cost
    }
}

/// Compares the cheapest cover with the cheapest group-invariant cover.
///
/// The group must stabilize the family; candidate orbits are then
/// well-defined and the symmetric optimum is the exact minimum over all
/// covers fixed by the group.
pub fn symmetric_search(
    family: &Family,
    group: &PermutationGroup,
    q: &BigRational,
) -> Result<SymmetricSearch> {
    if !group.stabilizes(family) {
        return Err(Error::InvalidPermutation {
            reason: "group does not stabilize the family".into(),
        });
    }
    let (min_cost, min_cover) = min_cost_cover(family, q)?;
    let pool = candidate_pool(family)?;
    let groups: Vec<CandidateGroup> = group
        .orbits(&pool)
        .into_iter()
        .map(|masks| CandidateGroup { masks })
        .collect();
    let (symmetric_cost, symmetric_cover) = min_cost_over_groups(family, groups, q)?;
    debug_assert!(symmetric_cost >= min_cost);
    Ok(SymmetricSearch {
        min_cost,
        min_cover,
        symmetric_cost,
        symmetric_cover,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ground::GroundSet;
    use crate::rational::rat;

    fn fam(n: usize, gens: &[&[usize]]) -> Family {
        Family::new(
            GroundSet::numbered(n).unwrap(),
            gens.iter().map(|g| Mask::from_indices(g.iter().copied())),
        )
        .unwrap()
    }

    #[test]
    fn closure_of_a_cycle_and_a_swap_is_the_symmetric_group() {
        let cycle = vec![1usize, 2, 0];
        let swap = vec![1usize, 0, 2];
        let g = PermutationGroup::generate(3, &[cycle, swap]).unwrap();
        assert_eq!(g.order(), 6);
        // Closed: composing any two elements stays inside.
        for a in g.elements() {
            for b in g.elements() {
                let ab: Vec<usize> = (0..3).map(|i| a[b[i]]).collect();
                assert!(g.elements().contains(&ab));
            }
        }
    }

    #[test]
    fn identity_group_is_trivial() {
        let g = PermutationGroup::identity(4);
        assert!(g.is_trivial());
        assert_eq!(g.order(), 1);
        let h = PermutationGroup::generate(4, &[]).unwrap();
        assert_eq!(g, h);
    }

    #[test]
    fn malformed_permutations_are_rejected() {
        assert!(matches!(
            PermutationGroup::generate(3, &[vec![0, 1]]),
            Err(Error::InvalidPermutation { .. })
        ));
        assert!(matches!(
            PermutationGroup::generate(3, &[vec![0, 1, 3]]),
            Err(Error::InvalidPermutation { .. })
        ));
        assert!(matches!(
            PermutationGroup::generate(3, &[vec![0, 1, 1]]),
            Err(Error::InvalidPermutation { .. })
        ));
    }

    #[test]
    fn stabilizer_check_sees_through_generator_relabeling() {
        // The 4-cycle edges are invariant under rotation but not under a
        // transposition of adjacent vertices... the transposition (0 1)
        // maps edge {1,2} to {0,2}, which is not an edge.
        let f = fam(4, &[&[0, 1], &[1, 2], &[2, 3], &[0, 3]]);
        let rotation = PermutationGroup::generate(4, &[vec![1, 2, 3, 0]]).unwrap();
        assert_eq!(rotation.order(), 4);
        assert!(rotation.stabilizes(&f));
        let transposition = PermutationGroup::generate(4, &[vec![1, 0, 2, 3]]).unwrap();
        assert!(!transposition.stabilizes(&f));
    }

    #[test]
    fn orbit_partition_is_exact() {
        let rotation = PermutationGroup::generate(4, &[vec![1, 2, 3, 0]]).unwrap();
        let singletons: Vec<Mask> = (0..4).map(Mask::singleton).collect();
        let orbits = rotation.orbits(&singletons);
        assert_eq!(orbits.len(), 1);
        assert_eq!(orbits[0].len(), 4);
        // Opposite pairs split from adjacent pairs under rotation.
        let pairs: Vec<Mask> = [
            [0usize, 1],
            [1, 2],
            [2, 3],
            [0, 3],
            [0, 2],
            [1, 3],
        ]
        .iter()
        .map(|p| Mask::from_indices(p.iter().copied()))
        .collect();
        let orbits = rotation.orbits(&pairs);
        assert_eq!(orbits.len(), 2);
        let sizes: Vec<usize> = orbits.iter().map(|o| o.len()).collect();
        assert_eq!(sizes, vec![4, 2]);
    }

    #[test]
    fn symmetric_optimum_matches_when_generators_win() {
        // Triangle of pairs at a small rate: the all-pairs cover is both
        // optimal and invariant under the full symmetric group.
        let f = fam(3, &[&[0, 1], &[0, 2], &[1, 2]]);
        let g =
            PermutationGroup::generate(3, &[vec![1, 2, 0], vec![1, 0, 2]]).unwrap();
        let out = symmetric_search(&f, &g, &rat(1, 5)).unwrap();
        assert!(out.symmetry_is_free());
        assert_eq!(out.min_cost, rat(3, 25));
        assert_eq!(out.symmetric_cover, out.min_cover);
    }

    #[test]
    fn symmetry_can_cost_extra() {
        // Shared-singleton family with the swap fixing the shared
        // element: the optimum {{1}} is itself invariant, so symmetry is
        // free.
        let f = fam(3, &[&[0, 1], &[0, 2]]);
        let swap = PermutationGroup::generate(3, &[vec![0, 2, 1]]).unwrap();
        assert!(swap.stabilizes(&f));
        let out = symmetric_search(&f, &swap, &rat(1, 2)).unwrap();
        assert!(out.symmetry_is_free());
        // Triangle of pairs under the full symmetric group at q = 11/20:
        // the optima pair one vertex with the opposite edge, cost
        // q + q^2 = 341/400; the cheapest orbit-closed cover takes all
        // three edges at 3q^2 = 363/400.
        let triangle = fam(3, &[&[0, 1], &[0, 2], &[1, 2]]);
        let s3 =
            PermutationGroup::generate(3, &[vec![1, 2, 0], vec![1, 0, 2]]).unwrap();
        let q = rat(11, 20);
        let out = symmetric_search(&triangle, &s3, &q).unwrap();
        assert_eq!(out.min_cost, rat(341, 400));
        assert_eq!(
            out.min_cover,
            Cover::new([Mask::from_indices([0usize]), Mask::from_indices([1usize, 2])])
        );
        assert_eq!(out.symmetric_cost, rat(363, 400));
        assert_eq!(
            out.symmetric_cover,
            Cover::new([
                Mask::from_indices([0usize, 1]),
                Mask::from_indices([0usize, 2]),
                Mask::from_indices([1usize, 2]),
            ])
        );
        assert!(!out.symmetry_is_free());
    }

    #[test]
    fn search_requires_a_stabilizing_group() {
        let f = fam(3, &[&[0, 1]]);
        let g = PermutationGroup::generate(3, &[vec![1, 2, 0]]).unwrap();
        assert!(matches!(
            symmetric_search(&f, &g, &rat(1, 3)),
            Err(Error::InvalidPermutation { .. })
        ));
    }

    #[test]
    fn group_cap_is_enforced() {
        // S_9 has order 362880 > 2^16.
        let cycle: Vec<usize> = (1..9).chain([0]).collect();
        let swap: Vec<usize> = vec![1, 0, 2, 3, 4, 5, 6, 7, 8];
        assert!(matches!(
            PermutationGroup::generate(9, &[cycle, swap]),
            Err(Error::GroupCapExceeded { .. })
        ));
    }
}
