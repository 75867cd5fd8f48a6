//! The k-fold cloning transform on grounds, families, and covers.
//!
//! Cloning replaces each ground element by k copies; a cloned set belongs
//! to the transformed family when its copy-collapsing projection belongs
//! to the original. Minimal generators transform by taking all minimal
//! pre-images (one copy per element, `k^|S|` of them), which multiplies
//! cover costs by exactly 1 when the rate is divided by k. The reverse
//! direction extracts, from any cover of the clone, a base cover whose
//! cost at rate k·q is at most the original cost at rate q, by
//! derandomizing an averaging argument over the k^n ways of choosing one
//! copy per element.

use num_rational::BigRational;
use num_traits::One;

use crate::cover::{Cover, POOL_CAP};
use crate::error::{Error, Result};
use crate::family::Family;
use crate::ground::{GroundSet, Mask, MAX_GROUND};
use crate::rational::rat;

/// Correspondence between a ground set and its k-fold clone.
///
/// Copy j of base element x lives at cloned index `x*k + j`, so each
/// fibre occupies a contiguous index block. Cloned labels append a copy
/// tag to the base label: a letter for k at most 26, `.1`-style numbers
/// beyond that.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CloneMap {
    base: GroundSet,
    cloned: GroundSet,
    k: usize,
}

impl CloneMap {
    pub fn new(base: &GroundSet, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::OutOfRange {
                name: "k",
                value: k.to_string(),
                range: "[1, inf)",
            });
        }
        let size = base.len().checked_mul(k).unwrap_or(usize::MAX);
        if size > MAX_GROUND {
            return Err(Error::CloneCapExceeded {
                k,
                size,
                cap: MAX_GROUND,
            });
        }
        let mut labels = Vec::with_capacity(size);
        for label in base.labels() {
            for copy in 0..k {
                labels.push(copy_label(label, copy, k));
            }
        }
        let cloned = GroundSet::new(labels)?;
        Ok(CloneMap {
            base: base.clone(),
            cloned,
            k,
        })
    }

    pub fn base(&self) -> &GroundSet {
        &self.base
    }

    pub fn cloned(&self) -> &GroundSet {
        &self.cloned
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Cloned index of copy `copy` of base element `x`.
    pub fn clone_index(&self, x: usize, copy: usize) -> usize {
        debug_assert!(x < self.base.len() && copy < self.k);
        x * self.k + copy
    }

    /// Base element and copy number of a cloned index.
    pub fn base_index(&self, cloned: usize) -> (usize, usize) {
        debug_assert!(cloned < self.cloned.len());
        (cloned / self.k, cloned % self.k)
    }

    /// Collapses copies: the set of base elements with at least one copy.
    pub fn project_mask(&self, mask: Mask) -> Mask {
        let mut out = Mask::EMPTY;
        for i in mask.indices() {
            out = out.union(Mask::singleton(i / self.k));
        }
        out
    }

    /// True if the mask holds at most one copy of each base element.
    pub fn is_duplicate_free(&self, mask: Mask) -> bool {
        mask.size() == self.project_mask(mask).size()
    }

    /// All minimal pre-images of a base set: one copy chosen per element.
    ///
    /// There are exactly `k^|S|` of them; the result is in canonical
    /// order.
    pub fn minimal_preimages(&self, base_set: Mask) -> Result<Vec<Mask>> {
        self.check_blowup(base_set.size())?;
        let mut out = vec![Mask::EMPTY];
        for x in base_set.indices() {
            let mut grown = Vec::with_capacity(out.len() * self.k);
            for partial in &out {
                for copy in 0..self.k {
                    grown.push(partial.union(Mask::singleton(self.clone_index(x, copy))));
                }
            }
            out = grown;
        }
        out.sort_unstable();
        Ok(out)
    }

    /// The cloned family: sets whose projection belongs to the original.
    ///
    /// Its minimal generators are exactly the minimal pre-images of the
    /// original generators.
    pub fn clone_family(&self, family: &Family) -> Result<Family> {
        self.check_base_ground(family.ground())?;
        let mut total: usize = 0;
        for gen in family.generators() {
            let piece = self.checked_pow(gen.size())?;
            total = total.checked_add(piece).unwrap_or(usize::MAX);
        }
        if total > POOL_CAP {
            return Err(Error::CloneCapExceeded {
                k: self.k,
                size: total,
                cap: POOL_CAP,
            });
        }
        let mut gens = Vec::with_capacity(total);
        for gen in family.generators() {
            gens.extend(self.minimal_preimages(*gen)?);
        }
        Family::new(self.cloned.clone(), gens)
    }

    /// Clones a cover member-by-member via minimal pre-images.
    ///
    /// The result covers the cloned family whenever the input covers the
    /// original, and its cost at rate q/k equals the input cost at q.
    pub fn clone_cover(&self, cover: &Cover) -> Result<Cover> {
        let mut members = Vec::new();
        for member in cover.members() {
            members.extend(self.minimal_preimages(*member)?);
        }
        Ok(Cover::new(members))
    }

    /// Projects each member down to the base ground, merging duplicates.
    pub fn project_cover(&self, cover: &Cover) -> Cover {
        Cover::new(cover.members().iter().map(|m| self.project_mask(*m)))
    }

    /// True if the cover arises by cloning some cover of the base family.
    ///
    /// Cloned covers are recognised by reconstruction: every member must
    /// be duplicate-free, and re-cloning the projected cover must give
    /// the cover back.
    pub fn is_cloned_cover(&self, cover: &Cover) -> Result<bool> {
        if !cover
            .members()
            .iter()
            .all(|m| self.is_duplicate_free(*m))
        {
            return Ok(false);
        }
        let rebuilt = self.clone_cover(&self.project_cover(cover))?;
        Ok(rebuilt == *cover)
    }

    /// Extracts a base cover from a cover of the cloned family.
    ///
    /// Fixing one copy per base element keeps only the members that fit
    /// the chosen transversal; their projections cover the base family,
    /// and on average over all k^n transversals the projected cost at
    /// rate k·q is at most the input cost at rate q. Choosing each copy
    /// to minimise the conditional expectation makes the bound
    /// deterministic:
    /// `cost(result, k*q) <= cost(cloned_cover, q)`.
    ///
    /// Fails if the survivors do not cover the base family, which can
    /// only happen when the input did not cover the clone.
    pub fn extract_base_cover(
        &self,
        base_family: &Family,
        cloned_cover: &Cover,
        q: &BigRational,
    ) -> Result<Cover> {
        self.check_base_ground(base_family.ground())?;
        let n = self.base.len();
        let kq = q * rat(self.k as i64, 1);
        // Only duplicate-free members can fit inside a transversal; each
        // is recorded as its per-fibre copy choices plus its weight
        // (k*q)^|S|.
        let members: Vec<(Vec<(usize, usize)>, BigRational)> = cloned_cover
            .members()
            .iter()
            .filter(|m| self.is_duplicate_free(**m))
            .map(|m| {
                let choices: Vec<(usize, usize)> =
                    m.indices().map(|i| self.base_index(i)).collect();
                let weight = kq.pow(m.size() as i32);
                (choices, weight)
            })
            .collect();
        let inv_k = rat(1, self.k as i64);
        let mut fixed: Vec<Option<usize>> = vec![None; n];
        // Expected surviving cost given the choices fixed so far: each
        // compatible member contributes weight / k^(unfixed fibres it
        // touches).
        let expected = |fixed: &[Option<usize>]| -> BigRational {
            let mut total = BigRational::from_integer(0.into());
            for (choices, weight) in &members {
                let mut factor = BigRational::one();
                let mut compatible = true;
                for (x, copy) in choices {
                    match fixed[*x] {
                        Some(c) if c != *copy => {
                            compatible = false;
                            break;
                        }
                        Some(_) => {}
                        None => factor *= &inv_k,
                    }
                }
                if compatible {
                    total += weight * factor;
                }
            }
            total
        };
        for x in 0..n {
            let mut best_copy = 0;
            let mut best_value: Option<BigRational> = None;
            for copy in 0..self.k {
                fixed[x] = Some(copy);
                let value = expected(&fixed);
                if best_value.as_ref().is_none_or(|b| value < *b) {
                    best_value = Some(value);
                    best_copy = copy;
                }
            }
            fixed[x] = Some(best_copy);
        }
        let survivors = members.iter().filter(|(choices, _)| {
            choices.iter().all(|(x, copy)| fixed[*x] == Some(*copy))
        });
        let projected = Cover::new(survivors.map(|(choices, _)| {
            Mask::from_indices(choices.iter().map(|(x, _)| *x))
        }));
        if !projected.is_cover_of(base_family) {
            return Err(Error::Internal(
                "transversal extraction produced a non-cover; the input \
                 does not cover the cloned family"
                    .into(),
            ));
        }
        Ok(projected)
    }

    fn check_base_ground(&self, ground: &GroundSet) -> Result<()> {
        if *ground != self.base {
            return Err(Error::ForeignSet);
        }
        Ok(())
    }

    fn checked_pow(&self, exp: usize) -> Result<usize> {
        let mut out: usize = 1;
        for _ in 0..exp {
            out = out.checked_mul(self.k).unwrap_or(usize::MAX);
        }
        Ok(out)
    }

    fn check_blowup(&self, set_size: usize) -> Result<()> {
        let count = self.checked_pow(set_size)?;
        if count > POOL_CAP {
            return Err(Error::CloneCapExceeded {
                k: self.k,
                size: count,
                cap: POOL_CAP,
            });
        }
        Ok(())
    }
}

fn copy_label(base: &str, copy: usize, k: usize) -> String {
    if k <= 26 {
        let letter = (b'a' + copy as u8) as char;
        format!("{base}{letter}")
    } else {
        format!("{base}.{}", copy + 1)
    }
}
