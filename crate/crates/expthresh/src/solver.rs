//! Exact minimum-cost cover search.
//!
//! Searches the candidate pool (all subsets of generators, including the
//! empty set) by branch and bound: branch on the uncovered generator with
//! the fewest usable candidates, explore candidates cheapest-first with
//! exclusion branching so no cover is visited twice, and prune with an
//! admissible greedy-dual lower bound. All arithmetic is on scaled
//! integers, so comparisons with the cap and with incumbents are exact.
//!
//! Three entry points share the machinery: the exact optimum with a
//! canonical tie-break, a cap-bounded decision (strictly cheaper than the
//! cap / exactly the cap / provably above), and enumeration of all optima.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::cover::{candidate_pool, validate_rate, Cover};
use crate::error::{Error, Result};
use crate::family::Family;
use crate::ground::Mask;

/// Outcome of a cap-bounded cover search at rate q.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CappedSearch {
    /// A cover strictly cheaper than the cap (witness attached).
    Cheap(Cover),
    /// The minimum equals the cap exactly (witness attached).
    Exactly(Cover),
    /// Every cover costs strictly more than the cap.
    Expensive,
}

/// All minimum-cost covers at a given rate, possibly truncated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OptimaEnumeration {
    /// The exact minimum cost.
    pub min_cost: BigRational,
    /// Minimum-cost covers in canonical order, at most the given limit.
    pub covers: Vec<Cover>,
    /// True if more optima exist than the limit allowed.
    pub truncated: bool,
}

/// A pool entry treated atomically by the search: choosing it puts all of
/// its masks into the cover at once. Ordinary search uses one mask per
/// group; symmetry-restricted search uses whole orbits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct CandidateGroup {
    pub masks: Vec<Mask>,
}

/// Exact minimum-cost cover of `family` at rate `q` in (0, 1).
///
/// Ties are broken canonically: fewest members, then lexicographic on the
/// sorted member list. The optimum is automatically irredundant because
/// every member has strictly positive cost.
pub fn min_cost_cover(family: &Family, q: &BigRational) -> Result<(BigRational, Cover)> {
    validate_rate(q)?;
    let inst = Instance::build_from_pool(family, q, BigInt::from(1))?;
    let (cost, cover) = run_optimize(&inst);
    Ok((inst.unscale(&cost), cover))
}

/// Decides how the minimum cover cost at rate `q` compares to `cap`.
///
/// Much faster than computing the exact minimum when the answer is clear:
/// a greedy incumbent below the cap or a root lower bound above it settle
/// the question without search.
pub fn solve_capped(family: &Family, q: &BigRational, cap: &BigRational) -> Result<CappedSearch> {
    validate_rate(q)?;
    if *cap <= BigRational::zero() {
        return Err(Error::OutOfRange {
            name: "cap",
            value: cap.to_string(),
            range: "(0, inf)",
        });
    }
    let inst = Instance::build_from_pool(family, q, cap.denom().clone())?;
    let cap_int = cap.numer() * &inst.rate_den_pow;
    Ok(run_capped(&inst, &cap_int))
}

/// Enumerates every minimum-cost cover at rate `q`, up to `limit`.
pub fn cheapest_covers(family: &Family, q: &BigRational, limit: usize) -> Result<OptimaEnumeration> {
    validate_rate(q)?;
    let inst = Instance::build_from_pool(family, q, BigInt::from(1))?;
    let (min_int, _) = run_optimize(&inst);
    let (covers, truncated) = run_enumerate(&inst, &min_int, limit);
    Ok(OptimaEnumeration {
        min_cost: inst.unscale(&min_int),
        covers,
        truncated,
    })
}

/// Exact minimum over covers assembled from the given groups only.
/// Every generator must be coverable by some group.
pub(crate) fn min_cost_over_groups(
    family: &Family,
    groups: Vec<CandidateGroup>,
    q: &BigRational,
) -> Result<(BigRational, Cover)> {
    validate_rate(q)?;
    let inst = Instance::build(family, groups, q, BigInt::from(1))?;
    let (cost, cover) = run_optimize(&inst);
    Ok((inst.unscale(&cost), cover))
}

// ---------------------------------------------------------------------
// Scaled-integer instance representation.

/// Small bitset over generator or candidate indices.
type Words = Vec<u64>;

fn words_for(n: usize) -> usize {
    n.div_ceil(64)
}

fn bit_set(words: &mut [u64], i: usize) {
    words[i / 64] |= 1 << (i % 64);
}

fn bit_get(words: &[u64], i: usize) -> bool {
    words[i / 64] >> (i % 64) & 1 == 1
}

fn iter_bits(words: &[u64]) -> impl Iterator<Item = usize> + '_ {
    words.iter().enumerate().flat_map(|(w, &bits)| {
        let mut rest = bits;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(w * 64 + b)
            }
        })
    })
}

struct Instance {
    groups: Vec<CandidateGroup>,
    /// Integer cost of each group in units of `1 / (cap_den * b^smax)`
    /// where q = a/b reduced and smax is the largest mask size in play.
    costs: Vec<BigInt>,
    /// Per candidate: bitset of generators it covers.
    covers: Vec<Words>,
    /// Per generator: candidates covering it, cheapest first.
    by_gen: Vec<Vec<u32>>,
    /// Generator count and bitset width.
    m: usize,
    gen_words: usize,
    /// `b^smax`, for scaling external rationals into cost units.
    rate_den_pow: BigInt,
    /// `cap_den * b^smax`, the full denominator of the cost units.
    scale: BigInt,
}

impl Instance {
    fn build_from_pool(family: &Family, q: &BigRational, cap_den: BigInt) -> Result<Instance> {
        let pool = candidate_pool(family)?;
        let groups = pool
            .into_iter()
            .map(|mask| CandidateGroup { masks: vec![mask] })
            .collect();
        Instance::build(family, groups, q, cap_den)
    }

    fn build(
        family: &Family,
        groups: Vec<CandidateGroup>,
        q: &BigRational,
        cap_den: BigInt,
    ) -> Result<Instance> {
        let smax = groups
            .iter()
            .flat_map(|g| g.masks.iter().map(|m| m.size()))
            .max()
            .unwrap_or(0);
        let a = q.numer();
        let b = q.denom();
        // Powers a^s and b^(smax-s) for building integer costs.
        let mut a_pows = vec![BigInt::from(1)];
        let mut b_pows = vec![BigInt::from(1)];
        for s in 1..=smax {
            a_pows.push(&a_pows[s - 1] * a);
            b_pows.push(&b_pows[s - 1] * b);
        }
        let rate_den_pow = b_pows[smax].clone();
        let scale = &cap_den * &rate_den_pow;

        let gens = family.generators();
        let m = gens.len();
        let gen_words = words_for(m);
        let mut costs = Vec::with_capacity(groups.len());
        let mut covers = Vec::with_capacity(groups.len());
        for group in &groups {
            let mut cost = BigInt::zero();
            let mut cov = vec![0u64; gen_words];
            for mask in &group.masks {
                let s = mask.size();
                cost += &a_pows[s] * &b_pows[smax - s];
                for (g, gen) in gens.iter().enumerate() {
                    if mask.is_subset_of(*gen) {
                        bit_set(&mut cov, g);
                    }
                }
            }
            costs.push(cost * &cap_den);
            covers.push(cov);
        }

        let mut by_gen: Vec<Vec<u32>> = vec![Vec::new(); m];
        for (c, cov) in covers.iter().enumerate() {
            for g in iter_bits(cov) {
                by_gen[g].push(c as u32);
            }
        }
        for list in &mut by_gen {
            list.sort_by(|&x, &y| costs[x as usize].cmp(&costs[y as usize]).then(x.cmp(&y)));
        }
        if by_gen.iter().any(|l| l.is_empty()) {
            return Err(Error::Internal(
                "a generator has no covering candidate".into(),
            ));
        }
        Ok(Instance {
            groups,
            costs,
            covers,
            by_gen,
            m,
            gen_words,
            rate_den_pow,
            scale,
        })
    }

    fn unscale(&self, cost: &BigInt) -> BigRational {
        BigRational::new(cost.clone(), self.scale.clone())
    }

    fn assemble(&self, chosen: &[u32]) -> Cover {
        Cover::new(
            chosen
                .iter()
                .flat_map(|&c| self.groups[c as usize].masks.iter().copied()),
        )
    }

    fn all_uncovered(&self) -> Words {
        let mut words = vec![u64::MAX; self.gen_words];
        // Clear bits beyond m.
        for i in self.m..self.gen_words * 64 {
            words[i / 64] &= !(1 << (i % 64));
        }
        words
    }

    /// Admissible lower bound on the cost of covering `uncovered` using
    /// non-forbidden candidates: a greedily built feasible dual. Returns
    /// None if some generator has no usable candidate at all.
    fn dual_bound(&self, uncovered: &[u64], forbidden: &[u64]) -> Option<BigInt> {
        let mut slack = self.costs.clone();
        let mut bound = BigInt::zero();
        for g in iter_bits(uncovered) {
            let mut best: Option<BigInt> = None;
            for &c in &self.by_gen[g] {
                if bit_get(forbidden, c as usize) {
                    continue;
                }
                let s = &slack[c as usize];
                if best.as_ref().is_none_or(|b| s < b) {
                    best = Some(s.clone());
                }
            }
            let y = best?;
            if y.is_zero() {
                continue;
            }
            for &c in &self.by_gen[g] {
                if !bit_get(forbidden, c as usize) {
                    slack[c as usize] -= &y;
                }
            }
            bound += y;
        }
        Some(bound)
    }

    /// Ratio-greedy cover: repeatedly the candidate with the best
    /// cost-per-newly-covered-generator. Deterministic; used to seed the
    /// incumbent so cap decisions on the cheap side exit immediately.
    fn greedy(&self) -> (BigInt, Vec<u32>) {
        let mut uncovered = self.all_uncovered();
        let mut chosen: Vec<u32> = Vec::new();
        let mut total = BigInt::zero();
        while uncovered.iter().any(|&w| w != 0) {
            let mut best: Option<(u32, usize)> = None;
            for c in 0..self.groups.len() {
                let newly = self.covers[c]
                    .iter()
                    .zip(&uncovered)
                    .map(|(cv, un)| (cv & un).count_ones() as usize)
                    .sum::<usize>();
                if newly == 0 {
                    continue;
                }
                let better = match best {
                    None => true,
                    Some((bc, bn)) => {
                        // cost_c / newly < cost_b / bn, exactly.
                        let lhs = &self.costs[c] * BigInt::from(bn);
                        let rhs = &self.costs[bc as usize] * BigInt::from(newly);
                        lhs < rhs
                    }
                };
                if better {
                    best = Some((c as u32, newly));
                }
            }
            let (c, _) = best.expect("pool covers every generator");
            for (un, cv) in uncovered.iter_mut().zip(&self.covers[c as usize]) {
                *un &= !cv;
            }
            total += &self.costs[c as usize];
            chosen.push(c);
        }
        (total, chosen)
    }
}

// ---------------------------------------------------------------------
// The three search modes over a shared depth-first core.

enum Mode {
    Optimize {
        best: Option<(BigInt, Cover)>,
    },
    Capped {
        cap: BigInt,
        exact: Option<Cover>,
        cheap: Option<Cover>,
    },
    Enumerate {
        target: BigInt,
        limit: usize,
        found: BTreeSet<Cover>,
        overflow: bool,
    },
}

fn run_optimize(inst: &Instance) -> (BigInt, Cover) {
    let (greedy_cost, greedy_chosen) = inst.greedy();
    let mut mode = Mode::Optimize {
        best: Some((greedy_cost, inst.assemble(&greedy_chosen))),
    };
    let uncovered = inst.all_uncovered();
    let forbidden = vec![0u64; words_for(inst.groups.len())];
    dfs(inst, &mut mode, &uncovered, &forbidden, &mut Vec::new(), BigInt::zero());
    match mode {
        Mode::Optimize { best } => best.expect("search always finds a cover"),
        _ => unreachable!(),
    }
}

fn run_capped(inst: &Instance, cap: &BigInt) -> CappedSearch {
    let (greedy_cost, greedy_chosen) = inst.greedy();
    if &greedy_cost < cap {
        return CappedSearch::Cheap(inst.assemble(&greedy_chosen));
    }
    let exact = if &greedy_cost == cap {
        Some(inst.assemble(&greedy_chosen))
    } else {
        None
    };
    let mut mode = Mode::Capped {
        cap: cap.clone(),
        exact,
        cheap: None,
    };
    let uncovered = inst.all_uncovered();
    let forbidden = vec![0u64; words_for(inst.groups.len())];
    dfs(inst, &mut mode, &uncovered, &forbidden, &mut Vec::new(), BigInt::zero());
    match mode {
        Mode::Capped { exact, cheap, .. } => match (cheap, exact) {
            (Some(cover), _) => CappedSearch::Cheap(cover),
            (None, Some(cover)) => CappedSearch::Exactly(cover),
            (None, None) => CappedSearch::Expensive,
        },
        _ => unreachable!(),
    }
}

fn run_enumerate(inst: &Instance, target: &BigInt, limit: usize) -> (Vec<Cover>, bool) {
    let mut mode = Mode::Enumerate {
        target: target.clone(),
        limit,
        found: BTreeSet::new(),
        overflow: false,
    };
    let uncovered = inst.all_uncovered();
    let forbidden = vec![0u64; words_for(inst.groups.len())];
    dfs(inst, &mut mode, &uncovered, &forbidden, &mut Vec::new(), BigInt::zero());
    match mode {
        Mode::Enumerate {
            found, overflow, ..
        } => (found.into_iter().collect(), overflow),
        _ => unreachable!(),
    }
}

/// Depth-first search core. Returns true to abort the whole search.
fn dfs(
    inst: &Instance,
    mode: &mut Mode,
    uncovered: &[u64],
    forbidden: &[u64],
    chosen: &mut Vec<u32>,
    partial: BigInt,
) -> bool {
    if uncovered.iter().all(|&w| w == 0) {
        return match mode {
            Mode::Optimize { best } => {
                let cover = inst.assemble(chosen);
                let replace = match best {
                    None => true,
                    Some((bc, bcover)) => {
                        partial < *bc || (partial == *bc && cover < *bcover)
                    }
                };
                if replace {
                    *best = Some((partial, cover));
                }
                false
            }
            Mode::Capped { cap, exact, cheap } => {
                if partial < *cap {
                    *cheap = Some(inst.assemble(chosen));
                    true
                } else {
                    if partial == *cap && exact.is_none() {
                        *exact = Some(inst.assemble(chosen));
                    }
                    false
                }
            }
            Mode::Enumerate {
                target,
                limit,
                found,
                overflow,
            } => {
                // Keep only the canonically smallest `limit` optima; the
                // plateau is explored fully, so the kept prefix is exact.
                if partial == *target {
                    found.insert(inst.assemble(chosen));
                    if found.len() > *limit {
                        found.pop_last();
                        *overflow = true;
                    }
                }
                false
            }
        };
    }

    let Some(lower) = inst.dual_bound(uncovered, forbidden) else {
        return false;
    };
    let projected = &partial + &lower;
    let prune = match mode {
        Mode::Optimize { best } => best
            .as_ref()
            .is_some_and(|(bc, _)| projected > *bc),
        Mode::Capped { cap, exact, .. } => {
            projected > *cap || (exact.is_some() && projected >= *cap)
        }
        Mode::Enumerate { target, .. } => projected > *target,
    };
    if prune {
        return false;
    }

    // Branch on the uncovered generator with the fewest usable candidates.
    let mut branch_gen = None;
    let mut branch_count = usize::MAX;
    for g in iter_bits(uncovered) {
        let count = inst.by_gen[g]
            .iter()
            .filter(|&&c| !bit_get(forbidden, c as usize))
            .count();
        if count < branch_count {
            branch_count = count;
            branch_gen = Some(g);
        }
    }
    let Some(g) = branch_gen else { return false };
    if branch_count == 0 {
        return false;
    }

    // Exclusion branching: after trying a candidate, forbid it for the
    // rest of the subtree so every cover is generated exactly once.
    let mut local_forbidden = forbidden.to_vec();
    for &c in &inst.by_gen[g] {
        let ci = c as usize;
        if bit_get(&local_forbidden, ci) {
            continue;
        }
        let child_uncovered: Words = uncovered
            .iter()
            .zip(&inst.covers[ci])
            .map(|(un, cv)| un & !cv)
            .collect();
        chosen.push(c);
        let stop = dfs(
            inst,
            mode,
            &child_uncovered,
            &local_forbidden,
            chosen,
            &partial + &inst.costs[ci],
        );
        chosen.pop();
        if stop {
            return true;
        }
        bit_set(&mut local_forbidden, ci);
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ground::GroundSet;
    use crate::rational::{one_half, rat};

    fn fam(n: usize, gens: &[&[usize]]) -> Family {
        Family::new(
            GroundSet::numbered(n).unwrap(),
            gens.iter().map(|g| Mask::from_indices(g.iter().copied())),
        )
        .unwrap()
    }

    fn cov(members: &[&[usize]]) -> Cover {
        Cover::new(members.iter().map(|m| Mask::from_indices(m.iter().copied())))
    }

    /// Brute-force oracle: minimum cost and all optima by checking every
    /// subset of the candidate pool. Only usable for pools up to ~20.
    fn brute_force(family: &Family, q: &BigRational) -> (BigRational, Vec<Cover>) {
        let pool = candidate_pool(family).unwrap();
        assert!(pool.len() <= 20, "brute force pool too large");
        let gens = family.generators();
        let mut best: Option<BigRational> = None;
        let mut optima: Vec<Cover> = Vec::new();
        for choice in 0u32..(1 << pool.len()) {
            let members: Vec<Mask> = (0..pool.len())
                .filter(|i| choice >> i & 1 == 1)
                .map(|i| pool[i])
                .collect();
            let covers_all = gens
                .iter()
                .all(|gen| members.iter().any(|s| s.is_subset_of(*gen)));
            if !covers_all {
                continue;
            }
            let cover = Cover::new(members);
            let cost = cover.cost(q);
            match &best {
                Some(b) if cost > *b => {}
                Some(b) if cost == *b => optima.push(cover),
                _ => {
                    best = Some(cost);
                    optima = vec![cover];
                }
            }
        }
        optima.sort();
        optima.dedup();
        (best.unwrap(), optima)
    }

    /// All distinct families over a small ground set, by normalizing every
    /// presentation made of up to `max_gens` nonempty subsets.
    fn all_families(n: usize, max_gens: usize) -> Vec<Family> {
        let subsets: Vec<Mask> = (1..(1u128 << n)).map(Mask).collect();
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        let mut pick = vec![0usize; max_gens];
        loop {
            let gens: Vec<Mask> = pick.iter().map(|&i| subsets[i]).collect();
            let f = Family::new(GroundSet::numbered(n).unwrap(), gens).unwrap();
            if seen.insert(f.generators().to_vec()) {
                out.push(f);
            }
            // Advance the multi-index (combinations with repetition).
            let mut i = max_gens;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                if pick[i] + 1 < subsets.len() {
                    pick[i] += 1;
                    for j in i + 1..max_gens {
                        pick[j] = pick[i];
                    }
                    break;
                }
            }
        }
    }

    #[test]
    fn matches_brute_force_on_all_small_families() {
        let rates = [rat(1, 4), rat(1, 3), rat(1, 2), rat(5, 8)];
        for f in all_families(3, 3) {
            for q in &rates {
                let (brute_min, brute_optima) = brute_force(&f, q);
                let (min, best) = min_cost_cover(&f, q).unwrap();
                assert_eq!(min, brute_min, "min for {:?} at {q}", f.generators());
                assert!(best.is_cover_of(&f));
                assert_eq!(best.cost(q), min);
                assert_eq!(best, brute_optima[0].clone(), "tie-break");

                let all = cheapest_covers(&f, q, 1000).unwrap();
                assert_eq!(all.min_cost, brute_min);
                assert!(!all.truncated);
                assert_eq!(all.covers, brute_optima, "optima for {:?}", f.generators());
            }
        }
    }

    #[test]
    fn optimum_is_irredundant_and_certified() {
        for f in all_families(3, 2) {
            let q = rat(2, 5);
            let (min, best) = min_cost_cover(&f, &q).unwrap();
            assert!(best.is_cover_of(&f));
            assert!(!best.is_redundant_for(&f));
            assert_eq!(best.cost(&q), min);
        }
    }

    #[test]
    fn empty_set_wins_ties_canonically() {
        // <{1},{2}> at q = 1/2: both {{}} and {{1},{2}} cost exactly 1;
        // the single-member cover wins the tie.
        let f = fam(2, &[&[0], &[1]]);
        let (min, best) = min_cost_cover(&f, &one_half()).unwrap();
        assert_eq!(min, rat(1, 1));
        assert_eq!(best, cov(&[&[]]));
        let all = cheapest_covers(&f, &one_half(), 10).unwrap();
        assert_eq!(all.covers, vec![cov(&[&[]]), cov(&[&[0], &[1]])]);
    }

    #[test]
    fn capped_search_three_outcomes() {
        // Doubled pair family: eight generators over six elements, the
        // two-element copies of <{1,2},{1,3}>; minimum cost at q = 1/4
        // is exactly 1/2.
        let f = fam(
            6,
            &[
                &[0, 2],
                &[0, 3],
                &[1, 2],
                &[1, 3],
                &[0, 4],
                &[0, 5],
                &[1, 4],
                &[1, 5],
            ],
        );
        let half = one_half();
        match solve_capped(&f, &rat(1, 4), &half).unwrap() {
            CappedSearch::Exactly(cover) => {
                assert!(cover.is_cover_of(&f));
                assert_eq!(cover.cost(&rat(1, 4)), half);
            }
            other => panic!("expected Exactly, got {other:?}"),
        }
        match solve_capped(&f, &rat(15, 64), &half).unwrap() {
            CappedSearch::Cheap(cover) => {
                assert!(cover.is_cover_of(&f));
                assert!(cover.cost(&rat(15, 64)) < half);
            }
            other => panic!("expected Cheap, got {other:?}"),
        }
        assert_eq!(
            solve_capped(&f, &rat(17, 64), &half).unwrap(),
            CappedSearch::Expensive
        );
    }

    #[test]
    fn doubled_pair_family_has_exactly_four_optima() {
        let f = fam(
            6,
            &[
                &[0, 2],
                &[0, 3],
                &[1, 2],
                &[1, 3],
                &[0, 4],
                &[0, 5],
                &[1, 4],
                &[1, 5],
            ],
        );
        let q = rat(1, 4);
        let all = cheapest_covers(&f, &q, 100).unwrap();
        assert_eq!(all.min_cost, one_half());
        assert!(!all.truncated);
        let expected = vec![
            cov(&[&[0], &[1]]),
            cov(&[&[0], &[1, 2], &[1, 3], &[1, 4], &[1, 5]]),
            cov(&[&[1], &[0, 2], &[0, 3], &[0, 4], &[0, 5]]),
            cov(&[
                &[0, 2],
                &[0, 3],
                &[0, 4],
                &[0, 5],
                &[1, 2],
                &[1, 3],
                &[1, 4],
                &[1, 5],
            ]),
        ];
        assert_eq!(all.covers, expected);

        let truncated = cheapest_covers(&f, &q, 2).unwrap();
        assert!(truncated.truncated);
        assert_eq!(truncated.covers, expected[..2]);
        assert_eq!(truncated.covers.len(), 2);
    }

    #[test]
    fn search_is_deterministic() {
        let f = fam(4, &[&[0, 1], &[1, 2], &[2, 3], &[0, 3]]);
        let q = rat(3, 7);
        let first = cheapest_covers(&f, &q, 50).unwrap();
        let second = cheapest_covers(&f, &q, 50).unwrap();
        assert_eq!(first, second);
        assert_eq!(
            min_cost_cover(&f, &q).unwrap().1,
            first.covers[0],
            "exact optimum must be the canonical first optimum"
        );
    }

    #[test]
    fn group_candidates_cover_atomically() {
        // Force both singletons in as one group: the optimum over groups
        // pays for both even though one generator needs only one of them.
        let f = fam(2, &[&[0], &[1]]);
        let groups = vec![
            CandidateGroup {
                masks: vec![Mask::from_indices([0]), Mask::from_indices([1])],
            },
            CandidateGroup {
                masks: vec![Mask::EMPTY],
            },
        ];
        let q = rat(1, 3);
        let (min, cover) = min_cost_over_groups(&f, groups, &q).unwrap();
        // Pair group costs 2/3 < empty-set group cost 1.
        assert_eq!(min, rat(2, 3));
        assert_eq!(cover, cov(&[&[0], &[1]]));
    }

    #[test]
    fn rejects_degenerate_rates() {
        let f = fam(2, &[&[0, 1]]);
        assert!(min_cost_cover(&f, &rat(0, 1)).is_err());
        assert!(min_cost_cover(&f, &rat(1, 1)).is_err());
        assert!(min_cost_cover(&f, &rat(7, 5)).is_err());
    }
}
