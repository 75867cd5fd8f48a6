//! Fractional covers and their exact linear-programming optimum.
//!
//! Relaxing cover membership to nonnegative weights gives the linear
//! program: minimize `Σ w_S q^|S|` subject to `Σ_{S ⊆ M} w_S >= 1` for
//! every generator M, over the candidate pool. The module solves it with
//! a dense two-phase simplex over exact rationals, so the optimum value,
//! an optimal weighting, and a feasible dual certificate are all exact.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::cover::{candidate_pool, validate_rate, Cover};
use crate::error::{Error, Result};
use crate::family::Family;
use crate::ground::Mask;

/// A nonnegative weighting of subsets; the fractional analogue of a cover.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FractionalCover {
    weights: Vec<(Mask, BigRational)>,
}

impl FractionalCover {
    /// Builds a weighting, dropping zero weights and rejecting negatives.
    pub fn new<I: IntoIterator<Item = (Mask, BigRational)>>(weights: I) -> Result<FractionalCover> {
        let mut weights: Vec<(Mask, BigRational)> = weights
            .into_iter()
            .filter(|(_, w)| !w.is_zero())
            .collect();
        if weights.iter().any(|(_, w)| w.is_negative()) {
            return Err(Error::OutOfRange {
                name: "weight",
                value: "negative".into(),
                range: "[0, inf)",
            });
        }
        weights.sort_by(|a, b| a.0.cmp(&b.0));
        for pair in weights.windows(2) {
            if pair[0].0 == pair[1].0 {
                return Err(Error::Parse("duplicate subset in weighting".into()));
            }
        }
        Ok(FractionalCover { weights })
    }

    /// Weight 1 on every member of an integral cover.
    pub fn from_cover(cover: &Cover) -> FractionalCover {
        FractionalCover {
            weights: cover
                .members()
                .iter()
                .map(|&m| (m, BigRational::one()))
                .collect(),
        }
    }

    /// The positive weights, sorted by subset.
    pub fn weights(&self) -> &[(Mask, BigRational)] {
        &self.weights
    }

    /// Exact cost `Σ w_S q^|S|`.
    pub fn cost(&self, q: &BigRational) -> BigRational {
        self.weights
            .iter()
            .map(|(mask, w)| w * q.pow(mask.size() as i32))
            .sum()
    }

    /// True if every generator of `family` receives total weight >= 1
    /// from its subsets.
    pub fn is_fractional_cover_of(&self, family: &Family) -> bool {
        family.generators().iter().all(|gen| {
            let total: BigRational = self
                .weights
                .iter()
                .filter(|(mask, _)| mask.is_subset_of(*gen))
                .map(|(_, w)| w.clone())
                .sum();
            total >= BigRational::one()
        })
    }
}

/// Exact LP optimum: value, an optimal weighting, and a dual certificate.
#[derive(Debug, Clone)]
pub struct LpOutcome {
    /// Minimum fractional cover cost.
    pub value: BigRational,
    /// A weighting achieving it.
    pub optimum: FractionalCover,
    /// Dual values per generator: nonnegative, sum equal to `value`, and
    /// for every pool subset S, `Σ_{M ⊇ S} y_M <= q^|S|`. Any such vector
    /// proves no weighting costs less than their sum.
    pub dual: Vec<BigRational>,
}

/// Solves the fractional cover LP for `family` at rate `q` in (0, 1).
pub fn min_fractional_cover_cost(family: &Family, q: &BigRational) -> Result<LpOutcome> {
    validate_rate(q)?;
    let pool = candidate_pool(family)?;
    let costs: Vec<BigRational> = pool.iter().map(|s| q.pow(s.size() as i32)).collect();
    let gens = family.generators();
    let rows: Vec<Vec<bool>> = gens
        .iter()
        .map(|gen| pool.iter().map(|s| s.is_subset_of(*gen)).collect())
        .collect();

    let (values, dual) = simplex_min_cover(&rows, &costs)?;

    let optimum = FractionalCover::new(
        pool.iter()
            .zip(&values)
            .map(|(mask, w)| (*mask, w.clone())),
    )?;
    let value: BigRational = pool
        .iter()
        .zip(&values)
        .map(|(mask, w)| w * q.pow(mask.size() as i32))
        .sum();

    // The dual certificate must be exactly verifiable; check it here so
    // no caller can ever receive an invalid one.
    if dual.iter().any(|y| y.is_negative()) {
        return Err(Error::Internal("negative dual value".into()));
    }
    let dual_total: BigRational = dual.iter().cloned().sum();
    if dual_total != value {
        return Err(Error::Internal("dual total does not match optimum".into()));
    }
    for (j, subset) in pool.iter().enumerate() {
        let packed: BigRational = rows
            .iter()
            .zip(&dual)
            .filter(|(row, _)| row[j])
            .map(|(_, y)| y.clone())
            .sum();
        if packed > costs[j] {
            return Err(Error::Internal(format!(
                "dual certificate infeasible at subset {subset:?}"
            )));
        }
    }
    if !optimum.is_fractional_cover_of(family) {
        return Err(Error::Internal("LP optimum is not a cover".into()));
    }

    Ok(LpOutcome {
        value,
        optimum,
        dual,
    })
}

// ---------------------------------------------------------------------
// Dense two-phase simplex, exact rationals throughout.

/// Minimizes `c·w` subject to `A w >= 1`, `w >= 0` where `A` is a 0/1
/// matrix given by rows. Returns the primal solution and the dual vector.
fn simplex_min_cover(
    rows: &[Vec<bool>],
    costs: &[BigRational],
) -> Result<(Vec<BigRational>, Vec<BigRational>)> {
    let m = rows.len();
    let n = costs.len();
    // Columns: n pool weights, m surplus (-1), m artificial (+1), rhs.
    let surplus0 = n;
    let art0 = n + m;
    let width = n + 2 * m + 1;
    let rhs_col = width - 1;

    let mut tab: Vec<Vec<BigRational>> = Vec::with_capacity(m);
    for (i, row) in rows.iter().enumerate() {
        let mut r = vec![BigRational::zero(); width];
        for (j, &covers) in row.iter().enumerate() {
            if covers {
                r[j] = BigRational::one();
            }
        }
        r[surplus0 + i] = -BigRational::one();
        r[art0 + i] = BigRational::one();
        r[rhs_col] = BigRational::one();
        tab.push(r);
    }
    let mut basis: Vec<usize> = (art0..art0 + m).collect();

    // Phase 1: drive the artificial variables to zero.
    let phase1_cost = |var: usize| {
        if var >= art0 {
            BigRational::one()
        } else {
            BigRational::zero()
        }
    };
    let mut obj = build_objective(&tab, &basis, width, &phase1_cost);
    pivot_to_optimum(&mut tab, &mut basis, &mut obj, width - 1, rhs_col)?;
    let phase1_value = objective_value(&tab, &basis, &phase1_cost, rhs_col);
    if !phase1_value.is_zero() {
        return Err(Error::Internal(
            "cover LP reported infeasible; the pool always admits a cover".into(),
        ));
    }

    // Pivot any artificial variable still basic (at value zero) out of
    // the basis. Rows are independent, so a usable column always exists.
    for r in 0..m {
        if basis[r] < art0 {
            continue;
        }
        let col = (0..art0).find(|&j| !tab[r][j].is_zero());
        match col {
            Some(j) => pivot(&mut tab, &mut basis, &mut obj, r, j),
            None => {
                return Err(Error::Internal(
                    "degenerate artificial row with no replacement column".into(),
                ))
            }
        }
    }

    // Phase 2: minimize the real objective over the original columns.
    let phase2_cost = |var: usize| {
        if var < n {
            costs[var].clone()
        } else {
            BigRational::zero()
        }
    };
    let mut obj = build_objective(&tab, &basis, width, &phase2_cost);
    pivot_to_optimum(&mut tab, &mut basis, &mut obj, art0, rhs_col)?;

    let mut primal = vec![BigRational::zero(); n];
    for (r, &var) in basis.iter().enumerate() {
        if var < n {
            primal[var] = tab[r][rhs_col].clone();
        }
    }
    // Reduced cost of surplus column i is exactly the dual value y_i.
    let dual: Vec<BigRational> = (0..m).map(|i| obj[surplus0 + i].clone()).collect();
    Ok((primal, dual))
}

/// Reduced-cost row for the given basis: `obj[j] = c_j - Σ c_basis · tab[·][j]`.
fn build_objective(
    tab: &[Vec<BigRational>],
    basis: &[usize],
    width: usize,
    cost: &dyn Fn(usize) -> BigRational,
) -> Vec<BigRational> {
    let mut obj: Vec<BigRational> = (0..width).map(|j| cost(j)).collect();
    for (r, &var) in basis.iter().enumerate() {
        let c = cost(var);
        if c.is_zero() {
            continue;
        }
        for j in 0..width {
            let t = &tab[r][j] * &c;
            obj[j] -= t;
        }
    }
    obj
}

fn objective_value(
    tab: &[Vec<BigRational>],
    basis: &[usize],
    cost: &dyn Fn(usize) -> BigRational,
    rhs_col: usize,
) -> BigRational {
    basis
        .iter()
        .enumerate()
        .map(|(r, &var)| cost(var) * &tab[r][rhs_col])
        .sum()
}

/// Runs pivots until no active column (index < `active_cols`) has a
/// negative reduced cost. Dantzig's rule normally; after a run of
/// degenerate pivots, Bland's rule permanently, which cannot cycle.
fn pivot_to_optimum(
    tab: &mut [Vec<BigRational>],
    basis: &mut [usize],
    obj: &mut [BigRational],
    active_cols: usize,
    rhs_col: usize,
) -> Result<()> {
    const DEGENERATE_RUN_LIMIT: u32 = 50;
    let mut degenerate_run = 0u32;
    let mut bland = false;
    loop {
        let entering = if bland {
            (0..active_cols).find(|&j| obj[j].is_negative())
        } else {
            let mut best: Option<usize> = None;
            for j in 0..active_cols {
                if obj[j].is_negative()
                    && best.is_none_or(|b| obj[j] < obj[b])
                {
                    best = Some(j);
                }
            }
            best
        };
        let Some(col) = entering else {
            return Ok(());
        };

        // Ratio test over rows with positive pivot entries; ties go to
        // the smallest basis variable (part of Bland's guarantee).
        let mut leaving: Option<usize> = None;
        for r in 0..tab.len() {
            if !tab[r][col].is_positive() {
                continue;
            }
            let better = match leaving {
                None => true,
                Some(lr) => {
                    let lhs = &tab[r][rhs_col] * &tab[lr][col];
                    let rhs = &tab[lr][rhs_col] * &tab[r][col];
                    lhs < rhs || (lhs == rhs && basis[r] < basis[lr])
                }
            };
            if better {
                leaving = Some(r);
            }
        }
        let Some(row) = leaving else {
            return Err(Error::Internal(
                "cover LP reported unbounded; costs are nonnegative".into(),
            ));
        };

        let degenerate = tab[row][rhs_col].is_zero();
        pivot(tab, basis, obj, row, col);
        if degenerate {
            degenerate_run += 1;
            if degenerate_run >= DEGENERATE_RUN_LIMIT {
                bland = true;
            }
        } else {
            degenerate_run = 0;
        }
    }
}

/// Standard pivot: normalize `row` so column `col` is 1, eliminate the
/// column from every other row and the objective.
fn pivot(
    tab: &mut [Vec<BigRational>],
    basis: &mut [usize],
    obj: &mut [BigRational],
    row: usize,
    col: usize,
) {
    let width = tab[row].len();
    let pivot_val = tab[row][col].clone();
    debug_assert!(!pivot_val.is_zero());
    for j in 0..width {
        if !tab[row][j].is_zero() {
            let t = &tab[row][j] / &pivot_val;
            tab[row][j] = t;
        }
    }
    for r in 0..tab.len() {
        if r == row || tab[r][col].is_zero() {
            continue;
        }
        let factor = tab[r][col].clone();
        for j in 0..width {
            if !tab[row][j].is_zero() {
                let t = &tab[row][j] * &factor;
                tab[r][j] -= t;
            }
        }
    }
    if !obj[col].is_zero() {
        let factor = obj[col].clone();
        for j in 0..width {
            if !tab[row][j].is_zero() {
                let t = &tab[row][j] * &factor;
                obj[j] -= t;
            }
        }
    }
    basis[row] = col;
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ground::GroundSet;
    use crate::rational::{one_half, rat};
    use crate::solver::min_cost_cover;

    fn fam(n: usize, gens: &[&[usize]]) -> Family {
        Family::new(
            GroundSet::numbered(n).unwrap(),
            gens.iter().map(|g| Mask::from_indices(g.iter().copied())),
        )
        .unwrap()
    }

    #[test]
    fn single_generator_lp_puts_weight_on_the_generator() {
        let f = fam(2, &[&[0, 1]]);
        let q = rat(1, 3);
        let out = min_fractional_cover_cost(&f, &q).unwrap();
        assert_eq!(out.value, rat(1, 9));
        assert_eq!(
            out.optimum.weights(),
            &[(Mask::from_indices([0, 1]), rat(1, 1))]
        );
        assert_eq!(out.dual, vec![rat(1, 9)]);
    }

    #[test]
    fn two_pair_family_splits_fractionally_below_half() {
        // <{1,2},{1,3}>: below q = 1/2 the two pairs (weight 1 each, cost
        // 2q^2) beat the shared singleton (cost q).
        let f = fam(3, &[&[0, 1], &[0, 2]]);
        let q = rat(1, 4);
        let out = min_fractional_cover_cost(&f, &q).unwrap();
        assert_eq!(out.value, rat(1, 8));
        assert!(out.optimum.is_fractional_cover_of(&f));
        // At q = 1/2 both options cost exactly 1/2.
        let at_half = min_fractional_cover_cost(&f, &one_half()).unwrap();
        assert_eq!(at_half.value, one_half());
    }

    #[test]
    fn lp_never_exceeds_integral_optimum() {
        let rates = [rat(1, 5), rat(1, 3), rat(1, 2), rat(3, 4)];
        let families = [
            fam(3, &[&[0, 1], &[0, 2]]),
            fam(3, &[&[0], &[1], &[2]]),
            fam(4, &[&[0, 1], &[1, 2], &[2, 3], &[0, 3]]),
            fam(4, &[&[0, 1, 2], &[1, 2, 3]]),
            fam(5, &[&[0, 1], &[2, 3], &[3, 4]]),
        ];
        for f in &families {
            for q in &rates {
                let lp = min_fractional_cover_cost(f, q).unwrap();
                let (ilp, _) = min_cost_cover(f, q).unwrap();
                assert!(lp.value <= ilp, "LP above ILP for {:?}", f.generators());
                assert!(lp.optimum.is_fractional_cover_of(f));
                assert_eq!(lp.optimum.cost(q), lp.value);
            }
        }
    }

    #[test]
    fn integral_cover_is_feasible_fractionally() {
        let f = fam(4, &[&[0, 1], &[1, 2], &[2, 3]]);
        let (_, cover) = min_cost_cover(&f, &rat(1, 3)).unwrap();
        let fc = FractionalCover::from_cover(&cover);
        assert!(fc.is_fractional_cover_of(&f));
        assert_eq!(fc.cost(&rat(1, 3)), cover.cost(&rat(1, 3)));
    }

    #[test]
    fn triangle_of_pairs_has_fractional_advantage() {
        // Generators {1,2},{1,3},{2,3}: half weight on each singleton
        // covers every pair with total weight 1 at cost (3/2) q, beating
        // any integral cover when q is large enough below 1.
        let f = fam(3, &[&[0, 1], &[0, 2], &[1, 2]]);
        let q = rat(3, 5);
        let lp = min_fractional_cover_cost(&f, &q).unwrap();
        let (ilp, _) = min_cost_cover(&f, &q).unwrap();
        assert!(
            lp.value < ilp,
            "expected a strict fractional advantage: lp {} vs ilp {}",
            lp.value,
            ilp
        );
        assert_eq!(lp.value, rat(9, 10));
    }

    #[test]
    fn weighting_constructor_validates() {
        assert!(FractionalCover::new([(Mask::EMPTY, rat(-1, 2))]).is_err());
        assert!(FractionalCover::new([
            (Mask::EMPTY, rat(1, 2)),
            (Mask::EMPTY, rat(1, 3)),
        ])
        .is_err());
        let ok = FractionalCover::new([
            (Mask::singleton(1), rat(1, 2)),
            (Mask::singleton(0), rat(0, 1)),
        ])
        .unwrap();
        assert_eq!(ok.weights().len(), 1);
    }

    #[test]
    fn rejects_degenerate_rates() {
        let f = fam(2, &[&[0, 1]]);
        assert!(min_fractional_cover_cost(&f, &rat(0, 1)).is_err());
        assert!(min_fractional_cover_cost(&f, &rat(1, 1)).is_err());
    }
}
