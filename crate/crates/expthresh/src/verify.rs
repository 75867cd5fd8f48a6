//! Cross-checks between the threshold solvers: inequality reports,
//! cloning-identity residuals, and counterexample searches.
//!
//! Every verdict is backed by exact arithmetic. An upper bound HOLDS
//! when the enclosures separate, when an exact rational probe pins the
//! comparison, or when a structural certificate proves equality; it is
//! VIOLATED only when the enclosures certify a strict reversal, which
//! for proven relationships means a solver bug. Anything else triggers
//! width refinement and, past the retry cap, an INCONCLUSIVE-REFINE
//! verdict.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cloning::CloneMap;
use crate::cover::Cover;
use crate::enclosure::Enclosure;
use crate::error::{Error, Result};
use crate::expectation::{q_c, q_f, QcOutcome, QfOutcome};
use crate::family::Family;
use crate::ground::{GroundSet, Mask};
use crate::interval::{exp_neg_enclosure, log2_enclosure, pow_enclosure, root_enclosure};
use crate::lp::min_fractional_cover_cost;
use crate::rational::{one_half, rat, rat_int};
use crate::solver::{cheapest_covers, solve_capped, CappedSearch};
use crate::symmetry::{symmetric_search, PermutationGroup};
use crate::threshold::{p_c, FamilyPoly};

/// Default multiplicative constant for the logarithmic upper bounds.
pub fn default_constant() -> BigRational {
    rat_int(16)
}

/// Width refinements attempted before settling for INCONCLUSIVE.
pub const REFINE_RETRIES: u32 = 6;

/// Outcome of a single inequality check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    InconclusiveRefine,
    Violated,
    Skipped,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Holds => "HOLDS",
            Verdict::InconclusiveRefine => "INCONCLUSIVE-REFINE",
            Verdict::Violated => "VIOLATED",
            Verdict::Skipped => "SKIPPED",
        }
    }
}

/// One inequality with its verdict and the enclosures compared.
#[derive(Debug, Clone)]
pub struct BoundCheck {
    /// Stable identifier, e.g. "union-lower" or "exp-log-upper".
    pub name: &'static str,
    pub verdict: Verdict,
    /// How the verdict was reached, or why the check was skipped.
    pub note: String,
    pub lhs: Option<Enclosure>,
    pub rhs: Option<Enclosure>,
}

/// Full inequality report for one family.
#[derive(Debug, Clone)]
pub struct BoundReport {
    pub constant: BigRational,
    pub largest_minimal: usize,
    pub p_c: Enclosure,
    pub q_c: Enclosure,
    pub q_f: Enclosure,
    /// Final width after refinement.
    pub width: BigRational,
    pub refinements: u32,
    pub checks: Vec<BoundCheck>,
}

impl BoundReport {
    pub fn any_violated(&self) -> bool {
        self.checks.iter().any(|c| c.verdict == Verdict::Violated)
    }

    pub fn all_conclusive(&self) -> bool {
        self.checks
            .iter()
            .all(|c| c.verdict != Verdict::InconclusiveRefine)
    }

    pub fn check(&self, name: &str) -> Option<&BoundCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Checks all threshold inequalities on one family.
///
/// The three thresholds are enclosed at `width`; right-hand sides with
/// transcendental content are enclosed to the same width. Indeterminate
/// comparisons refine the width up to [`REFINE_RETRIES`] times.
pub fn check_bounds(
    family: &Family,
    constant: &BigRational,
    width: &BigRational,
) -> Result<BoundReport> {
    if !constant.is_positive() {
        return Err(Error::OutOfRange {
            name: "constant",
            value: constant.to_string(),
            range: "(0, inf)",
        });
    }
    validate_width(width)?;
    let mut current = width.clone();
    let mut refinements = 0;
    loop {
        let report = check_bounds_once(family, constant, &current, refinements)?;
        if report.all_conclusive() || refinements == REFINE_RETRIES {
            return Ok(report);
        }
        refinements += 1;
        current /= rat_int(2);
    }
}

fn check_bounds_once(
    family: &Family,
    constant: &BigRational,
    width: &BigRational,
    refinements: u32,
) -> Result<BoundReport> {
    let qc = q_c(family, width)?;
    let qf = q_f(family, width)?;
    let pc = p_c_data(family, width)?;
    let l = family.largest_minimal_size();
    let mut checks = Vec::new();
    checks.push(check_union_lower(family, &qc, &pc)?);
    checks.push(check_relaxation_order(family, &qc, &qf)?);
    checks.push(check_fractional_lower(family, &qf, &pc)?);
    checks.push(check_linear_log(constant, &qc, &pc, l, width)?);
    checks.push(check_power_log(constant, &qc, &pc, l, width)?);
    checks.push(check_exp_log(constant, &qc, &pc, l, width)?);
    checks.push(check_root_upper(&pc, l, width)?);
    Ok(BoundReport {
        constant: constant.clone(),
        largest_minimal: l,
        p_c: pc.enclosure_owned(),
        q_c: qc.enclosure.clone(),
        q_f: qf.enclosure.clone(),
        width: width.clone(),
        refinements,
        checks,
    })
}

/// Wrapper so p_c and its polynomial travel together.
struct PcData {
    enclosure: Enclosure,
    poly: FamilyPoly,
}

impl PcData {
    fn enclosure_owned(&self) -> Enclosure {
        self.enclosure.clone()
    }
}

fn p_c_data(family: &Family, width: &BigRational) -> Result<PcData> {
    Ok(PcData {
        enclosure: p_c(family, width)?,
        poly: FamilyPoly::new(family)?,
    })
}

/// Exact probe: is membership probability at `r` at least one half?
/// Decides p_c <= r (true) or p_c >= r (false).
fn membership_reaches_half(poly: &FamilyPoly, r: &BigRational) -> Option<bool> {
    if !r.is_positive() || *r >= BigRational::one() {
        return None;
    }
    Some(poly.eval(r) >= one_half())
}

/// q_c <= p_c: the union bound makes every cheap rate subcritical.
fn check_union_lower(family: &Family, qc: &QcOutcome, pc: &PcData) -> Result<BoundCheck> {
    let name = "union-lower";
    let (lhs, rhs) = (qc.enclosure.clone(), pc.enclosure.clone());
    if lhs.surely_le(&rhs) {
        return Ok(holds(name, "enclosures separate", lhs, rhs));
    }
    if lhs.surely_gt(&rhs) {
        return Ok(violated(name, "enclosures certify reversal", lhs, rhs));
    }
    // Probe: membership at the certified-expensive rate still below
    // half means the threshold lies above the whole q_c enclosure.
    if membership_reaches_half(&pc.poly, lhs.hi()) == Some(false) {
        return Ok(holds(
            name,
            "membership below half at the expensive-rate probe",
            lhs,
            rhs,
        ));
    }
    // Probe: no cheap cover at the lower end of the p_c enclosure means
    // q_c sits below it.
    if rhs.lo().is_positive()
        && *rhs.lo() < BigRational::one()
        && matches!(
            solve_capped(family, rhs.lo(), &one_half())?,
            CappedSearch::Expensive
        )
    {
        return Ok(holds(
            name,
            "no cheap cover at the subcritical probe",
            lhs,
            rhs,
        ));
    }
    // Equality: if the certificate cover's cost polynomial equals the
    // membership polynomial, the minimum cover cost coincides with the
    // membership probability everywhere (it is sandwiched between the
    // two), so both crossings are the same point.
    if qc.lower.cover.is_cover_of(family)
        && cover_cost_coeffs(&qc.lower.cover, family.n()) == pc.poly.coeffs()
    {
        return Ok(holds(
            name,
            "certificate cover cost equals the membership polynomial",
            lhs,
            rhs,
        ));
    }
    Ok(inconclusive(name, lhs, rhs))
}

/// q_c <= q_f: every integral certificate is a fractional certificate.
fn check_relaxation_order(
    family: &Family,
    qc: &QcOutcome,
    qf: &QfOutcome,
) -> Result<BoundCheck> {
    let name = "relaxation-order";
    let (lhs, rhs) = (qc.enclosure.clone(), qf.enclosure.clone());
    if lhs.surely_le(&rhs) {
        return Ok(holds(name, "enclosures separate", lhs, rhs));
    }
    if lhs.surely_gt(&rhs) {
        return Ok(violated(name, "enclosures certify reversal", lhs, rhs));
    }
    // Probe: a fractional optimum at the integral upper endpoint that is
    // still cheap pushes q_f above the whole q_c enclosure.
    if lhs.hi().is_positive() && *lhs.hi() < BigRational::one() {
        let lp = min_fractional_cover_cost(family, lhs.hi())?;
        if lp.value <= one_half() {
            return Ok(holds(
                name,
                "fractionally cheap at the integral upper endpoint",
                lhs,
                rhs,
            ));
        }
    }
    // Structural transfer: the integral witness, read as a weighting, is
    // feasible with the same cost, so integral-cheap rates are
    // fractionally cheap rates and the suprema are ordered.
    let transferred = crate::lp::FractionalCover::from_cover(&qc.lower.cover);
    if transferred.is_fractional_cover_of(family)
        && transferred.cost(&qc.lower.q) == qc.lower.cover.cost(&qc.lower.q)
        && transferred.cost(&qc.lower.q) <= one_half()
    {
        return Ok(holds(
            name,
            "integral certificate transfers to the relaxation",
            lhs,
            rhs,
        ));
    }
    Ok(inconclusive(name, lhs, rhs))
}

/// q_f <= p_c: a fractional cover dominates the membership probability.
fn check_fractional_lower(
    family: &Family,
    qf: &QfOutcome,
    pc: &PcData,
) -> Result<BoundCheck> {
    let name = "fractional-lower";
    let (lhs, rhs) = (qf.enclosure.clone(), pc.enclosure.clone());
    if lhs.surely_le(&rhs) {
        return Ok(holds(name, "enclosures separate", lhs, rhs));
    }
    if lhs.surely_gt(&rhs) {
        return Ok(violated(name, "enclosures certify reversal", lhs, rhs));
    }
    if membership_reaches_half(&pc.poly, lhs.hi()) == Some(false) {
        return Ok(holds(
            name,
            "membership below half at the expensive-rate probe",
            lhs,
            rhs,
        ));
    }
    // Instance trace of the domination argument: at the certificate
    // rate, membership probability is at most the weighting's cost,
    // which is at most one half; cheap rates stay subcritical, so the
    // crossing cannot precede the fractional threshold.
    let witness = &qf.lower;
    if witness.q.is_positive()
        && witness.weighting.is_fractional_cover_of(family)
        && witness.weighting.cost(&witness.q) <= one_half()
        && pc.poly.eval(&witness.q) <= witness.weighting.cost(&witness.q)
    {
        return Ok(holds(
            name,
            "weighting dominates membership at the certificate rate",
            lhs,
            rhs,
        ));
    }
    Ok(inconclusive(name, lhs, rhs))
}

/// Shared tiers for the upper bounds p_c <= RHS.
fn upper_bound_verdict(
    name: &'static str,
    pc: &PcData,
    rhs: Enclosure,
    equality: Option<&'static str>,
) -> BoundCheck {
    let lhs = pc.enclosure.clone();
    if *rhs.lo() >= BigRational::one() {
        return holds(name, "bound saturates at one", lhs, rhs);
    }
    if lhs.surely_le(&rhs) {
        return holds(name, "enclosures separate", lhs, rhs);
    }
    if lhs.surely_gt(&rhs) {
        return violated(name, "enclosures certify reversal", lhs, rhs);
    }
    if membership_reaches_half(&pc.poly, rhs.lo()) == Some(true) {
        return holds(
            name,
            "membership reaches half below the bound",
            lhs,
            rhs,
        );
    }
    if let Some(reason) = equality {
        return holds(name, reason, lhs, rhs);
    }
    inconclusive(name, lhs, rhs)
}

/// p_c <= C * q_c * log2(l), for l >= 2.
fn check_linear_log(
    constant: &BigRational,
    qc: &QcOutcome,
    pc: &PcData,
    l: usize,
    width: &BigRational,
) -> Result<BoundCheck> {
    let name = "linear-log-upper";
    if l < 2 {
        return Ok(skipped(name, "largest minimal generator is a singleton"));
    }
    let log = log2_enclosure(l as u64, width)?;
    let rhs = qc.enclosure.scale(constant).mul(&log);
    Ok(upper_bound_verdict(name, pc, rhs, None))
}

/// p_c <= 1 - (1 - C*q_c)^(log2 l), for l >= 2 and q_c <= 1/C.
fn check_power_log(
    constant: &BigRational,
    qc: &QcOutcome,
    pc: &PcData,
    l: usize,
    width: &BigRational,
) -> Result<BoundCheck> {
    let name = "power-log-upper";
    if l < 2 {
        return Ok(skipped(name, "largest minimal generator is a singleton"));
    }
    let scaled = qc.enclosure.scale(constant);
    if *scaled.hi() > BigRational::one() {
        return Ok(skipped(
            name,
            "expectation threshold may exceed the constant's reciprocal",
        ));
    }
    let base = Enclosure::new(
        BigRational::one() - scaled.hi(),
        BigRational::one() - scaled.lo(),
    );
    let log = log2_enclosure(l as u64, width)?;
    let powered = pow_enclosure(&base, &log, width)?;
    let rhs = Enclosure::new(
        BigRational::one() - powered.hi(),
        BigRational::one() - powered.lo(),
    );
    Ok(upper_bound_verdict(name, pc, rhs, None))
}

/// p_c <= 1 - e^(-C * q_c * log2 l), for l >= 2.
fn check_exp_log(
    constant: &BigRational,
    qc: &QcOutcome,
    pc: &PcData,
    l: usize,
    width: &BigRational,
) -> Result<BoundCheck> {
    let name = "exp-log-upper";
    if l < 2 {
        return Ok(skipped(name, "largest minimal generator is a singleton"));
    }
    let log = log2_enclosure(l as u64, width)?;
    let x = qc.enclosure.scale(constant).mul(&log);
    let decay_lo = exp_neg_enclosure(x.hi(), width)?;
    let decay_hi = exp_neg_enclosure(x.lo(), width)?;
    let rhs = Enclosure::new(
        BigRational::one() - decay_hi.hi(),
        BigRational::one() - decay_lo.lo(),
    );
    Ok(upper_bound_verdict(name, pc, rhs, None))
}

/// p_c <= 2^(-1/l): a single largest minimal generator already crosses.
fn check_root_upper(pc: &PcData, l: usize, width: &BigRational) -> Result<BoundCheck> {
    let name = "root-upper";
    let rhs = root_enclosure(&one_half(), l as u64, width)?;
    // Equality certificate: when the membership polynomial is exactly
    // p^l, the threshold is exactly the root of y^l = 1/2.
    let single_power = {
        let coeffs = pc.poly.coeffs();
        coeffs.iter().enumerate().all(|(i, c)| {
            if i == l {
                c == &BigInt::one()
            } else {
                c.is_zero()
            }
        })
    };
    Ok(upper_bound_verdict(
        name,
        pc,
        rhs,
        single_power.then_some("membership polynomial is the bare power"),
    ))
}

fn cover_cost_coeffs(cover: &Cover, n: usize) -> Vec<BigInt> {
    let mut coeffs = vec![BigInt::zero(); n + 1];
    for member in cover.members() {
        coeffs[member.size()] += 1;
    }
    coeffs
}

fn holds(name: &'static str, note: &str, lhs: Enclosure, rhs: Enclosure) -> BoundCheck {
    BoundCheck {
        name,
        verdict: Verdict::Holds,
        note: note.into(),
        lhs: Some(lhs),
        rhs: Some(rhs),
    }
}

fn violated(name: &'static str, note: &str, lhs: Enclosure, rhs: Enclosure) -> BoundCheck {
    BoundCheck {
        name,
        verdict: Verdict::Violated,
        note: note.into(),
        lhs: Some(lhs),
        rhs: Some(rhs),
    }
}

fn inconclusive(name: &'static str, lhs: Enclosure, rhs: Enclosure) -> BoundCheck {
    BoundCheck {
        name,
        verdict: Verdict::InconclusiveRefine,
        note: "enclosures overlap and no certificate applies".into(),
        lhs: Some(lhs),
        rhs: Some(rhs),
    }
}

fn skipped(name: &'static str, note: &str) -> BoundCheck {
    BoundCheck {
        name,
        verdict: Verdict::Skipped,
        note: note.into(),
        lhs: None,
        rhs: None,
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

/// Residuals of the cloning identities for one family and factor.
#[derive(Debug, Clone)]
pub struct ScalingReport {
    pub k: usize,
    pub width: BigRational,
    pub base_q_c: Enclosure,
    pub cloned_q_c: Enclosure,
    pub base_q_f: Enclosure,
    pub cloned_q_f: Enclosure,
    pub base_p_c: Enclosure,
    pub cloned_p_c: Enclosure,
    /// q_c(clone) - q_c(base)/k; contains zero when the solvers agree.
    pub q_c_residual: Enclosure,
    /// q_f(clone) - q_f(base)/k.
    pub q_f_residual: Enclosure,
    /// p_c(base) - (1 - (1 - p_c(clone))^k).
    pub p_c_residual: Enclosure,
}

impl ScalingReport {
    /// True when every residual interval contains zero.
    pub fn consistent(&self) -> bool {
        self.q_c_residual.contains_zero()
            && self.q_f_residual.contains_zero()
            && self.p_c_residual.contains_zero()
    }
}

/// Measures how the thresholds of the k-fold clone relate to the base
/// family's.
///
/// All six quantities are computed independently on the two families —
/// the clone's thresholds come from running the ordinary solvers on the
/// cloned generators, never from the identities being tested.
pub fn check_clone_scaling(
    family: &Family,
    k: usize,
    width: &BigRational,
) -> Result<ScalingReport> {
    validate_width(width)?;
    let map = CloneMap::new(family.ground(), k)?;
    let cloned = map.clone_family(family)?;
    let inv_k = rat(1, k as i64);
    let base_qc = q_c(family, width)?.enclosure;
    let cloned_qc = q_c(&cloned, width)?.enclosure;
    let base_qf = q_f(family, width)?.enclosure;
    let cloned_qf = q_f(&cloned, width)?.enclosure;
    let base_pc = p_c(family, width)?;
    let cloned_pc = p_c(&cloned, width)?;
    let q_c_residual = cloned_qc.sub(&base_qc.scale(&inv_k));
    let q_f_residual = cloned_qf.sub(&base_qf.scale(&inv_k));
    // Survival form: (1 - p)^k by k-fold interval product.
    let survival = Enclosure::new(
        BigRational::one() - cloned_pc.hi(),
        BigRational::one() - cloned_pc.lo(),
    );
    let mut powered = Enclosure::point(BigRational::one());
    for _ in 0..k {
        powered = powered.mul(&survival);
    }
    let collapsed = Enclosure::new(
        BigRational::one() - powered.hi(),
        BigRational::one() - powered.lo(),
    );
    let p_c_residual = base_pc.sub(&collapsed);
    Ok(ScalingReport {
        k,
        width: width.clone(),
        base_q_c: base_qc,
        cloned_q_c: cloned_qc,
        base_q_f: base_qf,
        cloned_q_f: cloned_qf,
        base_p_c: base_pc,
        cloned_p_c: cloned_pc,
        q_c_residual,
        q_f_residual,
        p_c_residual,
    })
}

/// Result of scanning cheapest covers of a clone for non-cloned optima.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonclonedOutcome {
    /// Minimum cover cost of the cloned family at the probed rate.
    pub min_cost: BigRational,
    /// Canonically first optimum that does not arise by cloning.
    pub witness: Option<Cover>,
    /// Number of optima inspected.
    pub inspected: usize,
    /// True when enumeration was cut off; a missing witness is then
    /// inconclusive rather than exhaustive.
    pub truncated: bool,
}

/// Searches the cheapest covers of the k-fold clone for one that does
/// not arise by cloning a base cover.
pub fn find_noncloned_cheapest(
    family: &Family,
    k: usize,
    q: &BigRational,
    limit: usize,
) -> Result<NonclonedOutcome> {
    let map = CloneMap::new(family.ground(), k)?;
    let cloned = map.clone_family(family)?;
    let enumeration = cheapest_covers(&cloned, q, limit)?;
    let mut witness = None;
    for cover in &enumeration.covers {
        if !map.is_cloned_cover(cover)? {
            witness = Some(cover.clone());
            break;
        }
    }
    Ok(NonclonedOutcome {
        min_cost: enumeration.min_cost,
        witness,
        inspected: enumeration.covers.len(),
        truncated: enumeration.truncated,
    })
}

/// Deterministic pseudo-random family: up to `max_generators` distinct
/// nonempty subsets, normalized.
pub fn random_family(n: usize, max_generators: usize, seed: u64) -> Result<Family> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_family_with(&mut rng, n, max_generators)
}

fn random_family_with(
    rng: &mut ChaCha8Rng,
    n: usize,
    max_generators: usize,
) -> Result<Family> {
    if n == 0 || n > 64 {
        return Err(Error::OutOfRange {
            name: "n",
            value: n.to_string(),
            range: "[1, 64]",
        });
    }
    if max_generators == 0 {
        return Err(Error::OutOfRange {
            name: "max_generators",
            value: "0".into(),
            range: "[1, inf)",
        });
    }
    let subsets = (1u128 << n) - 1;
    let count = rng.gen_range(1..=max_generators.min(subsets as usize));
    let mut picked = std::collections::BTreeSet::new();
    while picked.len() < count {
        let bits = rng.gen_range(1..=subsets);
        picked.insert(Mask(bits));
    }
    Family::new(GroundSet::numbered(n)?, picked)
}

/// Searches seeded random families for rates where no cheapest cover is
/// invariant under the given group.
///
/// Families the group does not stabilize are skipped; candidates are
/// probed at their expectation-threshold certificate points. An empty
/// result refutes nothing.
pub fn falsify_symmetry(
    n: usize,
    group: &PermutationGroup,
    trials: usize,
    seed: u64,
) -> Result<Vec<(Family, BigRational)>> {
    if group.n() != n {
        return Err(Error::InvalidPermutation {
            reason: format!("group acts on {} points, families use {n}", group.n()),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let coarse = rat(1, 1 << 12);
    let mut found: Vec<(Family, BigRational)> = Vec::new();
    for _ in 0..trials {
        let family = random_family_with(&mut rng, n, n.max(2))?;
        if !group.stabilizes(&family) {
            continue;
        }
        if found.iter().any(|(f, _)| *f == family) {
            continue;
        }
        let qc = q_c(&family, &coarse)?;
        let mut probes = vec![qc.enclosure.lo().clone()];
        if !qc.enclosure.is_point() {
            probes.push(qc.enclosure.hi().clone());
        }
        for probe in probes {
            if !probe.is_positive() || probe >= BigRational::one() {
                continue;
            }
            let search = symmetric_search(&family, group, &probe)?;
            if !search.symmetry_is_free() {
                found.push((family.clone(), probe));
                break;
            }
        }
    }
    Ok(found)
}
