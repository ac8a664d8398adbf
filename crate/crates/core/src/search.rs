//! Exhaustive desk-scale verification: subspace sweeps over F_p^n for the
//! prime-divisibility theorems, a pruned DFS over member sets for composite
//! moduli, and the seeded random property suite.

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::bridge::{bridge_check, improved_odlyzko_check, odlyzko_count, span_family};
use crate::code::LinearCode;
use crate::error::{Error, Result};
use crate::family::{mask_universe, SetFamily};
use crate::field::{FieldVector, PrimeField};
use crate::report::SCHEMA;
use crate::rng::SplitMix64;
use crate::stabilizer::{growth_check, kneser_chain_bound, kneser_check};

/// Hard caps for the exhaustive engines. `KNESER_LAB_BUDGET` in the CLI
/// overrides both.
#[derive(Debug, Clone, Copy)]
pub struct SearchBudget {
    /// Maximum number of subspaces a sweep may visit.
    pub max_subspaces: u128,
    /// Maximum number of DFS nodes for the family search.
    pub max_nodes: u64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_subspaces: 10_000_000,
            max_nodes: 100_000_000,
        }
    }
}

/// Number of r-dimensional subspaces of F_p^n, by the exact product formula.
pub fn gaussian_binomial(p: u32, n: usize, r: usize) -> u128 {
    if r > n {
        return 0;
    }
    let p = p as u128;
    let mut result: u128 = 1;
    for i in 0..r {
        // stays integral at every step
        result = result * (p.pow((n - i) as u32) - 1) / (p.pow((i + 1) as u32) - 1);
    }
    result
}

/// Total number of subspaces of F_p^n of any dimension.
pub fn total_subspaces(p: u32, n: usize) -> u128 {
    (0..=n).map(|r| gaussian_binomial(p, n, r)).sum()
}

fn combinations(n: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if r > n {
        return out;
    }
    let mut combo: Vec<usize> = (0..r).collect();
    loop {
        out.push(combo.clone());
        let mut i = r;
        let mut advanced = false;
        while i > 0 {
            i -= 1;
            if combo[i] < n - r + i {
                combo[i] += 1;
                for j in i + 1..r {
                    combo[j] = combo[j - 1] + 1;
                }
                advanced = true;
                break;
            }
        }
        if !advanced {
            break;
        }
    }
    out
}

/// Enumerates every subspace of F_p^n exactly once, in canonical order: by
/// dimension, then by pivot-column set (lexicographic), then by the free
/// entries read as a base-p odometer.
#[derive(Debug, Clone)]
pub struct SubspaceEnumerator {
    field: PrimeField,
    n: usize,
}

/// One enumeration unit: all subspaces sharing a pivot-column set. Units
/// partition the enumeration; the sweeps parallelize over them.
#[derive(Debug, Clone)]
pub struct PivotUnit {
    pivots: Vec<usize>,
}

impl SubspaceEnumerator {
    pub fn new(field: PrimeField, n: usize) -> Self {
        SubspaceEnumerator { field, n }
    }

    pub fn total(&self) -> u128 {
        total_subspaces(self.field.p(), self.n)
    }

    /// Work units in canonical order.
    pub fn units(&self) -> Vec<PivotUnit> {
        (0..=self.n)
            .flat_map(|r| combinations(self.n, r))
            .map(|pivots| PivotUnit { pivots })
            .collect()
    }

    /// Visits every subspace whose RREF has exactly the unit's pivot set.
    pub fn for_each_in_unit<F: FnMut(&LinearCode)>(&self, unit: &PivotUnit, mut visit: F) {
        let r = unit.pivots.len();
        let n = self.n;
        let p = self.field.p() as u16;
        let mut is_pivot = vec![false; n];
        for &c in &unit.pivots {
            is_pivot[c] = true;
        }
        // free positions in row-major order
        let mut free: Vec<(usize, usize)> = Vec::new();
        for (i, &pc) in unit.pivots.iter().enumerate() {
            for j in pc + 1..n {
                if !is_pivot[j] {
                    free.push((i, j));
                }
            }
        }
        let mut rows = vec![vec![0u16; n]; r];
        for (i, &pc) in unit.pivots.iter().enumerate() {
            rows[i][pc] = 1;
        }
        let mut odometer = vec![0u16; free.len()];
        loop {
            let code = LinearCode::from_rref_unchecked(
                self.field,
                n,
                rows.clone(),
                unit.pivots.clone(),
            );
            visit(&code);
            let mut k = 0;
            while k < odometer.len() {
                let (i, j) = free[k];
                odometer[k] += 1;
                if odometer[k] < p {
                    rows[i][j] = odometer[k];
                    break;
                }
                odometer[k] = 0;
                rows[i][j] = 0;
                k += 1;
            }
            if k == odometer.len() {
                break;
            }
        }
    }

    /// Sequential enumeration of the whole lattice of subspaces.
    pub fn for_each<F: FnMut(&LinearCode)>(&self, mut visit: F) {
        for unit in self.units() {
            self.for_each_in_unit(&unit, &mut visit);
        }
    }
}

/// Report of one exhaustive sweep. Serializes with stable field order and is
/// byte-identical for a given input regardless of worker count.
#[derive(Debug, Clone, Serialize)]
pub struct SweepReport {
    pub schema: &'static str,
    pub check: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub l: Option<u32>,
    pub n: usize,
    pub k: u32,
    /// Subspaces visited (theorem1/theorem2) or DFS nodes visited (theorem4).
    pub universe: u64,
    /// Instances satisfying the sweep's hypothesis.
    pub eligible: u64,
    pub max: u64,
    pub bound: u64,
    pub attained: bool,
    pub extremal_count: u64,
    /// Capped sample of extremal families, in canonical order.
    pub extremal: Vec<Value>,
    /// Families above the structure threshold that were atom-checked.
    pub threshold_checked: u64,
    pub pass: bool,
    pub inconclusive: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Value>,
    pub method: String,
}

impl SweepReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serialization")
    }

    /// Process exit code mapping: 0 pass, 1 violation, 2 inconclusive.
    pub fn exit_code(&self) -> i32 {
        if self.inconclusive {
            2
        } else if self.pass {
            0
        } else {
            1
        }
    }
}

const EXTREMAL_SAMPLE_CAP: usize = 4;

fn pow2_bound(n: usize, l: u32) -> u64 {
    1u64 << (n as u32 / l)
}

/// Is the code contained in the hyperplane orthogonal to the all-one vector?
fn orthogonal_to_one(code: &LinearCode) -> bool {
    let p = code.field().p() as u64;
    code.basis_rows()
        .iter()
        .all(|row| row.iter().map(|&c| c as u64).sum::<u64>() % p == 0)
}

fn family_of_binary_points(code: &LinearCode) -> SetFamily {
    let mut members = Vec::new();
    code.for_each_binary_point(|coords| {
        let mask = coords
            .iter()
            .enumerate()
            .fold(0u64, |acc, (i, &c)| acc | (c as u64) << i);
        members.push(mask);
    })
    .expect("sweep dimensions stay under the enumeration cap");
    SetFamily::new(code.ambient_len(), members).expect("sweep ground sets stay under 64")
}

#[derive(Default)]
struct UnitOutcome {
    visited: u64,
    eligible: u64,
    max: u64,
    extremal_count: u64,
    extremal: Vec<Value>,
    threshold_checked: u64,
    counterexample: Option<Value>,
}

fn merge_outcomes(units: Vec<UnitOutcome>) -> UnitOutcome {
    let mut total = UnitOutcome::default();
    for u in &units {
        total.max = total.max.max(u.max);
    }
    for u in units {
        total.visited += u.visited;
        total.eligible += u.eligible;
        total.threshold_checked += u.threshold_checked;
        if u.max == total.max {
            total.extremal_count += u.extremal_count;
            for e in u.extremal {
                if total.extremal.len() < EXTREMAL_SAMPLE_CAP {
                    total.extremal.push(e);
                }
            }
        }
        if total.counterexample.is_none() {
            total.counterexample = u.counterexample;
        }
    }
    total
}

/// Verifies the prime-divisibility size bound exhaustively: every subspace V
/// of F_p^n with V^(p) orthogonal to the all-one vector has at most
/// 2^(floor(n/p)) binary points.
///
/// Every p-wise p-divisible family is contained in the binary points of its
/// own span, and that span satisfies the orthogonality condition, so the
/// subspace sweep covers the whole family universe.
pub fn verify_theorem1(p: u32, n: usize, budget: &SearchBudget) -> Result<SweepReport> {
    subspace_sweep(p, n, p, budget, false)
}

/// Verifies the extremal structure exhaustively: for every subspace V of
/// F_p^n with V^(p+1) orthogonal to the all-one vector, a binary-point family
/// larger than 2^(floor(n/p) - 1) has all atoms of size exactly p.
pub fn verify_theorem2(p: u32, n: usize, budget: &SearchBudget) -> Result<SweepReport> {
    subspace_sweep(p, n, p + 1, budget, true)
}

fn subspace_sweep(
    p: u32,
    n: usize,
    power: u32,
    budget: &SearchBudget,
    structure: bool,
) -> Result<SweepReport> {
    let field = PrimeField::new(p)?;
    let enumerator = SubspaceEnumerator::new(field, n);
    let total = enumerator.total();
    if total > budget.max_subspaces {
        return Err(Error::BudgetExceeded {
            estimate: total,
            budget: budget.max_subspaces,
        });
    }
    let bound = pow2_bound(n, p);
    let units = enumerator.units();
    let outcomes: Vec<UnitOutcome> = units
        .par_iter()
        .map(|unit| {
            let mut out = UnitOutcome::default();
            enumerator.for_each_in_unit(unit, |code| {
                out.visited += 1;
                let powered = code.power(power).expect("power >= 1");
                if !orthogonal_to_one(&powered) {
                    return;
                }
                out.eligible += 1;
                let count = code
                    .binary_point_count()
                    .expect("dimension bounded by n in sweeps");
                if count > out.max {
                    out.max = count;
                    out.extremal_count = 0;
                    out.extremal.clear();
                }
                if count == out.max {
                    out.extremal_count += 1;
                    if out.extremal.len() < EXTREMAL_SAMPLE_CAP {
                        out.extremal.push(family_of_binary_points(code).to_json());
                    }
                }
                if count > bound && out.counterexample.is_none() {
                    // should be impossible; re-validate through the family
                    // predicate before reporting
                    let family = family_of_binary_points(code);
                    let recheck = family
                        .is_kwise_divisible(power, p)
                        .map(|r| r.pass)
                        .unwrap_or(false);
                    out.counterexample = Some(json!({
                        "code": code.render(),
                        "binary_points": count,
                        "bound": bound,
                        "family": family.to_json(),
                        "revalidated_divisible": recheck,
                    }));
                }
                if structure {
                    let family = family_of_binary_points(code);
                    // integer-safe |F| > 2^(floor(n/p) - 1)
                    if 2 * family.len() as u64 > bound {
                        out.threshold_checked += 1;
                        let restricted = family
                            .restrict(family.support())
                            .expect("support is inside the ground set");
                        if !restricted.atomic_structure_check(p).pass
                            && out.counterexample.is_none()
                        {
                            let recheck = family
                                .is_kwise_divisible(power, p)
                                .map(|r| r.pass)
                                .unwrap_or(false);
                            out.counterexample = Some(json!({
                                "code": code.render(),
                                "family": family.to_json(),
                                "family_size": family.len(),
                                "atom_sizes": restricted.atoms().sizes(),
                                "revalidated_divisible": recheck,
                            }));
                        }
                    }
                }
            });
            out
        })
        .collect();
    let merged = merge_outcomes(outcomes);
    if merged.visited as u128 != total {
        return Err(Error::Internal(format!(
            "enumerated {} subspaces but the Gaussian binomial total is {total}",
            merged.visited
        )));
    }
    let check = if structure { "theorem2" } else { "theorem1" };
    let method = if structure {
        "subspace sweep: every (p+1)-wise p-divisible family lies in the binary points of its \
         span, and the span's (p+1)-st power is orthogonal to the all-one vector"
    } else {
        "subspace sweep: every p-wise p-divisible family lies in the binary points of its span, \
         and the span's p-th power is orthogonal to the all-one vector"
    };
    Ok(SweepReport {
        schema: SCHEMA,
        check: check.to_string(),
        p: Some(p),
        l: None,
        n,
        k: power,
        universe: merged.visited,
        eligible: merged.eligible,
        max: merged.max,
        bound,
        attained: merged.max == bound,
        extremal_count: merged.extremal_count,
        extremal: merged.extremal,
        threshold_checked: merged.threshold_checked,
        pass: merged.counterexample.is_none() && merged.max <= bound,
        inconclusive: false,
        counterexample: merged.counterexample,
        method: method.to_string(),
    })
}

#[derive(Default)]
struct DfsOutcome {
    nodes: u64,
    max: u64,
    extremal_count: u64,
    extremal: Vec<Value>,
    threshold_checked: u64,
    counterexample: Option<Value>,
    inconclusive: bool,
}

/// Extends `closure` (already intersection-closed and l-divisible) with
/// `cand`; returns the added sets, or None if some intersection has size not
/// divisible by l. `closure` is restored by truncation on backtrack.
fn close_with(closure: &[u64], cand: u64, l: u32) -> Option<Vec<u64>> {
    let mut additions = vec![cand];
    if closure.contains(&cand) {
        return Some(Vec::new());
    }
    let mut i = 0;
    while i < additions.len() {
        let a = additions[i];
        let mut j = 0;
        while j < closure.len() + i {
            let other = if j < closure.len() {
                closure[j]
            } else {
                additions[j - closure.len()]
            };
            let meet = other & a;
            if meet.count_ones() % l != 0 {
                return None;
            }
            if !closure.contains(&meet) && !additions.contains(&meet) {
                additions.push(meet);
            }
            j += 1;
        }
        i += 1;
    }
    Some(additions)
}

/// Verifies the composite-modulus structure theorem by depth-first search
/// over families: members are added in increasing bitmask order and a branch
/// is pruned as soon as its intersection closure contains a set of size not
/// divisible by l.
///
/// At desk scale the divisibility order 4l^2 is at least n + 1, so k-wise
/// l-divisibility coincides with full closure divisibility and the DFS
/// universe is exactly the theorem's family universe.
pub fn verify_theorem4(l: u32, n: usize, budget: &SearchBudget) -> Result<SweepReport> {
    if l == 0 {
        return Err(Error::Precondition("l must be positive".into()));
    }
    if n > 8 {
        return Err(Error::Precondition(
            "the family search is capped at n <= 8".into(),
        ));
    }
    let k = 4 * l * l;
    if (k as u64) < n as u64 + 1 {
        return Err(Error::Internal(
            "sweep requires 4l^2 >= n + 1 for closure equivalence".into(),
        ));
    }
    let universe_mask = mask_universe(n);
    // a member intersected with itself k times is itself, so its own size
    // must already be divisible
    let candidates: Vec<u64> = (0..=universe_mask)
        .filter(|m| m.count_ones() % l == 0)
        .collect();
    let bound = pow2_bound(n, l);
    // Deterministic budget: each root branch gets an equal share, so the
    // outcome does not depend on thread scheduling.
    let branch_budget = (budget.max_nodes / candidates.len().max(1) as u64).max(1);

    let record = |members: &[u64], out: &mut DfsOutcome| {
        let size = members.len() as u64;
        if size > out.max {
            out.max = size;
            out.extremal_count = 0;
            out.extremal.clear();
        }
        if size == out.max {
            out.extremal_count += 1;
            if out.extremal.len() < EXTREMAL_SAMPLE_CAP {
                let family =
                    SetFamily::new(n, members.iter().copied()).expect("masks fit the ground set");
                out.extremal.push(family.to_json());
            }
        }
        if 2 * size > bound {
            out.threshold_checked += 1;
            let family =
                SetFamily::new(n, members.iter().copied()).expect("masks fit the ground set");
            let restricted = family
                .restrict(family.support())
                .expect("support is inside the ground set");
            if !restricted.atomic_structure_check(l).pass && out.counterexample.is_none() {
                out.counterexample = Some(json!({
                    "family": family.to_json(),
                    "family_size": size,
                    "atom_sizes": restricted.atoms().sizes(),
                }));
            }
        }
    };

    let branch = |root_idx: usize| -> DfsOutcome {
        let mut out = DfsOutcome::default();
        let root = candidates[root_idx];
        let mut members = vec![root];
        let mut closure = vec![root];
        // frame = (next candidate index to try, closure length to restore on pop)
        let mut frames: Vec<(usize, usize)> = vec![(root_idx + 1, 0)];
        out.nodes += 1;
        record(&members, &mut out);
        while let Some(&(next_idx, restore_len)) = frames.last() {
            if out.nodes >= branch_budget {
                out.inconclusive = true;
                break;
            }
            let mut idx = next_idx;
            let mut chosen: Option<Vec<u64>> = None;
            while idx < candidates.len() {
                idx += 1;
                if let Some(additions) = close_with(&closure, candidates[idx - 1], l) {
                    chosen = Some(additions);
                    break;
                }
            }
            frames.last_mut().expect("frame present").0 = idx;
            match chosen {
                Some(additions) => {
                    let restore = closure.len();
                    closure.extend(additions);
                    members.push(candidates[idx - 1]);
                    out.nodes += 1;
                    record(&members, &mut out);
                    frames.push((idx, restore));
                }
                None => {
                    frames.pop();
                    closure.truncate(restore_len);
                    members.pop();
                }
            }
        }
        out
    };

    let outcomes: Vec<DfsOutcome> = (0..candidates.len()).into_par_iter().map(branch).collect();

    let mut nodes = 1u64; // the empty family
    let mut max = 0u64;
    let mut extremal_count = 0u64;
    let mut extremal: Vec<Value> = Vec::new();
    let mut threshold_checked = 0u64;
    let mut counterexample = None;
    let mut inconclusive = false;
    for o in &outcomes {
        max = max.max(o.max);
    }
    for o in outcomes {
        nodes += o.nodes;
        threshold_checked += o.threshold_checked;
        inconclusive |= o.inconclusive;
        if o.max == max {
            extremal_count += o.extremal_count;
            for e in o.extremal {
                if extremal.len() < EXTREMAL_SAMPLE_CAP {
                    extremal.push(e);
                }
            }
        }
        if counterexample.is_none() {
            counterexample = o.counterexample;
        }
    }

    Ok(SweepReport {
        schema: SCHEMA,
        check: "theorem4".to_string(),
        p: None,
        l: Some(l),
        n,
        k,
        universe: nodes,
        eligible: nodes,
        max,
        bound,
        attained: max == bound,
        extremal_count,
        extremal,
        threshold_checked,
        pass: counterexample.is_none() && max <= bound,
        inconclusive,
        counterexample,
        method: "depth-first enumeration over member sets in increasing bitmask order, pruning \
                 any branch whose intersection closure contains a set of size not divisible by l"
            .to_string(),
    })
}

/// Exhaustive check of the improved counting bound over every subspace of
/// F_3^n for n up to `n_max`: whenever the binary points of V span V, contain
/// at least two nonzero members, and St(V^(3)) is trivial on the support,
/// |V ∩ {0,1}^n| <= 2^(dim V - 1). Also re-asserts the unconditional 2^dim
/// bound on every subspace visited.
pub fn improved_odlyzko_sweep(n_max: usize) -> Result<ImprovedOdlyzkoSweep> {
    let field = PrimeField::new(3)?;
    let mut visited = 0u64;
    let mut family_generated = 0u64;
    let mut hypothesis_met = 0u64;
    let mut failures: Vec<Value> = Vec::new();
    for n in 1..=n_max {
        let enumerator = SubspaceEnumerator::new(field, n);
        enumerator.for_each(|code| {
            visited += 1;
            let (count, bound, ok) = odlyzko_count(code).expect("dim bounded by n_max");
            assert!(ok, "binary point count {count} exceeds {bound}");
            let family = family_of_binary_points(code);
            let span = span_family(&family, 3).expect("family fits the field");
            if &span != code {
                return;
            }
            family_generated += 1;
            let report = improved_odlyzko_check(&family, 3).expect("p = 3 is valid");
            if report.hypothesis_met {
                hypothesis_met += 1;
                if !report.pass {
                    failures.push(json!({
                        "n": n,
                        "family": family.to_json(),
                        "details": report.details,
                    }));
                }
            }
        });
    }
    Ok(ImprovedOdlyzkoSweep {
        schema: SCHEMA,
        n_max,
        visited,
        family_generated,
        hypothesis_met,
        pass: failures.is_empty(),
        failures,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct ImprovedOdlyzkoSweep {
    pub schema: &'static str,
    pub n_max: usize,
    pub visited: u64,
    pub family_generated: u64,
    pub hypothesis_met: u64,
    pub pass: bool,
    pub failures: Vec<Value>,
}

/// Aggregate statistics for one check inside the random suite.
#[derive(Debug, Clone, Default, Serialize, PartialEq, Eq)]
pub struct CheckStats {
    pub run: u64,
    pub passed: u64,
    pub hypothesis_not_met: u64,
    pub failed: u64,
}

impl CheckStats {
    fn absorb(&mut self, hypothesis_met: bool, pass: bool) {
        self.run += 1;
        if !hypothesis_met {
            self.hypothesis_not_met += 1;
        } else if pass {
            self.passed += 1;
        } else {
            self.failed += 1;
        }
    }

    fn merge(&mut self, other: &CheckStats) {
        self.run += other.run;
        self.passed += other.passed;
        self.hypothesis_not_met += other.hypothesis_not_met;
        self.failed += other.failed;
    }
}

/// Report of [`random_property_suite`]; byte-identical for a fixed seed
/// regardless of worker count.
#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub schema: &'static str,
    pub check: String,
    pub trials: u64,
    pub seed: u64,
    pub kneser: CheckStats,
    pub kneser_chain: CheckStats,
    pub growth: CheckStats,
    pub bridge: CheckStats,
    pub odlyzko: CheckStats,
    pub improved_odlyzko: CheckStats,
    pub failures: Vec<Value>,
    pub pass: bool,
}

impl SuiteReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serialization")
    }

    pub fn exit_code(&self) -> i32 {
        if self.pass {
            0
        } else {
            1
        }
    }
}

const SUITE_FAILURE_CAP: usize = 8;

#[derive(Default)]
struct TrialOutcome {
    kneser: CheckStats,
    kneser_chain: CheckStats,
    growth: CheckStats,
    bridge: CheckStats,
    odlyzko: CheckStats,
    improved_odlyzko: CheckStats,
    failures: Vec<Value>,
}

/// Random nonzero code over F_p^n spanned by up to `max_gens` random rows.
pub fn random_code(
    rng: &mut SplitMix64,
    field: PrimeField,
    n: usize,
    max_gens: usize,
) -> LinearCode {
    loop {
        let gens: Vec<FieldVector> = (0..1 + rng.below(max_gens as u64) as usize)
            .map(|_| FieldVector::new(field, (0..n).map(|_| rng.below(field.p() as u64))))
            .collect();
        let code = LinearCode::span(&gens).expect("generators share the ambient space");
        if !code.is_zero() {
            return code;
        }
    }
}

/// Random nonzero full-support code over F_p^n.
pub fn random_full_support_code(
    rng: &mut SplitMix64,
    field: PrimeField,
    n: usize,
    max_gens: usize,
) -> LinearCode {
    loop {
        let code = random_code(rng, field, n, max_gens);
        if code.is_full_support() {
            return code;
        }
    }
}

/// Random nonempty family on a ground set of size n.
pub fn random_family(rng: &mut SplitMix64, n: usize, max_members: usize) -> SetFamily {
    let count = 1 + rng.below(max_members as u64) as usize;
    let members = (0..count).map(|_| rng.below(mask_universe(n) + 1));
    SetFamily::new(n, members).expect("masks stay inside the ground set")
}

fn run_trial(seed: u64, index: u64) -> TrialOutcome {
    let mut rng = SplitMix64::stream(seed, index);
    let mut out = TrialOutcome::default();
    fn push_failure(failures: &mut Vec<Value>, check: &str, trial: u64, payload: Value) {
        if failures.len() < SUITE_FAILURE_CAP {
            failures.push(json!({ "check": check, "trial": trial, "payload": payload }));
        }
    }

    // code checks: p in {2, 3, 5}, n <= 10
    let p = *rng.choose(&[2u32, 3, 5]);
    let field = PrimeField::new(p).expect("prime");
    let n = 2 + rng.below(9) as usize;
    let c = random_code(&mut rng, field, n, 4);
    let d = random_code(&mut rng, field, n, 4);
    let r = kneser_check(&c, &d).expect("nonzero codes");
    out.kneser.absorb(r.hypothesis_met, r.pass);
    if !r.pass {
        push_failure(&mut out.failures, "kneser", index, json!(r.witness));
    }

    let k = 1 + rng.below(4) as u32;
    let r = kneser_chain_bound(&c, k).expect("nonzero code");
    out.kneser_chain.absorb(r.hypothesis_met, r.pass);
    if r.hypothesis_met && !r.pass {
        push_failure(&mut out.failures, "kneser_chain", index, json!(r.witness));
    }

    let growth_n = 2 + rng.below(5) as usize;
    let v = random_full_support_code(&mut rng, field, growth_n, 4);
    let t = 1 + rng.below(4) as u32;
    let r = growth_check(&v, t).expect("full-support nonzero code");
    out.growth.absorb(r.hypothesis_met, r.pass);
    if !r.pass {
        push_failure(&mut out.failures, "growth", index, json!(r.witness));
    }

    // family checks: p in {2, 3}, n <= 8, k <= 4
    let fam_p = *rng.choose(&[2u32, 3]);
    let fam_n = 2 + rng.below(7) as usize;
    let family = random_family(&mut rng, fam_n, 6);
    let fam_k = 1 + rng.below(4) as u32;
    let cert = bridge_check(&family, fam_k, fam_p).expect("valid arguments");
    out.bridge.absorb(true, cert.agree());
    if !cert.agree() {
        push_failure(&mut out.failures, "bridge", index, json!(cert.to_json()));
    }

    let code = span_family(&family, fam_p).expect("family fits the field");
    let (count, bound, ok) = odlyzko_count(&code).expect("dim <= 8");
    out.odlyzko.absorb(true, ok);
    if !ok {
        push_failure(
            &mut out.failures,
            "odlyzko",
            index,
            json!({ "count": count, "bound": bound }),
        );
    }

    let io_p = *rng.choose(&[3u32, 5]);
    let r = improved_odlyzko_check(&family, io_p).expect("p >= 3");
    out.improved_odlyzko.absorb(r.hypothesis_met, r.pass);
    if r.hypothesis_met && !r.pass {
        push_failure(&mut out.failures, "improved_odlyzko", index, json!(r.witness));
    }

    out
}

/// Runs the randomized invariants of the stabilizer and bridge modules over
/// `trials` seeded instances. Instances are derived per-index, evaluated in
/// parallel, and merged in index order.
pub fn random_property_suite(trials: u64, seed: u64) -> Result<SuiteReport> {
    if trials == 0 {
        return Err(Error::Precondition("trials must be positive".into()));
    }
    let outcomes: Vec<TrialOutcome> = (0..trials)
        .into_par_iter()
        .map(|i| run_trial(seed, i))
        .collect();
    let mut report = SuiteReport {
        schema: SCHEMA,
        check: "suite".to_string(),
        trials,
        seed,
        kneser: CheckStats::default(),
        kneser_chain: CheckStats::default(),
        growth: CheckStats::default(),
        bridge: CheckStats::default(),
        odlyzko: CheckStats::default(),
        improved_odlyzko: CheckStats::default(),
        failures: Vec::new(),
        pass: true,
    };
    for o in outcomes {
        report.kneser.merge(&o.kneser);
        report.kneser_chain.merge(&o.kneser_chain);
        report.growth.merge(&o.growth);
        report.bridge.merge(&o.bridge);
        report.odlyzko.merge(&o.odlyzko);
        report.improved_odlyzko.merge(&o.improved_odlyzko);
        for f in o.failures {
            if report.failures.len() < SUITE_FAILURE_CAP {
                report.failures.push(f);
            }
        }
    }
    report.pass = report.kneser.failed == 0
        && report.kneser_chain.failed == 0
        && report.growth.failed == 0
        && report.bridge.failed == 0
        && report.odlyzko.failed == 0
        && report.improved_odlyzko.failed == 0;
    Ok(report)
}
