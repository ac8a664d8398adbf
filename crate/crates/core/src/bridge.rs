//! The dictionary between set families and codes: divisibility versus
//! orthogonality of powers, counting bounds, the Fermat–Euler divisibility
//! lift, and stabilizer-driven family splitting.

use serde::Serialize;
use serde_json::{json, Value};

use crate::code::LinearCode;
use crate::error::{Error, Result};
use crate::family::{mask_universe, render_mask, SetFamily};
use crate::field::{FieldVector, PrimeField};
use crate::report::{VerificationReport, SCHEMA};
use crate::stabilizer::{decompose, restricted_stabilizer_dim};

/// Characteristic vector of a member mask over F_p.
pub fn member_vector(field: PrimeField, n: usize, mask: u64) -> FieldVector {
    FieldVector::new(field, (0..n).map(|i| (mask >> i) & 1))
}

/// The F_p-span of a family's characteristic vectors.
pub fn span_family(family: &SetFamily, p: u32) -> Result<LinearCode> {
    let field = PrimeField::new(p)?;
    let vectors: Vec<FieldVector> = family
        .members()
        .iter()
        .map(|&m| member_vector(field, family.n(), m))
        .collect();
    LinearCode::span_in(field, family.n(), &vectors)
}

/// Both sides of the divisibility/orthogonality equivalence for one family:
/// the combinatorial verdict is the k-wise p-divisibility of F, the algebraic
/// verdict is V^(k) ⊆ 1⊥ for V the span of F over F_p. They must agree.
#[derive(Debug, Clone, Serialize)]
pub struct DivisibilityCertificate {
    pub schema: &'static str,
    pub k: u32,
    pub p: u32,
    pub n: usize,
    pub family_size: usize,
    pub code_dim: usize,
    pub combinatorial: bool,
    pub algebraic: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
}

impl DivisibilityCertificate {
    pub fn agree(&self) -> bool {
        self.combinatorial == self.algebraic
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("certificate serialization")
    }
}

/// Evaluates both verdicts independently. Disagreement marks an
/// implementation bug and is reported with the full witness.
pub fn bridge_check(family: &SetFamily, k: u32, p: u32) -> Result<DivisibilityCertificate> {
    if k == 0 {
        return Err(Error::ZeroPower);
    }
    let combinatorial_report = family.is_kwise_divisible(k, p)?;
    let combinatorial = combinatorial_report.pass;

    let code = span_family(family, p)?;
    let field = code.field();
    let one = LinearCode::span(&[FieldVector::all_one(field, family.n())])?;
    let algebraic = if code.is_zero() {
        true
    } else {
        code.power(k)?.is_subspace_of(&one.dual())?
    };

    let witness = if combinatorial != algebraic {
        Some(json!({
            "severity": "internal-error",
            "family": family.to_json(),
            "combinatorial_witness": combinatorial_report.witness,
            "power_dim": code.power(k)?.dim(),
        }))
    } else {
        combinatorial_report.witness
    };

    Ok(DivisibilityCertificate {
        schema: SCHEMA,
        k,
        p,
        n: family.n(),
        family_size: family.len(),
        code_dim: code.dim(),
        combinatorial,
        algebraic,
        witness,
    })
}

/// |V ∩ {0,1}^n| against the 2^dim bound. The bound holds unconditionally.
pub fn odlyzko_count(code: &LinearCode) -> Result<(u64, u64, bool)> {
    let count = code.binary_point_count()?;
    let bound = 1u64 << code.dim();
    Ok((count, bound, count <= bound))
}

/// The improved counting bound: for p >= 3 and a family with at least two
/// nonzero members whose span V has trivial stabilizer of V^(3) on its
/// support, |V ∩ {0,1}^n| <= 2^(dim V - 1).
pub fn improved_odlyzko_check(family: &SetFamily, p: u32) -> Result<VerificationReport> {
    if p < 3 {
        return Err(Error::Precondition(
            "the improved counting bound requires p >= 3".into(),
        ));
    }
    let nonzero = family.members().iter().filter(|&&m| m != 0).count();
    if nonzero < 2 {
        let mut r = VerificationReport::hypothesis_not_met(
            "improved_odlyzko",
            "family has fewer than two nonzero members",
        );
        r.detail("nonzero_members", json!(nonzero));
        return Ok(r);
    }
    let code = span_family(family, p)?;
    let cube = code.power(3)?;
    let stab_dim = restricted_stabilizer_dim(&cube)?;
    if stab_dim != 1 {
        let mut r = VerificationReport::hypothesis_not_met(
            "improved_odlyzko",
            "stabilizer of the third power is not trivial",
        );
        r.detail("restricted_stab_dim", json!(stab_dim));
        return Ok(r);
    }
    let count = code.binary_point_count()?;
    let bound = 1u64 << (code.dim() - 1);
    let mut report = VerificationReport::new("improved_odlyzko");
    report.detail("dim", json!(code.dim()));
    report.detail("count", json!(count));
    report.detail("bound", json!(bound));
    if count > bound {
        report.fail(json!({ "family": family.to_json() }));
    }
    Ok(report)
}

fn euler_phi_prime_power(p: u32, alpha: u32) -> u64 {
    (p as u64).pow(alpha) - (p as u64).pow(alpha - 1)
}

fn pow_mod(base: u64, mut exp: u64, modulus: u64) -> u64 {
    let mut base = base % modulus;
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % modulus;
        }
        base = base * base % modulus;
        exp >>= 1;
    }
    acc
}

/// Expresses a binary vector v of V^(k) as an integer combination of the
/// members of F^k and pushes the combination through the Fermat–Euler
/// congruences to certify that |supp(v)| is divisible by p^alpha.
///
/// The family must be k·phi(p^alpha)-wise p^alpha-divisible (verified here);
/// v must be binary and lie in V^(k). Returns all intermediate congruence
/// values.
pub fn prime_power_lift_check(
    family: &SetFamily,
    k: u32,
    p: u32,
    alpha: u32,
    v: &FieldVector,
) -> Result<VerificationReport> {
    if alpha == 0 || k == 0 {
        return Err(Error::Precondition("k and alpha must be positive".into()));
    }
    let field = PrimeField::new(p)?;
    if v.field() != field {
        return Err(Error::FieldMismatch {
            left: p,
            right: v.field().p(),
        });
    }
    let p_alpha = (p as u64).pow(alpha);
    let phi = euler_phi_prime_power(p, alpha);
    let k_phi = (k as u64 * phi) as u32;

    let divisibility = family.is_kwise_divisible(k_phi, p_alpha as u32)?;
    if !divisibility.pass {
        return Err(Error::HypothesisViolation(format!(
            "family is not {k_phi}-wise {p_alpha}-divisible"
        )));
    }

    if !v.is_binary() {
        return Err(Error::Precondition("v must be a {0,1}-vector".into()));
    }
    let code = span_family(family, p)?;
    let power = code.power(k)?;
    if !power.contains(v)? {
        return Err(Error::Precondition(
            "v does not lie in the stated power of the family's span".into(),
        ));
    }

    // Solve sum(lambda_i * v_i) = v (mod p) over the generating set F^k.
    let generators = family.product_family(k)?;
    let columns: Vec<u64> = generators.members().to_vec();
    let lambdas = solve_combination(field, family.n(), &columns, v)
        .ok_or_else(|| Error::Internal("no expression of v over the power family".into()))?;

    // Integer lift with representatives in [0, p).
    let n = family.n();
    let mut w = vec![0u64; n];
    for (&lambda, &mask) in lambdas.iter().zip(&columns) {
        if lambda == 0 {
            continue;
        }
        for (i, wi) in w.iter_mut().enumerate() {
            if mask >> i & 1 == 1 {
                *wi += lambda as u64;
            }
        }
    }
    debug_assert!(w
        .iter()
        .enumerate()
        .all(|(i, &wi)| (wi % p as u64) as u16 == v.get(i)));

    let power_sum_mod: u64 = w
        .iter()
        .map(|&wi| pow_mod(wi, phi, p_alpha))
        .fold(0, |acc, x| (acc + x) % p_alpha);
    let support_size = v.support().len() as u64;

    let mut report = VerificationReport::new("prime_power_lift");
    report.detail("k", json!(k));
    report.detail("p", json!(p));
    report.detail("alpha", json!(alpha));
    report.detail("phi", json!(phi));
    report.detail("terms", json!(lambdas.iter().filter(|&&l| l != 0).count()));
    report.detail("power_sum_mod", json!(power_sum_mod));
    report.detail("support_size", json!(support_size));
    report.detail("support_size_mod", json!(support_size % p_alpha));

    let congruence_zero = power_sum_mod == 0;
    let congruence_support = power_sum_mod == support_size % p_alpha;
    let divisible = support_size % p_alpha == 0;
    report.detail("congruence_zero", json!(congruence_zero));
    report.detail("congruence_support", json!(congruence_support));
    if !(congruence_zero && congruence_support && divisible) {
        report.fail(json!({
            "family": family.to_json(),
            "v": v.render(),
            "w": w,
        }));
    }
    Ok(report)
}

/// One solution of sum(lambda_i * column_i) = target over F_p, free
/// variables set to zero; None if the target is outside the column span.
fn solve_combination(
    field: PrimeField,
    n: usize,
    columns: &[u64],
    target: &FieldVector,
) -> Option<Vec<u16>> {
    let f = columns.len();
    // Augmented matrix rows: one per coordinate, entries are the columns'
    // values at that coordinate plus the target.
    let mut rows: Vec<Vec<u16>> = (0..n)
        .map(|i| {
            let mut row: Vec<u16> = columns.iter().map(|&m| (m >> i & 1) as u16).collect();
            row.push(target.get(i));
            row
        })
        .collect();
    // Gaussian elimination to RREF.
    let mut pivot_cols: Vec<usize> = Vec::new();
    let mut rank = 0usize;
    for col in 0..f {
        let Some(pr) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, pr);
        let inv = field.inv(rows[rank][col]);
        if inv != 1 {
            for x in rows[rank].iter_mut() {
                *x = field.mul(*x, inv);
            }
        }
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == rank || row[col] == 0 {
                continue;
            }
            let factor = row[col];
            for (x, &pv) in row.iter_mut().zip(&pivot_row) {
                *x = field.sub(*x, field.mul(factor, pv));
            }
        }
        pivot_cols.push(col);
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    // Inconsistent if a zero row has nonzero augment.
    for row in rows.iter().skip(rank) {
        if row[..f].iter().all(|&x| x == 0) && row[f] != 0 {
            return None;
        }
    }
    if rows[..rank]
        .iter()
        .any(|row| row[..f].iter().all(|&x| x == 0) && row[f] != 0)
    {
        return None;
    }
    let mut lambdas = vec![0u16; f];
    for (r, &col) in pivot_cols.iter().enumerate() {
        lambdas[col] = rows[r][f];
    }
    Some(lambdas)
}

/// Outcome of the stabilizer-driven split of a divisible family.
#[derive(Debug, Clone)]
pub enum SplitOutcome {
    /// Support blocks S1, S2 (as masks on the original ground set) with the
    /// restricted families; both inherit k-wise p-divisibility and
    /// |F| <= |F1|·|F2|.
    Split {
        s1: u64,
        s2: u64,
        first: SetFamily,
        second: SetFamily,
    },
    /// The k-th power of the span has trivial stabilizer.
    Indecomposable,
}

/// Splits a full-support k-wise p-divisible family along the stabilizer
/// decomposition of V^(k), grouping the components into the first part
/// versus the rest.
pub fn split_family(family: &SetFamily, k: u32, p: u32) -> Result<SplitOutcome> {
    if family.n() == 0 || !family.is_full_support() {
        return Err(Error::HypothesisViolation(
            "family must have full support".into(),
        ));
    }
    if !family.is_kwise_divisible(k, p)?.pass {
        return Err(Error::HypothesisViolation(format!(
            "family is not {k}-wise {p}-divisible"
        )));
    }
    let code = span_family(family, p)?;
    let power = code.power(k)?;
    let parts = decompose(&power)?;
    if parts.m() < 2 {
        return Ok(SplitOutcome::Indecomposable);
    }
    let to_mask = |coords: &[usize]| coords.iter().fold(0u64, |acc, &i| acc | 1 << i);
    let s1 = to_mask(&parts.parts()[0]);
    let s2 = mask_universe(family.n()) & !s1;
    let first = family.restrict(s1)?;
    let second = family.restrict(s2)?;
    assert!(
        first.is_kwise_divisible(k, p)?.pass && second.is_kwise_divisible(k, p)?.pass,
        "restrictions of a divisible family along the decomposition must stay divisible"
    );
    assert!(
        (family.len() as u128) <= first.len() as u128 * second.len() as u128,
        "family must inject into the product of its restrictions"
    );
    Ok(SplitOutcome::Split {
        s1,
        s2,
        first,
        second,
    })
}

/// For every coordinate outside the union S of supports of components of
/// dimension >= 2 in the decomposition of V^(t), certifies that the atom of F
/// containing it has cardinality divisible by p^alpha.
pub fn tphi_atom_report(
    family: &SetFamily,
    t: u32,
    p: u32,
    alpha: u32,
    l: u32,
    k: u32,
) -> Result<VerificationReport> {
    if t == 0 || alpha == 0 {
        return Err(Error::Precondition("t and alpha must be positive".into()));
    }
    let p_alpha = (p as u64).pow(alpha);
    if l as u64 % p_alpha != 0 {
        return Err(Error::Precondition(format!(
            "p^alpha = {p_alpha} must divide l = {l}"
        )));
    }
    let phi = euler_phi_prime_power(p, alpha);
    if (k as u64) < t as u64 * phi {
        return Err(Error::Precondition(format!(
            "k = {k} must be at least t*phi(p^alpha) = {}",
            t as u64 * phi
        )));
    }
    if !family.is_full_support() {
        return Err(Error::HypothesisViolation(
            "family must have full support".into(),
        ));
    }
    if !family.is_kwise_divisible(k, l)?.pass {
        return Err(Error::HypothesisViolation(format!(
            "family is not {k}-wise {l}-divisible"
        )));
    }

    let mut report = VerificationReport::new("tphi_atoms");
    report.detail("t", json!(t));
    report.detail("p", json!(p));
    report.detail("alpha", json!(alpha));
    if family.n() == 0 {
        report.detail("s", json!(Vec::<usize>::new()));
        return Ok(report);
    }

    let code = span_family(family, p)?;
    let power = code.power(t)?;
    let parts = decompose(&power)?;
    let mut s_mask = 0u64;
    for (part, component) in parts.parts().iter().zip(parts.components()) {
        if component.dim() >= 2 {
            for &i in part {
                s_mask |= 1 << i;
            }
        }
    }
    report.detail(
        "s",
        json!((0..family.n())
            .filter(|&i| s_mask >> i & 1 == 1)
            .map(|i| i + 1)
            .collect::<Vec<_>>()),
    );

    let atoms = family.atoms();
    let mut evidence = Vec::new();
    for j in 0..family.n() {
        if s_mask >> j & 1 == 1 {
            continue;
        }
        let atom = atoms
            .atom_of(j)
            .expect("full-support family covers every coordinate");
        let size = atom.count_ones() as u64;
        evidence.push(json!({
            "coordinate": j + 1,
            "atom": render_mask(atom, family.n()),
            "atom_size": size,
        }));
        if size % p_alpha != 0 {
            report.fail(json!({
                "coordinate": j + 1,
                "atom": render_mask(atom, family.n()),
                "atom_size": size,
                "modulus": p_alpha,
            }));
        }
    }
    report.detail("evidence", json!(evidence));
    Ok(report)
}
