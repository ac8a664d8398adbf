//! Stabilizers of codes, the disjoint-support decomposition, and the
//! dimension inequalities that come with them.

use serde_json::json;

use crate::code::LinearCode;
use crate::error::{Error, Result};
use crate::field::FieldVector;
use crate::report::VerificationReport;

/// Stabilizer St(C) = { x : x*C ⊆ C }.
///
/// A vector x stabilizes C iff <x, h*b> = 0 for every basis row b of C and
/// every parity check h of C, so St(C) is the dual of the Schur product of
/// C's dual with C. One stacked solve, no per-coordinate reasoning.
pub fn stabilizer(code: &LinearCode) -> LinearCode {
    code.dual()
        .schur_product(code)
        .expect("same ambient space")
        .dual()
}

/// The unique maximal splitting of a full-support code into components with
/// disjoint nonzero supports.
#[derive(Debug, Clone)]
pub struct StabDecomposition {
    parent: LinearCode,
    stab: LinearCode,
    parts: Vec<Vec<usize>>,
    components: Vec<LinearCode>,
}

impl StabDecomposition {
    pub fn parent(&self) -> &LinearCode {
        &self.parent
    }

    pub fn stabilizer(&self) -> &LinearCode {
        &self.stab
    }

    pub fn m(&self) -> usize {
        self.parts.len()
    }

    pub fn stab_dim(&self) -> usize {
        self.stab.dim()
    }

    /// Support blocks, sorted by smallest coordinate (0-based).
    pub fn parts(&self) -> &[Vec<usize>] {
        &self.parts
    }

    pub fn components(&self) -> &[LinearCode] {
        &self.components
    }

    /// JSON form with 1-based coordinates.
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "schema": crate::report::SCHEMA,
            "m": self.m(),
            "parts": self.parts.iter().map(|p| p.iter().map(|&i| i + 1).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "component_dims": self.components.iter().map(|c| c.dim()).collect::<Vec<_>>(),
            "stab_dim": self.stab.dim(),
        })
    }
}

/// Decomposes a nonzero full-support code as C_1 ⊕ ... ⊕ C_m with disjoint
/// supports, m = dim St(C).
///
/// Coordinates i, j land in the same part iff every stabilizer basis vector
/// takes equal values at i and j. The stabilizer has a basis of
/// disjoint-support indicators, so these signature classes are exactly the
/// supports of that basis without computing it explicitly.
pub fn decompose(code: &LinearCode) -> Result<StabDecomposition> {
    if code.is_zero() {
        return Err(Error::ZeroCode);
    }
    if !code.is_full_support() {
        return Err(Error::RestrictFirst);
    }
    let n = code.ambient_len();
    let stab = stabilizer(code);
    let m = stab.dim();

    let mut parts: Vec<Vec<usize>> = Vec::new();
    let mut signatures: Vec<Vec<u16>> = Vec::new();
    for i in 0..n {
        let sig: Vec<u16> = stab.basis_rows().iter().map(|row| row[i]).collect();
        match signatures.iter().position(|s| *s == sig) {
            Some(k) => parts[k].push(i),
            None => {
                signatures.push(sig);
                parts.push(vec![i]);
            }
        }
    }
    parts.sort_by_key(|p| p[0]);
    assert_eq!(
        parts.len(),
        m,
        "signature classes must match dim St(C) for a full-support code"
    );

    let field = code.field();
    let mut components = Vec::with_capacity(m);
    let mut dim_sum = 0usize;
    for part in &parts {
        let indicator = FieldVector::indicator(field, n, part)?;
        assert!(
            stab.contains(&indicator)?,
            "part indicator must lie in the stabilizer"
        );
        let component = code.schur_product(&LinearCode::span(&[indicator])?)?;
        assert!(
            component.is_subspace_of(code)?,
            "component must lie inside the parent code"
        );
        dim_sum += component.dim();
        components.push(component);
    }
    assert_eq!(dim_sum, code.dim(), "components must sum to the parent");

    Ok(StabDecomposition {
        parent: code.clone(),
        stab,
        parts,
        components,
    })
}

/// Dimension of the stabilizer of `code` restricted to its own support.
///
/// "Trivial stabilizer" in the sense used here means this value is 1: a code
/// that does not cover its ambient space is never trivial in the ambient
/// sense, because vectors supported off supp(C) always stabilize.
pub fn restricted_stabilizer_dim(code: &LinearCode) -> Result<usize> {
    if code.is_zero() {
        return Err(Error::ZeroCode);
    }
    let restricted = code.restrict(&code.support())?;
    Ok(stabilizer(&restricted).dim())
}

/// Checks dim CD >= dim C + dim D - dim St(CD) on a concrete pair.
///
/// The inequality is unconditional for nonzero codes, so a failing report
/// signals an implementation bug and carries the full witness.
pub fn kneser_check(c: &LinearCode, d: &LinearCode) -> Result<VerificationReport> {
    if c.is_zero() || d.is_zero() {
        return Err(Error::ZeroCode);
    }
    let product = c.schur_product(d)?;
    let stab = stabilizer(&product);
    let mut report = VerificationReport::new("kneser");
    report.detail("dim_c", json!(c.dim()));
    report.detail("dim_d", json!(d.dim()));
    report.detail("dim_product", json!(product.dim()));
    report.detail("dim_stabilizer", json!(stab.dim()));
    let lower = c.dim() as i64 + d.dim() as i64 - stab.dim() as i64;
    report.detail("lower_bound", json!(lower));
    if (product.dim() as i64) < lower {
        report.detail("severity", json!("internal-error"));
        report.fail(json!({
            "c": c.render(),
            "d": d.render(),
            "product": product.render(),
            "stabilizer": stab.render(),
        }));
    }
    Ok(report)
}

/// Checks dim C^(k) >= k dim C - k + 1 whenever C^(k) has trivial stabilizer
/// on its support; otherwise reports the hypothesis as not met.
pub fn kneser_chain_bound(c: &LinearCode, k: u32) -> Result<VerificationReport> {
    if c.is_zero() {
        return Err(Error::ZeroCode);
    }
    let power = c.power(k)?;
    let stab_dim = restricted_stabilizer_dim(&power)?;
    if stab_dim != 1 {
        let mut report =
            VerificationReport::hypothesis_not_met("kneser_chain_bound", "stabilizer not trivial");
        report.detail("k", json!(k));
        report.detail("dim_power", json!(power.dim()));
        report.detail("restricted_stab_dim", json!(stab_dim));
        return Ok(report);
    }
    let mut report = VerificationReport::new("kneser_chain_bound");
    let lower = k as i64 * c.dim() as i64 - k as i64 + 1;
    report.detail("k", json!(k));
    report.detail("dim_c", json!(c.dim()));
    report.detail("dim_power", json!(power.dim()));
    report.detail("lower_bound", json!(lower));
    if (power.dim() as i64) < lower {
        report.detail("severity", json!("internal-error"));
        report.fail(json!({ "c": c.render(), "power": power.render() }));
    }
    Ok(report)
}

/// Growth of the power sequence against half the dimension of the part of V
/// living on components of dimension at least 2.
///
/// Computes the decomposition of V^(t), the union S of supports of components
/// with dim >= 2, W = V restricted to S, and asserts
/// dim V^(r) >= dim V^(r-1) + dim(W)/2 for every r in [2, t].
pub fn growth_check(v: &LinearCode, t: u32) -> Result<VerificationReport> {
    if v.is_zero() {
        return Err(Error::ZeroCode);
    }
    if !v.is_full_support() {
        return Err(Error::RestrictFirst);
    }
    if t == 0 {
        return Err(Error::ZeroPower);
    }
    let top = v.power(t)?;
    let decomposition = decompose(&top)?;
    let mut s_coords: Vec<usize> = Vec::new();
    for (part, component) in decomposition.parts().iter().zip(decomposition.components()) {
        if component.dim() >= 2 {
            s_coords.extend_from_slice(part);
        }
    }
    s_coords.sort_unstable();
    let w_dim = if s_coords.is_empty() {
        0
    } else {
        v.restrict(&s_coords)?.dim()
    };

    let mut dims = Vec::with_capacity(t as usize);
    for r in 1..=t {
        dims.push(v.power(r)?.dim());
    }

    let mut report = VerificationReport::new("growth");
    report.detail("t", json!(t));
    report.detail("dims", json!(dims));
    report.detail("dim_w", json!(w_dim));
    report.detail(
        "s",
        json!(s_coords.iter().map(|&i| i + 1).collect::<Vec<_>>()),
    );
    for r in 2..=t as usize {
        // integer-exact form of dims[r-1] >= dims[r-2] + dim(W)/2
        if 2 * dims[r - 1] < 2 * dims[r - 2] + w_dim {
            report.detail("severity", json!("internal-error"));
            report.fail(json!({ "r": r, "v": v.render() }));
            break;
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    fn f(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn vec_of(p: u32, coords: &[u64]) -> FieldVector {
        FieldVector::new(f(p), coords.iter().copied())
    }

    fn code(p: u32, gens: &[&[u64]]) -> LinearCode {
        let vs: Vec<FieldVector> = gens.iter().map(|g| vec_of(p, g)).collect();
        LinearCode::span(&vs).unwrap()
    }

    /// Oracle: stabilizer by brute-force enumeration of the ambient space.
    fn stabilizer_bruteforce(c: &LinearCode) -> Vec<Vec<u16>> {
        let p = c.field().p();
        let n = c.ambient_len();
        let mut members = Vec::new();
        let total = (p as u64).pow(n as u32);
        for idx in 0..total {
            let mut rem = idx;
            let mut coords = Vec::with_capacity(n);
            for _ in 0..n {
                coords.push((rem % p as u64) as u16);
                rem /= p as u64;
            }
            let x = FieldVector::from_residues(c.field(), coords.clone());
            let stabilizes = c.basis().all(|b| {
                let prod = x.star(&b).unwrap();
                c.contains(&prod).unwrap()
            });
            if stabilizes {
                members.push(coords);
            }
        }
        members.sort();
        members
    }

    fn all_codewords(c: &LinearCode) -> Vec<Vec<u16>> {
        let mut out = Vec::new();
        let p = c.field().p() as u64;
        let r = c.dim();
        let mut coeffs = vec![0u64; r];
        loop {
            let mut v = vec![0u16; c.ambient_len()];
            for (ci, row) in coeffs.iter().zip(c.basis_rows()) {
                for (x, &rv) in v.iter_mut().zip(row) {
                    *x = c.field().add(*x, c.field().mul(*ci as u16, rv));
                }
            }
            out.push(v);
            let mut i = 0;
            while i < r {
                coeffs[i] += 1;
                if coeffs[i] < p {
                    break;
                }
                coeffs[i] = 0;
                i += 1;
            }
            if i == r {
                break;
            }
        }
        out.sort();
        out
    }

    #[test]
    fn stabilizer_matches_bruteforce_oracle() {
        // hand-checkable: stabilizer collapses to the all-one line
        let c = code(2, &[&[1, 1, 0], &[0, 1, 1]]);
        let st = stabilizer(&c);
        assert_eq!(all_codewords(&st), stabilizer_bruteforce(&c));
        assert_eq!(st, code(2, &[&[1, 1, 1]]));
        assert_eq!(st.dim(), 1);

        // two disjoint blocks stabilize themselves
        let c = code(2, &[&[1, 1, 0, 0], &[0, 0, 1, 1]]);
        let st = stabilizer(&c);
        assert_eq!(all_codewords(&st), stabilizer_bruteforce(&c));
        assert_eq!(st, c);
        assert_eq!(st.dim(), 2);

        // everything stabilizes the full space
        let full = LinearCode::full(f(3), 3);
        assert_eq!(stabilizer(&full), full);
    }

    #[test]
    fn stabilizer_random_cross_check() {
        use crate::rng::SplitMix64;
        let mut rng = SplitMix64::new(2024);
        for p in [2u32, 3] {
            for _ in 0..20 {
                let n = 2 + rng.below(3) as usize;
                let k = 1 + rng.below(3) as usize;
                let gens: Vec<FieldVector> = (0..k)
                    .map(|_| {
                        FieldVector::new(f(p), (0..n).map(|_| rng.below(p as u64)))
                    })
                    .collect();
                let c = LinearCode::span(&gens).unwrap();
                if c.is_zero() {
                    continue;
                }
                let st = stabilizer(&c);
                assert_eq!(all_codewords(&st), stabilizer_bruteforce(&c), "p={p}");
            }
        }
    }

    #[test]
    fn stabilizer_contains_one_and_is_star_closed() {
        let c = code(3, &[&[1, 1, 0, 2], &[0, 1, 1, 1]]);
        let st = stabilizer(&c);
        assert!(st
            .contains(&FieldVector::all_one(f(3), 4))
            .unwrap());
        for x in st.basis() {
            for y in st.basis() {
                let prod = x.star(&y).unwrap();
                assert!(st.contains(&prod).unwrap());
            }
        }
    }

    #[test]
    fn decompose_examples() {
        let c = code(2, &[&[1, 1, 0, 0], &[0, 0, 1, 1]]);
        let d = decompose(&c).unwrap();
        assert_eq!(d.m(), 2);
        assert_eq!(d.parts(), &[vec![0, 1], vec![2, 3]]);
        assert_eq!(d.components()[0], code(2, &[&[1, 1, 0, 0]]));
        assert_eq!(d.components()[1], code(2, &[&[0, 0, 1, 1]]));

        // trivial stabilizer: single part
        let c = code(2, &[&[1, 1, 0], &[0, 1, 1]]);
        let d = decompose(&c).unwrap();
        assert_eq!(d.m(), 1);
        assert_eq!(d.parts(), &[vec![0, 1, 2]]);
        assert_eq!(d.components()[0], c);

        // full space: all singleton parts
        let full = LinearCode::full(f(3), 3);
        let d = decompose(&full).unwrap();
        assert_eq!(d.m(), 3);
        assert!(d.components().iter().all(|c| c.dim() == 1));
    }

    #[test]
    fn decompose_rejects_bad_input() {
        assert!(matches!(
            decompose(&LinearCode::zero(f(2), 3)),
            Err(Error::ZeroCode)
        ));
        let partial = code(2, &[&[1, 1, 0]]);
        assert!(matches!(decompose(&partial), Err(Error::RestrictFirst)));
    }

    #[test]
    fn decompose_reassembles_parent() {
        let c = code(3, &[&[1, 1, 0, 0, 0], &[0, 0, 1, 2, 0], &[0, 0, 0, 0, 1]]);
        let d = decompose(&c).unwrap();
        let mut sum = LinearCode::zero(f(3), 5);
        for comp in d.components() {
            sum = sum.sum(comp).unwrap();
        }
        assert_eq!(sum, c);
    }

    #[test]
    fn kneser_check_examples() {
        let one = code(2, &[&[1, 1, 1, 1]]);
        let r = kneser_check(&one, &one).unwrap();
        assert!(r.verified());
        assert_eq!(r.details["dim_product"], json!(1));
        assert_eq!(r.details["dim_stabilizer"], json!(1));

        let c = code(2, &[&[1, 1, 0], &[0, 1, 1]]);
        let r = kneser_check(&c, &c).unwrap();
        assert!(r.verified());
        assert_eq!(r.details["dim_product"], json!(3));
        assert_eq!(r.details["dim_stabilizer"], json!(3));

        assert!(matches!(
            kneser_check(&LinearCode::zero(f(2), 3), &one),
            Err(Error::ZeroCode)
        ));
    }

    #[test]
    fn chain_bound_examples() {
        let c = code(3, &[&[1, 2, 0], &[0, 1, 1]]);
        let r = kneser_chain_bound(&c, 1).unwrap();
        assert!(r.verified());

        // C^(2) = F_2^3 has stabilizer dimension 3: hypothesis not met
        let c = code(2, &[&[1, 1, 0], &[0, 1, 1]]);
        let r = kneser_chain_bound(&c, 2).unwrap();
        assert!(!r.hypothesis_met);
        assert_eq!(r.details["restricted_stab_dim"], json!(3));
    }

    #[test]
    fn growth_check_examples() {
        // V = span{1}: every component has dim 1, W empty
        let one = code(3, &[&[1, 1, 1, 1]]);
        let r = growth_check(&one, 3).unwrap();
        assert!(r.verified());
        assert_eq!(r.details["dim_w"], json!(0));

        // atomic-generated: disjoint indicator basis, all components dim 1
        let atoms = code(2, &[&[1, 1, 0, 0], &[0, 0, 1, 1]]);
        let r = growth_check(&atoms, 4).unwrap();
        assert!(r.verified());
        assert_eq!(r.details["dim_w"], json!(0));

        let c = code(2, &[&[1, 1, 0, 0], &[0, 1, 1, 1]]);
        let r = growth_check(&c, 3).unwrap();
        assert!(r.verified());
    }

    #[test]
    fn stabilizer_chain_is_increasing() {
        use crate::rng::SplitMix64;
        let mut rng = SplitMix64::new(7);
        for _ in 0..40 {
            let p = *rng.choose(&[2u32, 3]);
            let n = 3 + rng.below(4) as usize;
            let k = 1 + rng.below(3) as usize;
            let gens: Vec<FieldVector> = (0..k)
                .map(|_| FieldVector::new(f(p), (0..n).map(|_| rng.below(p as u64))))
                .collect();
            let c = LinearCode::span(&gens).unwrap();
            if c.is_zero() {
                continue;
            }
            for j in 1..4u32 {
                let st_j = stabilizer(&c.power(j).unwrap());
                let st_j1 = stabilizer(&c.power(j + 1).unwrap());
                assert!(st_j.is_subspace_of(&st_j1).unwrap());
            }
        }
    }
}
