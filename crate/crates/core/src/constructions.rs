//! Canonical families and matrices: atomic families, the order-12 Hadamard
//! matrix from quadratic residues mod 11, and the derived families of 24
//! subsets of {1..12} whose pairwise intersections are divisible by 3.

use crate::error::{Error, Result};
use crate::family::SetFamily;

/// Caps for [`atomic_family`]: ground set and atom count.
pub const ATOMIC_GROUND_CAP: usize = 24;
pub const ATOMIC_PART_CAP: usize = 20;

/// Cap for [`frankl_odlyzko_family`]: 24^m members.
pub const FRANKL_ODLYZKO_M_CAP: u32 = 3;

/// The atomic family over consecutive blocks of the given sizes: all 2^a
/// unions of the blocks, including the empty union and the full union.
pub fn atomic_family(part_sizes: &[u32]) -> Result<SetFamily> {
    if part_sizes.contains(&0) {
        return Err(Error::Precondition("part sizes must be positive".into()));
    }
    let n: usize = part_sizes.iter().map(|&s| s as usize).sum();
    let a = part_sizes.len();
    if n > ATOMIC_GROUND_CAP || a > ATOMIC_PART_CAP {
        return Err(Error::CapExceeded(format!(
            "atomic family wants n = {n} <= {ATOMIC_GROUND_CAP} and {a} <= {ATOMIC_PART_CAP} parts"
        )));
    }
    let mut blocks = Vec::with_capacity(a);
    let mut offset = 0usize;
    for &size in part_sizes {
        let block = ((1u64 << size) - 1) << offset;
        blocks.push(block);
        offset += size as usize;
    }
    let members = (0..1u64 << a).map(|selector| {
        blocks
            .iter()
            .enumerate()
            .filter(|(i, _)| selector >> i & 1 == 1)
            .fold(0u64, |acc, (_, &b)| acc | b)
    });
    SetFamily::new(n, members)
}

/// A square ±1 matrix H with H·Hᵀ = order·I, checked at construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HadamardMatrix {
    order: usize,
    entries: Vec<Vec<i8>>,
}

impl HadamardMatrix {
    fn new(entries: Vec<Vec<i8>>) -> Result<Self> {
        let order = entries.len();
        for row in &entries {
            if row.len() != order {
                return Err(Error::Internal("matrix must be square".into()));
            }
            if row.iter().any(|&e| e != 1 && e != -1) {
                return Err(Error::Internal("entries must be +1 or -1".into()));
            }
        }
        for i in 0..order {
            for j in 0..order {
                let dot: i64 = (0..order)
                    .map(|k| entries[i][k] as i64 * entries[j][k] as i64)
                    .sum();
                let expected = if i == j { order as i64 } else { 0 };
                if dot != expected {
                    return Err(Error::Internal(format!(
                        "rows {i} and {j} are not orthogonal: dot = {dot}"
                    )));
                }
            }
        }
        Ok(HadamardMatrix { order, entries })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn entries(&self) -> &[Vec<i8>] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[i8] {
        &self.entries[i]
    }

    /// Text form: line 1 is the order, then rows of space-separated ±1.
    pub fn render(&self) -> String {
        let mut out = format!("{}\n", self.order);
        for row in &self.entries {
            let line = row
                .iter()
                .map(|e| e.to_string())
                .collect::<Vec<_>>()
                .join(" ");
            out.push_str(&line);
            out.push('\n');
        }
        out
    }
}

/// Paley type-I Hadamard matrix of order 12 over the quadratic residues
/// mod 11: H = I + S with S the skew conference matrix bordered around the
/// Jacobsthal matrix. The first row is all +1.
pub fn paley_hadamard_12() -> HadamardMatrix {
    const Q: usize = 11;
    let mut residue = [false; Q];
    for x in 1..Q {
        residue[x * x % Q] = true;
    }
    let chi = |x: usize| -> i8 {
        let x = x % Q;
        if x == 0 {
            0
        } else if residue[x] {
            1
        } else {
            -1
        }
    };
    let mut entries = vec![vec![0i8; Q + 1]; Q + 1];
    for j in 0..=Q {
        entries[0][j] = 1;
    }
    for i in 1..=Q {
        entries[i][0] = -1;
        for j in 1..=Q {
            let jac = chi((j + Q - i) % Q);
            entries[i][j] = if i == j { 1 } else { jac };
        }
    }
    HadamardMatrix::new(entries).expect("Paley construction yields a Hadamard matrix")
}

/// The family of 24 subsets of {1..12} read off the rows of the normalized
/// order-12 Hadamard matrix (the +1 positions of each row) together with
/// their complements; every pairwise intersection has size in {0, 3, 6, 12}.
///
/// For m > 1 the members are all m-fold concatenations of the base family on
/// disjoint blocks of 12 coordinates, giving 24^m members on {1..12m}.
pub fn frankl_odlyzko_family(m: u32) -> Result<SetFamily> {
    if m == 0 {
        return Err(Error::Precondition("m must be positive".into()));
    }
    if m > FRANKL_ODLYZKO_M_CAP {
        return Err(Error::CapExceeded(format!(
            "frankl-odlyzko supports m <= {FRANKL_ODLYZKO_M_CAP} (24^m members)"
        )));
    }
    let h = paley_hadamard_12();
    let full = (1u64 << 12) - 1;
    let mut base: Vec<u64> = Vec::with_capacity(24);
    for row in h.entries() {
        let mask = row
            .iter()
            .enumerate()
            .filter(|(_, &e)| e == 1)
            .fold(0u64, |acc, (j, _)| acc | 1 << j);
        base.push(mask);
        base.push(full & !mask);
    }
    base.sort_unstable();
    base.dedup();
    assert_eq!(base.len(), 24, "rows and complements must be 24 distinct sets");

    let mut members = base.clone();
    for _ in 1..m {
        let mut extended = Vec::with_capacity(members.len() * 24);
        for &prefix in &members {
            for &b in &base {
                extended.push(prefix << 12 | b);
            }
        }
        members = extended;
    }
    let family = SetFamily::new(12 * m as usize, members)?;
    assert_eq!(family.len(), 24usize.pow(m), "concatenations must be distinct");
    Ok(family)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bridge::span_family;
    use crate::family::render_mask;

    #[test]
    fn atomic_family_examples() {
        let f = atomic_family(&[2, 2, 2]).unwrap();
        assert_eq!(f.len(), 8);
        assert_eq!(f.n(), 6);
        assert_eq!(f.atoms().sizes(), vec![2, 2, 2]);

        let f = atomic_family(&[3, 3]).unwrap();
        assert_eq!(f.len(), 4);

        let f = atomic_family(&[5]).unwrap();
        assert_eq!(f.len(), 2);
        assert_eq!(f.members(), &[0, 0b11111]);

        assert!(matches!(
            atomic_family(&[20, 5]),
            Err(Error::CapExceeded(_))
        ));
        assert!(matches!(
            atomic_family(&[1; 21]),
            Err(Error::CapExceeded(_))
        ));
    }

    #[test]
    fn atomic_family_is_closed_and_divisible() {
        let f = atomic_family(&[3, 3, 3]).unwrap();
        // intersection- and union-closed
        for &a in f.members() {
            for &b in f.members() {
                assert!(f.contains(a & b));
                assert!(f.contains(a | b));
            }
        }
        for k in 1..=5 {
            assert!(f.is_kwise_divisible(k, 3).unwrap().verified());
        }
    }

    #[test]
    fn hadamard_12_is_hadamard() {
        let h = paley_hadamard_12();
        assert_eq!(h.order(), 12);
        // H·Hᵀ = 12·I is checked at construction; re-derive it here as the
        // independent integer-matrix oracle.
        for i in 0..12 {
            for j in 0..12 {
                let dot: i64 = (0..12)
                    .map(|k| h.row(i)[k] as i64 * h.row(j)[k] as i64)
                    .sum();
                assert_eq!(dot, if i == j { 12 } else { 0 });
            }
        }
        // distinct rows agree in exactly 6 positions
        for i in 0..12 {
            for j in 0..12 {
                if i == j {
                    continue;
                }
                let agreements = (0..12).filter(|&k| h.row(i)[k] == h.row(j)[k]).count();
                assert_eq!(agreements, 6);
            }
        }
        assert!(h.row(0).iter().all(|&e| e == 1));
    }

    #[test]
    fn frankl_odlyzko_base_family() {
        let f = frankl_odlyzko_family(1).unwrap();
        assert_eq!(f.len(), 24);
        assert_eq!(f.n(), 12);
        assert!(f.len() as f64 > 2f64.powf(12.0 / 3.0));

        // all pairwise intersection sizes lie in {0, 3, 6, 12}
        for &a in f.members() {
            for &b in f.members() {
                let size = (a & b).count_ones();
                assert!(
                    matches!(size, 0 | 3 | 6 | 12),
                    "|{} ∩ {}| = {size}",
                    render_mask(a, 12),
                    render_mask(b, 12)
                );
            }
        }

        assert!(f.is_kwise_divisible(2, 3).unwrap().verified());

        // 2-wise does not extend to 3-wise: brute force finds a triple
        let r = f.is_kwise_divisible(3, 3).unwrap();
        assert!(!r.pass);
        let mut found = false;
        'outer: for &a in f.members() {
            for &b in f.members() {
                for &c in f.members() {
                    if (a & b & c).count_ones() % 3 != 0 {
                        found = true;
                        break 'outer;
                    }
                }
            }
        }
        assert!(found);

        // the atoms are the 12 singletons
        assert_eq!(f.atoms().sizes(), vec![1; 12]);
        assert!(!f.atomic_structure_check(3).verified());
    }

    #[test]
    fn frankl_odlyzko_intersection_identity() {
        // |A ∩ B| = (n + sum(a) + sum(b) + <a,b>)/4 for the ±1 rows behind
        // the member sets.
        let h = paley_hadamard_12();
        for i in 0..12 {
            for j in 0..12 {
                let a = h.row(i);
                let b = h.row(j);
                let sum_a: i64 = a.iter().map(|&x| x as i64).sum();
                let sum_b: i64 = b.iter().map(|&x| x as i64).sum();
                let dot: i64 = (0..12).map(|k| a[k] as i64 * b[k] as i64).sum();
                let inter = (0..12).filter(|&k| a[k] == 1 && b[k] == 1).count() as i64;
                assert_eq!(4 * inter, 12 + sum_a + sum_b + dot);
            }
        }
    }

    #[test]
    fn frankl_odlyzko_concatenations() {
        let f = frankl_odlyzko_family(2).unwrap();
        assert_eq!(f.len(), 576);
        assert_eq!(f.n(), 24);
        // pairwise 3-divisibility transfers blockwise
        for &a in f.members() {
            for &b in f.members() {
                assert_eq!((a & b).count_ones() % 3, 0);
            }
        }

        assert!(matches!(
            frankl_odlyzko_family(4),
            Err(Error::CapExceeded(_))
        ));
        assert!(frankl_odlyzko_family(0).is_err());
    }

    #[test]
    fn frankl_odlyzko_span_dimension() {
        let f = frankl_odlyzko_family(1).unwrap();
        let code = span_family(&f, 3).unwrap();
        assert!(code.dim() <= 12);
        // Oracle: rank over F_3 by a small independent elimination.
        let mut rows: Vec<Vec<i64>> = f
            .members()
            .iter()
            .map(|&m| (0..12).map(|i| (m >> i & 1) as i64).collect())
            .collect();
        let mut rank = 0usize;
        for col in 0..12 {
            if let Some(r) = (rank..rows.len()).find(|&r| rows[r][col] % 3 != 0) {
                rows.swap(rank, r);
                let head = rows[rank].clone();
                let inv = if head[col] % 3 == 1 { 1 } else { 2 };
                for r2 in 0..rows.len() {
                    if r2 == rank || rows[r2][col] % 3 == 0 {
                        continue;
                    }
                    let factor = rows[r2][col] * inv % 3;
                    for c in 0..12 {
                        rows[r2][c] = ((rows[r2][c] - factor * head[c]) % 3 + 3) % 3;
                    }
                }
                rank += 1;
            }
        }
        assert_eq!(code.dim(), rank);
        assert_eq!(code.dim(), 6);
    }
}
