//! Set families as bitset collections: atoms, restriction, iterated
//! intersections, and divisibility predicates.

use std::fmt;

use serde_json::json;

use crate::error::{Error, Result};
use crate::report::VerificationReport;

/// Largest supported ground set; members are stored as u64 bitmasks.
pub const MAX_GROUND_SET: usize = 64;

/// A deduplicated collection of subsets of {1..n}, stored as bitmasks with
/// coordinate i (0-based) at bit i, kept sorted in ascending mask order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SetFamily {
    n: usize,
    members: Vec<u64>,
}

impl SetFamily {
    pub fn new(n: usize, members: impl IntoIterator<Item = u64>) -> Result<Self> {
        if n > MAX_GROUND_SET {
            return Err(Error::CapExceeded(format!(
                "ground set {n} exceeds the {MAX_GROUND_SET}-coordinate limit"
            )));
        }
        let universe = mask_universe(n);
        let mut members: Vec<u64> = members.into_iter().collect();
        for &m in &members {
            if m & !universe != 0 {
                return Err(Error::CoordinateOutOfRange {
                    index: (63 - (m & !universe).leading_zeros()) as usize,
                    n,
                });
            }
        }
        members.sort_unstable();
        members.dedup();
        Ok(SetFamily { n, members })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[u64] {
        &self.members
    }

    pub fn contains(&self, mask: u64) -> bool {
        self.members.binary_search(&mask).is_ok()
    }

    /// Union of all members.
    pub fn support(&self) -> u64 {
        self.members.iter().fold(0, |acc, &m| acc | m)
    }

    pub fn is_full_support(&self) -> bool {
        self.support() == mask_universe(self.n)
    }

    /// Atoms: maximal subsets of the support on which every member is
    /// constant, i.e. classes of coordinates with identical membership
    /// pattern across the family.
    pub fn atoms(&self) -> AtomPartition {
        let mut atoms: Vec<u64> = Vec::new();
        let mut signatures: Vec<Vec<bool>> = Vec::new();
        let support = self.support();
        for i in 0..self.n {
            if support >> i & 1 == 0 {
                continue;
            }
            let sig: Vec<bool> = self.members.iter().map(|&m| m >> i & 1 == 1).collect();
            match signatures.iter().position(|s| *s == sig) {
                Some(k) => atoms[k] |= 1 << i,
                None => {
                    signatures.push(sig);
                    atoms.push(1 << i);
                }
            }
        }
        atoms.sort_by_key(|a| a.trailing_zeros());
        // contains-or-misses, exhaustively
        for &m in &self.members {
            for &a in &atoms {
                assert!(
                    m & a == a || m & a == 0,
                    "atom must be contained in or disjoint from every member"
                );
            }
        }
        AtomPartition { n: self.n, atoms }
    }

    /// F^k: all intersections of at most k members (k-fold products with
    /// repetition), computed by iterated closure with a fixed-point
    /// short-circuit.
    pub fn product_family(&self, k: u32) -> Result<SetFamily> {
        if k == 0 {
            return Err(Error::ZeroPower);
        }
        if self.is_empty() {
            return Err(Error::EmptyFamily);
        }
        let mut current: Vec<u64> = self.members.clone();
        for _ in 1..k {
            let mut next = current.clone();
            for &a in &current {
                for &b in &self.members {
                    next.push(a & b);
                }
            }
            next.sort_unstable();
            next.dedup();
            if next == current {
                break;
            }
            current = next;
        }
        Ok(SetFamily {
            n: self.n,
            members: current,
        })
    }

    /// Full intersection closure F^∞ (the fixed point of `product_family`).
    pub fn intersection_closure(&self) -> Result<SetFamily> {
        self.product_family(u32::MAX)
    }

    /// Is every intersection of k members (with repetition) divisible by l?
    ///
    /// On failure the witness carries the intersecting members and the
    /// offending cardinality; the search exits on the first violation.
    pub fn is_kwise_divisible(&self, k: u32, l: u32) -> Result<VerificationReport> {
        if k == 0 || l == 0 {
            return Err(Error::Precondition("k and l must be positive".into()));
        }
        let mut report = VerificationReport::new("kwise_divisible");
        report.detail("k", json!(k));
        report.detail("l", json!(l));
        // BFS over the closure up to depth k, tracking provenance so that a
        // violation can name the members that intersect to it.
        let mut seen: Vec<u64> = Vec::new();
        let mut provenance: Vec<Vec<u64>> = Vec::new();
        let mut frontier: Vec<usize> = Vec::new();
        for &m in &self.members {
            if l != 0 && m.count_ones() % l != 0 {
                report.fail(json!({
                    "members": vec![render_mask(m, self.n)],
                    "cardinality": m.count_ones(),
                }));
                return Ok(report);
            }
            if !seen.contains(&m) {
                seen.push(m);
                provenance.push(vec![m]);
                frontier.push(seen.len() - 1);
            }
        }
        for _depth in 2..=k {
            let mut next_frontier = Vec::new();
            for &idx in &frontier {
                let a = seen[idx];
                for &b in &self.members {
                    let c = a & b;
                    if seen.contains(&c) {
                        continue;
                    }
                    let mut chain = provenance[idx].clone();
                    chain.push(b);
                    if c.count_ones() % l != 0 {
                        report.fail(json!({
                            "members": chain
                                .iter()
                                .map(|&m| render_mask(m, self.n))
                                .collect::<Vec<_>>(),
                            "intersection": render_mask(c, self.n),
                            "cardinality": c.count_ones(),
                        }));
                        return Ok(report);
                    }
                    seen.push(c);
                    provenance.push(chain);
                    next_frontier.push(seen.len() - 1);
                }
            }
            if next_frontier.is_empty() {
                break;
            }
            frontier = next_frontier;
        }
        Ok(report)
    }

    /// F restricted to A: { F ∩ A : F ∈ F }, re-indexed to a ground set of
    /// size |A|.
    pub fn restrict(&self, coords_mask: u64) -> Result<SetFamily> {
        let universe = mask_universe(self.n);
        if coords_mask & !universe != 0 {
            return Err(Error::CoordinateOutOfRange {
                index: (63 - (coords_mask & !universe).leading_zeros()) as usize,
                n: self.n,
            });
        }
        let positions: Vec<usize> = (0..self.n).filter(|&i| coords_mask >> i & 1 == 1).collect();
        let members = self.members.iter().map(|&m| {
            let mut packed = 0u64;
            for (new_bit, &old_bit) in positions.iter().enumerate() {
                packed |= (m >> old_bit & 1) << new_bit;
            }
            packed
        });
        SetFamily::new(positions.len(), members)
    }

    /// Passes iff every atom has cardinality exactly l, i.e. F lies inside
    /// the atomic family generated by its atoms, all of size l.
    pub fn atomic_structure_check(&self, l: u32) -> VerificationReport {
        let partition = self.atoms();
        let sizes = partition.sizes();
        let mut report = VerificationReport::new("atomic_structure");
        report.detail("l", json!(l));
        report.detail("atom_sizes", json!(sizes));
        if let Some(&bad) = sizes.iter().find(|&&s| s != l) {
            report.fail(json!({
                "atom_size": bad,
                "atoms": partition.render(),
            }));
        }
        report
    }

    /// Asserts that F^r has the same atoms as F.
    pub fn product_atoms_check(&self, r: u32) -> Result<VerificationReport> {
        let product = self.product_family(r)?;
        let mut report = VerificationReport::new("product_atoms");
        report.detail("r", json!(r));
        let ours = self.atoms();
        let theirs = product.atoms();
        report.detail("atoms", json!(ours.render()));
        if ours.atoms != theirs.atoms {
            report.fail(json!({
                "family_atoms": ours.render(),
                "product_atoms": theirs.render(),
            }));
        }
        Ok(report)
    }

    /// Asserts that F^a contains an atom of F, where a is the atom count.
    pub fn atom_in_power_check(&self) -> Result<VerificationReport> {
        let partition = self.atoms();
        let a = partition.atoms.len() as u32;
        let mut report = VerificationReport::new("atom_in_power");
        report.detail("atom_count", json!(a));
        if a == 0 {
            report.hypothesis_met = false;
            report.detail("reason", json!("empty support"));
            return Ok(report);
        }
        let power = self.product_family(a)?;
        let found = partition.atoms.iter().find(|&&atom| power.contains(atom));
        match found {
            Some(&atom) => {
                report.detail("atom", json!(render_mask(atom, self.n)));
            }
            None => {
                report.fail(json!({ "power_members": power.len() }));
            }
        }
        Ok(report)
    }

    /// Reads the family file format: line 1 is "n", then one member per line
    /// as a length-n bitstring (leftmost character = coordinate 1).
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty family input".into()))?;
        let n: usize = header
            .trim()
            .parse()
            .map_err(|e: std::num::ParseIntError| Error::Parse(e.to_string()))?;
        let mut members = Vec::new();
        for line in lines {
            let line = line.trim();
            if line.is_empty() {
                if n == 0 {
                    members.push(0);
                }
                continue;
            }
            members.push(parse_mask(line, n)?);
        }
        SetFamily::new(n, members)
    }

    /// Writes the family file format (canonical member order).
    pub fn render(&self) -> String {
        let mut out = format!("{}\n", self.n);
        for &m in &self.members {
            out.push_str(&render_mask(m, self.n));
            out.push('\n');
        }
        out
    }

    /// JSON alternative form: {"n": int, "members": ["0101", ...]}.
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "n": self.n,
            "members": self
                .members
                .iter()
                .map(|&m| render_mask(m, self.n))
                .collect::<Vec<_>>(),
        })
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let n = value["n"]
            .as_u64()
            .ok_or_else(|| Error::Parse("missing \"n\"".into()))? as usize;
        let members = value["members"]
            .as_array()
            .ok_or_else(|| Error::Parse("missing \"members\"".into()))?
            .iter()
            .map(|v| {
                let s = v
                    .as_str()
                    .ok_or_else(|| Error::Parse("member must be a bitstring".into()))?;
                parse_mask(s, n)
            })
            .collect::<Result<Vec<_>>>()?;
        SetFamily::new(n, members)
    }
}

impl fmt::Display for SetFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// The atom partition of a family's support.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AtomPartition {
    n: usize,
    atoms: Vec<u64>,
}

impl AtomPartition {
    pub fn atoms(&self) -> &[u64] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    /// Multiset of atom cardinalities, ascending.
    pub fn sizes(&self) -> Vec<u32> {
        let mut sizes: Vec<u32> = self.atoms.iter().map(|a| a.count_ones()).collect();
        sizes.sort_unstable();
        sizes
    }

    /// The atom containing coordinate i, if any.
    pub fn atom_of(&self, i: usize) -> Option<u64> {
        self.atoms.iter().copied().find(|a| a >> i & 1 == 1)
    }

    pub fn render(&self) -> Vec<String> {
        self.atoms.iter().map(|&a| render_mask(a, self.n)).collect()
    }
}

/// Bitmask of the full ground set {1..n}.
pub fn mask_universe(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

pub fn parse_mask(s: &str, n: usize) -> Result<u64> {
    if s.len() != n {
        return Err(Error::LengthMismatch {
            left: n,
            right: s.len(),
        });
    }
    let mut mask = 0u64;
    for (i, c) in s.chars().enumerate() {
        match c {
            '0' => {}
            '1' => mask |= 1 << i,
            _ => return Err(Error::Parse(format!("invalid bit '{c}'"))),
        }
    }
    Ok(mask)
}

pub fn render_mask(mask: u64, n: usize) -> String {
    (0..n)
        .map(|i| if mask >> i & 1 == 1 { '1' } else { '0' })
        .collect()
}
