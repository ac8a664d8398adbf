//! Subspaces ("codes") of F_p^n in canonical reduced row-echelon form.
//!
//! Canonical RREF makes code equality a plain comparison of basis matrices,
//! which the fixed-point detection in [`LinearCode::power`] relies on.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldVector, PrimeField};

/// Enumeration cap for [`LinearCode::binary_points`]: 2^30 coefficient tuples.
pub const BINARY_ENUM_CAP: usize = 30;

/// A subspace of F_p^n, stored as a generator matrix in reduced row-echelon
/// form with strictly increasing pivot columns. Two codes are equal iff their
/// matrices are identical.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinearCode {
    field: PrimeField,
    n: usize,
    rows: Vec<Vec<u16>>,
    pivots: Vec<usize>,
}

impl LinearCode {
    /// The zero code {0} in F_p^n.
    pub fn zero(field: PrimeField, n: usize) -> Self {
        LinearCode {
            field,
            n,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    /// The full space F_p^n.
    pub fn full(field: PrimeField, n: usize) -> Self {
        let rows = (0..n)
            .map(|i| {
                let mut r = vec![0u16; n];
                r[i] = 1;
                r
            })
            .collect();
        LinearCode {
            field,
            n,
            rows,
            pivots: (0..n).collect(),
        }
    }

    /// Row space of the given vectors, reduced to canonical form.
    pub fn span(vectors: &[FieldVector]) -> Result<Self> {
        if vectors.is_empty() {
            return Err(Error::Precondition(
                "span of an empty list needs an explicit ambient space; use span_in".into(),
            ));
        }
        let field = vectors[0].field();
        let n = vectors[0].len();
        for v in vectors {
            if v.field() != field {
                return Err(Error::FieldMismatch {
                    left: field.p(),
                    right: v.field().p(),
                });
            }
            if v.len() != n {
                return Err(Error::LengthMismatch {
                    left: n,
                    right: v.len(),
                });
            }
        }
        let rows = vectors.iter().map(|v| v.coords().to_vec()).collect();
        Ok(Self::from_rows(field, n, rows))
    }

    /// Like [`LinearCode::span`] but usable with an empty generating set.
    pub fn span_in(field: PrimeField, n: usize, vectors: &[FieldVector]) -> Result<Self> {
        if vectors.is_empty() {
            return Ok(Self::zero(field, n));
        }
        let code = Self::span(vectors)?;
        if code.field != field {
            return Err(Error::FieldMismatch {
                left: field.p(),
                right: code.field.p(),
            });
        }
        if code.n != n {
            return Err(Error::LengthMismatch {
                left: n,
                right: code.n,
            });
        }
        Ok(code)
    }

    /// Wraps rows that are already in RREF with the given pivot columns.
    /// The subspace enumerator builds matrices pivot-first, so re-reducing
    /// them would only repeat work.
    pub(crate) fn from_rref_unchecked(
        field: PrimeField,
        n: usize,
        rows: Vec<Vec<u16>>,
        pivots: Vec<usize>,
    ) -> Self {
        debug_assert_eq!(rows.len(), pivots.len());
        debug_assert!({
            let mut copy = rows.clone();
            rref(field, &mut copy) == rows.len() && copy == rows
        });
        LinearCode {
            field,
            n,
            rows,
            pivots,
        }
    }

    /// Reduces arbitrary rows to canonical RREF.
    pub(crate) fn from_rows(field: PrimeField, n: usize, mut rows: Vec<Vec<u16>>) -> Self {
        let rank = rref(field, &mut rows);
        rows.truncate(rank);
        let pivots = rows
            .iter()
            .map(|r| r.iter().position(|&c| c != 0).expect("nonzero row"))
            .collect();
        LinearCode {
            field,
            n,
            rows,
            pivots,
        }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn ambient_len(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Canonical basis rows.
    pub fn basis(&self) -> impl Iterator<Item = FieldVector> + '_ {
        self.rows
            .iter()
            .map(|r| FieldVector::from_residues(self.field, r.clone()))
    }

    pub(crate) fn basis_rows(&self) -> &[Vec<u16>] {
        &self.rows
    }

    /// Union of the supports of all codewords, 0-based, ascending.
    pub fn support(&self) -> Vec<usize> {
        let mut seen = vec![false; self.n];
        for row in &self.rows {
            for (i, &c) in row.iter().enumerate() {
                if c != 0 {
                    seen[i] = true;
                }
            }
        }
        seen.iter()
            .enumerate()
            .filter(|(_, &s)| s)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn is_full_support(&self) -> bool {
        self.support().len() == self.n
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch {
                left: self.field.p(),
                right: other.field.p(),
            });
        }
        if self.n != other.n {
            return Err(Error::LengthMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(())
    }

    /// Membership test by reduction against the RREF basis.
    pub fn contains(&self, v: &FieldVector) -> Result<bool> {
        if v.field() != self.field {
            return Err(Error::FieldMismatch {
                left: self.field.p(),
                right: v.field().p(),
            });
        }
        if v.len() != self.n {
            return Err(Error::LengthMismatch {
                left: self.n,
                right: v.len(),
            });
        }
        let mut work = v.coords().to_vec();
        for (row, &piv) in self.rows.iter().zip(&self.pivots) {
            let c = work[piv];
            if c != 0 {
                let f = self.field;
                for (w, &r) in work.iter_mut().zip(row) {
                    *w = f.sub(*w, f.mul(c, r));
                }
            }
        }
        Ok(work.iter().all(|&c| c == 0))
    }

    pub fn is_subspace_of(&self, other: &Self) -> Result<bool> {
        self.check_compatible(other)?;
        for row in &self.rows {
            let v = FieldVector::from_residues(self.field, row.clone());
            if !other.contains(&v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Dual code {x : <x,c> = 0 for all c in C}.
    pub fn dual(&self) -> Self {
        // From RREF rows, each non-pivot column j yields the dual basis vector
        // with 1 at j and -row[i][j] at pivot column p_i.
        let f = self.field;
        let is_pivot: Vec<bool> = {
            let mut v = vec![false; self.n];
            for &p in &self.pivots {
                v[p] = true;
            }
            v
        };
        let mut rows = Vec::with_capacity(self.n - self.rows.len());
        for j in 0..self.n {
            if is_pivot[j] {
                continue;
            }
            let mut r = vec![0u16; self.n];
            r[j] = 1;
            for (row, &piv) in self.rows.iter().zip(&self.pivots) {
                r[piv] = f.neg(row[j]);
            }
            rows.push(r);
        }
        Self::from_rows(f, self.n, rows)
    }

    /// Schur (coordinate-wise) product span: the code generated by all
    /// products c*d with c in C and d in D.
    pub fn schur_product(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let f = self.field;
        let mut rows = Vec::with_capacity(self.rows.len() * other.rows.len());
        for a in &self.rows {
            for b in &other.rows {
                let prod: Vec<u16> = a.iter().zip(b).map(|(&x, &y)| f.mul(x, y)).collect();
                rows.push(prod);
            }
        }
        Ok(Self::from_rows(f, self.n, rows))
    }

    /// k-th Schur power, with fixed-point short-circuit: once two consecutive
    /// powers agree the sequence is constant.
    pub fn power(&self, k: u32) -> Result<Self> {
        if k == 0 {
            return Err(Error::ZeroPower);
        }
        let mut acc = self.clone();
        for _ in 1..k {
            let next = acc.schur_product(self)?;
            if next == acc {
                break;
            }
            acc = next;
        }
        Ok(acc)
    }

    /// Sum (join) of two codes.
    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        Ok(Self::from_rows(self.field, self.n, rows))
    }

    /// Intersection, computed as the dual of the sum of duals.
    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(self.dual().sum(&other.dual())?.dual())
    }

    /// Projects every codeword onto the coordinates in `coords` (0-based;
    /// deduplicated and sorted). The result lives in F_p^{|coords|}.
    pub fn restrict(&self, coords: &[usize]) -> Result<Self> {
        let mut cs = coords.to_vec();
        cs.sort_unstable();
        cs.dedup();
        if let Some(&bad) = cs.iter().find(|&&i| i >= self.n) {
            return Err(Error::CoordinateOutOfRange {
                index: bad,
                n: self.n,
            });
        }
        let rows = self
            .rows
            .iter()
            .map(|r| cs.iter().map(|&i| r[i]).collect())
            .collect();
        Ok(Self::from_rows(self.field, cs.len(), rows))
    }

    /// Streams the binary points V ∩ {0,1}^n without materializing them.
    ///
    /// Enumerates the 2^r coefficient tuples in {0,1}^r against the RREF
    /// basis (whose pivot columns play the role of a systematic form) in Gray
    /// code order, keeping the combination incrementally, and yields the
    /// combinations all of whose coordinates are 0 or 1.
    pub fn for_each_binary_point<F: FnMut(&[u16])>(&self, mut visit: F) -> Result<()> {
        let r = self.rows.len();
        if r > BINARY_ENUM_CAP {
            return Err(Error::EnumerationTooLarge {
                dim: r,
                cap: BINARY_ENUM_CAP,
            });
        }
        let f = self.field;
        let mut current = vec![0u16; self.n];
        // nonbinary = number of coordinates outside {0,1}; zero iff binary.
        let mut nonbinary = 0usize;
        visit(&current);
        let total: u64 = 1u64 << r;
        for step in 1..total {
            let bit = step.trailing_zeros() as usize;
            let gray = step ^ (step >> 1);
            let add = gray >> bit & 1 == 1;
            let row = &self.rows[bit];
            for (c, &v) in current.iter_mut().zip(row) {
                if v == 0 {
                    continue;
                }
                let was_binary = *c <= 1;
                *c = if add { f.add(*c, v) } else { f.sub(*c, v) };
                let is_binary = *c <= 1;
                match (was_binary, is_binary) {
                    (true, false) => nonbinary += 1,
                    (false, true) => nonbinary -= 1,
                    _ => {}
                }
            }
            if nonbinary == 0 {
                visit(&current);
            }
        }
        Ok(())
    }

    /// Exactly V ∩ {0,1}^n, sorted lexicographically on coordinates.
    ///
    /// Refuses dimensions above [`BINARY_ENUM_CAP`]. The Odlyzko-type count
    /// bound |V ∩ {0,1}^n| <= 2^dim holds by construction and is asserted.
    pub fn binary_points(&self) -> Result<Vec<FieldVector>> {
        let mut points = Vec::new();
        self.for_each_binary_point(|coords| {
            points.push(FieldVector::from_residues(self.field, coords.to_vec()))
        })?;
        points.sort();
        points.dedup();
        assert!(
            (points.len() as u64) <= 1u64 << self.rows.len().min(63),
            "binary point count exceeds 2^dim"
        );
        Ok(points)
    }

    /// Number of binary points, without materializing them.
    pub fn binary_point_count(&self) -> Result<u64> {
        let mut count = 0u64;
        self.for_each_binary_point(|_| count += 1)?;
        Ok(count)
    }

    /// Reads the code file format: line 1 is "p n", then one generator row
    /// per line as space-separated residues. Rows are reduced to RREF.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or_else(|| Error::Parse("empty code input".into()))?;
        let mut parts = header.split_whitespace();
        let p: u32 = parts
            .next()
            .ok_or_else(|| Error::Parse("missing modulus".into()))?
            .parse()
            .map_err(|e: std::num::ParseIntError| Error::Parse(e.to_string()))?;
        let n: usize = parts
            .next()
            .ok_or_else(|| Error::Parse("missing ambient length".into()))?
            .parse()
            .map_err(|e: std::num::ParseIntError| Error::Parse(e.to_string()))?;
        if parts.next().is_some() {
            return Err(Error::Parse("trailing tokens after 'p n' header".into()));
        }
        let field = PrimeField::new(p)?;
        let mut rows = Vec::new();
        for line in lines {
            let row: Vec<u16> = line
                .split_whitespace()
                .map(|t| {
                    let r: u32 = t.parse().map_err(|e: std::num::ParseIntError| {
                        Error::Parse(e.to_string())
                    })?;
                    if r >= p {
                        return Err(Error::Parse(format!("residue {r} out of range for F_{p}")));
                    }
                    Ok(r as u16)
                })
                .collect::<Result<_>>()?;
            if row.len() != n {
                return Err(Error::LengthMismatch {
                    left: n,
                    right: row.len(),
                });
            }
            rows.push(row);
        }
        Ok(Self::from_rows(field, n, rows))
    }

    /// Writes the code file format (always in RREF).
    pub fn render(&self) -> String {
        let mut out = format!("{} {}\n", self.field.p(), self.n);
        for row in &self.rows {
            let line = row
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .join(" ");
            out.push_str(&line);
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for LinearCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// In-place reduced row-echelon form; returns the rank.
fn rref(field: PrimeField, rows: &mut [Vec<u16>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let n = rows[0].len();
    let mut rank = 0usize;
    for col in 0..n {
        let Some(pivot_row) = (rank..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(rank, pivot_row);
        let inv = field.inv(rows[rank][col]);
        if inv != 1 {
            for c in rows[rank].iter_mut() {
                *c = field.mul(*c, inv);
            }
        }
        let pivot = rows[rank].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == rank || row[col] == 0 {
                continue;
            }
            let factor = row[col];
            for (x, &pv) in row.iter_mut().zip(&pivot) {
                *x = field.sub(*x, field.mul(factor, pv));
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}
