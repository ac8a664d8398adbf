//! Arithmetic in the prime field F_p and coordinate-wise vector operations.

use std::fmt;

use crate::error::{Error, Result};

/// A prime modulus p with 2 <= p <= 65536.
///
/// Primality is checked by trial division at construction, so a `PrimeField`
/// value is always a valid field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        if !(2..=65536).contains(&p) {
            return Err(Error::ModulusOutOfRange(p));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn reduce(&self, x: u64) -> u16 {
        (x % self.p as u64) as u16
    }

    pub fn add(&self, a: u16, b: u16) -> u16 {
        let s = a as u32 + b as u32;
        (if s >= self.p { s - self.p } else { s }) as u16
    }

    pub fn sub(&self, a: u16, b: u16) -> u16 {
        let s = a as u32 + self.p - b as u32;
        (if s >= self.p { s - self.p } else { s }) as u16
    }

    pub fn neg(&self, a: u16) -> u16 {
        if a == 0 {
            0
        } else {
            (self.p - a as u32) as u16
        }
    }

    pub fn mul(&self, a: u16, b: u16) -> u16 {
        ((a as u64 * b as u64) % self.p as u64) as u16
    }

    /// Multiplicative inverse of a nonzero residue, via Fermat's little theorem.
    pub fn inv(&self, a: u16) -> u16 {
        debug_assert!(a != 0, "zero has no inverse");
        self.pow(a, self.p as u64 - 2)
    }

    pub fn pow(&self, a: u16, mut e: u64) -> u16 {
        let mut base = a as u64 % self.p as u64;
        let mut acc = 1u64;
        let p = self.p as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        acc as u16
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    if p % 2 == 0 {
        return p == 2;
    }
    let mut d = 3u32;
    while (d as u64) * (d as u64) <= p as u64 {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// An element of F_p^n. Coordinates are stored normalized to [0, p).
///
/// Coordinates are indexed from 0 in the API; user-facing output renders
/// 1-based positions.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldVector {
    field: PrimeField,
    coords: Vec<u16>,
}

impl FieldVector {
    /// Builds a vector from residues, reducing each mod p.
    pub fn new(field: PrimeField, coords: impl IntoIterator<Item = u64>) -> Self {
        let coords = coords.into_iter().map(|c| field.reduce(c)).collect();
        FieldVector { field, coords }
    }

    pub fn from_residues(field: PrimeField, coords: Vec<u16>) -> Self {
        debug_assert!(coords.iter().all(|&c| (c as u32) < field.p()));
        FieldVector { field, coords }
    }

    pub fn zero(field: PrimeField, n: usize) -> Self {
        FieldVector {
            field,
            coords: vec![0; n],
        }
    }

    /// The all-one vector, the identity of the coordinate-wise product.
    pub fn all_one(field: PrimeField, n: usize) -> Self {
        FieldVector {
            field,
            coords: vec![1; n],
        }
    }

    /// Characteristic vector of a set of coordinates.
    pub fn indicator(field: PrimeField, n: usize, coords: &[usize]) -> Result<Self> {
        let mut v = Self::zero(field, n);
        for &i in coords {
            if i >= n {
                return Err(Error::CoordinateOutOfRange { index: i, n });
            }
            v.coords[i] = 1;
        }
        Ok(v)
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn coords(&self) -> &[u16] {
        &self.coords
    }

    pub fn get(&self, i: usize) -> u16 {
        self.coords[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn is_binary(&self) -> bool {
        self.coords.iter().all(|&c| c <= 1)
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch {
                left: self.field.p(),
                right: other.field.p(),
            });
        }
        if self.coords.len() != other.coords.len() {
            return Err(Error::LengthMismatch {
                left: self.coords.len(),
                right: other.coords.len(),
            });
        }
        Ok(())
    }

    /// Coordinate-wise product u*v.
    pub fn star(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(&a, &b)| self.field.mul(a, b))
            .collect();
        Ok(FieldVector {
            field: self.field,
            coords,
        })
    }

    /// Standard inner product sum_i u(i)v(i) mod p.
    pub fn inner(&self, other: &Self) -> Result<u16> {
        self.check_compatible(other)?;
        let p = self.field.p() as u64;
        let mut acc = 0u64;
        for (&a, &b) in self.coords.iter().zip(&other.coords) {
            acc = (acc + a as u64 * b as u64) % p;
        }
        Ok(acc as u16)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(&a, &b)| self.field.add(a, b))
            .collect();
        Ok(FieldVector {
            field: self.field,
            coords,
        })
    }

    pub fn scale(&self, c: u16) -> Self {
        let coords = self.coords.iter().map(|&a| self.field.mul(a, c)).collect();
        FieldVector {
            field: self.field,
            coords,
        }
    }

    /// Set of coordinates with nonzero value, 0-based, ascending.
    pub fn support(&self) -> Vec<usize> {
        self.coords
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, _)| i)
            .collect()
    }

    /// Parses the vector text form: a contiguous digit string for p <= 7,
    /// space-separated residues otherwise. Both forms are accepted for p <= 7.
    pub fn parse(field: PrimeField, s: &str) -> Result<Self> {
        let s = s.trim();
        let residues: Vec<u32> = if s.contains(char::is_whitespace) {
            s.split_whitespace()
                .map(|t| t.parse::<u32>().map_err(|e| Error::Parse(e.to_string())))
                .collect::<Result<_>>()?
        } else if field.p() <= 7 {
            s.chars()
                .map(|c| {
                    c.to_digit(10)
                        .ok_or_else(|| Error::Parse(format!("invalid digit '{c}'")))
                })
                .collect::<Result<_>>()?
        } else if s.is_empty() {
            Vec::new()
        } else {
            vec![s.parse::<u32>().map_err(|e| Error::Parse(e.to_string()))?]
        };
        let mut coords = Vec::with_capacity(residues.len());
        for r in residues {
            if r >= field.p() {
                return Err(Error::Parse(format!(
                    "residue {r} out of range for F_{}",
                    field.p()
                )));
            }
            coords.push(r as u16);
        }
        Ok(FieldVector { field, coords })
    }

    /// Renders the vector text form (see [`FieldVector::parse`]).
    pub fn render(&self) -> String {
        if self.field.p() <= 7 {
            self.coords.iter().map(|c| c.to_string()).collect()
        } else {
            self.coords
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        }
    }
}

impl fmt::Display for FieldVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}
