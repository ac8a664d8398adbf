//! Schur (coordinate-wise) products of linear codes over prime fields and
//! ℓ-divisible set families, with exhaustive desk-scale verification of the
//! bounds and structure theorems that connect them.

pub mod bridge;
pub mod code;
pub mod constructions;
pub mod error;
pub mod family;
pub mod field;
pub mod report;
pub mod rng;
pub mod search;
pub mod stabilizer;

pub use code::LinearCode;
pub use error::{Error, Result};
pub use family::{AtomPartition, SetFamily};
pub use field::{FieldVector, PrimeField};
pub use report::VerificationReport;
pub use stabilizer::StabDecomposition;
