//! Exact integer linear algebra: matrices, Hermite/Smith normal forms and
//! sublattice arithmetic inside a free ambient group `Z^n`.

mod matrix;
mod normal_form;
mod sublattice;

pub use matrix::IntMatrix;
pub use normal_form::{hnf, kernel, snf, SmithForm};
pub use sublattice::{quotient_invariants, AbelianInvariants, SubLattice};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("ambient rank mismatch: {left} vs {right}")]
    AmbientMismatch { left: usize, right: usize },
    #[error("row {row} has {found} entries, expected {expected}")]
    RaggedRows { row: usize, expected: usize, found: usize },
    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NotSquare { rows: usize, cols: usize },
    #[error("relations are not contained in the enclosing lattice")]
    NotASubgroup,
}
