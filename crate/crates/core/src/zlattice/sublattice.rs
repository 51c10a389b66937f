use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use super::normal_form::{hnf, kernel, snf};
use super::{IntMatrix, LatticeError};

/// A subgroup of `Z^n` together with its canonical Hermite basis.
///
/// Equality compares canonical forms, so two sublattices are equal exactly
/// when they generate the same subgroup.
#[derive(Clone)]
pub struct SubLattice {
    ambient_rank: usize,
    generators: IntMatrix,
    canonical: IntMatrix,
}

impl SubLattice {
    /// The sublattice spanned by the columns of `generators`.
    pub fn new(ambient_rank: usize, generators: IntMatrix) -> Result<Self, LatticeError> {
        if generators.rows() != ambient_rank {
            return Err(LatticeError::DimensionMismatch {
                expected: ambient_rank,
                found: generators.rows(),
            });
        }
        let canonical = hnf(&generators);
        Ok(Self {
            ambient_rank,
            generators,
            canonical,
        })
    }

    pub fn from_vectors(ambient_rank: usize, vectors: &[Vec<BigInt>]) -> Result<Self, LatticeError> {
        Self::new(ambient_rank, IntMatrix::from_columns(ambient_rank, vectors)?)
    }

    pub fn zero(ambient_rank: usize) -> Self {
        Self::new(ambient_rank, IntMatrix::zeros(ambient_rank, 0)).expect("shape is consistent")
    }

    pub fn full(ambient_rank: usize) -> Self {
        Self::new(ambient_rank, IntMatrix::identity(ambient_rank)).expect("shape is consistent")
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn generators(&self) -> &IntMatrix {
        &self.generators
    }

    /// Column-style Hermite basis; its columns are linearly independent.
    pub fn canonical(&self) -> &IntMatrix {
        &self.canonical
    }

    pub fn rank(&self) -> usize {
        self.canonical.cols()
    }

    pub fn is_zero(&self) -> bool {
        self.rank() == 0
    }

    fn check_rank(&self, other: &Self) -> Result<(), LatticeError> {
        if self.ambient_rank != other.ambient_rank {
            return Err(LatticeError::AmbientMismatch {
                left: self.ambient_rank,
                right: other.ambient_rank,
            });
        }
        Ok(())
    }

    /// The subgroup generated by both lattices.
    pub fn sum(&self, other: &Self) -> Result<Self, LatticeError> {
        self.check_rank(other)?;
        Self::new(self.ambient_rank, self.canonical.hcat(&other.canonical)?)
    }

    /// Intersection via the kernel of `[A | -B]`: every `(x, y)` with
    /// `A x = B y` contributes the common vector `A x`.
    pub fn intersect(&self, other: &Self) -> Result<Self, LatticeError> {
        self.check_rank(other)?;
        let a = &self.canonical;
        let b = &other.canonical;
        if a.cols() == 0 || b.cols() == 0 {
            return Ok(Self::zero(self.ambient_rank));
        }
        let mut neg_b = b.clone();
        for j in 0..neg_b.cols() {
            neg_b.negate_col(j);
        }
        let ker = kernel(&a.hcat(&neg_b)?);
        let x_part = ker.row_range(0, a.cols());
        Self::new(self.ambient_rank, a.checked_mul(&x_part)?)
    }

    /// Coefficients of `v` in the canonical basis, or `None` when `v` is not
    /// in the lattice. Solved by forward substitution down the pivot rows.
    pub fn coordinates(&self, v: &[BigInt]) -> Result<Option<Vec<BigInt>>, LatticeError> {
        if v.len() != self.ambient_rank {
            return Err(LatticeError::DimensionMismatch {
                expected: self.ambient_rank,
                found: v.len(),
            });
        }
        let h = &self.canonical;
        let mut residual = v.to_vec();
        let mut coords = Vec::with_capacity(h.cols());
        let mut row = 0;
        for j in 0..h.cols() {
            let pivot_row = (row..h.rows())
                .find(|&i| !h[(i, j)].is_zero())
                .expect("canonical columns are nonzero");
            if residual[row..pivot_row].iter().any(|x| !x.is_zero()) {
                return Ok(None);
            }
            let (q, r) = residual[pivot_row].div_rem(&h[(pivot_row, j)]);
            if !r.is_zero() {
                return Ok(None);
            }
            if !q.is_zero() {
                for (i, res) in residual.iter_mut().enumerate().skip(pivot_row) {
                    *res -= &q * &h[(i, j)];
                }
            }
            coords.push(q);
            row = pivot_row + 1;
        }
        if residual[row..].iter().any(|x| !x.is_zero()) {
            return Ok(None);
        }
        Ok(Some(coords))
    }

    pub fn contains(&self, v: &[BigInt]) -> Result<bool, LatticeError> {
        Ok(self.coordinates(v)?.is_some())
    }

    /// `true` when every generator of `self` lies in `other`.
    pub fn is_subset_of(&self, other: &Self) -> Result<bool, LatticeError> {
        self.check_rank(other)?;
        for col in self.canonical.columns() {
            if !other.contains(&col)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// A canonical generator lying in exactly one of the two lattices, if the
    /// lattices differ. The flag is `true` when the vector is in `self` only.
    pub fn separating_vector(&self, other: &Self) -> Result<Option<(Vec<BigInt>, bool)>, LatticeError> {
        self.check_rank(other)?;
        for col in self.canonical.columns() {
            if !other.contains(&col)? {
                return Ok(Some((col, true)));
            }
        }
        for col in other.canonical.columns() {
            if !self.contains(&col)? {
                return Ok(Some((col, false)));
            }
        }
        Ok(None)
    }

    /// Image of the lattice under `map` (an `m x ambient_rank` matrix).
    pub fn image(&self, map: &IntMatrix) -> Result<Self, LatticeError> {
        if map.cols() != self.ambient_rank {
            return Err(LatticeError::DimensionMismatch {
                expected: self.ambient_rank,
                found: map.cols(),
            });
        }
        Self::new(map.rows(), map.checked_mul(&self.canonical)?)
    }

    /// `{x in Z^{map.cols()} : map x in target}`.
    pub fn preimage(map: &IntMatrix, target: &Self) -> Result<Self, LatticeError> {
        if map.rows() != target.ambient_rank {
            return Err(LatticeError::DimensionMismatch {
                expected: target.ambient_rank,
                found: map.rows(),
            });
        }
        let mut neg_t = target.canonical.clone();
        for j in 0..neg_t.cols() {
            neg_t.negate_col(j);
        }
        let ker = kernel(&map.hcat(&neg_t)?);
        Self::new(map.cols(), ker.row_range(0, map.cols()))
    }

    /// Relabels coordinates: coordinate `i` of the result is coordinate
    /// `order[i]` of `self`.
    pub fn permute_coordinates(&self, order: &[usize]) -> Result<Self, LatticeError> {
        if order.len() != self.ambient_rank {
            return Err(LatticeError::DimensionMismatch {
                expected: self.ambient_rank,
                found: order.len(),
            });
        }
        let g = &self.generators;
        let mut p = IntMatrix::zeros(g.rows(), g.cols());
        for (new, &old) in order.iter().enumerate() {
            for j in 0..g.cols() {
                p[(new, j)] = g[(old, j)].clone();
            }
        }
        Self::new(self.ambient_rank, p)
    }

    /// Isomorphism type of `Z^n / self`.
    pub fn quotient_invariants(&self) -> AbelianInvariants {
        quotient_invariants(self.ambient_rank, self)
    }

    /// Isomorphism type of `self / sub`; `sub` must be contained in `self`.
    pub fn subquotient_invariants(&self, sub: &Self) -> Result<AbelianInvariants, LatticeError> {
        self.check_rank(sub)?;
        let mut rel_cols = Vec::with_capacity(sub.rank());
        for col in sub.canonical.columns() {
            match self.coordinates(&col)? {
                Some(c) => rel_cols.push(c),
                None => return Err(LatticeError::NotASubgroup),
            }
        }
        let s = self.rank();
        let rel = Self::new(s, IntMatrix::from_columns(s, &rel_cols)?)?;
        Ok(quotient_invariants(s, &rel))
    }
}

impl PartialEq for SubLattice {
    fn eq(&self, other: &Self) -> bool {
        self.ambient_rank == other.ambient_rank && self.canonical == other.canonical
    }
}

impl Eq for SubLattice {}

impl fmt::Debug for SubLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SubLattice(Z^{}, {})", self.ambient_rank, self.canonical)
    }
}

/// Invariants of a finitely generated abelian group `Z^r + Z/d_1 + ... + Z/d_k`
/// with `d_1 | d_2 | ... | d_k` and every `d_i >= 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbelianInvariants {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl AbelianInvariants {
    pub fn free(rank: usize) -> Self {
        Self {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    pub fn is_free(&self) -> bool {
        self.torsion.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Order of the group, `None` when it is infinite.
    pub fn order(&self) -> Option<BigInt> {
        (self.free_rank == 0).then(|| self.torsion.iter().product())
    }
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        write!(f, "{}", parts.join(" + "))
    }
}

impl Serialize for AbelianInvariants {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("AbelianInvariants", 2)?;
        s.serialize_field("free_rank", &self.free_rank)?;
        let torsion: Vec<String> = self.torsion.iter().map(ToString::to_string).collect();
        s.serialize_field("torsion", &torsion)?;
        s.end()
    }
}

/// Invariants of `Z^ambient_rank / relations`, read off the Smith form of the
/// relation generators.
pub fn quotient_invariants(ambient_rank: usize, relations: &SubLattice) -> AbelianInvariants {
    let factors = snf(relations.canonical()).invariant_factors();
    AbelianInvariants {
        free_rank: ambient_rank - factors.len(),
        torsion: factors.into_iter().filter(|d| !d.is_one()).collect(),
    }
}
