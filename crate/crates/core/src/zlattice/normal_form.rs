//! Hermite and Smith normal forms over `Z`.
//!
//! The Hermite form is column-style: the column lattice is preserved, the
//! result is lower-triangular in echelon shape with strictly increasing pivot
//! rows, pivots are positive, and in every pivot row the entries of earlier
//! columns lie in `[0, pivot)`. Zero columns are dropped, so the output has
//! exactly `rank` columns and is uniquely determined by the column lattice.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::IntMatrix;

/// Column-style Hermite normal form of the column lattice of `m`.
pub fn hnf(m: &IntMatrix) -> IntMatrix {
    let mut h = m.clone();
    let rank = column_echelon(&mut h, m.rows(), true);
    h.select_columns(&(0..rank).collect::<Vec<_>>())
}

/// Unimodular column reduction of `m` using the first `pivot_rows` rows for
/// pivots. Returns the number of pivot columns; those come first, and every
/// later column is zero on the pivot rows. With `reduce`, entries left of each
/// pivot are brought into `[0, pivot)`.
pub(crate) fn column_echelon(m: &mut IntMatrix, pivot_rows: usize, reduce: bool) -> usize {
    let cols = m.cols();
    let mut k = 0;
    for p in 0..pivot_rows {
        if k == cols {
            break;
        }
        // Pick the column with the smallest nonzero entry in row p as a seed,
        // which keeps the gcd steps short.
        let seed = (k..cols)
            .filter(|&j| !m[(p, j)].is_zero())
            .min_by(|&a, &b| m[(p, a)].abs().cmp(&m[(p, b)].abs()));
        let Some(seed) = seed else { continue };
        m.swap_cols(k, seed);
        for j in k + 1..cols {
            if m[(p, j)].is_zero() {
                continue;
            }
            let a = m[(p, k)].clone();
            let b = m[(p, j)].clone();
            if (&b % &a).is_zero() {
                let q = -(&b / &a);
                m.add_col_multiple(j, k, &q);
                continue;
            }
            let e = a.extended_gcd(&b);
            let (g, x, y) = (e.gcd, e.x, e.y);
            let a_g = &a / &g;
            let b_g = &b / &g;
            // [x y; -b/g a/g] has determinant 1.
            m.combine_cols(k, j, &x, &y, &-b_g, &a_g);
        }
        if m[(p, k)].is_negative() {
            m.negate_col(k);
        }
        if reduce {
            let pivot = m[(p, k)].clone();
            for i in 0..k {
                let q = m[(p, i)].div_floor(&pivot);
                if !q.is_zero() {
                    m.add_col_multiple(i, k, &-q);
                }
            }
        }
        k += 1;
    }
    k
}

/// A basis (as columns) of the integer kernel `{x : m x = 0}`.
pub fn kernel(m: &IntMatrix) -> IntMatrix {
    let (r, c) = (m.rows(), m.cols());
    let mut aug = m
        .vcat(&IntMatrix::identity(c))
        .expect("identity block has matching width");
    let rank = column_echelon(&mut aug, r, false);
    let basis: Vec<usize> = (rank..c).collect();
    aug.row_range(r, r + c).select_columns(&basis)
}

/// Smith decomposition `u * m * v = d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    /// Nonzero diagonal entries of `d`, in divisibility order.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        self.d.diagonal().into_iter().filter(|x| !x.is_zero()).collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

/// Smith normal form with unimodular transforms; the diagonal is nonnegative
/// and each nonzero entry divides the next.
pub fn snf(m: &IntMatrix) -> SmithForm {
    let (r, c) = (m.rows(), m.cols());
    let mut d = m.clone();
    let mut u = IntMatrix::identity(r);
    let mut v = IntMatrix::identity(c);

    'outer: for t in 0..r.min(c) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..r {
                for j in t..c {
                    if d[(i, j)].is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| d[(i, j)].abs() < d[(bi, bj)].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { break 'outer };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let pivot = d[(t, t)].clone();
            let mut dirty = false;
            for i in t + 1..r {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let q = -(&d[(i, t)] / &pivot);
                d.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                dirty |= !d[(i, t)].is_zero();
            }
            for j in t + 1..c {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let q = -(&d[(t, j)] / &pivot);
                d.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                dirty |= !d[(t, j)].is_zero();
            }
            if dirty {
                continue;
            }
            // Pivot now isolates its row and column; enforce divisibility.
            let offender = (t + 1..r).find(|&i| (t + 1..c).any(|j| !(&d[(i, j)] % &pivot).is_zero()));
            match offender {
                Some(i) => {
                    let one = BigInt::one();
                    d.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    SmithForm { u, d, v }
}
