//! Alexander polynomials from Seifert matrices and the orders of first
//! homology of cyclic branched covers over a knot.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::CoverError;
use crate::zlattice::{IntMatrix, LatticeError};

/// Dense integer polynomial, coefficients from the constant term up, with no
/// trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    coeffs: Vec<BigInt>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// `1 + t + ... + t^{n-1}`.
    pub fn geometric(n: usize) -> Self {
        Self::new(vec![BigInt::one(); n])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, t: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * t + c)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let a = c.abs();
            match (i, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (1, true) => write!(f, "t")?,
                (1, false) => write!(f, "{a}t")?,
                (_, true) => write!(f, "t^{i}")?,
                (_, false) => write!(f, "{a}t^{i}")?,
            }
            first = false;
        }
        Ok(())
    }
}

/// `Δ(t) = det(V - t V^T)`, recovered by evaluating at `t = 0..=s` and
/// interpolating in the binomial basis.
pub fn alexander_polynomial(seifert: &IntMatrix) -> Result<Polynomial, CoverError> {
    if !seifert.is_square() {
        return Err(LatticeError::NotSquare {
            rows: seifert.rows(),
            cols: seifert.cols(),
        }
        .into());
    }
    let s = seifert.rows();
    let vt = seifert.transpose();
    let values: Vec<BigInt> = (0..=s)
        .map(|t| {
            let t = BigInt::from(t);
            let mut m = seifert.clone();
            for i in 0..s {
                for j in 0..s {
                    m[(i, j)] -= &t * &vt[(i, j)];
                }
            }
            m.determinant().expect("square by construction")
        })
        .collect();

    // Forward differences give Δ(t) = Σ_k diff_k C(t, k).
    let mut diffs = Vec::with_capacity(s + 1);
    let mut row = values;
    while !row.is_empty() {
        diffs.push(row[0].clone());
        row = row.windows(2).map(|w| &w[1] - &w[0]).collect();
    }

    // Scale by s! so every binomial term has integer coefficients.
    let fact: BigInt = (1..=s).map(BigInt::from).product();
    let mut total = vec![BigInt::zero(); s + 1];
    let mut falling = vec![BigInt::one()];
    let mut k_fact = BigInt::one();
    for (k, d) in diffs.iter().enumerate() {
        if k > 0 {
            k_fact *= BigInt::from(k);
            // falling *= (t - (k - 1))
            let shift = BigInt::from(k - 1);
            let mut next = vec![BigInt::zero(); falling.len() + 1];
            for (i, c) in falling.iter().enumerate() {
                next[i + 1] += c;
                next[i] -= c * &shift;
            }
            falling = next;
        }
        let scale = d * (&fact / &k_fact);
        for (i, c) in falling.iter().enumerate() {
            total[i] += &scale * c;
        }
    }
    Ok(Polynomial::new(total.into_iter().map(|c| c / &fact).collect()))
}

/// Resultant of two polynomials as the determinant of their Sylvester matrix.
pub fn resultant(f: &Polynomial, g: &Polynomial) -> BigInt {
    let (Some(p), Some(q)) = (f.degree(), g.degree()) else {
        return BigInt::zero();
    };
    let size = p + q;
    if size == 0 {
        return BigInt::one();
    }
    let mut syl = IntMatrix::zeros(size, size);
    for i in 0..q {
        for (k, c) in f.coeffs().iter().rev().enumerate() {
            syl[(i, i + k)] = c.clone();
        }
    }
    for i in 0..p {
        for (k, c) in g.coeffs().iter().rev().enumerate() {
            syl[(q + i, i + k)] = c.clone();
        }
    }
    syl.determinant().expect("Sylvester matrix is square")
}

/// `|H_1|` of the n-fold cyclic cover of `S^3` branched over a knot with
/// Seifert matrix `seifert`: `|Res(Δ, 1 + t + ... + t^{n-1})|`. Returns zero
/// when the homology is infinite.
pub fn branched_cover_order(seifert: &IntMatrix, n: usize) -> Result<BigInt, CoverError> {
    if n < 2 {
        return Err(CoverError::DegreeTooSmall(n));
    }
    let delta = alexander_polynomial(seifert)?;
    Ok(resultant(&delta, &Polynomial::geometric(n)).abs())
}
