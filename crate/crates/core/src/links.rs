//! Braid words, their closures, and link universes in `S^3`.
//!
//! A universe built from a braid consists of the braid axis (always listed
//! first) followed by the closure components ordered by their smallest strand.
//! Closure components run with the braid direction and the axis is oriented so
//! that its linking number with each component is that component's winding,
//! i.e. the length of the corresponding permutation cycle. Longitudes are the
//! preferred (zero-framed) ones, so no framing data is stored.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::zlattice::IntMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinkError {
    #[error("a braid needs at least one strand")]
    NoStrands,
    #[error("letter {letter} at position {position} is out of range for {strands} strands")]
    LetterOutOfRange {
        letter: i32,
        position: usize,
        strands: usize,
    },
    #[error("braid power must be at least 1")]
    ZeroPower,
    #[error("linking matrix is {rows}x{cols} for {components} components")]
    LinkingShape {
        rows: usize,
        cols: usize,
        components: usize,
    },
    #[error("linking matrix is not symmetric at ({0}, {1})")]
    Asymmetric(usize, usize),
    #[error("linking matrix has nonzero diagonal at {0}")]
    NonzeroDiagonal(usize),
    #[error("axis index {0} is out of range")]
    AxisOutOfRange(usize),
    #[error("component order is not a permutation of 0..{0}")]
    BadOrder(usize),
}

/// A word in the Artin generators: letter `i > 0` is `σ_i`, `-i` its inverse.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<Self, LinkError> {
        if strands == 0 {
            return Err(LinkError::NoStrands);
        }
        for (position, &letter) in letters.iter().enumerate() {
            let g = letter.unsigned_abs() as usize;
            if g == 0 || g >= strands {
                return Err(LinkError::LetterOutOfRange {
                    letter,
                    position,
                    strands,
                });
            }
        }
        Ok(Self { strands, letters })
    }

    pub fn trivial(strands: usize) -> Result<Self, LinkError> {
        Self::new(strands, Vec::new())
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// The word repeated `n` times.
    pub fn power(&self, n: usize) -> Result<Self, LinkError> {
        if n == 0 {
            return Err(LinkError::ZeroPower);
        }
        Ok(Self {
            strands: self.strands,
            letters: self.letters.repeat(n),
        })
    }

    /// The mirror image: every crossing sign flipped.
    pub fn mirror(&self) -> Self {
        Self {
            strands: self.strands,
            letters: self.letters.iter().map(|l| -l).collect(),
        }
    }

    /// Same letters on more strands; the new strands close up to split
    /// components of winding one.
    pub fn with_extra_strands(&self, extra: usize) -> Self {
        Self {
            strands: self.strands + extra,
            letters: self.letters.clone(),
        }
    }

    /// The underlying permutation: strand starting at position `s` ends at
    /// position `perm.image(s)` (positions are 0-based).
    pub fn permutation(&self) -> Permutation {
        let at = self.final_positions();
        let mut image = vec![0; self.strands];
        for (pos, &strand) in at.iter().enumerate() {
            image[strand] = pos;
        }
        Permutation(image)
    }

    /// `at[p]` is the strand occupying position `p` after the whole word.
    fn final_positions(&self) -> Vec<usize> {
        let mut at: Vec<usize> = (0..self.strands).collect();
        for &letter in &self.letters {
            let i = letter.unsigned_abs() as usize;
            at.swap(i - 1, i);
        }
        at
    }

    /// Components of the closure: the cycles of the permutation, each sorted
    /// and the list ordered by smallest strand.
    pub fn components(&self) -> Vec<Vec<usize>> {
        self.permutation().cycles()
    }

    /// Linking matrix of the closure components (same order as
    /// [`components`](Self::components)): half the signed number of crossings
    /// between two distinct components.
    pub fn linking_matrix(&self) -> IntMatrix {
        let comps = self.components();
        let mut comp_of = vec![0; self.strands];
        for (c, cycle) in comps.iter().enumerate() {
            for &s in cycle {
                comp_of[s] = c;
            }
        }
        let r = comps.len();
        let mut counts = vec![vec![0i64; r]; r];
        let mut at: Vec<usize> = (0..self.strands).collect();
        for &letter in &self.letters {
            let i = letter.unsigned_abs() as usize;
            let (a, b) = (comp_of[at[i - 1]], comp_of[at[i]]);
            if a != b {
                let sign = i64::from(letter.signum());
                counts[a][b] += sign;
                counts[b][a] += sign;
            }
            at.swap(i - 1, i);
        }
        let mut lk = IntMatrix::zeros(r, r);
        for a in 0..r {
            for b in 0..r {
                debug_assert_eq!(counts[a][b] % 2, 0, "inter-component crossings pair up");
                lk[(a, b)] = BigInt::from(counts[a][b] / 2);
            }
        }
        lk
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let strands = if self.strands == 1 { "strand" } else { "strands" };
        if self.letters.is_empty() {
            return write!(f, "1 ({} {strands})", self.strands);
        }
        let word: Vec<String> = self
            .letters
            .iter()
            .map(|&l| if l > 0 { format!("s{l}") } else { format!("s{}^-1", -l) })
            .collect();
        write!(f, "{} ({} {strands})", word.join(" "), self.strands)
    }
}

/// A permutation of `0..n`, stored as its image vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Self((0..n).collect())
    }

    pub fn from_images(images: Vec<usize>) -> Option<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || std::mem::replace(&mut seen[i], true) {
                return None;
            }
        }
        Some(Self(images))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn image(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// `self` after `other`: `i -> self(other(i))`.
    pub fn compose(&self, other: &Self) -> Self {
        Self(other.0.iter().map(|&j| self.0[j]).collect())
    }

    pub fn pow(&self, n: usize) -> Self {
        (0..n).fold(Self::identity(self.len()), |acc, _| self.compose(&acc))
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j] = i;
        }
        Self(inv)
    }

    /// Cycles, each listed in increasing order, sorted by smallest element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for start in 0..self.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cycle.push(i);
                i = self.0[i];
            }
            cycle.sort_unstable();
            out.push(cycle);
        }
        out
    }
}

impl fmt::Display for Permutation {
    /// Cycle notation on 1-based points, fixed points omitted.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut seen = vec![false; self.len()];
        let mut wrote = false;
        for start in 0..self.len() {
            if seen[start] || self.0[start] == start {
                continue;
            }
            write!(f, "(")?;
            let mut i = start;
            let mut first = true;
            while !seen[i] {
                seen[i] = true;
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{}", i + 1)?;
                first = false;
                i = self.0[i];
            }
            write!(f, ")")?;
            wrote = true;
        }
        if !wrote {
            write!(f, "()")?;
        }
        Ok(())
    }
}

/// One oriented component of a universe. The axis has no strands.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Component {
    pub label: String,
    pub strands: Vec<usize>,
}

/// A set of component indices.
pub type Sublink = BTreeSet<usize>;

/// A finite family of oriented knots in `S^3` with its linking matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkUniverse {
    components: Vec<Component>,
    linking: IntMatrix,
    axis: Option<usize>,
}

impl LinkUniverse {
    pub fn new(components: Vec<Component>, linking: IntMatrix, axis: Option<usize>) -> Result<Self, LinkError> {
        let m = components.len();
        if linking.rows() != m || linking.cols() != m {
            return Err(LinkError::LinkingShape {
                rows: linking.rows(),
                cols: linking.cols(),
                components: m,
            });
        }
        for i in 0..m {
            if !linking[(i, i)].is_zero() {
                return Err(LinkError::NonzeroDiagonal(i));
            }
            for j in i + 1..m {
                if linking[(i, j)] != linking[(j, i)] {
                    return Err(LinkError::Asymmetric(i, j));
                }
            }
        }
        if let Some(a) = axis {
            if a >= m {
                return Err(LinkError::AxisOutOfRange(a));
            }
        }
        Ok(Self {
            components,
            linking,
            axis,
        })
    }

    /// Closure of `braid` together with its axis, labelled `A, K1, K2, ...`.
    pub fn from_braid(braid: &BraidWord) -> Self {
        Self::from_braid_labeled(braid, "A", "K")
    }

    pub fn from_braid_labeled(braid: &BraidWord, axis_label: &str, prefix: &str) -> Self {
        let cycles = braid.components();
        let inner = braid.linking_matrix();
        let m = cycles.len() + 1;
        let mut linking = IntMatrix::zeros(m, m);
        for (c, cycle) in cycles.iter().enumerate() {
            let winding = BigInt::from(cycle.len());
            linking[(0, c + 1)] = winding.clone();
            linking[(c + 1, 0)] = winding;
            for d in 0..cycles.len() {
                linking[(c + 1, d + 1)] = inner[(c, d)].clone();
            }
        }
        let mut components = vec![Component {
            label: axis_label.to_string(),
            strands: Vec::new(),
        }];
        components.extend(cycles.into_iter().enumerate().map(|(c, strands)| Component {
            label: format!("{prefix}{}", c + 1),
            strands,
        }));
        Self::new(components, linking, Some(0)).expect("braid closures give valid universes")
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn label(&self, i: usize) -> &str {
        &self.components[i].label
    }

    pub fn linking(&self) -> &IntMatrix {
        &self.linking
    }

    pub fn lk(&self, i: usize, j: usize) -> &BigInt {
        &self.linking[(i, j)]
    }

    pub fn axis(&self) -> Option<usize> {
        self.axis
    }

    /// Winding of every component about the axis (zero for the axis itself).
    pub fn windings(&self) -> Option<Vec<BigInt>> {
        self.axis.map(|a| (0..self.len()).map(|i| self.linking[(a, i)].clone()).collect())
    }

    /// Rank of the truncated idèle group, two coordinates per component.
    pub fn idele_rank(&self) -> usize {
        2 * self.len()
    }

    pub fn full_sublink(&self) -> Sublink {
        (0..self.len()).collect()
    }

    /// All `2^m` sublinks, ordered by bitmask.
    pub fn sublinks(&self) -> impl Iterator<Item = Sublink> + '_ {
        let m = self.len();
        (0u64..1 << m).map(move |mask| (0..m).filter(|&i| mask >> i & 1 == 1).collect())
    }

    /// The same universe with components reordered: new component `i` is old
    /// component `order[i]`.
    pub fn permuted(&self, order: &[usize]) -> Result<Self, LinkError> {
        let perm = Permutation::from_images(order.to_vec())
            .filter(|p| p.len() == self.len())
            .ok_or(LinkError::BadOrder(self.len()))?;
        let inv = perm.inverse();
        let m = self.len();
        let mut linking = IntMatrix::zeros(m, m);
        for i in 0..m {
            for j in 0..m {
                linking[(i, j)] = self.linking[(order[i], order[j])].clone();
            }
        }
        Ok(Self {
            components: order.iter().map(|&o| self.components[o].clone()).collect(),
            linking,
            axis: self.axis.map(|a| inv.image(a)),
        })
    }
}
