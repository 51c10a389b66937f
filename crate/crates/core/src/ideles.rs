//! Truncated idèles over a link universe.
//!
//! Each component `K` contributes the boundary-torus group
//! `H_1(∂V_K) = Z[μ_K] + Z[λ_K]`; an idèle vector lists `(μ, λ)` coefficient
//! pairs in component order. With a finite universe every coordinate is
//! allowed, so the truncated idèle group is all of `Z^{2m}`.
//!
//! Seifert surface classes `Σ c_K [S_K]` are sent to idèles by the diagonal
//! map: the `λ_K` coefficient is `c_K` and the `μ_K` coefficient is
//! `-Σ_{K' ≠ K} lk(K, K') c_{K'}`, for components inside and outside the
//! support alike.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::links::{LinkUniverse, Sublink};
use crate::zlattice::{AbelianInvariants, IntMatrix, SubLattice};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdeleError {
    #[error("component {0} is not in the universe")]
    UnknownComponent(usize),
    #[error("component {0} is not in the sublink")]
    NotInSublink(usize),
    #[error("class support is not contained in the target sublink")]
    SupportNotContained,
    #[error("sublink is not contained in the enclosing sublink")]
    NotNested,
    #[error("idèle vector has {found} coordinates, expected {expected}")]
    DimensionMismatch { expected: usize, found: usize },
}

/// `(μ, λ)` coefficients per component, flattened as
/// `[μ_0, λ_0, μ_1, λ_1, ...]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IdeleVector {
    coords: Vec<BigInt>,
}

impl IdeleVector {
    pub fn zero(components: usize) -> Self {
        Self {
            coords: vec![BigInt::zero(); 2 * components],
        }
    }

    pub fn from_coords(coords: Vec<BigInt>) -> Result<Self, IdeleError> {
        if coords.len() % 2 != 0 {
            return Err(IdeleError::DimensionMismatch {
                expected: coords.len() + 1,
                found: coords.len(),
            });
        }
        Ok(Self { coords })
    }

    pub fn from_i64(coords: &[i64]) -> Result<Self, IdeleError> {
        Self::from_coords(coords.iter().map(|&x| BigInt::from(x)).collect())
    }

    /// Unit vector on the meridian of component `k`.
    pub fn meridian_unit(components: usize, k: usize) -> Self {
        let mut v = Self::zero(components);
        v.coords[2 * k] = BigInt::one();
        v
    }

    /// Unit vector on the longitude of component `k`.
    pub fn longitude_unit(components: usize, k: usize) -> Self {
        let mut v = Self::zero(components);
        v.coords[2 * k + 1] = BigInt::one();
        v
    }

    /// Unit vector on flattened coordinate `i`.
    pub fn unit(components: usize, i: usize) -> Self {
        let mut v = Self::zero(components);
        v.coords[i] = BigInt::one();
        v
    }

    pub fn components(&self) -> usize {
        self.coords.len() / 2
    }

    pub fn meridian(&self, k: usize) -> &BigInt {
        &self.coords[2 * k]
    }

    pub fn longitude(&self, k: usize) -> &BigInt {
        &self.coords[2 * k + 1]
    }

    pub fn meridian_mut(&mut self, k: usize) -> &mut BigInt {
        &mut self.coords[2 * k]
    }

    pub fn longitude_mut(&mut self, k: usize) -> &mut BigInt {
        &mut self.coords[2 * k + 1]
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<BigInt> {
        self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn scaled(&self, factor: &BigInt) -> Self {
        Self {
            coords: self.coords.iter().map(|x| x * factor).collect(),
        }
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&BigInt, &BigInt) -> BigInt) -> Self {
        assert_eq!(self.coords.len(), other.coords.len(), "idèle vectors of different length");
        Self {
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| f(a, b)).collect(),
        }
    }
}

impl Add for &IdeleVector {
    type Output = IdeleVector;
    fn add(self, rhs: &IdeleVector) -> IdeleVector {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &IdeleVector {
    type Output = IdeleVector;
    fn sub(self, rhs: &IdeleVector) -> IdeleVector {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Neg for &IdeleVector {
    type Output = IdeleVector;
    fn neg(self) -> IdeleVector {
        IdeleVector {
            coords: self.coords.iter().map(|x| -x).collect(),
        }
    }
}

impl fmt::Display for IdeleVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for k in 0..self.components() {
            if k > 0 {
                write!(f, " | ")?;
            }
            write!(f, "{}, {}", self.meridian(k), self.longitude(k))?;
        }
        write!(f, ")")
    }
}

impl IdeleVector {
    /// Renders the vector as a signed sum of labelled meridians and
    /// longitudes: longitudes before meridians, the axis after the other
    /// components, e.g. `λ_K1 − μ_K2 − μ_A`. With `ascii` the symbols become
    /// `lambda_`, `mu_` and `-`.
    pub fn labeled(&self, u: &LinkUniverse, ascii: bool) -> String {
        let (lambda, mu, minus) = if ascii { ("lambda_", "mu_", "-") } else { ("λ_", "μ_", "−") };
        let mut order: Vec<usize> = (0..self.components()).filter(|&k| Some(k) != u.axis()).collect();
        order.extend(u.axis().filter(|&a| a < self.components()));
        let terms = order
            .iter()
            .map(|&k| (self.longitude(k), lambda, k))
            .chain(order.iter().map(|&k| (self.meridian(k), mu, k)))
            .filter(|(c, _, _)| !c.is_zero());
        let mut out = String::new();
        for (c, symbol, k) in terms {
            let negative = c.sign() == num_bigint::Sign::Minus;
            let sign = match (out.is_empty(), negative) {
                (true, false) => String::new(),
                (true, true) => minus.to_string(),
                (false, false) => " + ".to_string(),
                (false, true) => format!(" {minus} "),
            };
            let magnitude = c.magnitude();
            let factor = if magnitude.is_one() { String::new() } else { magnitude.to_string() };
            out.push_str(&format!("{sign}{factor}{symbol}{}", u.label(k)));
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

/// A class `Σ c_K [S_K]` in `H_2(M, L)`, `L` being the support.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct SurfaceClass {
    coeffs: BTreeMap<usize, BigInt>,
}

impl SurfaceClass {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `[S_K]` supported on `{K}`.
    pub fn seifert(k: usize) -> Self {
        Self {
            coeffs: BTreeMap::from([(k, BigInt::one())]),
        }
    }

    /// Class with the given `(component, coefficient)` pairs; the support is
    /// exactly the listed components, zero coefficients included.
    pub fn from_pairs<I, T>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (usize, T)>,
        T: Into<BigInt>,
    {
        Self {
            coeffs: pairs.into_iter().map(|(k, c)| (k, c.into())).collect(),
        }
    }

    pub fn support(&self) -> Sublink {
        self.coeffs.keys().copied().collect()
    }

    /// Coefficient of `[S_K]`, zero outside the support.
    pub fn coefficient(&self, k: usize) -> BigInt {
        self.coeffs.get(&k).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &BigInt)> {
        self.coeffs.iter().map(|(&k, c)| (k, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.values().all(Zero::is_zero)
    }
}

impl Add for &SurfaceClass {
    type Output = SurfaceClass;
    fn add(self, rhs: &SurfaceClass) -> SurfaceClass {
        let mut coeffs = self.coeffs.clone();
        for (&k, c) in &rhs.coeffs {
            *coeffs.entry(k).or_default() += c;
        }
        SurfaceClass { coeffs }
    }
}

/// `U^L`: the meridian lattice of the components outside `excluded`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeridianSubgroup {
    pub excluded: Sublink,
    pub lattice: SubLattice,
}

fn check_sublink(u: &LinkUniverse, l: &Sublink) -> Result<(), IdeleError> {
    match l.iter().find(|&&k| k >= u.len()) {
        Some(&k) => Err(IdeleError::UnknownComponent(k)),
        None => Ok(()),
    }
}

/// Boundary of the punctured Seifert surface of `k` inside `H_1(∂V_L)`:
/// `λ_K - Σ_{K' ∈ L \ K} lk(K, K') μ_{K'}`. Components outside `l` get zero.
pub fn boundary_punctured_surface(u: &LinkUniverse, k: usize, l: &Sublink) -> Result<IdeleVector, IdeleError> {
    check_sublink(u, l)?;
    if !l.contains(&k) {
        return Err(IdeleError::NotInSublink(k));
    }
    let mut v = IdeleVector::zero(u.len());
    *v.longitude_mut(k) = BigInt::one();
    for &other in l.iter().filter(|&&o| o != k) {
        *v.meridian_mut(other) = -u.lk(k, other);
    }
    Ok(v)
}

/// The diagonal map on a surface class, with all universe coordinates.
pub fn diagonal_map(u: &LinkUniverse, s: &SurfaceClass) -> Result<IdeleVector, IdeleError> {
    check_sublink(u, &s.support())?;
    let mut v = IdeleVector::zero(u.len());
    for (j, c) in s.terms() {
        if c.is_zero() {
            continue;
        }
        *v.longitude_mut(j) += c;
        for k in (0..u.len()).filter(|&k| k != j) {
            let lk = u.lk(k, j);
            if !lk.is_zero() {
                *v.meridian_mut(k) -= lk * c;
            }
        }
    }
    Ok(v)
}

/// The boundary map `H_2(M, L) -> H_1(∂V_L)`: the diagonal formula evaluated
/// only on the slots of `l`, listed in increasing component order.
pub fn local_boundary(u: &LinkUniverse, s: &SurfaceClass, l: &Sublink) -> Result<IdeleVector, IdeleError> {
    check_sublink(u, l)?;
    if !s.support().is_subset(l) {
        return Err(IdeleError::SupportNotContained);
    }
    let mut v = IdeleVector::zero(l.len());
    for (slot, &k) in l.iter().enumerate() {
        *v.longitude_mut(slot) = s.coefficient(k);
        let mut m = BigInt::zero();
        for &k2 in l.iter().filter(|&&k2| k2 != k) {
            m -= u.lk(k, k2) * s.coefficient(k2);
        }
        *v.meridian_mut(slot) = m;
    }
    Ok(v)
}

/// The matrix of the diagonal map in the basis `[S_0], ..., [S_{m-1}]`.
pub fn diagonal_matrix(u: &LinkUniverse) -> IntMatrix {
    let m = u.len();
    let mut d = IntMatrix::zeros(2 * m, m);
    for j in 0..m {
        let col = diagonal_map(u, &SurfaceClass::seifert(j)).expect("component in range");
        for (i, x) in col.coords().iter().enumerate() {
            d[(i, j)] = x.clone();
        }
    }
    d
}

/// Principal idèles: the image of the diagonal map, generated by the images
/// of the single Seifert surfaces.
pub fn principal_lattice(u: &LinkUniverse) -> SubLattice {
    SubLattice::new(u.idele_rank(), diagonal_matrix(u)).expect("diagonal matrix has 2m rows")
}

pub fn meridian_subgroup(u: &LinkUniverse, excluded: &Sublink) -> Result<MeridianSubgroup, IdeleError> {
    check_sublink(u, excluded)?;
    let gens: Vec<Vec<BigInt>> = (0..u.len())
        .filter(|k| !excluded.contains(k))
        .map(|k| IdeleVector::meridian_unit(u.len(), k).into_coords())
        .collect();
    let lattice = SubLattice::from_vectors(u.idele_rank(), &gens).expect("unit vectors have full length");
    Ok(MeridianSubgroup {
        excluded: excluded.clone(),
        lattice,
    })
}

/// The lattice `P + U^L` of relations for the class quotient.
pub fn class_relations(u: &LinkUniverse, l: &Sublink) -> Result<SubLattice, IdeleError> {
    let meridians = meridian_subgroup(u, l)?;
    Ok(principal_lattice(u)
        .sum(&meridians.lattice)
        .expect("both lattices live in the idèle group"))
}

/// Isomorphism type of `I / (P + U^L)`.
pub fn class_quotient(u: &LinkUniverse, l: &Sublink) -> Result<AbelianInvariants, IdeleError> {
    Ok(class_relations(u, l)?.quotient_invariants())
}

/// Regards a class on a smaller sublink as a class on `larger`.
pub fn include_class(s: &SurfaceClass, larger: &Sublink) -> Result<SurfaceClass, IdeleError> {
    if !s.support().is_subset(larger) {
        return Err(IdeleError::SupportNotContained);
    }
    Ok(SurfaceClass::from_pairs(larger.iter().map(|&k| (k, s.coefficient(k)))))
}

/// Forgets the slots of `from` that are not in `to`. `v` is indexed by the
/// slots of `from` in increasing component order.
pub fn project_idele(v: &IdeleVector, from: &Sublink, to: &Sublink) -> Result<IdeleVector, IdeleError> {
    if v.components() != from.len() {
        return Err(IdeleError::DimensionMismatch {
            expected: 2 * from.len(),
            found: v.coords().len(),
        });
    }
    if !to.is_subset(from) {
        return Err(IdeleError::NotNested);
    }
    let mut out = Vec::with_capacity(2 * to.len());
    for (slot, k) in from.iter().enumerate() {
        if to.contains(k) {
            out.push(v.meridian(slot).clone());
            out.push(v.longitude(slot).clone());
        }
    }
    IdeleVector::from_coords(out)
}
