//! Cyclic covers of `S^3` branched over the braid axis.
//!
//! The n-fold cyclic cover branched over the (unknotted) axis is again `S^3`,
//! and the preimage of the closure of a braid `β` is the closure of `β^n`.
//! Every lifted component `J` lies over one base component `K`; on boundary
//! tori the covering map acts by
//!
//! ```text
//! μ_J ↦ e_K μ_K
//! λ_J ↦ c_J μ_K + w_K λ_K,   c_J = e_K Σ_{J' ≠ J over K} lk(J, J')
//! ```
//!
//! where `e_K` is the ramification index and `w_K` the longitudinal degree.
//! The correction `c_J` converts the preferred longitude upstairs into base
//! coordinates and is what makes pushforward commute with the diagonal maps.

mod alexander;

pub use alexander::{alexander_polynomial, branched_cover_order, resultant, Polynomial};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use thiserror::Error;

use crate::ideles::{IdeleError, IdeleVector, SurfaceClass};
use crate::links::{BraidWord, LinkError, LinkUniverse, Permutation, Sublink};
use crate::zlattice::{IntMatrix, LatticeError, SubLattice};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoverError {
    #[error("cover degree must be at least 2, got {0}")]
    DegreeTooSmall(usize),
    #[error("base universe has no braid axis")]
    NoAxis,
    #[error("base universe does not match the closure of the given braid")]
    BaseMismatch,
    #[error("vector has {found} coordinates, expected {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("class support mentions component {0}, not in the upstairs universe")]
    SupportMismatch(usize),
    #[error(transparent)]
    Link(#[from] LinkError),
    #[error(transparent)]
    Idele(#[from] IdeleError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// An n-fold cyclic cover of a braid universe branched over its axis, with
/// character `μ_axis ↦ 1 ∈ Z/n` and all other meridians ↦ 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverSpec {
    degree: usize,
    base: LinkUniverse,
}

impl CoverSpec {
    pub fn new(base: LinkUniverse, degree: usize) -> Result<Self, CoverError> {
        if degree < 2 {
            return Err(CoverError::DegreeTooSmall(degree));
        }
        Self::unchecked(base, degree)
    }

    /// The degree-one identity cover, useful as a degenerate control case.
    pub fn identity(base: LinkUniverse) -> Result<Self, CoverError> {
        Self::unchecked(base, 1)
    }

    fn unchecked(base: LinkUniverse, degree: usize) -> Result<Self, CoverError> {
        if base.axis().is_none() {
            return Err(CoverError::NoAxis);
        }
        Ok(Self { degree, base })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn base(&self) -> &LinkUniverse {
        &self.base
    }

    pub fn axis(&self) -> usize {
        self.base.axis().expect("checked at construction")
    }

    /// The branch link `L_0 = {axis}`.
    pub fn branch_locus(&self) -> Sublink {
        Sublink::from([self.axis()])
    }

    /// Character value on `μ_K`.
    pub fn character(&self, k: usize) -> usize {
        usize::from(k == self.axis()) % self.degree.max(1)
    }
}

/// Splitting data of one base component in the cover.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ComponentSplitting {
    /// Character value on the meridian.
    pub a: usize,
    /// Character value on the longitude, `lk(K, L_0)` weighted by `a`, mod n.
    pub b: usize,
    /// Ramification index: order of `a` in `Z/n`.
    pub e: usize,
    /// Order of the subgroup generated by `a` and `b`.
    pub d: usize,
    /// Longitudinal degree of each lifted component, `d / e`.
    pub w: usize,
    /// Number of lifted components, `n / d`.
    pub r: usize,
}

impl ComponentSplitting {
    fn new(a: usize, b: usize, n: usize) -> Self {
        let e = n / a.gcd(&n);
        let d = n / a.gcd(&b).gcd(&n);
        Self {
            a,
            b,
            e,
            d,
            w: d / e,
            r: n / d,
        }
    }
}

/// A cover together with its lifted universe and the boundary-torus maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverData {
    spec: CoverSpec,
    braid: BraidWord,
    total: LinkUniverse,
    fiber_map: Vec<usize>,
    splitting: Vec<ComponentSplitting>,
    pushforward: Vec<IntMatrix>,
    deck: Permutation,
}

/// Lifts the braid universe of `spec` to the cover: the upstairs universe is
/// the closure of `braid^n` with its own axis.
pub fn lift_universe(spec: &CoverSpec, braid: &BraidWord) -> Result<CoverData, CoverError> {
    if *spec.base() != LinkUniverse::from_braid(braid) {
        return Err(CoverError::BaseMismatch);
    }
    let n = spec.degree();
    let base = spec.base();
    let base_axis = spec.axis();
    let total = LinkUniverse::from_braid_labeled(&braid.power(n)?, "A~", "J");

    let splitting: Vec<ComponentSplitting> = (0..base.len())
        .map(|k| {
            let a = spec.character(k);
            let b: BigInt = spec
                .branch_locus()
                .iter()
                .map(|&k0| base.lk(k, k0) * BigInt::from(spec.character(k0)))
                .sum();
            let b = b.mod_floor(&BigInt::from(n));
            let b = usize::try_from(b).expect("residue fits in usize");
            ComponentSplitting::new(a, b, n)
        })
        .collect();

    // Base component of each strand.
    let mut base_of_strand = vec![0; braid.strands()];
    for (k, comp) in base.components().iter().enumerate() {
        for &s in &comp.strands {
            base_of_strand[s] = k;
        }
    }
    let total_axis = total.axis().expect("lifted universe has an axis");
    let mut up_of_strand = vec![0; braid.strands()];
    let fiber_map: Vec<usize> = total
        .components()
        .iter()
        .enumerate()
        .map(|(j, comp)| {
            for &s in &comp.strands {
                up_of_strand[s] = j;
            }
            if j == total_axis {
                base_axis
            } else {
                base_of_strand[comp.strands[0]]
            }
        })
        .collect();

    // The deck rotation advances every strand by one block of the braid.
    let sigma = braid.permutation();
    let deck_images: Vec<usize> = total
        .components()
        .iter()
        .enumerate()
        .map(|(j, comp)| match comp.strands.first() {
            None => j,
            Some(&s) => up_of_strand[sigma.image(s)],
        })
        .collect();
    let deck = Permutation::from_images(deck_images).expect("deck rotation is a bijection");

    let pushforward = (0..total.len())
        .map(|j| {
            let k = fiber_map[j];
            let e = BigInt::from(splitting[k].e);
            let same_fiber: BigInt = (0..total.len())
                .filter(|&j2| j2 != j && fiber_map[j2] == k)
                .map(|j2| total.lk(j, j2).clone())
                .sum();
            let mut m = IntMatrix::zeros(2, 2);
            m[(0, 0)] = e.clone();
            m[(0, 1)] = e * same_fiber;
            m[(1, 1)] = BigInt::from(splitting[k].w);
            m
        })
        .collect();

    Ok(CoverData {
        spec: spec.clone(),
        braid: braid.clone(),
        total,
        fiber_map,
        splitting,
        pushforward,
        deck,
    })
}

impl CoverData {
    /// Lifts `braid` to its `degree`-fold cover; degree 1 gives the identity
    /// cover.
    pub fn from_braid(braid: &BraidWord, degree: usize) -> Result<Self, CoverError> {
        let base = LinkUniverse::from_braid(braid);
        let spec = match degree {
            1 => CoverSpec::identity(base)?,
            n => CoverSpec::new(base, n)?,
        };
        lift_universe(&spec, braid)
    }

    pub fn spec(&self) -> &CoverSpec {
        &self.spec
    }

    pub fn degree(&self) -> usize {
        self.spec.degree()
    }

    pub fn braid(&self) -> &BraidWord {
        &self.braid
    }

    pub fn base(&self) -> &LinkUniverse {
        self.spec.base()
    }

    /// The upstairs universe `f^{-1}(L)`.
    pub fn total(&self) -> &LinkUniverse {
        &self.total
    }

    pub fn fiber_map(&self) -> &[usize] {
        &self.fiber_map
    }

    /// Upstairs components over base component `k`, in upstairs order.
    pub fn fiber(&self, k: usize) -> Vec<usize> {
        (0..self.total.len()).filter(|&j| self.fiber_map[j] == k).collect()
    }

    pub fn splitting(&self) -> &[ComponentSplitting] {
        &self.splitting
    }

    /// 2x2 boundary-torus map of upstairs component `j`; columns are the
    /// images of `μ_J` and `λ_J` in the basis `(μ_K, λ_K)`.
    pub fn local_pushforward(&self, j: usize) -> &IntMatrix {
        &self.pushforward[j]
    }

    /// The longitude correction `c_J`.
    pub fn longitude_correction(&self, j: usize) -> &BigInt {
        &self.pushforward[j][(0, 1)]
    }

    pub fn deck(&self) -> &Permutation {
        &self.deck
    }

    /// Upstairs components lying over the branch locus.
    pub fn branch_preimage(&self) -> Sublink {
        let locus = self.spec.branch_locus();
        (0..self.total.len())
            .filter(|&j| locus.contains(&self.fiber_map[j]))
            .collect()
    }

    /// Matrix of `f_*` from the upstairs idèle group to the base one.
    pub fn pushforward_matrix(&self) -> IntMatrix {
        let mut f = IntMatrix::zeros(self.base().idele_rank(), self.total.idele_rank());
        for (j, local) in self.pushforward.iter().enumerate() {
            let k = self.fiber_map[j];
            for r in 0..2 {
                for c in 0..2 {
                    f[(2 * k + r, 2 * j + c)] = local[(r, c)].clone();
                }
            }
        }
        f
    }

    pub fn pushforward_idele(&self, v: &IdeleVector) -> Result<IdeleVector, CoverError> {
        if v.components() != self.total.len() || v.coords().len() != self.total.idele_rank() {
            return Err(CoverError::DimensionMismatch {
                expected: self.total.idele_rank(),
                found: v.coords().len(),
            });
        }
        let mut out = IdeleVector::zero(self.base().len());
        for (j, local) in self.pushforward.iter().enumerate() {
            let k = self.fiber_map[j];
            let (m, l) = (v.meridian(j), v.longitude(j));
            if m.is_zero() && l.is_zero() {
                continue;
            }
            *out.meridian_mut(k) += &local[(0, 0)] * m + &local[(0, 1)] * l;
            *out.longitude_mut(k) += &local[(1, 0)] * m + &local[(1, 1)] * l;
        }
        Ok(out)
    }

    /// `f_*(I_N)`: the image of every upstairs unit vector.
    pub fn pushforward_image(&self) -> SubLattice {
        SubLattice::full(self.total.idele_rank())
            .image(&self.pushforward_matrix())
            .expect("pushforward matrix has the upstairs rank as width")
    }

    /// `f_*` on surface classes: `[S_J] ↦ w_K [S_K]`.
    pub fn pushforward_surface(&self, s: &SurfaceClass) -> Result<SurfaceClass, CoverError> {
        let mut pairs: Vec<(usize, BigInt)> = Vec::new();
        for (j, c) in s.terms() {
            if j >= self.total.len() {
                return Err(CoverError::SupportMismatch(j));
            }
            let k = self.fiber_map[j];
            let term = c * BigInt::from(self.splitting[k].w);
            match pairs.iter_mut().find(|(kk, _)| *kk == k) {
                Some((_, acc)) => *acc += term,
                None => pairs.push((k, term)),
            }
        }
        Ok(SurfaceClass::from_pairs(pairs))
    }

    /// The deck transformation on upstairs idèles: slot `J` moves to `τ(J)`.
    pub fn deck_action(&self, v: &IdeleVector) -> Result<IdeleVector, CoverError> {
        if v.coords().len() != self.total.idele_rank() {
            return Err(CoverError::DimensionMismatch {
                expected: self.total.idele_rank(),
                found: v.coords().len(),
            });
        }
        let mut out = IdeleVector::zero(self.total.len());
        for j in 0..self.total.len() {
            let t = self.deck.image(j);
            *out.meridian_mut(t) = v.meridian(j).clone();
            *out.longitude_mut(t) = v.longitude(j).clone();
        }
        Ok(out)
    }

    /// `(τ - 1) I_N` as a lattice.
    pub fn deck_difference_lattice(&self) -> SubLattice {
        let m = self.total.len();
        let gens: Vec<Vec<BigInt>> = (0..2 * m)
            .map(|i| {
                let e = IdeleVector::unit(m, i);
                let moved = self.deck_action(&e).expect("unit vector has upstairs rank");
                (&moved - &e).into_coords()
            })
            .collect();
        SubLattice::from_vectors(2 * m, &gens).expect("vectors have upstairs rank")
    }

    /// The same cover with both universes reordered. `base_order[i]` is the
    /// old index of new base component `i`; likewise `total_order` upstairs.
    pub fn permuted(&self, base_order: &[usize], total_order: &[usize]) -> Result<Self, CoverError> {
        let base = self.base().permuted(base_order)?;
        let total = self.total.permuted(total_order)?;
        let base_inv = Permutation::from_images(base_order.to_vec())
            .expect("validated by permuted")
            .inverse();
        let total_inv = Permutation::from_images(total_order.to_vec())
            .expect("validated by permuted")
            .inverse();
        let deck = Permutation::from_images(
            total_order
                .iter()
                .map(|&old| total_inv.image(self.deck.image(old)))
                .collect(),
        )
        .expect("conjugate of a permutation");
        Ok(Self {
            spec: CoverSpec {
                degree: self.spec.degree,
                base,
            },
            braid: self.braid.clone(),
            total,
            fiber_map: total_order
                .iter()
                .map(|&old| base_inv.image(self.fiber_map[old]))
                .collect(),
            splitting: base_order.iter().map(|&old| self.splitting[old].clone()).collect(),
            pushforward: total_order.iter().map(|&old| self.pushforward[old].clone()).collect(),
            deck,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideles::diagonal_map;

    fn braid(k: usize, w: &[i32]) -> BraidWord {
        BraidWord::new(k, w.to_vec()).unwrap()
    }

    fn idele(xs: &[i64]) -> IdeleVector {
        IdeleVector::from_i64(xs).unwrap()
    }

    #[test]
    fn spec_validation() {
        let base = LinkUniverse::from_braid(&braid(2, &[1]));
        assert_eq!(CoverSpec::new(base.clone(), 1), Err(CoverError::DegreeTooSmall(1)));
        let no_axis = LinkUniverse::new(base.components().to_vec(), base.linking().clone(), None).unwrap();
        assert_eq!(CoverSpec::new(no_axis, 2), Err(CoverError::NoAxis));
        let spec = CoverSpec::new(base, 3).unwrap();
        assert_eq!(spec.character(0), 1);
        assert_eq!(spec.character(1), 0);
        assert_eq!(lift_universe(&spec, &braid(2, &[1, 1])), Err(CoverError::BaseMismatch));
    }

    #[test]
    fn hopf_lift_of_sigma1() {
        let c = CoverData::from_braid(&braid(2, &[1]), 2).unwrap();
        let up = c.total();
        assert_eq!(up.len(), 3);
        assert_eq!(up.lk(1, 2), &BigInt::from(1));
        assert_eq!(up.lk(0, 1), &BigInt::from(1));
        assert_eq!(up.lk(0, 2), &BigInt::from(1));
        let k = &c.splitting()[1];
        assert_eq!((k.r, k.e, k.w), (2, 1, 1));
        assert_eq!(c.fiber_map(), &[0, 1, 1]);
        assert_eq!(c.deck().images(), &[0, 2, 1]);
        assert_eq!(c.longitude_correction(1), &BigInt::from(1));
    }

    #[test]
    fn unknot_double_cover() {
        let c = CoverData::from_braid(&BraidWord::trivial(1).unwrap(), 2).unwrap();
        assert_eq!(c.total().len(), 2);
        let k = &c.splitting()[1];
        assert_eq!((k.r, k.e, k.w), (1, 1, 2));
        let axis = &c.splitting()[0];
        assert_eq!((axis.a, axis.e, axis.w, axis.r), (1, 2, 1, 1));
        assert_eq!(c.longitude_correction(0), &BigInt::zero());
    }

    #[test]
    fn pushforward_examples() {
        let c = CoverData::from_braid(&braid(2, &[1]), 2).unwrap();
        // Upstairs order (Ã, J1, J2); base (A, K).
        assert_eq!(c.pushforward_idele(&IdeleVector::meridian_unit(3, 2)).unwrap(), idele(&[0, 0, 1, 0]));
        assert_eq!(c.pushforward_idele(&IdeleVector::longitude_unit(3, 1)).unwrap(), idele(&[0, 0, 1, 1]));
        assert_eq!(c.pushforward_idele(&IdeleVector::meridian_unit(3, 0)).unwrap(), idele(&[2, 0, 0, 0]));
        assert!(c.pushforward_idele(&IdeleVector::zero(3)).unwrap().is_zero());
        assert!(c.pushforward_idele(&IdeleVector::zero(2)).is_err());

        let u = CoverData::from_braid(&BraidWord::trivial(1).unwrap(), 2).unwrap();
        assert_eq!(u.pushforward_idele(&IdeleVector::longitude_unit(2, 1)).unwrap(), idele(&[0, 0, 0, 2]));
        assert_eq!(u.pushforward_idele(&IdeleVector::meridian_unit(2, 1)).unwrap(), idele(&[0, 0, 1, 0]));
    }

    #[test]
    fn pushforward_image_examples() {
        let u = CoverData::from_braid(&BraidWord::trivial(1).unwrap(), 2).unwrap();
        let expected = SubLattice::from_vectors(
            4,
            &[
                idele(&[2, 0, 0, 0]).into_coords(),
                idele(&[0, 1, 0, 0]).into_coords(),
                idele(&[0, 0, 1, 0]).into_coords(),
                idele(&[0, 0, 0, 2]).into_coords(),
            ],
        )
        .unwrap();
        assert_eq!(u.pushforward_image(), expected);

        let id = CoverData::from_braid(&braid(3, &[1, -2, 1]), 1).unwrap();
        assert_eq!(id.pushforward_image(), SubLattice::full(id.base().idele_rank()));

        let c = CoverData::from_braid(&braid(2, &[1]), 2).unwrap();
        let expected = SubLattice::from_vectors(
            4,
            &[
                idele(&[2, 0, 0, 0]).into_coords(),
                idele(&[0, 1, 0, 0]).into_coords(),
                idele(&[0, 0, 1, 0]).into_coords(),
                idele(&[0, 0, 0, 1]).into_coords(),
            ],
        )
        .unwrap();
        assert_eq!(c.pushforward_image(), expected);
    }

    #[test]
    fn surface_pushforward_examples() {
        let c = CoverData::from_braid(&braid(2, &[1]), 2).unwrap();
        assert_eq!(c.pushforward_surface(&SurfaceClass::seifert(1)).unwrap(), SurfaceClass::seifert(1));
        assert_eq!(c.pushforward_surface(&SurfaceClass::seifert(0)).unwrap(), SurfaceClass::seifert(0));
        let u = CoverData::from_braid(&BraidWord::trivial(1).unwrap(), 2).unwrap();
        assert_eq!(
            u.pushforward_surface(&SurfaceClass::seifert(1)).unwrap(),
            SurfaceClass::from_pairs([(1usize, 2i64)])
        );
        assert_eq!(
            u.pushforward_surface(&SurfaceClass::seifert(9)),
            Err(CoverError::SupportMismatch(9))
        );
    }

    #[test]
    fn commuting_square_on_hopf_lift() {
        let c = CoverData::from_braid(&braid(2, &[1]), 2).unwrap();
        let up = diagonal_map(c.total(), &SurfaceClass::seifert(1)).unwrap();
        let pushed = c.pushforward_idele(&up).unwrap();
        assert_eq!(pushed, idele(&[-2, 0, 0, 1]));
        let down = diagonal_map(c.base(), &c.pushforward_surface(&SurfaceClass::seifert(1)).unwrap()).unwrap();
        assert_eq!(pushed, down);
    }

    #[test]
    fn deck_examples() {
        let c = CoverData::from_braid(&braid(2, &[1]), 2).unwrap();
        let moved = c.deck_action(&IdeleVector::longitude_unit(3, 1)).unwrap();
        assert_eq!(moved, IdeleVector::longitude_unit(3, 2));
        let axis_only = IdeleVector::from_i64(&[3, -1, 0, 0, 0, 0]).unwrap();
        assert_eq!(c.deck_action(&axis_only).unwrap(), axis_only);
        assert!(c.deck().pow(2).is_identity());
    }

    #[test]
    fn identity_cover_is_trivial() {
        let c = CoverData::from_braid(&braid(3, &[1, 1, 2]), 1).unwrap();
        assert_eq!(c.total(), &LinkUniverse::from_braid_labeled(c.braid(), "A~", "J"));
        assert!(c.deck().is_identity());
        assert_eq!(c.pushforward_matrix(), IntMatrix::identity(c.base().idele_rank()));
    }

    #[test]
    fn permuted_cover_is_consistent() {
        let c = CoverData::from_braid(&braid(3, &[1, 2, 1, 1]), 3).unwrap();
        let m = c.base().len();
        let mm = c.total().len();
        let base_order: Vec<usize> = (0..m).rev().collect();
        let total_order: Vec<usize> = (0..mm).rev().collect();
        let p = c.permuted(&base_order, &total_order).unwrap();
        for (new_j, &old_j) in total_order.iter().enumerate() {
            assert_eq!(base_order[p.fiber_map()[new_j]], c.fiber_map()[old_j]);
            assert_eq!(total_order[p.deck().image(new_j)], c.deck().image(old_j));
        }
    }
}
