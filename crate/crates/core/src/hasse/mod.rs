//! Verifiers for the Hasse norm identity and its supporting statements.
//!
//! Every check decides finitely many exact identities and returns a
//! [`CheckRecord`]. A failing check carries a witness: for lattice equalities
//! a canonical generator lying in exactly one of the two lattices, otherwise
//! the disagreeing vectors or group invariants.

pub mod report;
mod suite;

pub use report::{
    CheckName, CheckRecord, Scenario, ScenarioDocument, Side, SuiteBounds, SuiteReport, Summary,
    VerificationReport, Verdict, Witness,
};
pub use suite::{enumerate_words, run_suite, scenario_count, SuiteError};

use std::time::Instant;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::covers::{CoverData, CoverError};
use crate::ideles::{
    class_quotient, class_relations, diagonal_map, include_class, local_boundary, principal_lattice,
    project_idele, IdeleVector, SurfaceClass,
};
use crate::links::{BraidWord, LinkUniverse, Sublink};
use crate::zlattice::{AbelianInvariants, SubLattice};

/// Both sides of the norm identity, as canonical lattices in base coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HasseSides {
    /// `P_M ∩ f_*(I_N)`.
    pub intersection: SubLattice,
    /// `f_*(P_N)`.
    pub pushed_principal: SubLattice,
}

pub fn hasse_sides(c: &CoverData) -> Result<HasseSides, CoverError> {
    let principal = principal_lattice(c.base());
    let intersection = principal.intersect(&c.pushforward_image())?;
    let pushed_principal = principal_lattice(c.total()).image(&c.pushforward_matrix())?;
    Ok(HasseSides {
        intersection,
        pushed_principal,
    })
}

/// Counts decided identities and keeps the first failure.
#[derive(Default)]
struct Tally {
    cases: usize,
    witness: Option<Witness>,
}

impl Tally {
    fn check(&mut self, ok: bool, witness: impl FnOnce() -> Witness) {
        self.cases += 1;
        if !ok && self.witness.is_none() {
            self.witness = Some(witness());
        }
    }

    fn lattices_equal(&mut self, context: &str, left: &SubLattice, right: &SubLattice) -> Result<(), CoverError> {
        self.cases += 1;
        if let Some((v, in_left)) = left.separating_vector(right)? {
            if self.witness.is_none() {
                self.witness = Some(Witness::lattice_vector(context, &v, in_left));
            }
        }
        Ok(())
    }
}

fn timed(name: CheckName, f: impl FnOnce(&mut Tally) -> Result<(), CoverError>) -> CheckRecord {
    let start = Instant::now();
    let mut tally = Tally::default();
    if let Err(e) = f(&mut tally) {
        tally.witness.get_or_insert_with(|| Witness::message(e.to_string()));
    }
    CheckRecord {
        name,
        verdict: Verdict::from_bool(tally.witness.is_none()),
        cases: tally.cases,
        witness: tally.witness,
        millis: start.elapsed().as_secs_f64() * 1e3,
    }
}

/// `P_M ∩ f_*(I_N) = f_*(P_N)` as an equality of canonical lattices.
pub fn verify_hasse(c: &CoverData) -> CheckRecord {
    timed(CheckName::HasseNorm, |t| {
        let sides = hasse_sides(c)?;
        t.lattices_equal(
            "P_M ∩ f_*(I_N) (left) vs f_*(P_N) (right)",
            &sides.intersection,
            &sides.pushed_principal,
        )
    })
}

fn class_quotient_cases(t: &mut Tally, u: &LinkUniverse, l: &Sublink, which: &str) -> Result<(), CoverError> {
    let actual = class_quotient(u, l)?;
    let expected = AbelianInvariants::free(l.len());
    t.check(actual == expected, || Witness::Invariants {
        context: format!("{which} I/(P + U^L) for L = {}", sublink_labels(u, l)),
        expected: expected.to_string(),
        actual: actual.to_string(),
    });
    Ok(())
}

fn sublink_labels(u: &LinkUniverse, l: &Sublink) -> String {
    let labels: Vec<&str> = l.iter().map(|&k| u.label(k)).collect();
    format!("{{{}}}", labels.join(", "))
}

/// `I/(P + U^L)` is free abelian of rank `|L|`, as `H_1` of the complement
/// of `L` in `S^3` must be.
pub fn verify_class_quotient(u: &LinkUniverse, l: &Sublink) -> CheckRecord {
    timed(CheckName::ClassQuotient, |t| class_quotient_cases(t, u, l, "universe"))
}

/// [`verify_class_quotient`] over every sublink of `u`.
pub fn verify_class_quotients(u: &LinkUniverse) -> CheckRecord {
    timed(CheckName::ClassQuotient, |t| {
        for l in u.sublinks() {
            class_quotient_cases(t, u, &l, "universe")?;
        }
        Ok(())
    })
}

/// Every upstairs meridian pushes forward into the meridian lattice.
pub fn verify_meridian_pushforward(c: &CoverData) -> CheckRecord {
    timed(CheckName::MeridianPushforward, |t| {
        let m = c.total().len();
        for j in 0..m {
            let image = c.pushforward_idele(&IdeleVector::meridian_unit(m, j))?;
            let ok = (0..image.components()).all(|k| image.longitude(k).is_zero())
                && c.local_pushforward(j)[(1, 0)].is_zero();
            t.check(ok, || {
                Witness::message(format!("f_*(μ_{}) = {} has a longitude part", c.total().label(j), image))
            });
        }
        Ok(())
    })
}

/// The sequence
/// `0 → (τ-1)I_N/(P_N+U) → I_N/(P_N+U) → (f_*(I_N)+P_M+U)/(P_M+U) → 0`
/// with `U` the meridians away from the branch locus: the induced `f_*` is
/// well defined, its kernel is exactly the deck-difference image, and it
/// maps onto the stated target.
pub fn verify_quotient_sequence(c: &CoverData) -> CheckRecord {
    timed(CheckName::QuotientSequence, |t| {
        let f = c.pushforward_matrix();
        let up_locus = c.branch_preimage();
        let up_rel = class_relations(c.total(), &up_locus)?;
        let base_rel = class_relations(c.base(), &c.spec().branch_locus())?;

        let up_quotient = up_rel.quotient_invariants();
        let expected = AbelianInvariants::free(up_locus.len());
        t.check(up_quotient == expected, || Witness::Invariants {
            context: "I_N/(P_N + U)".into(),
            expected: expected.to_string(),
            actual: up_quotient.to_string(),
        });

        let pushed_rel = up_rel.image(&f)?;
        let escaped = pushed_rel
            .canonical()
            .columns()
            .find(|v| !base_rel.contains(v).unwrap_or(false));
        t.check(escaped.is_none(), || {
            Witness::lattice_vector(
                "f_*(P_N + U) (left) not inside P_M + U (right)",
                escaped.as_deref().unwrap_or_default(),
                true,
            )
        });

        let kernel = SubLattice::preimage(&f, &base_rel)?;
        let deck_image = c.deck_difference_lattice().sum(&up_rel)?;
        t.lattices_equal(
            "kernel of induced f_* (left) vs (τ-1)I_N + P_N + U (right)",
            &kernel,
            &deck_image,
        )?;

        let target = c.pushforward_image().sum(&base_rel)?;
        let image_type = target.subquotient_invariants(&base_rel)?;
        let coimage_type = kernel.quotient_invariants();
        t.check(image_type == coimage_type, || Witness::Invariants {
            context: "(f_*(I_N) + P_M + U)/(P_M + U) vs I_N/ker".into(),
            expected: coimage_type.to_string(),
            actual: image_type.to_string(),
        });
        Ok(())
    })
}

fn restriction_cases(t: &mut Tally, u: &LinkUniverse, family: &[Sublink]) -> Result<(), CoverError> {
    for big in family {
        for small in family.iter().filter(|s| s.is_subset(big)) {
            let classes = small
                .iter()
                .map(|&k| SurfaceClass::seifert(k))
                .chain(std::iter::once(SurfaceClass::zero()));
            for s in classes {
                let lifted = local_boundary(u, &include_class(&s, big)?, big)?;
                let left = project_idele(&lifted, big, small)?;
                let right = local_boundary(u, &s, small)?;
                t.check(left == right, || {
                    Witness::vector_mismatch(
                        format!(
                            "p∘∂∘j vs ∂ for L = {} ⊆ L' = {}",
                            sublink_labels(u, small),
                            sublink_labels(u, big)
                        ),
                        left.coords(),
                        right.coords(),
                    )
                });
            }
        }
    }
    Ok(())
}

/// Universes with at most this many components get every sublink checked.
pub const EXHAUSTIVE_COMPONENTS: usize = 6;

/// Sublinks examined for an upstairs universe: all of them when it is small,
/// otherwise the empty and full links, the branch preimage, every fiber,
/// every singleton, and the complements of all of these.
fn upstairs_family(c: &CoverData) -> Vec<Sublink> {
    let u = c.total();
    if u.len() <= EXHAUSTIVE_COMPONENTS {
        return u.sublinks().collect();
    }
    let full = u.full_sublink();
    let mut seeds = vec![Sublink::new(), c.branch_preimage()];
    seeds.extend((0..c.base().len()).map(|k| c.fiber(k).into_iter().collect::<Sublink>()));
    seeds.extend((0..u.len()).map(|j| Sublink::from([j])));
    let mut family: Vec<Sublink> = seeds
        .iter()
        .flat_map(|s| [s.clone(), full.difference(s).copied().collect()])
        .collect();
    family.sort();
    family.dedup();
    family
}

/// `∂ = p_{L',L} ∘ ∂ ∘ j_{L,L'}` for every nested pair `L ⊆ L'` and every
/// Seifert generator on `L` (plus the zero class).
pub fn verify_restriction_compatibility(u: &LinkUniverse) -> CheckRecord {
    let all: Vec<Sublink> = u.sublinks().collect();
    timed(CheckName::RestrictionCompatibility, |t| restriction_cases(t, u, &all))
}

/// `f_*(Δ_N [S_J]) = Δ_M (f_* [S_J])` for every upstairs component `J`.
pub fn verify_diagonal_commutativity(c: &CoverData) -> CheckRecord {
    timed(CheckName::DiagonalCommutativity, |t| {
        for j in 0..c.total().len() {
            let s = SurfaceClass::seifert(j);
            let left = c.pushforward_idele(&diagonal_map(c.total(), &s)?)?;
            let right = diagonal_map(c.base(), &c.pushforward_surface(&s)?)?;
            t.check(left == right, || {
                Witness::vector_mismatch(
                    format!("f_*Δ_N vs Δ_M f_* on [S_{}]", c.total().label(j)),
                    left.coords(),
                    right.coords(),
                )
            });
        }
        Ok(())
    })
}

/// Upstairs linking sums over a fiber equal `w_K` times the base linking
/// number, and the splitting numbers match the lifted braid.
pub fn verify_linking_transfer(c: &CoverData) -> CheckRecord {
    timed(CheckName::LinkingTransfer, |t| {
        let (base, up) = (c.base(), c.total());
        let n = c.degree();
        let split = c.splitting();
        for (k, s) in split.iter().enumerate() {
            let fiber = c.fiber(k);
            t.check(
                fiber.len() == s.r && s.r * s.d == n && s.e * s.w == s.d,
                || Witness::message(format!("splitting of {} is inconsistent: {s:?}, fiber {fiber:?}", base.label(k))),
            );
        }
        for j in 0..up.len() {
            let k = c.fiber_map()[j];
            for k2 in (0..base.len()).filter(|&k2| k2 != k) {
                let sum: BigInt = c.fiber(k2).iter().map(|&j2| up.lk(j, j2).clone()).sum();
                let left = sum * BigInt::from(split[k2].e);
                let right = base.lk(k, k2) * BigInt::from(split[k].w);
                t.check(left == right, || {
                    Witness::message(format!(
                        "e·Σ lk({}, fiber of {}) = {left} but w·lk({}, {}) = {right}",
                        up.label(j),
                        base.label(k2),
                        base.label(k),
                        base.label(k2)
                    ))
                });
            }
        }
        if let (Some(wb), Some(wu), Some(up_axis)) = (base.windings(), up.windings(), up.axis()) {
            let n = BigInt::from(n);
            for j in (0..up.len()).filter(|&j| j != up_axis) {
                let base_winding = &wb[c.fiber_map()[j]];
                let expected = base_winding / base_winding.gcd(&n);
                t.check(wu[j] == expected, || {
                    Witness::message(format!(
                        "winding of {} is {} but expected {expected}",
                        up.label(j),
                        wu[j]
                    ))
                });
            }
        }
        Ok(())
    })
}

/// τ preserves fibers and linking numbers, cycles each fiber once, and
/// `f_* ∘ τ = f_*`.
pub fn verify_deck_invariance(c: &CoverData) -> CheckRecord {
    timed(CheckName::DeckInvariance, |t| {
        let up = c.total();
        let tau = c.deck();
        let m = up.len();
        for j in 0..m {
            t.check(c.fiber_map()[tau.image(j)] == c.fiber_map()[j], || {
                Witness::message(format!("τ moves {} off its fiber", up.label(j)))
            });
            for j2 in 0..m {
                t.check(up.lk(tau.image(j), tau.image(j2)) == up.lk(j, j2), || {
                    Witness::message(format!("lk changes under τ on ({}, {})", up.label(j), up.label(j2)))
                });
            }
        }
        for (k, s) in c.splitting().iter().enumerate() {
            let fiber = c.fiber(k);
            let Some(&start) = fiber.first() else {
                t.check(false, || Witness::message(format!("empty fiber over {}", c.base().label(k))));
                continue;
            };
            let mut orbit = 1;
            let mut j = tau.image(start);
            while j != start && orbit <= m {
                orbit += 1;
                j = tau.image(j);
            }
            t.check(orbit == fiber.len() && orbit == s.r, || {
                Witness::message(format!(
                    "τ-orbit over {} has length {orbit}, fiber size {}, r = {}",
                    c.base().label(k),
                    fiber.len(),
                    s.r
                ))
            });
        }
        for i in 0..2 * m {
            let e = IdeleVector::unit(m, i);
            let left = c.pushforward_idele(&c.deck_action(&e)?)?;
            let right = c.pushforward_idele(&e)?;
            t.check(left == right, || {
                Witness::vector_mismatch(format!("f_*τ vs f_* on unit vector {i}"), left.coords(), right.coords())
            });
        }
        Ok(())
    })
}

/// Runs the requested checks on one cover. Universe-level checks cover every
/// sublink of the base universe and, upstairs, the sublinks chosen by
/// [`EXHAUSTIVE_COMPONENTS`].
pub fn verify_cover(c: &CoverData, checks: &[CheckName]) -> Vec<CheckRecord> {
    checks
        .iter()
        .map(|&name| match name {
            CheckName::HasseNorm => verify_hasse(c),
            CheckName::ClassQuotient => timed(name, |t| {
                for l in c.base().sublinks() {
                    class_quotient_cases(t, c.base(), &l, "base")?;
                }
                for l in upstairs_family(c) {
                    class_quotient_cases(t, c.total(), &l, "upstairs")?;
                }
                Ok(())
            }),
            CheckName::MeridianPushforward => verify_meridian_pushforward(c),
            CheckName::QuotientSequence => verify_quotient_sequence(c),
            CheckName::RestrictionCompatibility => timed(name, |t| {
                let base: Vec<Sublink> = c.base().sublinks().collect();
                restriction_cases(t, c.base(), &base)?;
                restriction_cases(t, c.total(), &upstairs_family(c))
            }),
            CheckName::DiagonalCommutativity => verify_diagonal_commutativity(c),
            CheckName::LinkingTransfer => verify_linking_transfer(c),
            CheckName::DeckInvariance => verify_deck_invariance(c),
        })
        .collect()
}

/// Lifts `braid` to its `degree`-fold cover over the axis and runs `checks`.
pub fn verify_scenario(braid: &BraidWord, degree: usize, checks: &[CheckName]) -> Result<VerificationReport, CoverError> {
    let start = Instant::now();
    let cover = CoverData::from_braid(braid, degree)?;
    let records = verify_cover(&cover, checks);
    Ok(VerificationReport {
        scenario: Scenario {
            strands: braid.strands(),
            word: braid.letters().to_vec(),
            degree,
        },
        passed: records.iter().all(|r| r.verdict.is_pass()),
        checks: records,
        millis: start.elapsed().as_secs_f64() * 1e3,
    })
}
