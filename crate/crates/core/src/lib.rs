//! Exact idèle-lattice calculus for link universes in the 3-sphere.
//!
//! A link universe is presented as the closure of a braid together with its
//! axis. From it the crate builds the truncated idèle group (one boundary
//! torus `Z[μ] + Z[λ]` per component), the principal idèle lattice cut out by
//! the diagonal map on Seifert surface classes, and the n-fold cyclic cover
//! branched over the axis. The Hasse norm identity
//! `P_M ∩ f_*(I_N) = f_*(P_N)` and its supporting statements are then decided
//! as exact lattice identities.
//!
//! Modules, bottom-up:
//! - [`zlattice`]: integer matrices, normal forms, sublattices;
//! - [`links`]: braid words, closure components, linking matrices;
//! - [`ideles`]: idèle vectors, the diagonal map, class quotients;
//! - [`covers`]: braid lifts, splitting data, pushforward, deck action;
//! - [`hasse`]: verifiers, scenario reports, and the exhaustive suite.

pub mod covers;
pub mod hasse;
pub mod ideles;
pub mod links;
pub mod zlattice;

pub use covers::{lift_universe, CoverData, CoverSpec};
pub use ideles::{IdeleVector, SurfaceClass};
pub use links::{BraidWord, LinkUniverse};
pub use zlattice::{AbelianInvariants, IntMatrix, SubLattice};

/// Version string embedded in every report.
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");
