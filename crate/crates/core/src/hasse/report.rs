//! Machine-readable verification reports.
//!
//! Field names are part of the JSON report format and must stay stable; see
//! `docs/report-format.md` at the repository root.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

/// The named checks a scenario can run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckName {
    /// `P_M ∩ f_*(I_N) = f_*(P_N)`.
    HasseNorm,
    /// `I/(P + U^L)` is free of rank `|L|` for every sublink `L`.
    ClassQuotient,
    /// Pushed-forward meridians have no longitude part.
    MeridianPushforward,
    /// Exactness of the deck-difference sequence on class quotients.
    QuotientSequence,
    /// Boundary maps commute with inclusion of classes and projection of idèles.
    RestrictionCompatibility,
    /// `f_* ∘ Δ_N = Δ_M ∘ f_*` on Seifert surface generators.
    DiagonalCommutativity,
    /// Linking numbers upstairs sum to `w_K` times the base linking numbers.
    LinkingTransfer,
    /// The deck transformation preserves fibers, linking, and pushforward.
    DeckInvariance,
}

impl CheckName {
    pub const ALL: [CheckName; 8] = [
        CheckName::HasseNorm,
        CheckName::ClassQuotient,
        CheckName::MeridianPushforward,
        CheckName::QuotientSequence,
        CheckName::RestrictionCompatibility,
        CheckName::DiagonalCommutativity,
        CheckName::LinkingTransfer,
        CheckName::DeckInvariance,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CheckName::HasseNorm => "hasse_norm",
            CheckName::ClassQuotient => "class_quotient",
            CheckName::MeridianPushforward => "meridian_pushforward",
            CheckName::QuotientSequence => "quotient_sequence",
            CheckName::RestrictionCompatibility => "restriction_compatibility",
            CheckName::DiagonalCommutativity => "diagonal_commutativity",
            CheckName::LinkingTransfer => "linking_transfer",
            CheckName::DeckInvariance => "deck_invariance",
        }
    }
}

impl fmt::Display for CheckName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown check name `{0}`")]
pub struct UnknownCheck(pub String);

impl FromStr for CheckName {
    type Err = UnknownCheck;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        CheckName::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| UnknownCheck(s.to_string()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn is_pass(self) -> bool {
        self == Verdict::Pass
    }
}

/// Which side of a lattice comparison a witness vector belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    LeftOnly,
    RightOnly,
}

/// Evidence attached to a failing check. Integers are decimal strings so
/// arbitrary-precision values survive any JSON reader.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// A vector in exactly one of two lattices that should be equal.
    LatticeVector {
        context: String,
        side: Side,
        coords: Vec<String>,
    },
    /// Group invariants that disagree with the expected ones.
    Invariants {
        context: String,
        expected: String,
        actual: String,
    },
    /// Two vectors that should coincide.
    VectorMismatch {
        context: String,
        left: Vec<String>,
        right: Vec<String>,
    },
    /// Anything else, described in words.
    Message { detail: String },
}

impl Witness {
    pub fn lattice_vector(context: impl Into<String>, coords: &[BigInt], in_left: bool) -> Self {
        Witness::LatticeVector {
            context: context.into(),
            side: if in_left { Side::LeftOnly } else { Side::RightOnly },
            coords: to_strings(coords),
        }
    }

    pub fn vector_mismatch(context: impl Into<String>, left: &[BigInt], right: &[BigInt]) -> Self {
        Witness::VectorMismatch {
            context: context.into(),
            left: to_strings(left),
            right: to_strings(right),
        }
    }

    pub fn message(detail: impl Into<String>) -> Self {
        Witness::Message { detail: detail.into() }
    }
}

pub(crate) fn to_strings(xs: &[BigInt]) -> Vec<String> {
    xs.iter().map(ToString::to_string).collect()
}

/// Parses the decimal strings of a witness vector.
pub fn parse_coords(coords: &[String]) -> Option<Vec<BigInt>> {
    coords.iter().map(|s| s.parse().ok()).collect()
}

/// Outcome of one named check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub name: CheckName,
    pub verdict: Verdict,
    /// Number of individual identities decided.
    pub cases: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    pub millis: f64,
}

/// Braid, strand count and degree of one verified cover.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Scenario {
    pub strands: usize,
    pub word: Vec<i32>,
    pub degree: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub scenario: Scenario,
    pub passed: bool,
    pub checks: Vec<CheckRecord>,
    pub millis: f64,
}

impl VerificationReport {
    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| !c.verdict.is_pass())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteBounds {
    pub max_strands: usize,
    pub max_length: usize,
    pub degrees: Vec<usize>,
    /// Scenarios beyond this count are not run and the report is flagged
    /// incomplete.
    pub max_scenarios: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub scenarios: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub tool_version: String,
    pub bounds: SuiteBounds,
    pub checks: Vec<CheckName>,
    pub complete: bool,
    pub summary: Summary,
    pub millis: f64,
    pub reports: Vec<VerificationReport>,
}

impl SuiteReport {
    /// Recomputes the summary counts from the per-scenario reports.
    pub fn recount(&self) -> Summary {
        let passed = self.reports.iter().filter(|r| r.passed).count();
        Summary {
            scenarios: self.reports.len(),
            passed,
            failed: self.reports.len() - passed,
        }
    }
}

/// Single-scenario report document, as written by `hnp verify`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScenarioDocument {
    pub tool_version: String,
    #[serde(flatten)]
    pub report: VerificationReport,
}
