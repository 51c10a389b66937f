//! Scenario files: a versioned JSON document naming a braid, a cover degree,
//! the checks to run, and output and suite options.

use std::path::Path;

use hnp_core::hasse::CheckName;
use hnp_core::links::{BraidWord, LinkError};
use serde::Deserialize;

use crate::error::CliError;

pub const SCHEMA: &str = "hnp-scenario/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BraidSpec {
    pub strands: usize,
    pub word: Vec<i32>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteOptions {
    pub max_strands: Option<usize>,
    pub max_length: Option<usize>,
    pub degrees: Option<Vec<usize>>,
    pub max_scenarios: Option<usize>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    pub format: Option<Format>,
    #[serde(default)]
    pub ascii: bool,
    #[serde(default)]
    pub suite: SuiteOptions,
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub schema: String,
    pub braid: BraidSpec,
    pub cover_degree: usize,
    pub checks: Option<Vec<CheckName>>,
    #[serde(default)]
    pub options: Options,
}

/// A validated scenario.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Scenario {
    pub braid: BraidWord,
    pub degree: usize,
    pub checks: Vec<CheckName>,
    pub options: Options,
}

impl ScenarioFile {
    pub fn parse(text: &str, origin: &str) -> Result<Scenario, CliError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let file: ScenarioFile = serde_path_to_error::deserialize(de).map_err(|e| {
            let inner = e.inner();
            let path = e.path().to_string();
            let at = if path == "." { String::new() } else { format!(" at `{path}`") };
            CliError::Parse(format!(
                "{origin}:{}:{}: {inner}{at}",
                inner.line(),
                inner.column()
            ))
        })?;
        file.validate(origin)
    }

    pub fn load(path: &Path) -> Result<Scenario, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        Self::parse(&text, &path.display().to_string())
    }

    fn validate(self, origin: &str) -> Result<Scenario, CliError> {
        let field = |name: &str, msg: String| CliError::Parse(format!("{origin}: field `{name}`: {msg}"));
        if self.schema != SCHEMA {
            return Err(field(
                "schema",
                format!("unsupported schema `{}`, expected `{SCHEMA}`", self.schema),
            ));
        }
        let braid = BraidWord::new(self.braid.strands, self.braid.word).map_err(|e| match e {
            LinkError::LetterOutOfRange { position, .. } => field(&format!("braid.word[{position}]"), e.to_string()),
            LinkError::NoStrands => field("braid.strands", e.to_string()),
            other => field("braid", other.to_string()),
        })?;
        if self.cover_degree == 0 {
            return Err(field("cover_degree", "cover degree must be at least 1".into()));
        }
        Ok(Scenario {
            braid,
            degree: self.cover_degree,
            checks: self.checks.unwrap_or_else(|| CheckName::ALL.to_vec()),
            options: self.options,
        })
    }
}
