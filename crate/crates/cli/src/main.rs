//! `hnp`: lift braid-axis covers, evaluate the diagonal map, and verify the
//! Hasse norm identity on single scenarios or bounded suites.

mod error;
mod render;
mod scenario;

use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use hnp_core::covers::CoverData;
use hnp_core::hasse::{run_suite, scenario_count, verify_scenario, CheckName, ScenarioDocument, SuiteBounds};
use hnp_core::ideles::{diagonal_map, SurfaceClass};
use hnp_core::links::{BraidWord, LinkUniverse};
use num_bigint::BigInt;

use error::CliError;
use render::Style;
use scenario::{Format, Options, Scenario, ScenarioFile, SuiteOptions};

/// Largest strand count a suite may enumerate.
const MAX_STRANDS: usize = 6;
/// Largest word length a suite may enumerate.
const MAX_LENGTH: usize = 8;
/// Largest cover degree a suite may use.
const MAX_DEGREE: usize = 16;
/// Largest number of scenarios a suite may run.
const MAX_SCENARIOS: usize = 200_000;

#[derive(Parser, Debug)]
#[command(name = "hnp", version, about = "Hasse norm principle checks for cyclic covers of S^3 branched over a braid axis")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct ScenarioArgs {
    /// Scenario file (JSON, schema "hnp-scenario/1").
    #[arg(long)]
    input: Option<PathBuf>,
    /// Strand count of an inline braid (instead of --input).
    #[arg(long)]
    strands: Option<usize>,
    /// Letters of an inline braid, comma separated; -i is the inverse of generator i.
    #[arg(long, allow_hyphen_values = true)]
    word: Option<String>,
    /// Cover degree; overrides the scenario file.
    #[arg(long)]
    degree: Option<usize>,
}

#[derive(Args, Debug, Clone)]
struct OutputArgs {
    /// Output format; overrides the scenario file.
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Write output here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Plain-text symbols instead of μ, λ and Ã.
    #[arg(long)]
    ascii: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Describe the base and upstairs universes, splitting, pushforward and deck transformation.
    Lift {
        #[command(flatten)]
        scenario: ScenarioArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Evaluate the diagonal map on a Seifert surface class of the base universe.
    Delta {
        #[command(flatten)]
        scenario: ScenarioArgs,
        #[command(flatten)]
        output: OutputArgs,
        /// Coefficients of [S_K], comma separated, one per non-axis component.
        #[arg(long, allow_hyphen_values = true)]
        coeffs: String,
        /// Read --coeffs as one coefficient per component, axis first.
        #[arg(long)]
        all_components: bool,
    },
    /// Run checks on one scenario; exit status 1 if any check fails.
    Verify {
        #[command(flatten)]
        scenario: ScenarioArgs,
        #[command(flatten)]
        output: OutputArgs,
        /// Checks to run, comma separated (default: all).
        #[arg(long, value_delimiter = ',')]
        checks: Option<Vec<CheckName>>,
    },
    /// Run checks on every braid word and degree within the bounds.
    Suite {
        /// Scenario file whose options.suite supplies default bounds.
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long)]
        max_strands: Option<usize>,
        #[arg(long)]
        max_length: Option<usize>,
        /// Cover degrees, comma separated.
        #[arg(long, value_delimiter = ',')]
        degrees: Option<Vec<usize>>,
        /// Stop after this many scenarios and flag the report incomplete.
        #[arg(long)]
        max_scenarios: Option<usize>,
        #[arg(long, value_delimiter = ',')]
        checks: Option<Vec<CheckName>>,
        #[command(flatten)]
        output: OutputArgs,
    },
}

fn parse_list<T: std::str::FromStr>(text: &str, what: &str) -> Result<Vec<T>, CliError> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|s| {
            s.trim()
                .parse()
                .map_err(|_| CliError::Usage(format!("invalid {what} `{}`", s.trim())))
        })
        .collect()
}

impl ScenarioArgs {
    /// The scenario from `--input` or the inline flags, with overrides
    /// applied. `need_degree` makes a missing degree an error.
    fn resolve(&self, need_degree: bool) -> Result<Scenario, CliError> {
        let mut s = match (&self.input, self.strands) {
            (Some(_), Some(_)) => return Err(CliError::Usage("give either --input or --strands, not both".into())),
            (Some(path), None) => ScenarioFile::load(path)?,
            (None, Some(strands)) => {
                let letters = parse_list(self.word.as_deref().unwrap_or(""), "braid letter")?;
                let braid = BraidWord::new(strands, letters).map_err(|e| CliError::Usage(e.to_string()))?;
                Scenario {
                    braid,
                    degree: 0,
                    checks: CheckName::ALL.to_vec(),
                    options: Options::default(),
                }
            }
            (None, None) => return Err(CliError::Usage("a scenario is required: --input FILE or --strands N".into())),
        };
        if self.input.is_some() && self.word.is_some() {
            return Err(CliError::Usage("--word needs --strands".into()));
        }
        if let Some(d) = self.degree {
            if d == 0 {
                return Err(CliError::Usage("--degree must be at least 1".into()));
            }
            s.degree = d;
        }
        if need_degree && s.degree == 0 {
            return Err(CliError::Usage("--degree is required without --input".into()));
        }
        Ok(s)
    }
}

struct Output {
    format: Format,
    style: Style,
    out: Option<PathBuf>,
}

impl Output {
    fn new(args: &OutputArgs, options: &Options) -> Self {
        Self {
            format: args.format.or(options.format).unwrap_or(Format::Text),
            style: Style {
                ascii: args.ascii || options.ascii,
            },
            out: args.out.clone(),
        }
    }

    fn emit(&self, text: &str) -> Result<(), CliError> {
        match &self.out {
            Some(path) => std::fs::write(path, text).map_err(|e| CliError::io(path, e)),
            None => {
                let mut stdout = std::io::stdout().lock();
                stdout
                    .write_all(text.as_bytes())
                    .and_then(|()| stdout.flush())
                    .map_err(|e| CliError::io(std::path::Path::new("<stdout>"), e))
            }
        }
    }

    fn emit_json(&self, value: &impl serde::Serialize) -> Result<(), CliError> {
        let mut text = serde_json::to_string_pretty(value).expect("reports serialize");
        text.push('\n');
        self.emit(&text)
    }
}

fn cover(s: &Scenario) -> Result<CoverData, CliError> {
    CoverData::from_braid(&s.braid, s.degree).map_err(|e| CliError::Usage(e.to_string()))
}

fn cmd_lift(scenario: &ScenarioArgs, output: &OutputArgs) -> Result<bool, CliError> {
    let s = scenario.resolve(true)?;
    let out = Output::new(output, &s.options);
    let c = cover(&s)?;
    match out.format {
        Format::Json => out.emit_json(&render::lift_json(&c))?,
        Format::Text => out.emit(&render::lift_text(&c, out.style))?,
    }
    Ok(true)
}

fn cmd_delta(scenario: &ScenarioArgs, output: &OutputArgs, coeffs: &str, all: bool) -> Result<bool, CliError> {
    let s = scenario.resolve(false)?;
    let out = Output::new(output, &s.options);
    let u = LinkUniverse::from_braid(&s.braid);
    let coeffs: Vec<BigInt> = parse_list(coeffs, "coefficient")?;
    let targets: Vec<usize> = if all {
        (0..u.len()).collect()
    } else {
        (0..u.len()).filter(|&k| Some(k) != u.axis()).collect()
    };
    if coeffs.len() != targets.len() {
        return Err(CliError::Usage(format!(
            "expected {} coefficients ({}), got {}",
            targets.len(),
            targets.iter().map(|&k| u.label(k)).collect::<Vec<_>>().join(", "),
            coeffs.len()
        )));
    }
    let class = SurfaceClass::from_pairs(targets.into_iter().zip(coeffs));
    let v = diagonal_map(&u, &class).map_err(|e| CliError::Usage(e.to_string()))?;
    match out.format {
        Format::Json => out.emit_json(&render::delta_json(&u, &class, &v, out.style))?,
        Format::Text => out.emit(&format!("{}\n", v.labeled(&u, out.style.ascii)))?,
    }
    Ok(true)
}

fn cmd_verify(scenario: &ScenarioArgs, output: &OutputArgs, checks: &Option<Vec<CheckName>>) -> Result<bool, CliError> {
    let s = scenario.resolve(true)?;
    let out = Output::new(output, &s.options);
    let checks = checks.clone().unwrap_or(s.checks);
    let report = verify_scenario(&s.braid, s.degree, &checks).map_err(|e| CliError::Usage(e.to_string()))?;
    let passed = report.passed;
    match out.format {
        Format::Json => out.emit_json(&ScenarioDocument {
            tool_version: hnp_core::TOOL_VERSION.to_string(),
            report,
        })?,
        Format::Text => out.emit(&render::verify_text(&report, out.style))?,
    }
    Ok(passed)
}

/// Resolves suite bounds from flags over file options over defaults and
/// checks them against the documented limits.
fn suite_bounds(
    file: &SuiteOptions,
    max_strands: Option<usize>,
    max_length: Option<usize>,
    degrees: Option<Vec<usize>>,
    max_scenarios: Option<usize>,
) -> Result<SuiteBounds, CliError> {
    let bounds = SuiteBounds {
        max_strands: max_strands.or(file.max_strands).unwrap_or(3),
        max_length: max_length.or(file.max_length).unwrap_or(5),
        degrees: degrees.or_else(|| file.degrees.clone()).unwrap_or_else(|| vec![2, 3, 4, 5]),
        max_scenarios: max_scenarios.or(file.max_scenarios).unwrap_or(MAX_SCENARIOS),
    };
    let limit = |ok: bool, msg: String| if ok { Ok(()) } else { Err(CliError::Usage(msg)) };
    limit(
        (1..=MAX_STRANDS).contains(&bounds.max_strands),
        format!("--max-strands must be between 1 and {MAX_STRANDS}"),
    )?;
    limit(bounds.max_length <= MAX_LENGTH, format!("--max-length must be at most {MAX_LENGTH}"))?;
    limit(
        bounds.degrees.iter().all(|d| (1..=MAX_DEGREE).contains(d)),
        format!("degrees must be between 1 and {MAX_DEGREE}"),
    )?;
    limit(
        bounds.max_scenarios <= MAX_SCENARIOS,
        format!("--max-scenarios must be at most {MAX_SCENARIOS}"),
    )?;
    let count = scenario_count(&bounds);
    limit(
        count <= MAX_SCENARIOS || max_scenarios.or(file.max_scenarios).is_some(),
        format!("these bounds give {count} scenarios, over the limit of {MAX_SCENARIOS}; lower them or pass --max-scenarios"),
    )?;
    Ok(bounds)
}

#[allow(clippy::too_many_arguments)]
fn cmd_suite(
    input: &Option<PathBuf>,
    max_strands: Option<usize>,
    max_length: Option<usize>,
    degrees: Option<Vec<usize>>,
    max_scenarios: Option<usize>,
    checks: &Option<Vec<CheckName>>,
    output: &OutputArgs,
) -> Result<bool, CliError> {
    let file = input.as_deref().map(ScenarioFile::load).transpose()?;
    let options = file.as_ref().map(|s| s.options.clone()).unwrap_or_default();
    let bounds = suite_bounds(&options.suite, max_strands, max_length, degrees, max_scenarios)?;
    let checks = checks
        .clone()
        .or_else(|| file.as_ref().map(|s| s.checks.clone()))
        .unwrap_or_else(|| CheckName::ALL.to_vec());
    let out = Output::new(output, &options);
    let report = run_suite(&bounds, &checks).map_err(|e| CliError::Usage(e.to_string()))?;
    let summary = render::suite_summary(&report, out.style);
    match (out.format, &out.out) {
        // Full report to the file, summary to the terminal.
        (_, Some(_)) => {
            match out.format {
                Format::Json => out.emit_json(&report)?,
                Format::Text => out.emit(&summary)?,
            }
            print!("{summary}");
        }
        (Format::Json, None) => out.emit_json(&report)?,
        (Format::Text, None) => out.emit(&summary)?,
    }
    Ok(report.summary.failed == 0)
}

fn run(cli: Cli) -> Result<bool, CliError> {
    match &cli.command {
        Command::Lift { scenario, output } => cmd_lift(scenario, output),
        Command::Delta {
            scenario,
            output,
            coeffs,
            all_components,
        } => cmd_delta(scenario, output, coeffs, *all_components),
        Command::Verify {
            scenario,
            output,
            checks,
        } => cmd_verify(scenario, output, checks),
        Command::Suite {
            input,
            max_strands,
            max_length,
            degrees,
            max_scenarios,
            checks,
            output,
        } => cmd_suite(input, *max_strands, *max_length, degrees.clone(), *max_scenarios, checks, output),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("hnp: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
