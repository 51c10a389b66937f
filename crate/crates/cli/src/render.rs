//! Human-readable and JSON renderings of command results.

use std::fmt::Write;

use hnp_core::covers::CoverData;
use hnp_core::hasse::{CheckRecord, SuiteReport, VerificationReport, Witness};
use hnp_core::ideles::{IdeleVector, SurfaceClass};
use hnp_core::links::{LinkUniverse, Permutation};
use hnp_core::zlattice::IntMatrix;
use serde_json::{json, Value};

/// Symbol set for text output.
#[derive(Clone, Copy, Debug)]
pub struct Style {
    pub ascii: bool,
}

impl Style {
    pub fn label(self, label: &str) -> String {
        match label.strip_suffix('~') {
            Some("A") if !self.ascii => "Ã".to_string(),
            Some(base) if !self.ascii => format!("{base}\u{0303}"),
            _ => label.to_string(),
        }
    }

    fn mu(self) -> &'static str {
        if self.ascii { "mu_" } else { "μ_" }
    }

    fn lambda(self) -> &'static str {
        if self.ascii { "lambda_" } else { "λ_" }
    }

    fn arrow(self) -> &'static str {
        if self.ascii { "->" } else { "↦" }
    }

    fn tau(self) -> &'static str {
        if self.ascii { "tau" } else { "τ" }
    }

    /// Adjusts text produced by the core library, which always uses Unicode.
    pub fn text(self, s: &str) -> String {
        if !self.ascii {
            return s.to_string();
        }
        s.replace('μ', "mu").replace('λ', "lambda").replace('−', "-").replace('∩', "cap").replace('∂', "d")
            .replace('∘', "o").replace('τ', "tau").replace('Δ', "Delta").replace('⊆', "<=")
    }
}

fn strings(xs: impl IntoIterator<Item = impl ToString>) -> Vec<String> {
    xs.into_iter().map(|x| x.to_string()).collect()
}

fn matrix_json(m: &IntMatrix) -> Value {
    json!((0..m.rows()).map(|i| strings(m.row(i))).collect::<Vec<_>>())
}

fn linking_table(out: &mut String, u: &LinkUniverse, style: Style) {
    let labels: Vec<String> = (0..u.len()).map(|i| style.label(u.label(i))).collect();
    let width = labels
        .iter()
        .map(|l| l.chars().count())
        .chain((0..u.len()).flat_map(|i| (0..u.len()).map(move |j| (i, j))).map(|(i, j)| u.lk(i, j).to_string().len()))
        .max()
        .unwrap_or(1)
        + 2;
    let pad = |s: &str| format!("{s:>width$}", width = width);
    let _ = writeln!(out, "  {}{}", pad(""), labels.iter().map(|l| pad(l)).collect::<String>());
    for (i, l) in labels.iter().enumerate() {
        let row: String = (0..u.len()).map(|j| pad(&u.lk(i, j).to_string())).collect();
        let _ = writeln!(out, "  {}{row}", pad(l));
    }
}

fn components(out: &mut String, u: &LinkUniverse, style: Style, over: Option<&dyn Fn(usize) -> String>) {
    let windings = u.windings();
    for (i, c) in u.components().iter().enumerate() {
        let label = style.label(&c.label);
        if Some(i) == u.axis() {
            let _ = writeln!(out, "  {label:<6} axis");
            continue;
        }
        let strands = strings(c.strands.iter().map(|s| s + 1)).join(" ");
        let mut line = format!("  {label:<6} strands {strands}");
        if let Some(w) = &windings {
            let _ = write!(line, ", winding {}", w[i]);
        }
        if let Some(f) = over {
            let _ = write!(line, ", over {}", f(i));
        }
        let _ = writeln!(out, "{line}");
    }
}

fn cycles(p: &Permutation, u: &LinkUniverse, style: Style) -> String {
    let moving: Vec<String> = p
        .cycles()
        .into_iter()
        .filter(|c| c.len() > 1)
        .map(|c| format!("({})", c.iter().map(|&j| style.label(u.label(j))).collect::<Vec<_>>().join(" ")))
        .collect();
    if moving.is_empty() { "identity".to_string() } else { moving.join("") }
}

pub fn lift_text(c: &CoverData, style: Style) -> String {
    let (base, up) = (c.base(), c.total());
    let mut out = String::new();
    let _ = writeln!(out, "cover of degree {} branched over the axis of {}", c.degree(), c.braid());
    let _ = writeln!(out, "\nbase universe");
    components(&mut out, base, style, None);
    let _ = writeln!(out, "linking matrix");
    linking_table(&mut out, base, style);

    let _ = writeln!(out, "\nupstairs universe (closure of the braid to the power {})", c.degree());
    let over = |j: usize| style.label(base.label(c.fiber_map()[j]));
    components(&mut out, up, style, Some(&over));
    let _ = writeln!(out, "linking matrix");
    linking_table(&mut out, up, style);

    let _ = writeln!(out, "\nsplitting");
    let _ = writeln!(out, "  {:<6} {:>3} {:>3} {:>3}  lifts", "", "e", "w", "r");
    for (k, s) in c.splitting().iter().enumerate() {
        let lifts: Vec<String> = c.fiber(k).iter().map(|&j| style.label(up.label(j))).collect();
        let _ = writeln!(
            out,
            "  {:<6} {:>3} {:>3} {:>3}  {}",
            style.label(base.label(k)),
            s.e,
            s.w,
            s.r,
            lifts.join(" ")
        );
    }

    let _ = writeln!(out, "\npushforward on boundary tori");
    for j in 0..up.len() {
        let k = c.fiber_map()[j];
        let m = up.len();
        let image = |v: IdeleVector| {
            c.pushforward_idele(&v)
                .map(|w| style.text(&w.labeled(base, style.ascii)))
                .unwrap_or_default()
        };
        let (lj, lk) = (style.label(up.label(j)), style.label(base.label(k)));
        let _ = writeln!(
            out,
            "  {lj} {} {lk}: {}{lj} {} {}, {}{lj} {} {}",
            style.arrow(),
            style.mu(),
            style.arrow(),
            image(IdeleVector::meridian_unit(m, j)),
            style.lambda(),
            style.arrow(),
            image(IdeleVector::longitude_unit(m, j)),
        );
    }
    let _ = writeln!(out, "\ndeck transformation {}: {}", style.tau(), cycles(c.deck(), up, style));
    out
}

fn universe_json(u: &LinkUniverse) -> Value {
    let windings = u.windings();
    json!({
        "components": u.components().iter().enumerate().map(|(i, c)| json!({
            "label": c.label,
            "axis": Some(i) == u.axis(),
            "strands": c.strands,
            "winding": windings.as_ref().map(|w| w[i].to_string()),
        })).collect::<Vec<_>>(),
        "linking": matrix_json(u.linking()),
    })
}

pub fn lift_json(c: &CoverData) -> Value {
    json!({
        "tool_version": hnp_core::TOOL_VERSION,
        "braid": {"strands": c.braid().strands(), "word": c.braid().letters()},
        "degree": c.degree(),
        "base": universe_json(c.base()),
        "upstairs": universe_json(c.total()),
        "fiber_map": c.fiber_map(),
        "splitting": c.splitting().iter().enumerate().map(|(k, s)| json!({
            "component": c.base().label(k),
            "e": s.e, "w": s.w, "r": s.r, "d": s.d,
            "lifts": c.fiber(k),
        })).collect::<Vec<_>>(),
        "pushforward": (0..c.total().len()).map(|j| json!({
            "component": c.total().label(j),
            "over": c.base().label(c.fiber_map()[j]),
            "matrix": matrix_json(c.local_pushforward(j)),
        })).collect::<Vec<_>>(),
        "deck": c.deck().images(),
    })
}

pub fn delta_json(u: &LinkUniverse, s: &SurfaceClass, v: &IdeleVector, style: Style) -> Value {
    json!({
        "tool_version": hnp_core::TOOL_VERSION,
        "components": (0..u.len()).map(|i| u.label(i)).collect::<Vec<_>>(),
        "class": s.terms().map(|(k, c)| (u.label(k).to_string(), Value::String(c.to_string()))).collect::<serde_json::Map<_, _>>(),
        "idele": strings(v.coords()),
        "rendered": v.labeled(u, style.ascii),
    })
}

pub fn witness_text(w: &Witness, style: Style) -> String {
    let text = match w {
        Witness::LatticeVector { context, side, coords } => {
            let side = match side {
                hnp_core::hasse::Side::LeftOnly => "left side only",
                hnp_core::hasse::Side::RightOnly => "right side only",
            };
            format!("{context}: ({}) lies in the {side}", coords.join(", "))
        }
        Witness::Invariants { context, expected, actual } => {
            format!("{context}: expected {expected}, found {actual}")
        }
        Witness::VectorMismatch { context, left, right } => {
            format!("{context}: ({}) vs ({})", left.join(", "), right.join(", "))
        }
        Witness::Message { detail } => detail.clone(),
    };
    style.text(&text)
}

fn record_line(out: &mut String, r: &CheckRecord, style: Style) {
    let verdict = if r.verdict.is_pass() { "PASS" } else { "FAIL" };
    let cases = if r.cases == 1 { "case" } else { "cases" };
    let _ = writeln!(
        out,
        "  {verdict}  {:<26} {:>6} {cases:<5} {:>9.2} ms",
        r.name.as_str(),
        r.cases,
        r.millis
    );
    if let Some(w) = &r.witness {
        let _ = writeln!(out, "        witness: {}", witness_text(w, style));
    }
}

pub fn verify_text(r: &VerificationReport, style: Style) -> String {
    let mut out = String::new();
    let braid = hnp_core::links::BraidWord::new(r.scenario.strands, r.scenario.word.clone())
        .map(|b| b.to_string())
        .unwrap_or_else(|_| format!("{:?}", r.scenario.word));
    let _ = writeln!(out, "scenario: {braid}, degree {}", r.scenario.degree);
    for c in &r.checks {
        record_line(&mut out, c, style);
    }
    let passed = r.checks.iter().filter(|c| c.verdict.is_pass()).count();
    let _ = writeln!(
        out,
        "result: {} ({passed}/{} checks, {:.2} ms)",
        if r.passed { "PASS" } else { "FAIL" },
        r.checks.len(),
        r.millis
    );
    out
}

pub fn suite_summary(s: &SuiteReport, style: Style) -> String {
    let mut out = String::new();
    let b = &s.bounds;
    let _ = writeln!(
        out,
        "suite: strands <= {}, length <= {}, degrees {}",
        b.max_strands,
        b.max_length,
        strings(&b.degrees).join(",")
    );
    let _ = writeln!(
        out,
        "scenarios {}, passed {}, failed {}{}, total time {:.2} s",
        s.summary.scenarios,
        s.summary.passed,
        s.summary.failed,
        if s.complete { "" } else { " (incomplete: scenario cap reached)" },
        s.millis / 1e3
    );
    for r in s.reports.iter().filter(|r| !r.passed).take(10) {
        let _ = writeln!(out, "  failed: word {:?} on {} strands, degree {}", r.scenario.word, r.scenario.strands, r.scenario.degree);
        for c in r.failures() {
            if let Some(w) = &c.witness {
                let _ = writeln!(out, "    {}: {}", c.name, witness_text(w, style));
            }
        }
    }
    out
}
