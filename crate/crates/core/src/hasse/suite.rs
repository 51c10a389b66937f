//! Bounded exhaustive enumeration of braid-axis covers.

use std::time::Instant;

use rayon::prelude::*;

use super::report::{CheckName, CheckRecord, Scenario, SuiteBounds, SuiteReport, VerificationReport, Verdict, Witness};
use super::verify_scenario;
use crate::links::BraidWord;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SuiteError {
    #[error("max_strands must be at least 1")]
    NoStrands,
    #[error("cover degree {0} is not a positive integer")]
    BadDegree(usize),
}

/// All braid words on `1..=max_strands` strands of length at most
/// `max_length`, by strand count, then length, then lexicographically over
/// the alphabet `1, -1, 2, -2, ...`.
pub fn enumerate_words(max_strands: usize, max_length: usize) -> Vec<BraidWord> {
    let mut out = Vec::new();
    visit_words(max_strands, max_length, |w| {
        out.push(w);
        true
    });
    out
}

/// Calls `f` on each word in enumeration order until it returns `false`.
fn visit_words(max_strands: usize, max_length: usize, mut f: impl FnMut(BraidWord) -> bool) {
    for k in 1..=max_strands {
        let alphabet: Vec<i32> = (1..k as i32).flat_map(|g| [g, -g]).collect();
        let lengths = if alphabet.is_empty() { 0..=0 } else { 0..=max_length };
        for len in lengths {
            let mut digits = vec![0usize; len];
            loop {
                let letters = digits.iter().map(|&d| alphabet[d]).collect();
                let word = BraidWord::new(k, letters).expect("letters are in range");
                if !f(word) {
                    return;
                }
                // Odometer increment, last letter fastest.
                let Some(pos) = digits.iter().rposition(|&d| d + 1 < alphabet.len()) else {
                    break;
                };
                digits[pos] += 1;
                digits[pos + 1..].iter_mut().for_each(|d| *d = 0);
            }
        }
    }
}

/// Number of scenarios `bounds` describes, ignoring `max_scenarios`.
/// Saturates at `usize::MAX`.
pub fn scenario_count(bounds: &SuiteBounds) -> usize {
    let mut words = 0usize;
    for k in 1..=bounds.max_strands {
        let a = 2 * (k - 1);
        if a == 0 {
            words = words.saturating_add(1);
            continue;
        }
        let mut power = 1usize;
        for _ in 0..=bounds.max_length {
            words = words.saturating_add(power);
            power = power.saturating_mul(a);
        }
    }
    words.saturating_mul(bounds.degrees.len())
}

/// Runs `checks` on every (word, degree) pair within `bounds`, in parallel.
/// Reports keep enumeration order: words outer, degrees inner.
pub fn run_suite(bounds: &SuiteBounds, checks: &[CheckName]) -> Result<SuiteReport, SuiteError> {
    if bounds.max_strands == 0 {
        return Err(SuiteError::NoStrands);
    }
    if let Some(&d) = bounds.degrees.iter().find(|&&d| d == 0) {
        return Err(SuiteError::BadDegree(d));
    }
    let start = Instant::now();
    let mut scenarios = Vec::new();
    if !bounds.degrees.is_empty() {
        visit_words(bounds.max_strands, bounds.max_length, |w| {
            for &d in &bounds.degrees {
                if scenarios.len() == bounds.max_scenarios {
                    return false;
                }
                scenarios.push((w.clone(), d));
            }
            true
        });
    }
    let complete = scenario_count(bounds) <= bounds.max_scenarios;

    let reports: Vec<VerificationReport> = scenarios
        .par_iter()
        .map(|(w, d)| verify_scenario(w, *d, checks).unwrap_or_else(|e| errored(w, *d, checks, e.to_string())))
        .collect();

    let mut report = SuiteReport {
        tool_version: crate::TOOL_VERSION.to_string(),
        bounds: bounds.clone(),
        checks: checks.to_vec(),
        complete,
        summary: super::report::Summary {
            scenarios: 0,
            passed: 0,
            failed: 0,
        },
        millis: 0.0,
        reports,
    };
    report.summary = report.recount();
    report.millis = start.elapsed().as_secs_f64() * 1e3;
    Ok(report)
}

fn errored(w: &BraidWord, degree: usize, checks: &[CheckName], detail: String) -> VerificationReport {
    VerificationReport {
        scenario: Scenario {
            strands: w.strands(),
            word: w.letters().to_vec(),
            degree,
        },
        passed: false,
        checks: checks
            .iter()
            .map(|&name| CheckRecord {
                name,
                verdict: Verdict::Fail,
                cases: 0,
                witness: Some(Witness::message(detail.clone())),
                millis: 0.0,
            })
            .collect(),
        millis: 0.0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bounds(max_strands: usize, max_length: usize, degrees: &[usize], max_scenarios: usize) -> SuiteBounds {
        SuiteBounds {
            max_strands,
            max_length,
            degrees: degrees.to_vec(),
            max_scenarios,
        }
    }

    #[test]
    fn word_counts() {
        assert_eq!(enumerate_words(1, 5).len(), 1);
        // 1 + (1 + 2 + 4) + (1 + 4 + 16)
        assert_eq!(enumerate_words(3, 2).len(), 29);
        assert_eq!(enumerate_words(3, 5).len(), 1 + 63 + 1365);
        assert_eq!(scenario_count(&bounds(3, 5, &[1, 2, 3, 4], 0)), 4 * 1429);
    }

    #[test]
    fn enumeration_order_is_fixed() {
        let words: Vec<Vec<i32>> = enumerate_words(2, 2).iter().map(|w| w.letters().to_vec()).collect();
        assert_eq!(
            words,
            vec![vec![], vec![], vec![1], vec![-1], vec![1, 1], vec![1, -1], vec![-1, 1], vec![-1, -1]]
        );
        let words = enumerate_words(3, 3);
        let mut seen = std::collections::HashSet::new();
        assert!(words.iter().all(|w| seen.insert((w.strands(), w.letters().to_vec()))));
    }

    #[test]
    fn small_suite_passes() {
        let r = run_suite(&bounds(2, 2, &[1, 2, 3], 1000), &CheckName::ALL).unwrap();
        assert!(r.complete);
        assert_eq!(r.summary.scenarios, 8 * 3);
        assert_eq!(r.summary.failed, 0);
        assert_eq!(r.reports[0].scenario.degree, 1);
        assert_eq!(r.reports[1].scenario.degree, 2);
    }

    #[test]
    fn truncated_suite_is_incomplete() {
        let r = run_suite(&bounds(2, 2, &[2], 3), &[CheckName::HasseNorm]).unwrap();
        assert!(!r.complete);
        assert_eq!(r.reports.len(), 3);
    }

    #[test]
    fn empty_and_invalid_bounds() {
        let r = run_suite(&bounds(2, 2, &[], 10), &CheckName::ALL).unwrap();
        assert!(r.reports.is_empty() && r.complete);
        assert_eq!(run_suite(&bounds(0, 2, &[2], 10), &CheckName::ALL), Err(SuiteError::NoStrands));
        assert_eq!(run_suite(&bounds(2, 2, &[2, 0], 10), &CheckName::ALL), Err(SuiteError::BadDegree(0)));
    }
}
