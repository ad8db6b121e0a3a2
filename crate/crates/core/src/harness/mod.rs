//! Property suites over enumerated terms, canned experiments and JSON
//! reporting. Everything here is deterministic: the population is a fixed
//! enumeration, suites run in parallel but are folded in enumeration order.

mod experiments;
mod suites;

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::syntax::{enumerate_terms, term, Ident, Term};

pub use experiments::{run_experiment, Claim, ExperimentReport, Replay, EXPERIMENTS};

/// Node budget for breadth-first searches inside suites.
pub const BFS_BUDGET: usize = 5000;

pub const SUITES: [&str; 15] = [
    "diamond-open",
    "diamond-external",
    "vsc-not-diamond",
    "harmony-open",
    "harmony-strong",
    "harmony-fire",
    "fullness",
    "subject-reduction-open",
    "subject-reduction-shrinking",
    "subject-expansion",
    "length-bound",
    "substitution-bound",
    "spreading",
    "untyped-normalization",
    "plotkin-simulation",
];

/// Terms on which the substitution calculus is not diamond: a duplicated
/// abstraction whose body still contains a redex.
pub const VSC_WITNESSES: [&str; 4] = [
    r"(x x)[x <- \y.(\a.a) (\b.b)]",
    r"(x (x x))[x <- \y.(\a.a) (\b.b)]",
    r"((x x) x)[x <- \y.(\a.a) (\b.b)]",
    r"(x x)[x <- \y.(\a.a a) (\b.b)]",
];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HarnessError {
    #[error("unknown suite {0:?}; known suites: {known}", known = SUITES.join(", "))]
    UnknownSuite(String),
    #[error("unknown experiment {0:?}; known experiments: {known}", known = EXPERIMENTS.join(", "))]
    UnknownExperiment(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub term: Term,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub max_size: usize,
    pub free_pool: Vec<Ident>,
    pub fuel: usize,
    pub population: usize,
    pub passed: usize,
    pub failures: usize,
    /// Terms the property could not decide (fuel ran out, budget exceeded,
    /// or the term is outside the property's scope).
    pub skipped: usize,
    /// Individual checks performed (steps, peaks, derivation nodes, ...).
    pub checks: usize,
    pub counterexample: Option<Counterexample>,
    /// Noteworthy positive findings, e.g. the peak of a non-diamond witness.
    pub observations: Vec<Counterexample>,
    pub wall_ms: u64,
}

/// Outcome of a property on one term.
#[derive(Clone, Debug)]
pub(crate) enum Verdict {
    Pass { checks: usize, note: Option<String> },
    Fail(String),
    Skip,
}

impl Verdict {
    pub(crate) fn pass(checks: usize) -> Self {
        Verdict::Pass { checks, note: None }
    }
}

impl SuiteReport {
    fn empty(suite: &str, max_size: usize, free_pool: &[Ident], fuel: usize) -> Self {
        SuiteReport {
            suite: suite.to_string(),
            max_size,
            free_pool: free_pool.to_vec(),
            fuel,
            population: 0,
            passed: 0,
            failures: 0,
            skipped: 0,
            checks: 0,
            counterexample: None,
            observations: Vec::new(),
            wall_ms: 0,
        }
    }

    fn record(&mut self, t: &Term, v: Verdict) {
        self.population += 1;
        match v {
            Verdict::Pass { checks, note } => {
                self.passed += 1;
                self.checks += checks;
                if let Some(detail) = note {
                    if self.observations.is_empty() {
                        self.observations.push(Counterexample { term: t.clone(), detail });
                    }
                }
            }
            Verdict::Fail(detail) => {
                self.failures += 1;
                if self.counterexample.is_none() {
                    self.counterexample = Some(Counterexample { term: t.clone(), detail });
                }
            }
            Verdict::Skip => self.skipped += 1,
        }
    }

    /// Combines reports for consecutive slices of one population; `later`
    /// covers terms enumerated after those of `self`.
    pub fn merge(mut self, later: SuiteReport) -> SuiteReport {
        self.population += later.population;
        self.passed += later.passed;
        self.failures += later.failures;
        self.skipped += later.skipped;
        self.checks += later.checks;
        self.counterexample = self.counterexample.or(later.counterexample);
        self.observations.extend(later.observations);
        self.wall_ms += later.wall_ms;
        self
    }

    pub fn ok(&self) -> bool {
        self.failures == 0
    }

    pub fn summary(&self) -> String {
        let mut s = format!(
            "{}: {} terms, {} passed, {} failed, {} skipped, {} checks, {} ms",
            self.suite, self.population, self.passed, self.failures, self.skipped, self.checks, self.wall_ms
        );
        if let Some(c) = &self.counterexample {
            s.push_str(&format!("\n  counterexample: {}\n  {}", c.term, c.detail));
        }
        for o in &self.observations {
            s.push_str(&format!("\n  observed on {}: {}", o.term, o.detail));
        }
        s
    }
}

pub fn report_json(r: &SuiteReport) -> String {
    serde_json::to_string_pretty(r).expect("reports serialize")
}

fn population(suite: &str, max_size: usize, free_pool: &[Ident]) -> Vec<Term> {
    match suite {
        "vsc-not-diamond" => VSC_WITNESSES.iter().map(|s| term(s)).collect(),
        "harmony-fire" | "plotkin-simulation" => enumerate_terms(max_size, free_pool, true).collect(),
        _ => enumerate_terms(max_size, free_pool, false).collect(),
    }
}

/// Runs a named property over every enumerated term of size at most
/// `max_size` with free variables from `free_pool`.
pub fn run_suite(name: &str, max_size: usize, free_pool: &[Ident], fuel: usize) -> Result<SuiteReport, HarnessError> {
    let property = suites::property(name).ok_or_else(|| HarnessError::UnknownSuite(name.to_string()))?;
    let start = Instant::now();
    let terms = population(name, max_size, free_pool);
    let verdicts: Vec<Verdict> = terms.par_iter().map(|t| property(t, fuel)).collect();
    let mut report = SuiteReport::empty(name, max_size, free_pool, fuel);
    for (t, v) in terms.iter().zip(verdicts) {
        report.record(t, v);
    }
    report.wall_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn y() -> Vec<Ident> {
        vec![Ident::new("y")]
    }

    #[test]
    fn unknown_names() {
        assert!(matches!(run_suite("nope", 3, &y(), 10), Err(HarnessError::UnknownSuite(_))));
    }

    #[test]
    fn every_suite_passes_at_small_size() {
        for name in SUITES {
            let r = run_suite(name, 5, &y(), 50).unwrap();
            assert!(r.ok(), "{}", r.summary());
            assert_eq!(r.failures == 0, r.counterexample.is_none());
            assert_eq!(r.population, r.passed + r.failures + r.skipped);
        }
    }

    #[test]
    fn reports_are_deterministic_and_round_trip() {
        let mut a = run_suite("diamond-open", 5, &y(), 50).unwrap();
        let mut b = run_suite("diamond-open", 5, &y(), 50).unwrap();
        a.wall_ms = 0;
        b.wall_ms = 0;
        assert_eq!(a, b);
        let json = report_json(&a);
        assert!(json.contains(r#""failures": 0"#));
        let back: SuiteReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, a);
    }

    #[test]
    fn witness_family_records_one_peak() {
        let r = run_suite("vsc-not-diamond", 0, &[], 10).unwrap();
        assert_eq!(r.passed, VSC_WITNESSES.len());
        assert_eq!(r.observations.len(), 1);
    }

    #[test]
    fn merge_keeps_the_earliest_counterexample() {
        let mut a = SuiteReport::empty("s", 1, &[], 1);
        let mut b = a.clone();
        a.record(&term("x"), Verdict::pass(1));
        b.record(&term("y"), Verdict::Fail("first".into()));
        let mut c = SuiteReport::empty("s", 1, &[], 1);
        c.record(&term("z"), Verdict::Fail("second".into()));
        let left = a.clone().merge(b.clone()).merge(c.clone());
        let right = a.merge(b.merge(c));
        assert_eq!(left, right);
        assert_eq!(left.counterexample.unwrap().detail, "first");
        assert_eq!(left.failures, 2);
    }
}
