use std::collections::BTreeMap;
use std::fmt;
use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::Result;

/// Margins below `-VIOLATION_FACTOR · budget` count as violations.
pub const VIOLATION_FACTOR: f64 = 3.0;
/// Relative margin under which an inequality is reported as sharp even when
/// the budget is smaller.
pub const SHARP_REL: f64 = 1e-6;
/// Floor on every budget, relative to the compared values, covering
/// floating-point rounding.
pub const ROUNDING_REL: f64 = 64.0 * f64::EPSILON;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    Pass,
    /// A hard inequality is violated by more than three budgets.
    Fail,
    /// A search found a violation; an expected finding, not an error.
    ViolationFound,
    /// The margin is negative but within three budgets.
    Inconclusive,
    Skipped,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Pass => "pass",
            Outcome::Fail => "fail",
            Outcome::ViolationFound => "violation-found",
            Outcome::Inconclusive => "inconclusive",
            Outcome::Skipped => "skipped",
        })
    }
}

/// How a verdict feeds the exit status.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Gate {
    /// A proved inequality: failing it is a theorem violation.
    Theorem,
    /// Exploration: violations are findings.
    Search,
    /// Informational row.
    Report,
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Gate::Theorem => "theorem",
            Gate::Search => "search",
            Gate::Report => "report",
        })
    }
}

/// One comparison `lhs ≤ rhs` at one parameter point.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub theorem: String,
    pub fixture: String,
    /// `key=value` pairs joined by `;`.
    pub params: String,
    pub lhs: f64,
    pub rhs: f64,
    /// `rhs - lhs`.
    pub margin: f64,
    /// Combined numerical error of both sides.
    pub budget: f64,
    pub outcome: Outcome,
    /// `|margin|` within the budget: the inequality is attained.
    pub sharp: bool,
    pub gate: Gate,
    pub note: String,
}

impl Verdict {
    /// Classifies `lhs ≤ rhs` against `budget`.
    pub fn compare(
        theorem: &str,
        fixture: &str,
        params: String,
        lhs: f64,
        rhs: f64,
        budget: f64,
        gate: Gate,
    ) -> Verdict {
        let margin = rhs - lhs;
        let budget = budget.max(ROUNDING_REL * lhs.abs().max(rhs.abs()));
        let outcome = if !(margin.is_finite() && budget.is_finite()) {
            Outcome::Inconclusive
        } else if margin >= -budget {
            Outcome::Pass
        } else if margin < -VIOLATION_FACTOR * budget {
            match gate {
                Gate::Search => Outcome::ViolationFound,
                _ => Outcome::Fail,
            }
        } else {
            Outcome::Inconclusive
        };
        let sharp = margin.abs() <= budget.max(SHARP_REL * rhs.abs().max(lhs.abs()));
        Verdict {
            theorem: theorem.into(),
            fixture: fixture.into(),
            params,
            lhs,
            rhs,
            margin,
            budget,
            outcome,
            sharp,
            gate,
            note: String::new(),
        }
    }

    /// A row recording why a check could not run.
    pub fn skipped(theorem: &str, fixture: &str, params: String, reason: String, gate: Gate) -> Verdict {
        Verdict {
            theorem: theorem.into(),
            fixture: fixture.into(),
            params,
            lhs: f64::NAN,
            rhs: f64::NAN,
            margin: f64::NAN,
            budget: f64::NAN,
            outcome: Outcome::Skipped,
            sharp: false,
            gate,
            note: reason,
        }
    }

    /// A report row with a fixed outcome.
    pub fn report(theorem: &str, fixture: &str, params: String, outcome: Outcome, note: String) -> Verdict {
        Verdict {
            theorem: theorem.into(),
            fixture: fixture.into(),
            params,
            lhs: f64::NAN,
            rhs: f64::NAN,
            margin: f64::NAN,
            budget: f64::NAN,
            outcome,
            sharp: false,
            gate: Gate::Report,
            note,
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Verdict {
        self.note = note.into();
        self
    }

    /// A theorem verdict violated beyond its budget.
    pub fn is_violation(&self) -> bool {
        self.gate == Gate::Theorem && self.outcome == Outcome::Fail
    }

    /// The value of `key` in [`Verdict::params`].
    pub fn param(&self, key: &str) -> Option<&str> {
        self.params
            .split(';')
            .filter_map(|kv| kv.split_once('='))
            .find(|(k, _)| *k == key)
            .map(|(_, v)| v)
    }
}

/// Formats parameter pairs as `k=v;k=v`.
pub fn params(pairs: &[(&str, String)]) -> String {
    pairs
        .iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect::<Vec<_>>()
        .join(";")
}

/// Formats an exponent, writing `inf` for `p = ∞`.
pub fn fmt_p(p: f64) -> String {
    if p.is_infinite() {
        "inf".into()
    } else {
        format!("{p}")
    }
}

fn num(x: f64) -> String {
    if x.is_nan() {
        String::new()
    } else {
        format!("{x:e}")
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub const CSV_HEADER: &str = "theorem,fixture,params,lhs,rhs,margin,budget,outcome,sharp,gate,note";

/// Writes the verdict table as CSV. Numbers use the shortest round-trip
/// representation, so identical verdicts give identical bytes.
pub fn write_csv<W: Write>(mut w: W, verdicts: &[Verdict]) -> Result<()> {
    writeln!(w, "{CSV_HEADER}")?;
    for v in verdicts {
        writeln!(
            w,
            "{},{},{},{},{},{},{},{},{},{},{}",
            csv_field(&v.theorem),
            csv_field(&v.fixture),
            csv_field(&v.params),
            num(v.lhs),
            num(v.rhs),
            num(v.margin),
            num(v.budget),
            v.outcome,
            v.sharp,
            v.gate,
            csv_field(&v.note)
        )?;
    }
    Ok(())
}

/// [`write_csv`] into a string.
pub fn csv_string(verdicts: &[Verdict]) -> String {
    let mut buf = Vec::new();
    write_csv(&mut buf, verdicts).expect("writing to memory");
    String::from_utf8(buf).expect("csv is utf-8")
}

/// Outcome counts per theorem.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub counts: BTreeMap<String, BTreeMap<Outcome, usize>>,
    /// Theorem verdicts failed beyond three budgets.
    pub violations: Vec<Verdict>,
    /// Search findings.
    pub findings: Vec<Verdict>,
    pub sharp_rows: usize,
}

impl Summary {
    pub fn of(verdicts: &[Verdict]) -> Summary {
        let mut s = Summary {
            total: verdicts.len(),
            ..Summary::default()
        };
        for v in verdicts {
            *s.counts
                .entry(v.theorem.clone())
                .or_default()
                .entry(v.outcome)
                .or_default() += 1;
            if v.is_violation() {
                s.violations.push(v.clone());
            }
            if v.outcome == Outcome::ViolationFound {
                s.findings.push(v.clone());
            }
            s.sharp_rows += v.sharp as usize;
        }
        s
    }

    pub fn count(&self, outcome: Outcome) -> usize {
        self.counts
            .values()
            .map(|m| m.get(&outcome).copied().unwrap_or(0))
            .sum()
    }
}
