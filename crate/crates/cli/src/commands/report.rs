use std::collections::BTreeMap;

use steinsym::verify::{Outcome, Summary};

use super::verify::{print_summary, P0_FILE, VERDICTS_FILE};
use crate::error::{CliError, CliResult};
use crate::record::{RunRecord, RECORD_FILE};
use crate::ReportArgs;

/// Counts outcomes in a verdict CSV without re-running anything.
pub fn run(a: &ReportArgs) -> CliResult<()> {
    let path = a.dir.join(VERDICTS_FILE);
    let mut rd = csv::Reader::from_path(&path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let headers = rd.headers().map_err(|e| CliError::Input(e.to_string()))?.clone();
    let col = |name: &str| {
        headers
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| CliError::Input(format!("{}: missing column {name}", path.display())))
    };
    let (ti, oi, si, gi) = (col("theorem")?, col("outcome")?, col("sharp")?, col("gate")?);
    let mut s = Summary::default();
    let mut failures = Vec::new();
    for row in rd.records() {
        let row = row.map_err(|e| CliError::Input(e.to_string()))?;
        let outcome = parse_outcome(&row[oi])?;
        s.total += 1;
        *s.counts
            .entry(row[ti].to_string())
            .or_insert_with(BTreeMap::new)
            .entry(outcome)
            .or_default() += 1;
        s.sharp_rows += (&row[si] == "true") as usize;
        if outcome == Outcome::Fail && &row[gi] == "theorem" {
            failures.push(row.iter().collect::<Vec<_>>().join(","));
        }
    }
    if let Ok(rec) = RunRecord::load(&a.dir.join(RECORD_FILE)) {
        println!(
            "run of {} suite(s) on {} fixture(s), version {}, {:.1}s",
            rec.suites.len(),
            rec.fixtures.len(),
            rec.tool_version,
            rec.wall_time_s
        );
    }
    print_summary(&s, failures.len(), s.count(Outcome::ViolationFound));
    for f in &failures {
        println!("failed: {f}");
    }
    let p0 = a.dir.join(P0_FILE);
    if p0.exists() {
        let mut rd = csv::Reader::from_path(&p0).map_err(|e| CliError::Input(e.to_string()))?;
        let mut min: Option<f64> = None;
        for row in rd.records() {
            let row = row.map_err(|e| CliError::Input(e.to_string()))?;
            if let Ok(p) = row[3].parse::<f64>() {
                min = Some(min.map_or(p, |m: f64| m.min(p)));
            }
        }
        if let Some(p) = min {
            println!("empirical bracket for the critical exponent: [2, {p:.4}]");
        }
    }
    Ok(())
}

fn parse_outcome(s: &str) -> CliResult<Outcome> {
    Ok(match s {
        "pass" => Outcome::Pass,
        "fail" => Outcome::Fail,
        "violation-found" => Outcome::ViolationFound,
        "inconclusive" => Outcome::Inconclusive,
        "skipped" => Outcome::Skipped,
        _ => return Err(CliError::Input(format!("unknown outcome {s:?}"))),
    })
}
