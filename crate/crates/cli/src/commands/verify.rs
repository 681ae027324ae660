use std::time::Instant;

use serde::Serialize;
use steinsym::conformal::MapCache;
use steinsym::verify::{csv_string, run_suites, Harness, N2AlphaRow, Outcome, P0Search, Suite, Summary};

use super::gate;
use super::search_p0::p0_csv;
use crate::error::{CliError, CliResult};
use crate::input::{load_fixtures, write_file};
use crate::record::{RunRecord, RECORD_FILE};
use crate::{Global, VerifyArgs};

pub const VERDICTS_FILE: &str = "verdicts.csv";
pub const SUMMARY_FILE: &str = "summary.json";
pub const P0_FILE: &str = "p0.csv";
pub const N2ALPHA_FILE: &str = "n2alpha.json";

#[derive(Serialize)]
struct VerifySummary<'a> {
    suites: &'a [Suite],
    fixtures: Vec<&'a str>,
    summary: Summary,
    /// Smallest violating exponent found by the p0 search, if any.
    min_p_star: Option<f64>,
    p0: &'a [P0Search],
    n2alpha: &'a [N2AlphaRow],
    verdict_csv_sha256: &'a str,
    wall_time_s: f64,
}

pub fn run(g: &Global, a: &VerifyArgs) -> CliResult<()> {
    let replayed = match &a.replay {
        Some(path) => Some(RunRecord::load(path)?),
        None => None,
    };
    let (config, suites, fixtures) = match &replayed {
        Some(r) => (r.config.clone(), r.suites.clone(), r.checked_fixtures()?),
        None => (g.config()?, Suite::parse_list(&a.suite)?, load_fixtures(a.fixtures.as_deref())?),
    };
    let mut h = Harness::new(config.clone())?;
    if let Some(dir) = &a.cache_dir {
        h = h.with_disk_cache(MapCache::new(dir)?);
    }

    let t0 = Instant::now();
    let rep = run_suites(&h, &suites, &fixtures)?;
    let wall = t0.elapsed().as_secs_f64();
    let csv = csv_string(&rep.verdicts);

    let mut record = RunRecord::new(config, suites.clone(), &fixtures);
    record.set_verdicts(csv.clone());
    record.wall_time_s = wall;
    let summary = rep.summary();
    let out = &a.out;
    write_file(&out.join(VERDICTS_FILE), &csv)?;
    record.outputs.push(VERDICTS_FILE.into());
    if !rep.p0.is_empty() {
        write_file(&out.join(P0_FILE), p0_csv(&rep.p0))?;
        record.outputs.push(P0_FILE.into());
    }
    if !rep.n2alpha.is_empty() {
        write_file(
            &out.join(N2ALPHA_FILE),
            serde_json::to_string_pretty(&rep.n2alpha).expect("rows serialize"),
        )?;
        record.outputs.push(N2ALPHA_FILE.into());
    }
    let vs = VerifySummary {
        suites: &suites,
        fixtures: fixtures.iter().map(|f| f.name.as_str()).collect(),
        summary: summary.clone(),
        min_p_star: rep.min_p_star(),
        p0: &rep.p0,
        n2alpha: &rep.n2alpha,
        verdict_csv_sha256: &record.verdict_csv_sha256,
        wall_time_s: wall,
    };
    write_file(&out.join(SUMMARY_FILE), serde_json::to_string_pretty(&vs).expect("summary serializes"))?;
    record.outputs.push(SUMMARY_FILE.into());
    record.save(&out.join(RECORD_FILE))?;

    print_summary(&summary, summary.violations.len(), summary.findings.len());
    if let Some(p) = rep.min_p_star() {
        println!("p0 search: smallest violating exponent {p:.4}, empirical bracket [2, {p:.4}]");
    }
    println!("{} verdicts in {wall:.1}s, written to {}", summary.total, out.display());

    if let Some(old) = &replayed {
        if old.verdict_csv != csv {
            return Err(CliError::ReplayMismatch(format!(
                "verdict table differs from the record (sha256 {} vs {})",
                record.verdict_csv_sha256, old.verdict_csv_sha256
            )));
        }
        println!("replay reproduced the recorded verdicts byte for byte (sha256 {})", old.verdict_csv_sha256);
    }
    gate(&rep.verdicts)
}

pub(crate) fn print_summary(s: &Summary, violations: usize, findings: usize) {
    let cols = [
        Outcome::Pass,
        Outcome::Fail,
        Outcome::ViolationFound,
        Outcome::Inconclusive,
        Outcome::Skipped,
    ];
    print!("{:<36}", "check");
    for c in cols {
        print!(" {:>15}", c.to_string());
    }
    println!();
    for (theorem, counts) in &s.counts {
        print!("{theorem:<36}");
        for c in cols {
            print!(" {:>15}", counts.get(&c).copied().unwrap_or(0));
        }
        println!();
    }
    println!(
        "{} rows, {} sharp, {} violations, {} findings",
        s.total, s.sharp_rows, violations, findings
    );
}
