//! The record written next to every verification run.

use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use steinsym::verify::{Fixture, Suite, VerifyConfig};

use crate::error::{CliError, CliResult};

pub const RECORD_FILE: &str = "run_record.json";

/// A fixture as used by a run, with the hash of its polygon.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FixtureEntry {
    pub hash: String,
    pub fixture: Fixture,
}

/// Everything needed to rerun a verification and check that it reproduces.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RunRecord {
    pub tool_version: String,
    pub config: VerifyConfig,
    pub suites: Vec<Suite>,
    pub fixtures: Vec<FixtureEntry>,
    /// The verdict table exactly as written to `verdicts.csv`.
    pub verdict_csv: String,
    pub verdict_csv_sha256: String,
    /// Other files written by the run, relative to the output directory.
    pub outputs: Vec<String>,
    pub telemetry: Vec<String>,
    pub wall_time_s: f64,
}

impl RunRecord {
    pub fn new(config: VerifyConfig, suites: Vec<Suite>, fixtures: &[Fixture]) -> Self {
        RunRecord {
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            config,
            suites,
            fixtures: fixtures
                .iter()
                .map(|f| FixtureEntry {
                    hash: f.polygon.hash_hex(),
                    fixture: f.clone(),
                })
                .collect(),
            verdict_csv: String::new(),
            verdict_csv_sha256: String::new(),
            outputs: Vec::new(),
            telemetry: Vec::new(),
            wall_time_s: 0.0,
        }
    }

    pub fn set_verdicts(&mut self, csv: String) {
        self.verdict_csv_sha256 = sha256_hex(csv.as_bytes());
        self.verdict_csv = csv;
    }

    /// The recorded fixtures, after checking each polygon against its hash.
    pub fn checked_fixtures(&self) -> CliResult<Vec<Fixture>> {
        self.fixtures
            .iter()
            .map(|e| {
                let h = e.fixture.polygon.hash_hex();
                if h != e.hash {
                    return Err(CliError::Input(format!(
                        "fixture {} hash {h} does not match the recorded {}",
                        e.fixture.name, e.hash
                    )));
                }
                Ok(e.fixture.clone())
            })
            .collect()
    }

    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(format!("reading {}", path.display()), e))?;
        serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
    }

    pub fn save(&self, path: &Path) -> CliResult<()> {
        let text = serde_json::to_string_pretty(self).expect("run record serializes");
        crate::input::write_file(path, text)
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}
