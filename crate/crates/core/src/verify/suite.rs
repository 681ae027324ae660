use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::checks::{
    check_baernstein_circular, check_coefficient_theorem, check_exp_commutation,
    check_hayman_derivative, check_norm_chain, check_norm_chain_dilation, check_perimeter_reduction,
    check_realpart_suite, check_steiner_p2, search_p0, skip, P0Search,
};
use super::context::Harness;
use super::fixture::{Fixture, Tag};
use super::n2alpha::{n2alpha_run, n2alpha_verdicts, N2AlphaRow};
use super::verdict::{Gate, Summary, Verdict};
use crate::error::{Error, Result};

/// Slope of the dilation used for the sharp rows of the norm chain.
pub const DILATION_SLOPE: f64 = 1.5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    P2,
    Perimeter,
    Norms,
    Realpart,
    Coefficients,
    Hayman,
    N2alpha,
    P0,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::P2,
        Suite::Perimeter,
        Suite::Norms,
        Suite::Realpart,
        Suite::Coefficients,
        Suite::Hayman,
        Suite::N2alpha,
        Suite::P0,
    ];

    /// Parses a comma-separated list; `all` expands to every suite.
    pub fn parse_list(s: &str) -> Result<Vec<Suite>> {
        let mut out = Vec::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            if part == "all" {
                out.extend(Suite::ALL);
            } else {
                out.push(part.parse()?);
            }
        }
        if out.is_empty() {
            return Err(Error::InvalidInput("no suite given".into()));
        }
        out.sort();
        out.dedup();
        Ok(out)
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.to_string() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown suite {s}")))
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::P2 => "p2",
            Suite::Perimeter => "perimeter",
            Suite::Norms => "norms",
            Suite::Realpart => "realpart",
            Suite::Coefficients => "coefficients",
            Suite::Hayman => "hayman",
            Suite::N2alpha => "n2alpha",
            Suite::P0 => "p0",
        })
    }
}

/// Everything a verification run produced.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub verdicts: Vec<Verdict>,
    pub p0: Vec<P0Search>,
    pub n2alpha: Vec<N2AlphaRow>,
}

impl SuiteReport {
    pub fn summary(&self) -> Summary {
        Summary::of(&self.verdicts)
    }

    /// Smallest violation exponent over the searched fixtures.
    pub fn min_p_star(&self) -> Option<f64> {
        self.p0.iter().filter_map(|s| s.p_star).reduce(f64::min)
    }
}

/// Runs a check and turns a failure to evaluate into one skipped row.
fn guarded(theorem: &str, fx: &str, gate: Gate, r: Result<Vec<Verdict>>) -> Vec<Verdict> {
    match r {
        Ok(v) => v,
        Err(e) => {
            log::warn!("{theorem} on {fx}: {e}");
            skip(theorem, fx, &e, gate)
        }
    }
}

/// Runs `suites` over `fixtures` in a fixed order: suites in declaration
/// order, fixtures in the given order.
pub fn run_suites(h: &Harness, suites: &[Suite], fixtures: &[Fixture]) -> Result<SuiteReport> {
    let mut suites = suites.to_vec();
    suites.sort();
    suites.dedup();
    let mut rep = SuiteReport::default();
    let t = Gate::Theorem;
    for suite in suites {
        log::info!("suite {suite}");
        for fx in fixtures {
            let name = fx.name.as_str();
            let rows = match suite {
                Suite::P2 => guarded("steiner-p2-mean", name, t, check_steiner_p2(h, fx)),
                Suite::Perimeter => guarded("steiner-perimeter", name, t, check_perimeter_reduction(h, fx)),
                Suite::Norms => guarded("mean-vs-length", name, t, check_norm_chain(h, fx)),
                Suite::Realpart => {
                    let mut v = guarded("realpart-exp", name, t, check_realpart_suite(h, fx));
                    if fx.has(Tag::Rectangle) {
                        v.extend(guarded("exp-commutation", name, t, check_exp_commutation(h, fx).map(|x| vec![x])));
                    }
                    v
                }
                Suite::Coefficients => guarded("coef-area", name, t, check_coefficient_theorem(h, fx)),
                Suite::Hayman => {
                    let mut v = guarded("hayman-circular", name, t, check_hayman_derivative(h, fx));
                    v.extend(guarded("baernstein-log-mean", name, t, check_baernstein_circular(h, fx)));
                    v
                }
                Suite::N2alpha => {
                    if !h.config.n2alpha_fixtures.iter().any(|n| n == name) {
                        continue;
                    }
                    let mut v = Vec::new();
                    for &alpha in &h.config.n2alpha_alphas {
                        for floor in [1.0, h.config.n2alpha_floor] {
                            match n2alpha_run(h, fx, alpha, floor) {
                                Ok(row) => {
                                    v.extend(n2alpha_verdicts(h, &row));
                                    rep.n2alpha.push(row);
                                }
                                Err(e) => v.extend(skip("n2alpha-lower", name, &e, t)),
                            }
                        }
                    }
                    v
                }
                Suite::P0 => match search_p0(h, fx, h.config.p0_radius) {
                    Ok(s) => {
                        let v = vec![s.verdict()];
                        rep.p0.push(s);
                        v
                    }
                    Err(e) => skip("p0-search", name, &e, Gate::Search),
                },
            };
            rep.verdicts.extend(rows);
        }
        if suite == Suite::Norms {
            rep.verdicts.extend(guarded(
                "mean-vs-length",
                &format!("dilation-{DILATION_SLOPE}"),
                t,
                check_norm_chain_dilation(h, DILATION_SLOPE),
            ));
        }
    }
    Ok(rep)
}
