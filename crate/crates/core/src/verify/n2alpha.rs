use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::context::Harness;
use super::fixture::Fixture;
use super::verdict::{params, Gate, Verdict};
use crate::conformal::hardy_norm;
use crate::dynamics::{run_deformation, AngleStrategy, Mode, RunConfig, RunOutcome};
use crate::error::Result;
use crate::geom::Point;

/// Relative distance to the extremal value accepted for converged runs.
pub const ATTAINMENT_TOL: f64 = 0.05;

/// One shrunk run started from a fixture rescaled into the class.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct N2AlphaRow {
    pub fixture: String,
    pub alpha: f64,
    /// Lower bound on `f′(0)` defining the class.
    pub floor: f64,
    /// Factor that made one constraint binding.
    pub scale: f64,
    pub steps: usize,
    pub outcome: RunOutcome,
    /// Perimeter of the final domain, `∫|f′(e^{iθ})|dθ`.
    pub terminal: f64,
    /// `2π · max{floor, α}`.
    pub expected: f64,
}

impl N2AlphaRow {
    pub fn converged(&self) -> bool {
        matches!(self.outcome, RunOutcome::Converged { .. })
    }
}

/// Rescales `fx` so that `f′(0) ≥ floor` and `‖f‖₂ ≥ α` with one equality,
/// then runs the shrunk greedy deformation.
pub fn n2alpha_run(h: &Harness, fx: &Fixture, alpha: f64, floor: f64) -> Result<N2AlphaRow> {
    let f = h.map(&fx.polygon, Point::new(0.0, 0.0))?;
    let norm = hardy_norm(&f, 2.0)?.mid();
    let scale = (floor / f.deriv0()).max(alpha / norm);
    let p0 = fx.polygon.scale(scale)?;
    let mut cfg = RunConfig::new(alpha, Mode::Shrunk, AngleStrategy::greedy());
    cfg.deriv_floor = floor;
    cfg.stop.max_steps = h.config.n2alpha_steps;
    cfg.step.tol_map = h.config.tol_map;
    let rep = run_deformation(&p0, &cfg)?;
    Ok(N2AlphaRow {
        fixture: fx.name.clone(),
        alpha,
        floor,
        scale,
        steps: rep.state.step,
        outcome: rep.outcome,
        terminal: rep.state.current.perimeter(),
        expected: 2.0 * PI * floor.max(alpha),
    })
}

/// Verdicts of one run: the terminal length is at least the extremal value
/// and, for converged runs, within 5% of it.
pub fn n2alpha_verdicts(h: &Harness, row: &N2AlphaRow) -> Vec<Verdict> {
    let par = params(&[
        ("alpha", row.alpha.to_string()),
        ("floor", row.floor.to_string()),
        ("steps", row.steps.to_string()),
    ]);
    let mut out = vec![Verdict::compare(
        "n2alpha-lower",
        &row.fixture,
        par.clone(),
        row.expected,
        row.terminal,
        h.budget(h.config.tol_map * row.expected),
        Gate::Theorem,
    )];
    if row.converged() {
        out.push(Verdict::compare(
            "n2alpha-attained",
            &row.fixture,
            par,
            (row.terminal / row.expected - 1.0).abs(),
            ATTAINMENT_TOL,
            0.0,
            Gate::Theorem,
        ));
    } else {
        out.push(Verdict::skipped(
            "n2alpha-attained",
            &row.fixture,
            par,
            format!("run did not converge: {:?}", row.outcome),
            Gate::Theorem,
        ));
    }
    out
}

/// Runs every configured `α` with the unit floor and with the small floor
/// on each fixture.
pub fn n2alpha_experiment(h: &Harness, fixtures: &[Fixture]) -> Result<Vec<N2AlphaRow>> {
    let mut rows = Vec::new();
    for fx in fixtures {
        for &alpha in &h.config.n2alpha_alphas {
            for floor in [1.0, h.config.n2alpha_floor] {
                rows.push(n2alpha_run(h, fx, alpha, floor)?);
            }
        }
    }
    Ok(rows)
}
