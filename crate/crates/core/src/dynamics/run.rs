use std::f64::consts::PI;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::product::product_lower_bound_with_floor;
use super::state::{AngleStrategy, DeformationState, Mode};
use super::step::{deform_step, AngleChooser, StepOptions};
use crate::error::Result;
use crate::geom::{boundary_hausdorff, Point, Polygon};

/// Vertex count of the reference circle in [`disk_hausdorff`].
pub const REFERENCE_CIRCLE_VERTICES: usize = 4096;

/// Diameter reduction below which a greedy step counts as stagnant.
pub const STAGNATION_REDUCTION: f64 = 1e-10;

/// Consecutive stagnant greedy steps that end a run.
pub const STAGNATION_STEPS: usize = 20;

/// When a run stops. Every criterion that is set must hold for convergence.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StopCriteria {
    pub max_steps: usize,
    /// Boundary Hausdorff distance to the disk of equal area about 0.
    pub hausdorff_tol: Option<f64>,
    /// Bound on `perimeter² / (4π area) - 1`.
    pub isoperimetric_tol: Option<f64>,
}

impl Default for StopCriteria {
    fn default() -> Self {
        StopCriteria {
            max_steps: 200,
            hausdorff_tol: Some(1e-2),
            isoperimetric_tol: None,
        }
    }
}

/// Everything that configures a deformation run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub alpha: f64,
    pub deriv_floor: f64,
    pub mode: Mode,
    pub strategy: AngleStrategy,
    pub stop: StopCriteria,
    pub step: StepOptions,
    /// Keep every k-th domain (and always the last); 0 keeps none.
    pub snapshot_every: usize,
}

impl RunConfig {
    pub fn new(alpha: f64, mode: Mode, strategy: AngleStrategy) -> Self {
        RunConfig {
            alpha,
            deriv_floor: 1.0,
            mode,
            strategy,
            stop: StopCriteria::default(),
            step: StepOptions::default(),
            snapshot_every: 0,
        }
    }
}

/// Per-step telemetry line.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TelemetryRecord {
    pub step: usize,
    pub phi: f64,
    pub c: f64,
    pub g_deriv0: f64,
    pub h2_lo: f64,
    pub h2_hi: f64,
    pub product: f64,
    pub area: f64,
    pub perimeter: f64,
    pub diameter: f64,
    pub target_radius: f64,
    pub hausdorff_to_target: f64,
}

/// How a run ended.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum RunOutcome {
    Converged { step: usize },
    Stagnated { step: usize },
    BudgetExhausted,
}

/// Final state of a run with its telemetry and verdicts.
#[derive(Clone, Debug)]
pub struct RunReport {
    pub state: DeformationState,
    pub outcome: RunOutcome,
    pub telemetry: Vec<TelemetryRecord>,
    /// `max{floor, α}/√(area(p0)/π)`.
    pub lower_bound: f64,
    /// Largest violation of `lower_bound ≤ product ≤ 1` over the run (0 if
    /// none).
    pub bound_excess: f64,
    /// `(step, domain)` pairs; step 0 is the input.
    pub snapshots: Vec<(usize, Polygon)>,
}

impl RunReport {
    pub fn converged(&self) -> bool {
        matches!(self.outcome, RunOutcome::Converged { .. })
    }

    pub fn final_hausdorff(&self) -> f64 {
        self.telemetry.last().map_or(f64::NAN, |t| t.hausdorff_to_target)
    }

    pub fn angles(&self) -> Vec<f64> {
        self.state.history.iter().map(|r| r.phi).collect()
    }
}

/// Boundary Hausdorff distance from `p` to the circle `|w| = radius`,
/// approximated by a regular polygon with
/// [`REFERENCE_CIRCLE_VERTICES`] vertices.
pub fn disk_hausdorff(p: &Polygon, radius: f64) -> Result<f64> {
    let c = Polygon::regular(REFERENCE_CIRCLE_VERTICES, radius, Point::new(0.0, 0.0), 0.0)?;
    Ok(boundary_hausdorff(p, &c))
}

/// Iterates [`deform_step`] from `p0` until the stop criteria hold, the
/// greedy search stagnates, or the step budget runs out.
///
/// The target is the disk about 0 with the area of the current domain.
/// At least one step is always taken.
pub fn run_deformation(p0: &Polygon, cfg: &RunConfig) -> Result<RunReport> {
    let mut state = DeformationState::new(p0.clone(), cfg.alpha, cfg.mode)?.with_deriv_floor(cfg.deriv_floor)?;
    let mut chooser = AngleChooser::new(cfg.strategy.clone())?;
    let greedy = matches!(cfg.strategy, AngleStrategy::GreedyDiameter { .. });
    let lower_bound = product_lower_bound_with_floor(p0, cfg.alpha, cfg.deriv_floor);
    let mut telemetry = Vec::new();
    let mut snapshots = Vec::new();
    if cfg.snapshot_every > 0 {
        snapshots.push((0, p0.clone()));
    }
    let mut bound_excess = 0.0f64;
    let mut stagnant = 0;
    let mut outcome = RunOutcome::BudgetExhausted;
    for _ in 0..cfg.stop.max_steps.max(1) {
        let phi = chooser.next_angle(&state.current)?;
        state = deform_step(&state, phi, &cfg.step)?;
        let rec = state.history.last().expect("step recorded");
        let area = state.current.area();
        let radius = (area / PI).sqrt();
        let h = disk_hausdorff(&state.current, radius)?;
        telemetry.push(TelemetryRecord {
            step: state.step,
            phi,
            c: rec.c,
            g_deriv0: rec.g_deriv0,
            h2_lo: rec.h2_lo,
            h2_hi: rec.h2_hi,
            product: state.product,
            area,
            perimeter: rec.perimeter_after,
            diameter: rec.diameter_after,
            target_radius: radius,
            hausdorff_to_target: h,
        });
        if cfg.mode == Mode::Shrunk {
            bound_excess = bound_excess
                .max(lower_bound - state.product)
                .max(state.product - 1.0);
        }
        if cfg.snapshot_every > 0 && state.step % cfg.snapshot_every == 0 {
            snapshots.push((state.step, state.current.clone()));
        }
        let iso = rec.perimeter_after.powi(2) / (4.0 * PI * area) - 1.0;
        let done_h = cfg.stop.hausdorff_tol.map_or(true, |t| h < t);
        let done_i = cfg.stop.isoperimetric_tol.map_or(true, |t| iso < t);
        let any = cfg.stop.hausdorff_tol.is_some() || cfg.stop.isoperimetric_tol.is_some();
        if any && done_h && done_i {
            outcome = RunOutcome::Converged { step: state.step };
            break;
        }
        if greedy {
            if rec.diameter_before - rec.diameter_after < STAGNATION_REDUCTION * rec.diameter_before {
                stagnant += 1;
            } else {
                stagnant = 0;
            }
            if stagnant >= STAGNATION_STEPS {
                log::warn!("greedy deformation stagnated at step {}", state.step);
                outcome = RunOutcome::Stagnated { step: state.step };
                break;
            }
        }
    }
    if cfg.snapshot_every > 0 && snapshots.last().map_or(true, |s| s.0 != state.step) {
        snapshots.push((state.step, state.current.clone()));
    }
    Ok(RunReport {
        state,
        outcome,
        telemetry,
        lower_bound,
        bound_excess,
        snapshots,
    })
}

/// Writes telemetry as JSON lines.
pub fn write_telemetry(path: &Path, records: &[TelemetryRecord]) -> Result<()> {
    let mut f = std::io::BufWriter::new(std::fs::File::create(path)?);
    for r in records {
        serde_json::to_writer(&mut f, r)?;
        f.write_all(b"\n")?;
    }
    f.flush()?;
    Ok(())
}
