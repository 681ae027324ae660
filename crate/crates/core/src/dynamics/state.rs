use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{Point, Polygon};

/// Which sequence a deformation run produces.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    /// Every symmetrized domain is scaled by its shrinking factor.
    Shrunk,
    /// Domains are only rotated and symmetrized; factors are still recorded.
    Unshrunk,
}

/// One step of a deformation run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ShrinkRecord {
    pub step: usize,
    pub phi: f64,
    /// Shrinking factor, clamped to `(0, 1]`.
    pub c: f64,
    /// `max(floor/g′(0), α/‖g‖₂)` before clamping.
    pub c_raw: f64,
    /// Conformal radius of the symmetrized domain.
    pub g_deriv0: f64,
    /// `‖g‖₂` interval.
    pub h2_lo: f64,
    pub h2_hi: f64,
    pub diameter_before: f64,
    /// Diameter right after symmetrization, before vertex decimation.
    pub diameter_symmetrized: f64,
    pub diameter_after: f64,
    /// Scale applied after decimation to restore the area (1 if none).
    pub decimation_scale: f64,
    pub area_after: f64,
    pub perimeter_after: f64,
    pub vertices: usize,
}

impl ShrinkRecord {
    pub fn h2_mid(&self) -> f64 {
        0.5 * (self.h2_lo + self.h2_hi)
    }
}

/// Current domain of a rotate–symmetrize–shrink run and its bookkeeping.
#[derive(Clone, Debug)]
pub struct DeformationState {
    /// Floor on `‖g‖₂`.
    pub alpha: f64,
    /// Floor on `g′(0)`; 1 for the standard class.
    pub deriv_floor: f64,
    pub current: Polygon,
    pub step: usize,
    pub history: Vec<ShrinkRecord>,
    /// Running product of the recorded factors.
    pub product: f64,
    pub mode: Mode,
}

impl DeformationState {
    /// Starts a run at `p0`, which must contain the origin strictly.
    pub fn new(p0: Polygon, alpha: f64, mode: Mode) -> Result<Self> {
        if !(alpha > 0.0 && alpha.is_finite()) {
            return Err(Error::InvalidInput(format!("alpha must be positive, got {alpha}")));
        }
        if !p0.contains_strictly(Point::new(0.0, 0.0)) {
            return Err(Error::InvalidInput("origin is not strictly inside the polygon".into()));
        }
        Ok(DeformationState {
            alpha,
            deriv_floor: 1.0,
            current: p0,
            step: 0,
            history: Vec::new(),
            product: 1.0,
            mode,
        })
    }

    /// Replaces the derivative floor (the `f′(0) ≥ ε` variant of the class).
    pub fn with_deriv_floor(mut self, floor: f64) -> Result<Self> {
        if !(floor > 0.0 && floor.is_finite()) {
            return Err(Error::InvalidInput(format!("derivative floor must be positive, got {floor}")));
        }
        self.deriv_floor = floor;
        Ok(self)
    }

    /// Product of the history factors, recomputed from scratch.
    pub fn recomputed_product(&self) -> f64 {
        self.history.iter().map(|r| r.c).product()
    }

    /// `Σ log(1/c_n)` over the history.
    pub fn log_sum(&self) -> f64 {
        self.history.iter().map(|r| -r.c.ln()).sum()
    }

    pub fn factors(&self) -> Vec<f64> {
        self.history.iter().map(|r| r.c).collect()
    }
}

/// How rotation angles are chosen.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum AngleStrategy {
    /// Cycles through the list.
    FixedList { angles: Vec<f64> },
    /// Independent uniform angles in `[0, π)`.
    UniformRandom { seed: u64 },
    /// `φ_n = n·π(3 − √5)`.
    GoldenAngle,
    /// Minimizes the diameter after symmetrization over a grid of angles in
    /// `[0, π)`, refined by golden-section search.
    GreedyDiameter { grid: usize },
}

impl AngleStrategy {
    pub fn greedy() -> Self {
        AngleStrategy::GreedyDiameter { grid: 64 }
    }
}

impl std::fmt::Display for AngleStrategy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            AngleStrategy::FixedList { angles } => write!(f, "fixed({})", angles.len()),
            AngleStrategy::UniformRandom { seed } => write!(f, "random({seed})"),
            AngleStrategy::GoldenAngle => write!(f, "golden"),
            AngleStrategy::GreedyDiameter { grid } => write!(f, "greedy({grid})"),
        }
    }
}
