use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::run::{run_deformation, RunConfig};
use super::state::{AngleStrategy, Mode};
use crate::conformal::{periodic_mean, ConformalMap, Estimate};
use crate::error::{Error, Result};
use crate::geom::Polygon;

/// Radius of the interior circle used by [`green_area`] cross-checks.
pub const GREEN_RADIUS: f64 = 0.999;

/// Lower bound `max{1, α}/√(area(p0)/π)` for the product of shrinking
/// factors of any run started at `p0`.
pub fn product_lower_bound(p0: &Polygon, alpha: f64) -> f64 {
    product_lower_bound_with_floor(p0, alpha, 1.0)
}

/// [`product_lower_bound`] for the class with `f′(0) ≥ floor`.
pub fn product_lower_bound_with_floor(p0: &Polygon, alpha: f64, floor: f64) -> f64 {
    floor.max(alpha) / (p0.area() / PI).sqrt()
}

/// `∫₀^{2π} Re f(re^{iθ}) Re(re^{iθ} f′(re^{iθ})) dθ`, the area enclosed by
/// `f(|z| = r)` when `f(0) = 0`.
pub fn green_area(map: &ConformalMap, r: f64) -> Result<Estimate> {
    let m = periodic_mean(
        |t| {
            let z = crate::geom::Point::from_polar(r, t);
            let (f, df) = map.eval_with_deriv(z)?;
            Ok(f.re * (z * df).re)
        },
        1e-9,
        0.0,
    )?;
    Ok(Estimate {
        value: 2.0 * PI * m.value,
        error: 2.0 * PI * m.error,
        nodes: m.nodes,
    })
}

/// The closed-form lower bound together with its boundary-integral
/// cross-check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LowerBoundCheck {
    pub bound: f64,
    pub area: f64,
    /// [`green_area`] at [`GREEN_RADIUS`].
    pub green_area: f64,
    /// `|green_area / area - 1|`.
    pub relative: f64,
}

/// [`product_lower_bound`] with the Green-formula area from `map`
/// (normalized at 0 onto `p0`).
pub fn product_lower_bound_check(map: &ConformalMap, alpha: f64) -> Result<LowerBoundCheck> {
    if map.w0().norm() != 0.0 {
        return Err(Error::PreconditionViolation("map must be normalized at the origin".into()));
    }
    let area = map.target().area();
    let g = green_area(map, GREEN_RADIUS)?;
    Ok(LowerBoundCheck {
        bound: product_lower_bound(map.target(), alpha),
        area,
        green_area: g.value,
        relative: (g.value / area - 1.0).abs(),
    })
}

/// Outcome of feeding the same angles to a shrunk and an unshrunk run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub steps: usize,
    pub angles: Vec<f64>,
    /// Product of the shrunk run's factors.
    pub product: f64,
    /// `max{floor/G′(0), α/‖G‖₂}` for the unshrunk step-N map `G`.
    pub rhs: f64,
    pub residual: f64,
}

/// Runs `steps` shrunk steps with `strategy`, replays the chosen angles in
/// unshrunk mode, and compares the product with the factor of the final
/// unshrunk map.
pub fn product_identity_check(
    p0: &Polygon,
    alpha: f64,
    strategy: AngleStrategy,
    steps: usize,
    base: &RunConfig,
) -> Result<IdentityCheck> {
    if steps == 0 {
        return Err(Error::InvalidInput("identity check needs at least one step".into()));
    }
    let mut cfg = base.clone();
    cfg.alpha = alpha;
    cfg.strategy = strategy;
    cfg.mode = Mode::Shrunk;
    cfg.stop.max_steps = steps;
    cfg.stop.hausdorff_tol = None;
    cfg.stop.isoperimetric_tol = None;
    cfg.snapshot_every = 0;
    let shrunk = run_deformation(p0, &cfg)?;
    let angles = shrunk.angles();
    cfg.mode = Mode::Unshrunk;
    cfg.strategy = AngleStrategy::FixedList { angles: angles.clone() };
    cfg.stop.max_steps = angles.len();
    let unshrunk = run_deformation(p0, &cfg)?;
    let last = unshrunk.state.history.last().expect("at least one step");
    let product = shrunk.state.product;
    Ok(IdentityCheck {
        steps: angles.len(),
        angles,
        product,
        rhs: last.c_raw,
        residual: (product - last.c_raw).abs(),
    })
}
