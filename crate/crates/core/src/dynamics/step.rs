use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::state::{AngleStrategy, DeformationState, Mode, ShrinkRecord};
use crate::conformal::{build_map, hardy_norm, ConformalMap, NormInterval};
use crate::error::{Error, Result};
use crate::geom::{vertical_slices, Point, Polygon, SliceProfile};
use crate::symmetry::steiner_from_profile;

/// Default vertex budget for iterated domains.
pub const DEFAULT_VERTEX_BUDGET: usize = 512;

/// Largest relative spread of `‖g‖₂` accepted before the map is rebuilt at
/// a tenth of the tolerance.
pub const NORM_SPREAD: f64 = 1e-3;

/// Golden-section stopping width for the greedy angle search.
pub const GREEDY_ANGLE_TOL: f64 = 1e-4;

/// Numerical settings of a deformation step.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StepOptions {
    pub tol_map: f64,
    pub vertex_budget: usize,
}

impl Default for StepOptions {
    fn default() -> Self {
        StepOptions {
            tol_map: crate::conformal::DEFAULT_MAP_TOL,
            vertex_budget: DEFAULT_VERTEX_BUDGET,
        }
    }
}

/// Result of rotating by `φ`, symmetrizing and decimating.
#[derive(Clone, Debug)]
pub struct Symmetrized {
    pub polygon: Polygon,
    /// Diameter before decimation.
    pub diameter: f64,
    /// Area-restoring scale applied after decimation.
    pub scale: f64,
}

/// `steiner_symmetrize(rotate(p, φ))`, decimated to at most `budget`
/// vertices.
///
/// Decimation removes interior breakpoints of the slice profile where
/// `l` is continuous, smallest triangle first, then rescales about the
/// origin so that the area is unchanged.
pub fn symmetrize_rotated(p: &Polygon, phi: f64, budget: usize) -> Result<Symmetrized> {
    if budget < 16 {
        return Err(Error::InvalidInput(format!("vertex budget must be at least 16, got {budget}")));
    }
    let mut prof = vertical_slices(&p.rotate(phi));
    let area = prof.integral();
    let full = steiner_from_profile(&prof)?;
    let diameter = full.diameter();
    if full.len() <= budget {
        return Ok(Symmetrized { polygon: full, diameter, scale: 1.0 });
    }
    let jumps = (0..prof.breakpoints.len())
        .filter(|&j| prof.left[j] != prof.right[j])
        .count();
    let keep = (budget / 2).saturating_sub(jumps).max(4);
    decimate_profile(&mut prof, keep);
    let coarse = steiner_from_profile(&prof)?;
    let scale = (area / coarse.area()).sqrt();
    Ok(Symmetrized {
        polygon: coarse.scale(scale)?,
        diameter,
        scale,
    })
}

/// Removes continuous interior breakpoints until at most `keep` remain,
/// always dropping the one spanning the smallest triangle with its
/// neighbours.
fn decimate_profile(prof: &mut SliceProfile, keep: usize) {
    let area_at = |b: &[f64], l: &[f64], r: &[f64], i: usize, j: usize, k: usize| {
        let (x0, y0) = (b[i], r[i]);
        let (x1, y1) = (b[j], r[j]);
        let (x2, y2) = (b[k], l[k]);
        ((x1 - x0) * (y2 - y0) - (x2 - x0) * (y1 - y0)).abs()
    };
    while prof.breakpoints.len() > keep {
        let (b, l, r) = (&prof.breakpoints, &prof.left, &prof.right);
        let mut best: Option<(usize, f64)> = None;
        for j in 1..b.len() - 1 {
            if l[j] != r[j] {
                continue;
            }
            let a = area_at(b, l, r, j - 1, j, j + 1);
            if best.map_or(true, |(_, m)| a < m) {
                best = Some((j, a));
            }
        }
        let Some((j, _)) = best else { break };
        prof.breakpoints.remove(j);
        prof.left.remove(j);
        prof.right.remove(j);
    }
}

/// Conformal radius and `‖g‖₂` of the map onto `p` normalized at 0.
///
/// The map is rebuilt once at a tenth of `tol` when the norm interval is
/// wider than [`NORM_SPREAD`].
pub fn factor_inputs(p: &Polygon, tol: f64) -> Result<(ConformalMap, NormInterval)> {
    let origin = Point::new(0.0, 0.0);
    let map = build_map(p, origin, tol)?;
    let norm = hardy_norm(&map, 2.0)?;
    if norm.spread() < NORM_SPREAD {
        return Ok((map, norm));
    }
    let finer = (0.1 * tol).max(1e-8);
    log::info!("norm spread {:.2e} too wide, rebuilding at tol {finer:.1e}", norm.spread());
    let map = build_map(p, origin, finer)?;
    let norm = hardy_norm(&map, 2.0)?;
    Ok((map, norm))
}

/// One rotate–symmetrize–shrink step at angle `φ`.
///
/// In shrunk mode the symmetrized domain is scaled by
/// `c_φ = max(floor/g′(0), α/‖g‖₂)` (clamped to 1); in unshrunk mode it is
/// kept as is and `c_φ` is only recorded.
pub fn deform_step(s: &DeformationState, phi: f64, opts: &StepOptions) -> Result<DeformationState> {
    let step = s.step + 1;
    let fail = |e: Error| Error::StepFailure { step, source: Box::new(e) };
    let diameter_before = s.current.diameter();
    let sym = symmetrize_rotated(&s.current, phi, opts.vertex_budget).map_err(fail)?;
    let (map, norm) = factor_inputs(&sym.polygon, opts.tol_map).map_err(fail)?;
    let g0 = map.deriv0();
    let c_raw = (s.deriv_floor / g0).max(s.alpha / norm.mid());
    let c = c_raw.min(1.0);
    if !(c > 0.0) {
        return Err(fail(Error::PreconditionViolation(format!("shrinking factor {c_raw} not positive"))));
    }
    let current = match s.mode {
        Mode::Shrunk => sym.polygon.scale(c).map_err(fail)?,
        Mode::Unshrunk => sym.polygon,
    };
    let record = ShrinkRecord {
        step,
        phi,
        c,
        c_raw,
        g_deriv0: g0,
        h2_lo: norm.lo,
        h2_hi: norm.hi,
        diameter_before,
        diameter_symmetrized: sym.diameter,
        diameter_after: current.diameter(),
        decimation_scale: sym.scale,
        area_after: current.area(),
        perimeter_after: current.perimeter(),
        vertices: current.len(),
    };
    let mut history = s.history.clone();
    history.push(record);
    Ok(DeformationState {
        alpha: s.alpha,
        deriv_floor: s.deriv_floor,
        current,
        step,
        history,
        product: s.product * c,
        mode: s.mode,
    })
}

/// Stateful angle source for an [`AngleStrategy`].
#[derive(Clone, Debug)]
pub struct AngleChooser {
    strategy: AngleStrategy,
    rng: ChaCha8Rng,
    index: usize,
}

impl AngleChooser {
    pub fn new(strategy: AngleStrategy) -> Result<Self> {
        let seed = match &strategy {
            AngleStrategy::FixedList { angles } if angles.is_empty() => {
                return Err(Error::InvalidInput("fixed angle list is empty".into()));
            }
            AngleStrategy::GreedyDiameter { grid } if *grid < 2 => {
                return Err(Error::InvalidInput("greedy grid needs at least 2 angles".into()));
            }
            AngleStrategy::UniformRandom { seed } => *seed,
            _ => 0,
        };
        Ok(AngleChooser {
            strategy,
            rng: ChaCha8Rng::seed_from_u64(seed),
            index: 0,
        })
    }

    /// Next angle for the domain `p`.
    pub fn next_angle(&mut self, p: &Polygon) -> Result<f64> {
        let k = self.index;
        self.index += 1;
        Ok(match &self.strategy {
            AngleStrategy::FixedList { angles } => angles[k % angles.len()],
            AngleStrategy::UniformRandom { .. } => self.rng.gen_range(0.0..std::f64::consts::PI),
            AngleStrategy::GoldenAngle => {
                let g = std::f64::consts::PI * (3.0 - 5f64.sqrt());
                (k as f64 * g).rem_euclid(std::f64::consts::PI)
            }
            AngleStrategy::GreedyDiameter { grid } => greedy_angle(p, *grid)?,
        })
    }
}

/// Angle in `[0, π)` minimizing the diameter after symmetrization.
pub fn greedy_angle(p: &Polygon, grid: usize) -> Result<f64> {
    let pi = std::f64::consts::PI;
    let objective = |phi: f64| -> Result<f64> {
        let prof = vertical_slices(&p.rotate(phi));
        Ok(steiner_from_profile(&prof)?.diameter())
    };
    let h = pi / grid as f64;
    let mut best = (0.0, f64::INFINITY);
    for k in 0..grid {
        let phi = k as f64 * h;
        let d = objective(phi)?;
        if d < best.1 {
            best = (phi, d);
        }
    }
    let inv = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (best.0 - h, best.0 + h);
    let mut x1 = b - inv * (b - a);
    let mut x2 = a + inv * (b - a);
    let (mut f1, mut f2) = (objective(x1)?, objective(x2)?);
    while b - a > GREEDY_ANGLE_TOL {
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv * (b - a);
            f1 = objective(x1)?;
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv * (b - a);
            f2 = objective(x2)?;
        }
    }
    let (x, f) = if f1 <= f2 { (x1, f1) } else { (x2, f2) };
    let phi = if f < best.1 { x } else { best.0 };
    Ok(phi.rem_euclid(pi))
}
