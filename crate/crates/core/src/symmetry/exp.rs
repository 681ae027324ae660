use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::geom::{vertical_slices, Polygon};

/// Polygonal approximation of `exp(p)`.
///
/// Edges are densified to steps of at most `min(1e-2, perimeter /
/// boundary_budget)` and every sample `w` is mapped to `e^w`. Requires every
/// vertical slice of `p` to be shorter than `2π`.
pub fn exp_domain(p: &Polygon, boundary_budget: usize) -> Result<Polygon> {
    let lmax = vertical_slices(p).max_value();
    if lmax >= 2.0 * PI {
        return Err(Error::PreconditionViolation(format!(
            "vertical slice of length {lmax:.6} is not shorter than 2π"
        )));
    }
    let step = (p.perimeter() / boundary_budget.max(1) as f64).min(1e-2);
    let pts = p.densify(step).into_iter().map(|w| w.exp()).collect();
    Polygon::new(pts).map_err(|e| {
        Error::PreconditionViolation(format!("exponential image is not a simple polygon: {e}"))
    })
}
