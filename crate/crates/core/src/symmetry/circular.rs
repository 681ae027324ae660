use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::geom::{angular_measure, segment_distance, Point, Polygon};

/// Output of [`circular_symmetrize_detailed`].
#[derive(Clone, Debug)]
pub struct CircularSymmetrization {
    pub polygon: Polygon,
    /// Set when a full circle was found at a radius where the domain should
    /// not contain one (annular band). The polygon is still valid.
    pub degraded: bool,
}

/// Relative offset used to sample one-sided limits at mandatory radii.
const SIDE: f64 = 1e-9;
/// Output vertices closer than this fraction of the outer radius are merged.
const VERTEX_MERGE: f64 = 1e-7;

/// Circular symmetrization of `p` about the positive real axis.
///
/// See [`circular_symmetrize_detailed`].
pub fn circular_symmetrize(p: &Polygon, radial_budget: usize) -> Result<Polygon> {
    circular_symmetrize_detailed(p, radial_budget).map(|c| c.polygon)
}

/// Replaces every circle slice `{|z| = t} ∩ p` by one arc of the same
/// angular measure centered on the positive real axis.
///
/// Radii are a uniform grid of `radial_budget` points between the nearest and
/// farthest boundary distance from the origin, plus every vertex radius and
/// every edge's closest-approach radius. At those mandatory radii both
/// one-sided limits are sampled and the jump between them is drawn as an
/// arc of the circle. Consecutive samples are joined linearly in polar
/// coordinates.
pub fn circular_symmetrize_detailed(
    p: &Polygon,
    radial_budget: usize,
) -> Result<CircularSymmetrization> {
    if radial_budget < 64 {
        return Err(Error::InvalidInput(format!(
            "radial budget must be at least 64, got {radial_budget}"
        )));
    }
    let origin = Point::new(0.0, 0.0);
    let origin_inside = p.contains_strictly(origin);
    let t_lo = p.boundary_distance(origin);
    let t_hi = p.vertices().iter().map(|v| v.norm()).fold(0.0, f64::max);

    let mut mandatory: Vec<f64> = p.vertices().iter().map(|v| v.norm()).collect();
    mandatory.extend(p.edges().map(|(a, b)| segment_distance(origin, a, b)));
    mandatory.push(t_lo);
    let mut radii: Vec<(f64, bool)> = mandatory.into_iter().map(|t| (t, true)).collect();
    for k in 0..radial_budget {
        let t = t_lo + (t_hi - t_lo) * k as f64 / (radial_budget - 1) as f64;
        radii.push((t, false));
    }
    radii.sort_by(|a, b| a.0.total_cmp(&b.0).then(b.1.cmp(&a.1)));
    let merge = 1e-12 * t_hi;
    let mut grid: Vec<(f64, bool)> = Vec::with_capacity(radii.len());
    for (t, m) in radii {
        match grid.last_mut() {
            Some(last) if t - last.0 <= merge => last.1 |= m,
            _ => grid.push((t, m)),
        }
    }

    let mut degraded = false;
    // (radius, half-angle from the larger-radius side, from the smaller side)
    let mut samples: Vec<(f64, f64, f64)> = Vec::with_capacity(grid.len());
    let last = grid.len() - 1;
    for (k, &(t, mandatory)) in grid.iter().enumerate() {
        let (outer, inner) = if k == last {
            (0.0, angular_measure(p, t * (1.0 - SIDE)))
        } else if k == 0 {
            let o = angular_measure(p, t * (1.0 + SIDE));
            (o, if origin_inside { 2.0 * PI } else { 0.0 })
        } else if mandatory {
            (
                angular_measure(p, t * (1.0 + SIDE)),
                angular_measure(p, t * (1.0 - SIDE)),
            )
        } else {
            let v = angular_measure(p, t);
            (v, v)
        };
        if k > 0 && (outer >= 2.0 * PI || (inner >= 2.0 * PI && k > 1)) {
            degraded = true;
        }
        samples.push((t, 0.5 * outer, 0.5 * inner));
    }

    let thick = 1e-9;
    let arc_step = 2.0 * PI / radial_budget as f64;
    let mut upper: Vec<Point> = Vec::new();
    let mut prev: Option<(f64, f64)> = None;
    for (k, &(t, mut outer, mut inner)) in samples.iter().enumerate().rev() {
        if k != last {
            outer = outer.max(thick);
        }
        if k != 0 || origin_inside {
            inner = inner.max(thick);
        }
        outer = outer.min(PI - thick);
        inner = if k == 0 { inner.min(PI) } else { inner.min(PI - thick) };
        if let Some((t0, a0)) = prev {
            push_spiral(&mut upper, (t0, a0), (t, outer), arc_step);
        }
        push_arc(&mut upper, t, outer, inner, arc_step);
        prev = Some((t, inner));
    }
    // Nearly coincident radii leave vertices a rounding distance apart;
    // such edges only hinder the map construction.
    let close = VERTEX_MERGE * t_hi;
    let mut half: Vec<Point> = Vec::with_capacity(upper.len());
    for (i, &z) in upper.iter().enumerate() {
        if i + 1 == upper.len() || half.last().map_or(true, |l| (*l - z).norm() > close) {
            half.push(z);
        }
    }
    let mut pts = half.clone();
    for z in half.iter().rev() {
        push_near(&mut pts, z.conj(), merge.max(1e-15));
    }
    while pts.len() > 1 && (pts[0] - pts[pts.len() - 1]).norm() <= merge.max(1e-15) {
        pts.pop();
    }
    if degraded {
        log::warn!("circular symmetrization met a full-circle slice away from the origin");
    }
    let polygon = Polygon::new(pts)
        .map_err(|e| Error::ApproximationDegraded(format!("output polygon invalid: {e}")))?;
    Ok(CircularSymmetrization { polygon, degraded })
}

/// Appends points of the circle `|z| = t` from angle `from` to angle `to`.
fn push_arc(v: &mut Vec<Point>, t: f64, from: f64, to: f64, step: f64) {
    let k = ((to - from).abs() / step).ceil().max(1.0) as usize;
    let tol = 1e-15 * t.max(1.0);
    push_near(v, Point::from_polar(t, from), tol);
    for j in 1..=k {
        let a = from + (to - from) * j as f64 / k as f64;
        push_near(v, Point::from_polar(t, a), tol);
    }
}

/// Appends interior points of the curve joining two samples linearly in
/// `(radius, angle)`, so that large angle changes between close radii
/// follow the circles instead of cutting across them.
fn push_spiral(v: &mut Vec<Point>, from: (f64, f64), to: (f64, f64), step: f64) {
    let k = ((to.1 - from.1).abs() / step).ceil() as usize;
    for j in 1..k {
        let s = j as f64 / k as f64;
        let z = Point::from_polar(from.0 + (to.0 - from.0) * s, from.1 + (to.1 - from.1) * s);
        push_near(v, z, 1e-15 * from.0.max(1.0));
    }
}

fn push_near(v: &mut Vec<Point>, z: Point, tol: f64) {
    if v.last().map_or(true, |l| (*l - z).norm() > tol) {
        v.push(z);
    }
}
