use super::Polygon;

/// Boundary subdivision used by [`boundary_hausdorff`], relative to the
/// larger diameter of the two polygons.
pub const HAUSDORFF_SPACING: f64 = 1e-3;

/// Symmetric Hausdorff distance between the boundary curves of `a` and `b`.
///
/// Each boundary is densified to spacing `1e-3 · max(diam a, diam b)` and
/// every sample is measured exactly against the other boundary, so the
/// result underestimates the true distance by at most half a spacing.
///
/// # Complexity
///
/// O((L/h) · n) per direction, with `L` the perimeter and `h` the spacing.
pub fn boundary_hausdorff(a: &Polygon, b: &Polygon) -> f64 {
    let h = HAUSDORFF_SPACING * a.diameter().max(b.diameter());
    directed(a, b, h).max(directed(b, a, h))
}

fn directed(from: &Polygon, to: &Polygon, h: f64) -> f64 {
    from.densify(h)
        .into_iter()
        .map(|z| to.boundary_distance(z))
        .fold(0.0, f64::max)
}
