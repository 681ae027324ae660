//! Planar polygons and the exact geometry needed by the symmetrizations.

mod hausdorff;
mod polygon;
mod slices;

pub use hausdorff::{boundary_hausdorff, HAUSDORFF_SPACING};
pub use polygon::{segment_distance, Polygon};
pub use slices::{angular_measure, radial_slices, vertical_slices, SliceKind, SliceProfile};

pub(crate) use polygon::{remove_collinear};

/// Planar point, stored as a complex number `x + iy`.
pub type Point = num_complex::Complex64;

/// z-component of the cross product of two plane vectors.
#[inline]
pub(crate) fn cross(u: Point, v: Point) -> f64 {
    u.re * v.im - u.im * v.re
}

/// Shoelace area of `p`.
pub fn area(p: &Polygon) -> f64 {
    p.area()
}

/// Sum of edge lengths of `p`.
pub fn perimeter(p: &Polygon) -> f64 {
    p.perimeter()
}

/// Maximum vertex-to-vertex distance of `p`.
pub fn diameter(p: &Polygon) -> f64 {
    p.diameter()
}

/// `p` rotated by `phi` radians about the origin.
pub fn rotate(p: &Polygon, phi: f64) -> Polygon {
    p.rotate(phi)
}

/// `p` scaled by `c > 0` about the origin.
pub fn scale(p: &Polygon, c: f64) -> crate::Result<Polygon> {
    p.scale(c)
}
