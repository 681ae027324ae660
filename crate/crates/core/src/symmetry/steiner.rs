use crate::error::{Error, Result};
use crate::geom::{remove_collinear, vertical_slices, Point, Polygon, SliceProfile};

/// Replaces every vertical slice of `p` by a segment of the same length
/// centered on the x-axis.
///
/// The output vertices sit exactly at the slice breakpoints, on the curves
/// `y = ±l(t)/2`. Interior breakpoints where the slice length vanishes are
/// thickened to `1e-9` of the width so that the result stays simple.
pub fn steiner_symmetrize(p: &Polygon) -> Result<Polygon> {
    steiner_from_profile(&vertical_slices(p))
}

/// Builds the symmetric polygon described by a vertical slice profile.
pub fn steiner_from_profile(prof: &SliceProfile) -> Result<Polygon> {
    let b = &prof.breakpoints;
    let m = b.len();
    if m < 2 || prof.max_value() <= 0.0 {
        return Err(Error::InvalidInput("empty slice support".into()));
    }
    let thick = 1e-9 * (b[m - 1] - b[0]);
    let mut left = prof.left.clone();
    let mut right = prof.right.clone();
    for j in 1..m - 1 {
        left[j] = left[j].max(thick);
        right[j] = right[j].max(thick);
    }

    let mut upper: Vec<Point> = Vec::with_capacity(2 * m);
    for j in (0..m).rev() {
        push_distinct(&mut upper, Point::new(b[j], 0.5 * right[j]));
        push_distinct(&mut upper, Point::new(b[j], 0.5 * left[j]));
    }
    let mut pts = upper.clone();
    // Lower chain is the exact mirror image, traversed left to right.
    for z in upper.iter().rev() {
        push_distinct(&mut pts, Point::new(z.re, -z.im));
    }
    while pts.len() > 1 && pts[0] == pts[pts.len() - 1] {
        pts.pop();
    }
    let pts = remove_collinear(&pts);
    if pts.len() < 3 {
        return Err(Error::InvalidInput("symmetrized polygon degenerate".into()));
    }
    Ok(Polygon::from_trusted(pts))
}

fn push_distinct(v: &mut Vec<Point>, z: Point) {
    if v.last().map_or(true, |l| l.re != z.re || l.im != z.im) {
        v.push(z);
    }
}
