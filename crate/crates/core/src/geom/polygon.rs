use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::{cross, Point};
use crate::error::{Error, Result};

/// A simple polygon with counterclockwise vertex order.
///
/// The closing edge from the last vertex back to the first is implicit.
/// Construction through [`Polygon::new`] validates the vertex list and
/// reverses clockwise input.
///
/// Serialized as a JSON array of `[x, y]` pairs.
#[derive(Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Point>", into = "Vec<Point>")]
pub struct Polygon {
    vertices: Vec<Point>,
}

impl fmt::Debug for Polygon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Polygon")
            .field("n", &self.vertices.len())
            .field("area", &self.area())
            .finish()
    }
}

impl TryFrom<Vec<Point>> for Polygon {
    type Error = Error;

    fn try_from(v: Vec<Point>) -> Result<Self> {
        Polygon::new(v)
    }
}

impl From<Polygon> for Vec<Point> {
    fn from(p: Polygon) -> Self {
        p.vertices
    }
}

impl Polygon {
    /// Validates `vertices` and builds a counterclockwise polygon.
    ///
    /// A repeated closing vertex is dropped. Clockwise input is reversed.
    /// Fails on fewer than 3 vertices, non-finite coordinates, repeated
    /// consecutive vertices, zero area or self-intersection.
    ///
    /// # Complexity
    ///
    /// O(n²) for the segment-pair simplicity test.
    pub fn new(mut vertices: Vec<Point>) -> Result<Self> {
        if vertices.len() > 1 && vertices.first() == vertices.last() {
            vertices.pop();
        }
        if vertices.len() < 3 {
            return Err(Error::InvalidInput(format!(
                "polygon needs at least 3 vertices, got {}",
                vertices.len()
            )));
        }
        if let Some(v) = vertices.iter().find(|v| !v.re.is_finite() || !v.im.is_finite()) {
            return Err(Error::InvalidInput(format!("non-finite vertex {v}")));
        }
        let n = vertices.len();
        for i in 0..n {
            if vertices[i] == vertices[(i + 1) % n] {
                return Err(Error::InvalidInput(format!(
                    "consecutive vertices {i} and {} coincide",
                    (i + 1) % n
                )));
            }
        }
        let a = signed_area(&vertices);
        if a == 0.0 || !a.is_finite() {
            return Err(Error::InvalidInput("degenerate polygon with zero area".into()));
        }
        if a < 0.0 {
            log::info!("reversing clockwise polygon with {n} vertices");
            vertices.reverse();
        }
        if let Some((i, j)) = first_self_intersection(&vertices) {
            return Err(Error::InvalidInput(format!(
                "polygon is not simple: edges {i} and {j} intersect"
            )));
        }
        Ok(Polygon { vertices })
    }

    /// Builds a polygon without validation. The caller guarantees a simple,
    /// counterclockwise vertex list.
    pub(crate) fn from_trusted(vertices: Vec<Point>) -> Self {
        debug_assert!(vertices.len() >= 3);
        Polygon { vertices }
    }

    /// Regular `n`-gon inscribed in the circle of radius `radius` about
    /// `center`, with a vertex at angle `phase`.
    pub fn regular(n: usize, radius: f64, center: Point, phase: f64) -> Result<Self> {
        if n < 3 || !(radius > 0.0) {
            return Err(Error::InvalidInput(format!(
                "regular polygon needs n >= 3 and radius > 0 (n={n}, radius={radius})"
            )));
        }
        let v = (0..n)
            .map(|k| center + Point::from_polar(radius, phase + 2.0 * PI * k as f64 / n as f64))
            .collect();
        Ok(Polygon::from_trusted(v))
    }

    /// Axis-parallel rectangle `[x0, x1] × [y0, y1]`.
    pub fn rectangle(x0: f64, x1: f64, y0: f64, y1: f64) -> Result<Self> {
        Polygon::new(vec![
            Point::new(x0, y0),
            Point::new(x1, y0),
            Point::new(x1, y1),
            Point::new(x0, y1),
        ])
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Edges as `(start, end)` pairs, including the closing edge.
    pub fn edges(&self) -> impl Iterator<Item = (Point, Point)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    /// Shoelace area. Positive for every valid polygon.
    pub fn area(&self) -> f64 {
        signed_area(&self.vertices)
    }

    pub fn perimeter(&self) -> f64 {
        self.edges().map(|(a, b)| (b - a).norm()).sum()
    }

    /// Largest vertex-to-vertex distance.
    ///
    /// # Complexity
    ///
    /// O(n log n + h²) with h the number of convex-hull vertices.
    pub fn diameter(&self) -> f64 {
        let hull = convex_hull(&self.vertices);
        let mut best = 0.0f64;
        for i in 0..hull.len() {
            for j in i + 1..hull.len() {
                best = best.max((hull[i] - hull[j]).norm_sqr());
            }
        }
        best.sqrt()
    }

    /// Multiplies every vertex by `e^{iφ}`.
    pub fn rotate(&self, phi: f64) -> Polygon {
        let w = Point::from_polar(1.0, phi);
        Polygon::from_trusted(self.vertices.iter().map(|&v| v * w).collect())
    }

    /// Multiplies every vertex by `c > 0`.
    pub fn scale(&self, c: f64) -> Result<Polygon> {
        if !(c > 0.0) || !c.is_finite() {
            return Err(Error::InvalidInput(format!("scale factor must be positive, got {c}")));
        }
        Ok(Polygon::from_trusted(self.vertices.iter().map(|&v| v * c).collect()))
    }

    pub fn translate(&self, d: Point) -> Polygon {
        Polygon::from_trusted(self.vertices.iter().map(|&v| v + d).collect())
    }

    /// Reflection `z ↦ z̄`, re-oriented counterclockwise.
    pub fn conjugate(&self) -> Polygon {
        let mut v: Vec<Point> = self.vertices.iter().map(|v| v.conj()).collect();
        v.reverse();
        Polygon::from_trusted(v)
    }

    /// Distance from `z` to the boundary curve.
    pub fn boundary_distance(&self, z: Point) -> f64 {
        self.edges()
            .map(|(a, b)| segment_distance(z, a, b))
            .fold(f64::INFINITY, f64::min)
    }

    /// Even-odd point location. Points on the boundary may go either way.
    pub fn contains(&self, z: Point) -> bool {
        let mut inside = false;
        for (a, b) in self.edges() {
            if (a.im > z.im) != (b.im > z.im) {
                let x = a.re + (z.im - a.im) * (b.re - a.re) / (b.im - a.im);
                if z.re < x {
                    inside = !inside;
                }
            }
        }
        inside
    }

    /// True when `z` is inside and at positive distance from the boundary.
    pub fn contains_strictly(&self, z: Point) -> bool {
        self.contains(z) && self.boundary_distance(z) > 1e-12 * self.diameter()
    }

    /// Boundary points with spacing at most `step`, starting at each vertex.
    pub fn densify(&self, step: f64) -> Vec<Point> {
        let mut out = Vec::new();
        for (a, b) in self.edges() {
            let k = ((b - a).norm() / step).ceil().max(1.0) as usize;
            for j in 0..k {
                out.push(a + (b - a) * (j as f64 / k as f64));
            }
        }
        out
    }

    /// Drops vertices lying on the straight segment between their neighbours.
    pub fn without_collinear(&self) -> Polygon {
        Polygon::from_trusted(remove_collinear(&self.vertices))
    }

    /// Rotates the vertex list so it starts at the rightmost vertex
    /// (lowest `|y|`, then lowest `y`, on ties).
    pub fn canonical_start(&self) -> Polygon {
        let key = |p: &Point| (p.re, -p.im.abs(), -p.im);
        let mut best = 0;
        for (i, v) in self.vertices.iter().enumerate() {
            if key(v).partial_cmp(&key(&self.vertices[best])) == Some(std::cmp::Ordering::Greater) {
                best = i;
            }
        }
        let mut v = self.vertices.clone();
        v.rotate_left(best);
        Polygon::from_trusted(v)
    }

    /// Hex SHA-256 of the little-endian vertex coordinates.
    pub fn hash_hex(&self) -> String {
        let mut h = Sha256::new();
        for v in &self.vertices {
            h.update(v.re.to_le_bytes());
            h.update(v.im.to_le_bytes());
        }
        hex::encode(h.finalize())
    }

    /// Bounding box `(xmin, xmax, ymin, ymax)`.
    pub fn bounds(&self) -> (f64, f64, f64, f64) {
        let mut b = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
        for v in &self.vertices {
            b.0 = b.0.min(v.re);
            b.1 = b.1.max(v.re);
            b.2 = b.2.min(v.im);
            b.3 = b.3.max(v.im);
        }
        b
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.vertices).expect("finite coordinates serialize")
    }
}

pub(crate) fn signed_area(v: &[Point]) -> f64 {
    let n = v.len();
    let mut s = 0.0;
    for i in 0..n {
        let a = v[i];
        let b = v[(i + 1) % n];
        s += a.re * b.im - a.im * b.re;
    }
    0.5 * s
}

/// Distance from `z` to the segment `[a, b]`.
pub fn segment_distance(z: Point, a: Point, b: Point) -> f64 {
    let d = b - a;
    let l2 = d.norm_sqr();
    if l2 == 0.0 {
        return (z - a).norm();
    }
    let t = (((z - a) * d.conj()).re / l2).clamp(0.0, 1.0);
    (z - (a + d * t)).norm()
}

/// Exact sign of the orientation of `(a, b, c)`.
fn orient(a: Point, b: Point, c: Point) -> f64 {
    let c2 = |p: Point| robust::Coord { x: p.re, y: p.im };
    robust::orient2d(c2(a), c2(b), c2(c))
}

fn on_segment(a: Point, b: Point, p: Point) -> bool {
    p.re >= a.re.min(b.re) && p.re <= a.re.max(b.re) && p.im >= a.im.min(b.im) && p.im <= a.im.max(b.im)
}

/// Closed segment intersection test.
pub(crate) fn segments_intersect(p1: Point, p2: Point, q1: Point, q2: Point) -> bool {
    let d1 = orient(q1, q2, p1);
    let d2 = orient(q1, q2, p2);
    let d3 = orient(p1, p2, q1);
    let d4 = orient(p1, p2, q2);
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0))
        && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0))
    {
        return true;
    }
    (d1 == 0.0 && on_segment(q1, q2, p1))
        || (d2 == 0.0 && on_segment(q1, q2, p2))
        || (d3 == 0.0 && on_segment(p1, p2, q1))
        || (d4 == 0.0 && on_segment(p1, p2, q2))
}

pub(crate) fn first_self_intersection(v: &[Point]) -> Option<(usize, usize)> {
    let n = v.len();
    for i in 0..n {
        let (a, b) = (v[i], v[(i + 1) % n]);
        // Adjacent edge folding back onto this one.
        let c = v[(i + 2) % n];
        if orient(a, b, c) == 0.0 && ((b - a) * (c - b).conj()).re < 0.0 {
            return Some((i, (i + 1) % n));
        }
        for j in i + 2..n {
            if i == 0 && j == n - 1 {
                continue;
            }
            if segments_intersect(a, b, v[j], v[(j + 1) % n]) {
                return Some((i, j));
            }
        }
    }
    None
}

pub(crate) fn remove_collinear(v: &[Point]) -> Vec<Point> {
    let mut out: Vec<Point> = v.to_vec();
    loop {
        let n = out.len();
        if n <= 3 {
            return out;
        }
        let keep: Vec<bool> = (0..n)
            .map(|i| {
                let a = out[(i + n - 1) % n];
                let b = out[i];
                let c = out[(i + 1) % n];
                let (u, w) = (b - a, c - b);
                let straight = cross(u, w).abs() <= 1e-14 * u.norm() * w.norm()
                    && (u * w.conj()).re > 0.0;
                !straight
            })
            .collect();
        if keep.iter().all(|&k| k) {
            return out;
        }
        // Drop every other removable vertex per pass so neighbours stay valid.
        let mut drop = vec![false; n];
        let mut prev_dropped = false;
        for i in 0..n {
            if !keep[i] && !prev_dropped && !(i == n - 1 && drop[0]) {
                drop[i] = true;
                prev_dropped = true;
            } else {
                prev_dropped = false;
            }
        }
        out = out
            .iter()
            .zip(drop)
            .filter(|(_, d)| !d)
            .map(|(p, _)| *p)
            .collect();
    }
}

/// Andrew's monotone chain. Returns hull vertices counterclockwise.
pub(crate) fn convex_hull(points: &[Point]) -> Vec<Point> {
    let mut p: Vec<Point> = points.to_vec();
    p.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    p.dedup();
    if p.len() < 3 {
        return p;
    }
    let mut lower: Vec<Point> = Vec::new();
    for &q in &p {
        while lower.len() >= 2 && orient(lower[lower.len() - 2], lower[lower.len() - 1], q) <= 0.0 {
            lower.pop();
        }
        lower.push(q);
    }
    let mut upper: Vec<Point> = Vec::new();
    for &q in p.iter().rev() {
        while upper.len() >= 2 && orient(upper[upper.len() - 2], upper[upper.len() - 1], q) <= 0.0 {
            upper.pop();
        }
        upper.push(q);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}
