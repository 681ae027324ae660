use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{Point, Polygon};

/// Fixture classification.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Tag {
    /// Invariant under Steiner symmetrization about the real axis.
    Symmetric,
    /// Invariant under circular symmetrization.
    CircularSymmetric,
    DiskLike,
    Finger,
    Thin,
    /// Some vertical slice is at least `2π` long.
    Tall,
    Rectangle,
    Translated,
}

/// A named target domain containing the origin.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Fixture {
    pub name: String,
    pub polygon: Polygon,
    pub tags: Vec<Tag>,
    pub note: String,
    /// Second interior point used where a map with `f(0) ≠ 0` is needed.
    pub alt_w0: Point,
}

impl Fixture {
    /// Validates that both the origin and `alt_w0` lie strictly inside.
    pub fn new(name: &str, polygon: Polygon, tags: &[Tag], note: &str, alt_w0: Point) -> Result<Self> {
        for (what, z) in [("origin", Point::new(0.0, 0.0)), ("alternate center", alt_w0)] {
            if !polygon.contains_strictly(z) {
                return Err(Error::InvalidInput(format!("fixture {name}: {what} not strictly inside")));
            }
        }
        Ok(Fixture {
            name: name.into(),
            polygon,
            tags: tags.to_vec(),
            note: note.into(),
            alt_w0,
        })
    }

    pub fn has(&self, t: Tag) -> bool {
        self.tags.contains(&t)
    }
}

/// Regular polygon approximating the disk `|w - center| < radius`.
pub fn disk_polygon(n: usize, radius: f64, center: Point) -> Result<Polygon> {
    Polygon::regular(n, radius, center, 0.0)
}

/// The part of the disk `|w - center| < radius` above `Im w = center.im`,
/// with `arc` points on the circular arc.
pub fn half_disk(radius: f64, center: Point, arc: usize) -> Result<Polygon> {
    let v = (0..=arc)
        .map(|k| center + Point::from_polar(radius, PI * k as f64 / arc as f64))
        .collect();
    Polygon::new(v)
}

/// Disk of radius 1 about `(0, lift)` with a vertical spike over
/// `x0 < x < x1` rising `height` above the top of the circle.
pub fn finger_polygon(x0: f64, x1: f64, height: f64, lift: f64, arc: usize) -> Result<Polygon> {
    if !(-1.0 < x0 && x0 < x1 && x1 < 1.0 && height > 0.0) {
        return Err(Error::InvalidInput("finger needs -1 < x0 < x1 < 1 and height > 0".into()));
    }
    let c = Point::new(0.0, lift);
    let (tl, tr) = (x0.acos(), x1.acos() + 2.0 * PI);
    let mut v: Vec<Point> = (0..=arc)
        .map(|k| c + Point::from_polar(1.0, tl + (tr - tl) * k as f64 / arc as f64))
        .collect();
    let top = lift + 1.0 + height;
    v.push(Point::new(x1, top));
    v.push(Point::new(x0, top));
    Polygon::new(v)
}

/// The finger fixture: spike of width 0.25 and height 0.3 over a unit disk
/// lifted by 0.3.
pub fn finger() -> Result<Polygon> {
    finger_polygon(0.3, 0.55, 0.3, 0.3, 128)
}

/// The fixture corpus, in a fixed order.
pub fn corpus() -> Result<Vec<Fixture>> {
    use Tag::*;
    let p = Point::new;
    let rect = Polygon::rectangle;
    Ok(vec![
        Fixture::new(
            "disk",
            disk_polygon(256, 1.0, p(0.0, 0.0))?,
            &[DiskLike, Symmetric, CircularSymmetric],
            "regular 256-gon of circumradius 1",
            p(0.3, 0.2),
        )?,
        Fixture::new(
            "diamond",
            Polygon::new(vec![p(1.0, 0.0), p(0.0, 1.0), p(-1.0, 0.0), p(0.0, -1.0)])?,
            &[Symmetric],
            "square with vertices ±1, ±i",
            p(0.2, 0.1),
        )?,
        Fixture::new("square", rect(-1.0, 1.0, -1.0, 1.0)?, &[Symmetric, Rectangle], "side 2", p(0.5, -0.3))?,
        Fixture::new(
            "rectangle",
            rect(-0.5, 1.5, -0.25, 0.75)?,
            &[Rectangle],
            "2 by 1, off-axis",
            p(0.8, 0.3),
        )?,
        Fixture::new(
            "thin-rectangle",
            rect(-1.0, 1.0, -0.2, 0.2)?,
            &[Thin, Symmetric, Rectangle],
            "2 by 0.4",
            p(0.5, 0.1),
        )?,
        Fixture::new(
            "tall-rectangle",
            rect(-2.0, 2.0, -3.0, 3.6)?,
            &[Tall, Rectangle],
            "4 by 6.6, vertical slices longer than 2π",
            p(0.5, 1.5),
        )?,
        Fixture::new(
            "triangle",
            Polygon::regular(3, 1.0, p(0.0, 0.0), PI / 2.0)?,
            &[],
            "equilateral, circumradius 1, apex up",
            p(0.1, 0.2),
        )?,
        Fixture::new(
            "half-disk",
            half_disk(1.0, p(0.0, -0.4), 128)?,
            &[],
            "upper half of the unit disk about -0.4i",
            p(-0.3, 0.2),
        )?,
        Fixture::new(
            "translated-disk",
            disk_polygon(128, 1.0, p(0.5, 0.0))?,
            &[Symmetric, Translated, DiskLike],
            "unit disk about 0.5",
            p(0.5, 0.0),
        )?,
        Fixture::new(
            "lifted-disk",
            disk_polygon(128, 1.0, p(0.0, 0.4))?,
            &[Translated, DiskLike],
            "unit disk about 0.4i",
            p(0.2, 0.6),
        )?,
        Fixture::new(
            "finger",
            finger()?,
            &[Finger],
            "unit disk about 0.3i with a 0.25 by 0.3 spike over 0.3 < x < 0.55",
            p(0.4, 1.1),
        )?,
        Fixture::new(
            "l-shape",
            Polygon::new(vec![
                p(-0.5, -0.5),
                p(1.0, -0.5),
                p(1.0, 0.0),
                p(0.2, 0.0),
                p(0.2, 1.0),
                p(-0.5, 1.0),
            ])?,
            &[],
            "non-convex",
            p(-0.2, 0.5),
        )?,
        Fixture::new(
            "pentagon",
            Polygon::regular(5, 1.0, p(0.0, 0.0), 0.3)?,
            &[],
            "regular, rotated by 0.3",
            p(0.2, -0.2),
        )?,
        Fixture::new(
            "kite",
            Polygon::new(vec![p(-0.8, -0.6), p(1.2, -0.2), p(0.4, 0.9), p(-0.6, 0.7)])?,
            &[],
            "skew quadrilateral",
            p(0.3, 0.1),
        )?,
    ])
}

/// Looks up a corpus fixture by name.
pub fn fixture(name: &str) -> Result<Fixture> {
    corpus()?
        .into_iter()
        .find(|f| f.name == name)
        .ok_or_else(|| Error::InvalidInput(format!("unknown fixture {name}")))
}
