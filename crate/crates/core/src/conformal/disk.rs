use num_complex::Complex64 as C;

use super::ConformalMap;
use crate::error::{Error, Result};
use crate::geom::Point;

/// An analytic function on the unit disk that can be sampled together with
/// its derivative.
pub trait DiskMap {
    /// `(f(z), f′(z))`.
    fn eval_with_deriv(&self, z: Point) -> Result<(Point, Point)>;

    /// Bound on the error of sampled values (zero for exact maps).
    fn value_error(&self) -> f64 {
        0.0
    }
}

impl DiskMap for ConformalMap {
    fn eval_with_deriv(&self, z: Point) -> Result<(Point, Point)> {
        ConformalMap::eval_with_deriv(self, z)
    }

    fn value_error(&self) -> f64 {
        ConformalMap::value_error(self)
    }
}

/// The exact map `f(z) = s·z` onto the disk of radius `s`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Dilation(pub f64);

impl DiskMap for Dilation {
    fn eval_with_deriv(&self, z: Point) -> Result<(Point, Point)> {
        if !(z.norm() < 1.0) {
            return Err(Error::EvaluationOutOfRange(z.norm()));
        }
        Ok((z * self.0, C::new(self.0, 0.0)))
    }
}
