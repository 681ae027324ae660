//! Symmetrization of planar polygonal domains and the analysis of their
//! Riemann maps.
//!
//! The crate is organized bottom-up:
//!
//! - [`geom`]: polygons, exact slice profiles, measures and boundary distances.
//! - [`symmetry`]: Steiner and circular symmetrization and the exponential
//!   transform linking the two.
//! - [`conformal`]: numerical Riemann maps of the unit disk onto polygons,
//!   integral means, Taylor coefficients.
//! - [`dynamics`]: the rotate, symmetrize and shrink process with shrink-factor
//!   bookkeeping and Blaschke products.
//! - [`verify`]: the inequality harness over a fixture corpus.

pub mod conformal;
pub mod dynamics;
pub mod error;
pub mod geom;
pub mod symmetry;
pub mod verify;

pub use error::{Error, Result};
pub use geom::{Point, Polygon, SliceKind, SliceProfile};
