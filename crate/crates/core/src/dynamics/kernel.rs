use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{boundary_hausdorff, Point, Polygon};

/// Default Cauchy tolerance of [`kernel_convergence_probe`].
pub const KERNEL_TOL: f64 = 1e-2;

/// Diagnostic for convergence of a domain sequence to its kernel.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KernelVerdict {
    pub snapshots: usize,
    /// `dist(0, ∂B₀)` for the first domain.
    pub initial_disk_radius: f64,
    /// `min_n dist(0, ∂B_n)`; zero when some domain misses the origin.
    pub common_disk_radius: f64,
    /// Every domain contains the disk of radius `initial_disk_radius`.
    pub contains_initial_disk: bool,
    /// Boundary Hausdorff distances between consecutive domains.
    pub successive: Vec<f64>,
    /// `max_{n ≥ N/2} d(∂B_n, ∂B_N)`.
    pub cauchy_modulus: f64,
    pub converged: bool,
}

/// Checks that all domains contain a common disk about 0 and that their
/// boundaries form a Cauchy sequence in the Hausdorff distance, which is
/// sufficient for kernel convergence.
pub fn kernel_convergence_probe(snapshots: &[Polygon], tol: f64) -> Result<KernelVerdict> {
    if snapshots.len() < 2 {
        return Err(Error::InvalidInput("kernel probe needs at least 2 snapshots".into()));
    }
    let origin = Point::new(0.0, 0.0);
    let radius = |p: &Polygon| {
        if p.contains_strictly(origin) {
            p.boundary_distance(origin)
        } else {
            0.0
        }
    };
    let initial = radius(&snapshots[0]);
    let radii: Vec<f64> = snapshots.iter().map(radius).collect();
    let common = radii.iter().copied().fold(f64::INFINITY, f64::min);
    let slack = 1e-9 * snapshots[0].diameter();
    let contains_initial_disk = radii.iter().all(|&r| r >= initial - slack);
    let successive: Vec<f64> = snapshots
        .windows(2)
        .map(|w| boundary_hausdorff(&w[0], &w[1]))
        .collect();
    let n = snapshots.len() - 1;
    let last = &snapshots[n];
    let cauchy_modulus = (n / 2..n)
        .map(|k| boundary_hausdorff(&snapshots[k], last))
        .fold(0.0, f64::max);
    Ok(KernelVerdict {
        snapshots: snapshots.len(),
        initial_disk_radius: initial,
        common_disk_radius: common,
        contains_initial_disk,
        successive,
        cauchy_modulus,
        converged: common > 0.0 && cauchy_modulus < tol,
    })
}
