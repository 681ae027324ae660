//! Numerical Riemann maps of the unit disk onto polygons and the integral
//! functionals built on them.

mod cache;
mod coefficients;
mod disk;
mod functional;
mod map;
mod means;
pub mod quad;
mod zipper;

pub use cache::{load_map, save_map, MapCache, CACHE_FORMAT, CACHE_VERSION};
pub use coefficients::{
    area_series, default_samples, taylor_coefficients, taylor_coefficients_with, Coefficients,
    AreaSeries, CROSS_RADIUS_OFFSET, TAIL_RATIO_MAX, TAIL_REL_MAX,
};
pub use disk::{Dilation, DiskMap};
pub use functional::{
    real_part_ln_mean, real_part_ln_mean_shifted, real_part_mean, real_part_mean_shifted, real_part_means_shifted,
    real_part_sup, MeanFunctional,
};
pub use map::{
    build_map, build_map_with, ConformalMap, MapOptions, DEFAULT_MAP_TOL, EDGE_GAP,
    WITNESS_SAMPLES,
};
pub use means::{
    boundary_derivative_integral, hardy_mean, hardy_mean_tol, hardy_means_tol, hardy_norm, hardy_norm_finite, hardy_norms_finite,
    hardy_sup, image_curve_length, image_curve_length_limit, moebius_identity_check,
    poisson_kernel_mass, NormInterval, MOEBIUS_RADII, NORM_RADII, WIDE_SPREAD,
};
pub use quad::{periodic_mean, CircleSamples, Estimate};
