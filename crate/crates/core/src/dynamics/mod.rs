//! The rotate, symmetrize and shrink process.
//!
//! Each step rotates the current domain by `φ`, Steiner-symmetrizes it about
//! the real axis and, in shrunk mode, scales the result by
//! `c_φ = max(1/g′(0), α/‖g‖₂)` where `g` is the normalized map onto the
//! symmetrized domain. The product of the factors, the Blaschke partial
//! sums and the Hausdorff distance to the limiting disk are tracked.

mod blaschke;
mod kernel;
mod product;
mod run;
mod state;
mod step;

pub use blaschke::{
    blaschke_condition, blaschke_eval, BlaschkeCondition, BlaschkeValue, SumTrend,
    BLASCHKE_MAX_RADIUS,
};
pub use kernel::{kernel_convergence_probe, KernelVerdict, KERNEL_TOL};
pub use product::{
    green_area, product_identity_check, product_lower_bound, product_lower_bound_check,
    product_lower_bound_with_floor, IdentityCheck, LowerBoundCheck, GREEN_RADIUS,
};
pub use run::{
    disk_hausdorff, run_deformation, write_telemetry, RunConfig, RunOutcome, RunReport,
    StopCriteria, TelemetryRecord, REFERENCE_CIRCLE_VERTICES, STAGNATION_REDUCTION,
    STAGNATION_STEPS,
};
pub use state::{AngleStrategy, DeformationState, Mode, ShrinkRecord};
pub use step::{
    deform_step, factor_inputs, greedy_angle, symmetrize_rotated, AngleChooser, StepOptions,
    Symmetrized, DEFAULT_VERTEX_BUDGET, GREEDY_ANGLE_TOL, NORM_SPREAD,
};
