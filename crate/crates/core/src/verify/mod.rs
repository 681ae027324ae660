//! The inequality harness.
//!
//! Every comparison `lhs ≤ rhs` is evaluated on a fixture corpus and
//! classified against an error budget built from quadrature errors and the
//! value error of each map: a margin `rhs - lhs ≥ -budget` passes, one below
//! `-3·budget` is a violation, anything between is inconclusive.

mod checks;
mod context;
mod fixture;
mod n2alpha;
mod suite;
mod verdict;

pub use checks::{
    check_baernstein_circular, check_coefficient_theorem, check_exp_commutation,
    check_hayman_derivative, check_norm_chain, check_norm_chain_dilation, check_perimeter_reduction,
    check_realpart_suite, check_steiner_p2, coefficient_pattern, default_functionals,
    mean_with_error, norm_length_bound, realpart_scale, search_p0, CoefficientPattern, P0Search,
    ScanPoint, A0_TOL, CIRCULAR_AREA_TOL, CIRCULAR_PERIMETER_SLACK, COEFFICIENT_AREA_TOL,
    COMMUTATION_TOL, DERIVATIVE_SLACK, RESCALE_HEADROOM, SMALL_RADIUS,
};
pub use context::{Harness, VerifyConfig};
pub use fixture::{corpus, disk_polygon, finger, finger_polygon, fixture, half_disk, Fixture, Tag};
pub use n2alpha::{n2alpha_experiment, n2alpha_run, n2alpha_verdicts, N2AlphaRow, ATTAINMENT_TOL};
pub use suite::{run_suites, Suite, SuiteReport, DILATION_SLOPE};
pub use verdict::{
    csv_string, fmt_p, params, write_csv, Gate, Outcome, Summary, Verdict, CSV_HEADER, ROUNDING_REL, SHARP_REL,
    VIOLATION_FACTOR,
};
