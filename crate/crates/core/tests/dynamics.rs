use std::f64::consts::PI;

use num_complex::Complex64 as C;
use proptest::prelude::*;
use statrs::function::gamma::ln_gamma;
use steinsym::conformal::{build_map, DEFAULT_MAP_TOL};
use steinsym::dynamics::*;
use steinsym::{Error, Point, Polygon};

fn disk(r: f64) -> Polygon {
    Polygon::regular(256, r, Point::new(0.0, 0.0), 0.0).unwrap()
}

fn square() -> Polygon {
    Polygon::rectangle(-1.0, 1.0, -1.0, 1.0).unwrap()
}

/// Conformal radius of the regular n-gon of unit circumradius.
fn regular_radius(n: f64) -> f64 {
    let lb = ln_gamma(1.0 / n) + ln_gamma(1.0 - 2.0 / n) - ln_gamma(1.0 - 1.0 / n);
    n * (-lb).exp()
}

#[test]
fn disk_of_radius_two_shrinks_by_half() {
    let s = DeformationState::new(disk(2.0), 1.0, Mode::Shrunk).unwrap();
    let out = deform_step(&s, 0.7, &StepOptions::default()).unwrap();
    let r = &out.history[0];
    assert!((r.c - 0.5).abs() < 1e-3, "{}", r.c);
    assert!((r.g_deriv0 - 2.0).abs() < 2e-3);
    assert!((r.h2_mid() - 2.0).abs() < 2e-3);
    assert!((out.current.area() / PI - 1.0).abs() < 2e-3);
    assert_eq!(out.product, r.c);
}

#[test]
fn square_step_factor_uses_conformal_radius() {
    let s = DeformationState::new(square(), 1.0, Mode::Shrunk).unwrap();
    let out = deform_step(&s, 0.0, &StepOptions::default()).unwrap();
    let r = &out.history[0];
    let exact = 2f64.sqrt() * regular_radius(4.0);
    assert!((r.g_deriv0 - exact).abs() < 1e-3, "{} vs {exact}", r.g_deriv0);
    let want = (1.0 / r.g_deriv0).max(1.0 / r.h2_mid()).min(1.0);
    assert!((r.c - want).abs() < 1e-15);
    // The symmetrization is the identity, so only the scale changes.
    assert!((out.current.area() - 4.0 * r.c * r.c).abs() < 1e-12);
}

#[test]
fn unshrunk_step_preserves_area() {
    let p = steinsym::verify::finger().unwrap();
    let s = DeformationState::new(p.clone(), 1.0, Mode::Unshrunk).unwrap();
    let out = deform_step(&s, 0.4, &StepOptions::default()).unwrap();
    assert!((out.current.area() / p.area() - 1.0).abs() < 1e-9);
    assert!(out.history[0].c > 0.0 && out.history[0].c <= 1.0);
}

#[test]
fn state_rejects_bad_input() {
    let off = Polygon::rectangle(1.0, 2.0, -1.0, 1.0).unwrap();
    assert!(matches!(DeformationState::new(off, 1.0, Mode::Shrunk), Err(Error::InvalidInput(_))));
    assert!(DeformationState::new(square(), 0.0, Mode::Shrunk).is_err());
}

#[test]
fn lower_bound_examples() {
    for r in [0.5, 1.0, 2.0] {
        let d = disk(r);
        // The 256-gon has slightly less area than the disk.
        let exact = 1.0 / (d.area() / PI).sqrt();
        assert!((product_lower_bound(&d, 0.5) - exact).abs() < 1e-14);
        assert!((product_lower_bound(&d, 1.0) - 1.0 / r).abs() < 2e-4 / r);
    }
    assert!((product_lower_bound(&square(), 1.0) - PI.sqrt() / 2.0).abs() < 1e-15);
    assert!((product_lower_bound(&disk(2.0), 3.0) - 1.5).abs() < 1e-3);
}

#[test]
fn lower_bound_green_cross_check() {
    let m = build_map(&square(), Point::new(0.0, 0.0), DEFAULT_MAP_TOL).unwrap();
    let chk = product_lower_bound_check(&m, 1.0).unwrap();
    assert!(chk.relative < 1e-2, "{chk:?}");
    assert_eq!(chk.area, 4.0);
}

#[test]
fn disk_run_converges_immediately() {
    let cfg = RunConfig::new(1.0, Mode::Unshrunk, AngleStrategy::greedy());
    let rep = run_deformation(&disk(1.0), &cfg).unwrap();
    assert_eq!(rep.outcome, RunOutcome::Converged { step: 1 });
    let t = rep.telemetry.last().unwrap();
    assert!((t.target_radius - 1.0).abs() < 1e-3);
}

#[test]
fn square_unshrunk_greedy_run() {
    let mut cfg = RunConfig::new(1.0, Mode::Unshrunk, AngleStrategy::greedy());
    cfg.snapshot_every = 1;
    let rep = run_deformation(&square(), &cfg).unwrap();
    assert!(rep.converged(), "{:?}", rep.outcome);
    assert!(rep.state.step <= 200);
    assert!(rep.final_hausdorff() < 1e-2);
    let t = rep.telemetry.last().unwrap();
    assert!((t.target_radius - 2.0 / PI.sqrt()).abs() < 1e-9);
    for r in &rep.state.history {
        assert!((r.area_after / 4.0 - 1.0).abs() < 1e-9);
    }
    for w in rep.state.history.windows(2) {
        assert!(w[1].diameter_after <= w[0].diameter_after + 1e-9);
    }

    let domains: Vec<Polygon> = rep.snapshots.iter().map(|s| s.1.clone()).collect();
    let k = kernel_convergence_probe(&domains, KERNEL_TOL).unwrap();
    // Too few steps for a Cauchy verdict at the default tolerance; the
    // modulus is reported and the successive distances shrink.
    assert!(k.cauchy_modulus.is_finite() && k.cauchy_modulus > 0.0);
    assert!(k.successive.last().unwrap() < &k.successive[0]);
    assert!(k.contains_initial_disk && k.common_disk_radius > 0.0);
    assert_eq!(k.successive.len(), domains.len() - 1);
}

#[test]
fn square_shrunk_run_respects_bounds() {
    let mut cfg = RunConfig::new(1.0, Mode::Shrunk, AngleStrategy::GoldenAngle);
    cfg.stop.max_steps = 12;
    let rep = run_deformation(&square(), &cfg).unwrap();
    let lb = product_lower_bound(&square(), 1.0);
    let mut prev = 1.0;
    for t in &rep.telemetry {
        assert!(t.product > 0.0 && t.product <= 1.0);
        assert!(t.product <= prev + 1e-15);
        assert!(t.product >= lb * (1.0 - 1e-3), "{} < {lb}", t.product);
        prev = t.product;
    }
    assert!((rep.state.recomputed_product() / rep.state.product - 1.0).abs() < 1e-12);
    assert!((rep.state.log_sum() + rep.state.product.ln()).abs() < 1e-12);
    for w in rep.state.history.windows(2) {
        let ratio = w[1].area_after / w[0].area_after;
        assert!((ratio - w[1].c * w[1].c).abs() < 1e-9 * ratio.max(1.0), "{ratio} vs {}", w[1].c);
    }
    // Shrunk iterates stay symmetric about the real axis.
    let cur = &rep.state.current;
    assert!(steinsym::geom::boundary_hausdorff(cur, &cur.conjugate()) < 1e-9);
}

#[test]
fn identity_check_on_disk_and_square() {
    let base = RunConfig::new(1.0, Mode::Shrunk, AngleStrategy::greedy());
    let d = product_identity_check(&disk(2.0), 1.0, AngleStrategy::GoldenAngle, 1, &base).unwrap();
    assert!(d.residual < 1e-6, "{d:?}");
    assert!((d.product - 0.5).abs() < 1e-3);

    let s = product_identity_check(&square(), 1.0, AngleStrategy::greedy(), 50, &base).unwrap();
    assert!(s.residual < 1e-3, "{s:?}");
}

#[test]
fn small_alpha_derivative_is_below_area_radius() {
    let base = RunConfig::new(0.01, Mode::Shrunk, AngleStrategy::greedy());
    let chk = product_identity_check(&square(), 0.01, AngleStrategy::greedy(), 20, &base).unwrap();
    // With α small the factor is 1/G′(0), so G′(0) = 1/product.
    let g0 = 1.0 / chk.product;
    assert!(g0 <= (4.0 / PI).sqrt() + 1e-3, "{g0}");
}

#[test]
fn blaschke_condition_examples() {
    let mut f = vec![0.5];
    f.extend(std::iter::repeat(1.0).take(20));
    let b = blaschke_condition(&f, 1e-9).unwrap();
    assert!(b.partial_sums[1..].iter().all(|&s| s == 0.5));
    assert!(b.bounded());
    assert!((b.log_sum - 2f64.ln()).abs() < 1e-15);

    let g: Vec<f64> = (1..=400).map(|n| 1.0 - 1.0 / (n * n) as f64).skip(1).collect();
    let b = blaschke_condition(&g, 1e-9).unwrap();
    assert!(b.partial_sums.windows(2).all(|w| w[1] >= w[0]));
    assert!(b.bounded(), "{:?}", b.trend);

    assert!(blaschke_condition(&[0.9; 5], 1e-9).is_err());
    assert!(matches!(blaschke_condition(&[1.5; 12], 1e-9), Err(Error::InvalidInput(_))));
}

#[test]
fn blaschke_eval_examples() {
    let v = blaschke_eval(&[0.3], C::new(0.3, 0.0)).unwrap();
    assert!(v.value.norm() < 1e-15);
    let v = blaschke_eval(&[0.3], C::new(0.0, 0.0)).unwrap();
    assert!((v.value - C::new(-0.3, 0.0)).norm() < 1e-15);
    assert!(blaschke_eval(&[0.0], C::new(0.1, 0.0)).is_err());
    assert!(blaschke_eval(&[0.5], C::new(0.995, 0.0)).is_err());
}

#[test]
fn blaschke_eval_stable_under_prefix_doubling() {
    let zeros = |n: usize| -> Vec<f64> { (2..=n + 1).map(|k| 1.0 - 1.0 / (k * k) as f64).collect() };
    let z = C::new(0.5, 0.0);
    let a = blaschke_eval(&zeros(1000), z).unwrap();
    let b = blaschke_eval(&zeros(2000), z).unwrap();
    let (la, lb) = (a.limit.unwrap(), b.limit.unwrap());
    assert!((la - lb).norm() < 1e-6, "{la} vs {lb}");
    assert!(a.tail_bound < 1e-2);
    assert!(la.norm() <= 1.0);
}

#[test]
fn kernel_probe_examples() {
    let sq = square();
    let k = kernel_convergence_probe(&[sq.clone(), sq.clone(), sq], KERNEL_TOL).unwrap();
    assert!(k.converged);
    assert_eq!(k.cauchy_modulus, 0.0);

    let nested: Vec<Polygon> = (1..=400).map(|n| disk(1.0 + 1.0 / n as f64)).collect();
    let k = kernel_convergence_probe(&nested, KERNEL_TOL).unwrap();
    assert!(k.converged, "{k:?}");
    assert!(k.cauchy_modulus < KERNEL_TOL);
    // The disks shrink, so they do not all contain the first one.
    assert!(!k.contains_initial_disk);
    assert!(k.common_disk_radius > 1.0);

    assert!(kernel_convergence_probe(&[disk(1.0)], KERNEL_TOL).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn log_sum_matches_product(cs in proptest::collection::vec(0.05f64..=1.0, 10..60)) {
        let b = blaschke_condition(&cs, 1e-9).unwrap();
        let prod: f64 = cs.iter().product();
        prop_assert!((b.log_sum + prod.ln()).abs() < 1e-12 * (1.0 + b.log_sum));
    }

    #[test]
    fn blaschke_value_inside_unit_disk(cs in proptest::collection::vec(0.05f64..=1.0, 1..40), r in 0.0f64..0.99, t in 0.0f64..6.3) {
        let v = blaschke_eval(&cs, C::from_polar(r, t)).unwrap();
        prop_assert!(v.value.norm() <= 1.0 + 1e-12);
    }
}
