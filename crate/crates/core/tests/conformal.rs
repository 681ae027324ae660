use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64 as C;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use statrs::function::gamma::ln_gamma;
use steinsym::conformal::*;
use steinsym::{Error, Point, Polygon};

fn diamond() -> Polygon {
    Polygon::new(vec![
        Point::new(1.0, 0.0),
        Point::new(0.0, 1.0),
        Point::new(-1.0, 0.0),
        Point::new(0.0, -1.0),
    ])
    .unwrap()
}

fn diamond_map() -> &'static ConformalMap {
    static MAP: OnceLock<ConformalMap> = OnceLock::new();
    MAP.get_or_init(|| build_map(&diamond(), Point::new(0.0, 0.0), DEFAULT_MAP_TOL).unwrap())
}

fn disk_map() -> &'static ConformalMap {
    static MAP: OnceLock<ConformalMap> = OnceLock::new();
    MAP.get_or_init(|| {
        let p = Polygon::regular(256, 1.0, Point::new(0.0, 0.0), 0.0).unwrap();
        build_map(&p, Point::new(0.0, 0.0), DEFAULT_MAP_TOL).unwrap()
    })
}

/// Composite Simpson rule on `[a, b]` with `n` (even) panels.
fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
    let h = (b - a) / n as f64;
    let mut s = f(a) + f(b);
    for k in 1..n {
        s += f(a + k as f64 * h) * if k % 2 == 1 { 4.0 } else { 2.0 };
    }
    s * h / 3.0
}

/// `1/∫₀¹(1-t⁴)^{-1/2}dt`, with `t = 1 - s²` removing the endpoint
/// singularity.
fn diamond_radius_oracle() -> f64 {
    let k = simpson(
        |s| {
            let t = 1.0 - s * s;
            2.0 / ((1.0 + t) * (1.0 + t * t)).sqrt()
        },
        0.0,
        1.0,
        2000,
    );
    1.0 / k
}

/// Conformal radius of the regular n-gon with unit circumradius about its
/// center: `n / B(1/n, 1 - 2/n)`.
fn regular_radius_oracle(n: f64) -> f64 {
    let lb = ln_gamma(1.0 / n) + ln_gamma(1.0 - 2.0 / n) - ln_gamma(1.0 - 1.0 / n);
    n * (-lb).exp()
}

#[test]
fn diamond_oracle_agrees_with_gamma_closed_form() {
    let closed = 4.0 * (ln_gamma(0.75) - ln_gamma(0.25) - ln_gamma(0.5)).exp();
    assert!((diamond_radius_oracle() - closed).abs() < 1e-10);
    assert!((closed - 0.762759763501813).abs() < 1e-12);
}

#[test]
fn diamond_conformal_radius() {
    let m = diamond_map();
    assert!((m.deriv0() - diamond_radius_oracle()).abs() < 1e-3);
    // The construction does much better than the stated tolerance.
    assert!((m.deriv0() - diamond_radius_oracle()).abs() < 1e-5);
}

#[test]
fn regular_polygon_conformal_radius() {
    let m = disk_map();
    let exact = regular_radius_oracle(256.0);
    assert!((exact - 0.999949657553289).abs() < 1e-12);
    assert!(m.deriv0() >= 0.999 && m.deriv0() <= 1.0);
    assert!((m.deriv0() - exact).abs() < 2e-5);
}

#[test]
fn regular_polygon_radius_scales() {
    let p = Polygon::regular(256, 2.0, Point::new(0.0, 0.0), 0.3).unwrap();
    let m = build_map(&p, Point::new(0.0, 0.0), DEFAULT_MAP_TOL).unwrap();
    assert!(m.deriv0() >= 2.0 * 0.999 && m.deriv0() <= 2.0);
}

#[test]
fn normalization_holds_on_several_targets() {
    let targets = [
        (diamond(), Point::new(0.0, 0.0)),
        (diamond(), Point::new(0.2, -0.1)),
        (Polygon::rectangle(-0.1, 0.9, -0.1, 0.1).unwrap(), Point::new(0.0, 0.0)),
        (
            Polygon::new(vec![
                Point::new(-0.3, -0.3),
                Point::new(0.7, -0.3),
                Point::new(-0.3, 0.7),
            ])
            .unwrap(),
            Point::new(0.0, 0.0),
        ),
    ];
    for (p, w0) in targets {
        let m = build_map(&p, w0, DEFAULT_MAP_TOL).unwrap();
        assert_eq!(m.eval(C::new(0.0, 0.0)).unwrap(), w0);
        let d = m.deriv(C::new(0.0, 0.0)).unwrap();
        assert_eq!(d.im, 0.0);
        assert!(d.re > 0.0);
        // The evaluated (not special-cased) value near 0 agrees too.
        let z = C::new(1e-9, 0.0);
        assert!((m.eval(z).unwrap() - w0).norm() < 1e-8 + m.eps_b());
        assert!(m.is_injective());
        assert!(m.eps_b() <= m.tol() * 0.5 * p.diameter());
    }
}

#[test]
fn evaluation_too_close_to_the_circle_is_refused() {
    let m = diamond_map();
    assert!(m.eval(C::new(1.0 - 1e-6, 0.0)).is_ok());
    match m.eval(C::new(0.0, 1.0 - 1e-7)) {
        Err(Error::EvaluationOutOfRange(r)) => assert!(r > 1.0 - 1e-6),
        other => panic!("expected out-of-range, got {other:?}"),
    }
}

#[test]
fn interior_values_land_inside_the_target() {
    let m = diamond_map();
    let p = diamond();
    for j in 0..200 {
        let z = C::from_polar(0.999, 2.0 * PI * j as f64 / 200.0);
        let w = m.eval(z).unwrap();
        assert!(p.contains(w) || p.boundary_distance(w) <= m.eps_b());
    }
}

#[test]
fn derivative_matches_central_differences() {
    let m = diamond_map();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let h = 1e-5;
    for _ in 0..100 {
        let z = C::from_polar(rng.gen_range(0.0..0.95), rng.gen_range(0.0..2.0 * PI));
        let d = m.deriv(z).unwrap();
        let fd = (m.eval(z + h).unwrap() - m.eval(z - h).unwrap()) / (2.0 * h);
        assert!((d - fd).norm() / d.norm() < 1e-4, "z={z} d={d} fd={fd}");
    }
}

#[test]
fn conformal_radius_scales_linearly() {
    let base = diamond_map().deriv0();
    for c in [0.37, 2.5] {
        let m = build_map(&diamond().scale(c).unwrap(), Point::new(0.0, 0.0), DEFAULT_MAP_TOL)
            .unwrap();
        assert!((m.deriv0() / (c * base) - 1.0).abs() < 1e-6);
    }
}

#[test]
fn tolerance_and_interior_point_are_validated() {
    let p = diamond();
    assert!(matches!(
        build_map(&p, Point::new(0.0, 0.0), 1e-9),
        Err(Error::InvalidInput(_))
    ));
    assert!(matches!(
        build_map(&p, Point::new(0.0, 0.0), 0.1),
        Err(Error::InvalidInput(_))
    ));
    assert!(matches!(
        build_map(&p, Point::new(1.0, 0.0), 1e-4),
        Err(Error::InvalidInput(_))
    ));
}

#[test]
fn boundary_correspondence_is_ordered() {
    let m = diamond_map();
    let (pts, angles) = m.correspondence();
    assert_eq!(pts.len(), angles.len());
    let mut wind = 0.0;
    for j in 0..angles.len() {
        wind += (angles[(j + 1) % angles.len()] - angles[j]).rem_euclid(2.0 * PI);
    }
    assert!((wind - 2.0 * PI).abs() < 1e-9);
    for (&p, &a) in pts.iter().zip(angles).step_by(7) {
        assert!((m.boundary_point(a) - p).norm() < 10.0 * m.eps_b());
    }
}

#[test]
fn dilation_coefficients() {
    let c = taylor_coefficients(&Dilation(1.7), 64, 0.9).unwrap();
    assert!((c.values[1] - 1.7).norm() < 1e-12);
    for (n, a) in c.values.iter().enumerate() {
        if n != 1 {
            assert!(a.norm() < 1e-8, "a_{n} = {a}");
        }
    }
}

#[test]
fn first_coefficients_match_normalization() {
    let m = diamond_map();
    let c = taylor_coefficients(m, 64, 0.9).unwrap();
    assert!(c.values[0].norm() < 1e-8);
    assert!((c.values[1].re - m.deriv0()).abs() < 1e-8);
    // Fourfold symmetry: only n ≡ 1 (mod 4) survive.
    for n in [2, 3, 4, 6, 7, 8] {
        assert!(c.values[n].norm() < 1e-6, "a_{n} = {}", c.values[n]);
    }

    let off = build_map(&diamond(), Point::new(0.1, 0.2), DEFAULT_MAP_TOL).unwrap();
    let c = taylor_coefficients(&off, 32, 0.9).unwrap();
    assert!((c.values[0] - Point::new(0.1, 0.2)).norm() < 1e-8);
}

#[test]
fn coefficient_input_checks() {
    let m = diamond_map();
    assert!(matches!(taylor_coefficients(m, 16, 0.3), Err(Error::InvalidInput(_))));
    assert!(matches!(
        taylor_coefficients_with(m, 100, 0.9, 256),
        Err(Error::InvalidInput(_))
    ));
}

#[test]
fn cross_radius_errors_bound_the_difference() {
    let m = diamond_map();
    let a = taylor_coefficients(m, 128, 0.95).unwrap();
    let b = taylor_coefficients_with(m, 128, 0.9, a.samples).unwrap();
    for n in 0..=40 {
        assert!((a.values[n] - b.values[n]).norm() <= a.errors[n] + b.errors[n]);
    }
}

#[test]
fn area_identity_for_the_diamond() {
    let c = taylor_coefficients(diamond_map(), 512, 0.999).unwrap();
    let (area, tail) = c.area_estimate();
    assert!((area - 2.0).abs() < 0.02);
    assert!(tail >= 0.0 && tail < 0.02);
    assert!(c.area_partial_sum() <= area);
}

#[test]
fn regular_polygon_coefficients_are_nearly_a_dilation() {
    let p = Polygon::regular(256, 1.0, Point::new(0.0, 0.0), 0.0).unwrap();
    let m = build_map(&p, Point::new(0.0, 0.0), 1e-5).unwrap();
    let c = taylor_coefficients(&m, 256, 0.99).unwrap();
    assert!((c.values[1].re - regular_radius_oracle(256.0)).abs() < 1e-6);
    for (n, a) in c.values.iter().enumerate() {
        if n != 1 {
            assert!(a.norm() < 1e-6, "a_{n} = {a}");
        }
    }
}

#[test]
fn dilation_means_and_norms() {
    let f = Dilation(2.0);
    for p in [0.5, 1.0, 2.0, 7.0] {
        for r in [0.0, 0.3, 0.9] {
            let m = hardy_mean(&f, r, p).unwrap();
            assert!((m.value - 2.0 * r).abs() < 1e-12);
        }
        let n = hardy_norm_finite(&f, p).unwrap();
        assert!((n.estimate - 2.0).abs() < 1e-12);
        assert!(n.contains(2.0));
        assert!(!n.wide);
    }
}

#[test]
fn parseval_on_the_diamond() {
    let m = diamond_map();
    let c = taylor_coefficients(m, 256, 0.95).unwrap();
    for r in [0.5, 0.9] {
        let direct = hardy_mean(m, r, 2.0).unwrap().value;
        let series: f64 = c
            .values
            .iter()
            .enumerate()
            .map(|(n, a)| a.norm_sqr() * r.powi(2 * n as i32))
            .sum();
        assert!((direct * direct - series).abs() < 1e-6);
    }
}

#[test]
fn means_increase_with_radius() {
    let m = diamond_map();
    for p in [1.0, 2.0, 6.0] {
        let a = hardy_mean(m, 0.5, p).unwrap().value;
        let b = hardy_mean(m, 0.9, p).unwrap().value;
        assert!(a <= b);
    }
}

#[test]
fn quadrature_error_estimates_are_honest() {
    let m = diamond_map();
    let coarse = hardy_mean_tol(m, 0.95, 3.0, 1e-5).unwrap();
    let fine = hardy_mean_tol(m, 0.95, 3.0, 1e-12).unwrap();
    assert!((coarse.value - fine.value).abs() <= coarse.error.max(1e-14));
}

#[test]
fn diamond_norms() {
    let m = diamond_map();
    let inf = hardy_norm(m, f64::INFINITY).unwrap();
    assert!((inf.estimate - 1.0).abs() < 1e-3);
    assert!(inf.lo <= 1.0 && inf.hi >= 1.0 - 1e-3);

    // ‖f‖₂² = Σ|aₙ|², completed with the dyadic-block tail.
    let c = taylor_coefficients(m, 2048, 0.999).unwrap();
    let sq: Vec<f64> = c.values.iter().map(|a| a.norm_sqr()).collect();
    let block = |lo: usize, hi: usize| sq[lo..hi].iter().sum::<f64>();
    let (b1, b2) = (block(512, 1024), block(1024, 2048));
    let q = b2 / b1;
    let total = sq.iter().sum::<f64>() + b2 * q / (1.0 - q);
    let two = hardy_norm(m, 2.0).unwrap();
    assert!(two.contains(total.sqrt()), "{two:?} vs {}", total.sqrt());
    assert!(two.spread() < 1e-3);
}

#[test]
fn boundary_length_is_the_perimeter() {
    let p = diamond();
    assert!((boundary_derivative_integral(diamond_map()) - 4.0 * 2f64.sqrt()).abs() < 1e-12);
    let (l, beta) = image_curve_length_limit(diamond_map()).unwrap();
    assert!((l / p.perimeter() - 1.0).abs() < 1e-2);
    assert!((beta - 0.5).abs() < 0.1);

    let d = disk_map();
    assert!((boundary_derivative_integral(d) / (2.0 * PI) - 1.0).abs() < 1e-3);
    let (l, _) = image_curve_length_limit(d).unwrap();
    assert!((l / d.target().perimeter() - 1.0).abs() < 1e-2);
}

#[test]
fn real_part_means() {
    let z = Dilation(1.0);
    let v = real_part_mean(&z, 0.5, &MeanFunctional::PlusPower { p: 2.0 }).unwrap();
    let oracle = simpson(|t| (0.5 * t.cos()).max(0.0).powi(2), -PI / 2.0, PI / 2.0, 2000) / (2.0 * PI);
    assert!((oracle - 0.0625).abs() < 1e-12);
    assert!((v.value - oracle).abs() < 1e-9);

    let one = real_part_mean(diamond_map(), 0.7, &MeanFunctional::Exp { p: 0.0 }).unwrap();
    assert!((one.value - 1.0).abs() < 1e-15);

    // Self-convergence under node doubling.
    let m = diamond_map();
    let phi = MeanFunctional::Exp { p: 1.0 };
    let (ln, rel, nodes) = real_part_ln_mean(m, 0.9, &phi).unwrap();
    let mut s = CircleSamples::new(m, 0.9, 2 * nodes).unwrap();
    let (ln2, _, _) = s.ln_mean(m, |_, f, _| f.re, 1.0).unwrap();
    assert!((ln2 - ln).exp_m1().abs() < 1e-8);
    assert!(rel < 1e-8);
}

#[test]
fn exponential_means_do_not_overflow() {
    let huge = MeanFunctional::Exp { p: 5000.0 };
    let (ln, _, _) = real_part_ln_mean(&Dilation(1.0), 0.9, &huge).unwrap();
    assert!(ln.is_finite() && ln > 709.0);
    let v = real_part_mean(&Dilation(1.0), 0.9, &huge).unwrap();
    assert!(v.value.is_infinite());
}

#[test]
fn power_functional_needs_nonnegative_real_part() {
    let r = real_part_mean(&Dilation(1.0), 0.5, &MeanFunctional::Power { p: 2.0 });
    assert!(matches!(r, Err(Error::PreconditionViolation(_))));
    assert!(MeanFunctional::PlusPower { p: 0.5 }.validate().is_err());
    assert!(MeanFunctional::EntireSeries { coeffs: vec![1.0, -1.0], p: 2.0 }
        .validate()
        .is_err());
}

#[test]
fn entire_series_of_exponential_matches_exp_plus_power() {
    let a = MeanFunctional::exponential_series(60, 1.5);
    let b = MeanFunctional::ExpPlusPower { p: 1.5 };
    for x in [-1.0, 0.0, 0.3, 1.0, 2.0] {
        assert!((a.ln_phi(x) - b.ln_phi(x)).abs() < 1e-12, "x={x}");
    }
}

#[test]
fn moebius_identity() {
    let m = diamond_map();
    assert!(moebius_identity_check(m, C::new(0.0, 0.0), 2.0).unwrap() < 1e-10);
    assert!(moebius_identity_check(m, C::new(0.3, 0.0), 2.0).unwrap() < 1e-4);
    let mass = poisson_kernel_mass(C::new(0.5, 0.0)).unwrap();
    assert!((2.0 * PI * mass.value - 2.0 * PI).abs() < 1e-8);
    assert!(matches!(
        moebius_identity_check(m, C::new(0.95, 0.0), 2.0),
        Err(Error::InvalidInput(_))
    ));
}

#[test]
fn cache_round_trip() {
    let dir = std::env::temp_dir().join(format!("steinsym-cache-{}", std::process::id()));
    let cache = MapCache::new(&dir).unwrap();
    let p = Polygon::rectangle(-0.5, 0.5, -0.4, 0.6).unwrap();
    let a = cache.get_or_build(&p, Point::new(0.0, 0.0), 1e-3).unwrap();
    let b = cache.get_or_build(&p, Point::new(0.0, 0.0), 1e-3).unwrap();
    assert_eq!(a.deriv0(), b.deriv0());
    let z = C::new(0.3, -0.4);
    assert_eq!(a.eval(z).unwrap(), b.eval(z).unwrap());

    let path = dir.join("x.json");
    save_map(&a, &path).unwrap();
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::write(&path, text.replace("\"version\":1", "\"version\":99")).unwrap();
    assert!(matches!(load_map(&path), Err(Error::InvalidInput(_))));
    std::fs::remove_dir_all(&dir).unwrap();
}
