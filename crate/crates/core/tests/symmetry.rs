use std::f64::consts::{E, PI};

use proptest::prelude::*;
use steinsym::geom::{boundary_hausdorff, rotate, Point, Polygon};
use steinsym::symmetry::*;
use steinsym::verify::{corpus, half_disk, Tag};
use steinsym::Error;

fn p(x: f64, y: f64) -> Point {
    Point::new(x, y)
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

/// Densely sampled polygon of `{r0 < |w| < r1, a0 < arg w < a1}`.
fn sector(r0: f64, r1: f64, a0: f64, a1: f64, n: usize) -> Polygon {
    let arc = |r: f64, rev: bool| -> Vec<Point> {
        (0..=n)
            .map(|k| {
                let s = k as f64 / n as f64;
                let a = if rev { a1 - s * (a1 - a0) } else { a0 + s * (a1 - a0) };
                Point::from_polar(r, a)
            })
            .collect()
    };
    let mut v = arc(r1, false);
    v.extend(arc(r0, true));
    Polygon::new(v).unwrap()
}

fn same_vertex_set(a: &Polygon, b: &Polygon, tol: f64) -> bool {
    a.len() == b.len()
        && a
            .vertices()
            .iter()
            .all(|v| b.vertices().iter().any(|w| (v - w).norm() < tol))
}

#[test]
fn steiner_rectangle_recentres() {
    let r = Polygon::rectangle(0.0, 2.0, 0.0, 1.0).unwrap();
    let s = steiner_symmetrize(&r).unwrap();
    let want = Polygon::rectangle(0.0, 2.0, -0.5, 0.5).unwrap();
    assert!(same_vertex_set(&s, &want, 1e-15), "{:?}", s.vertices());
}

#[test]
fn steiner_triangle() {
    let t = Polygon::new(vec![p(0.0, 0.0), p(1.0, 0.0), p(0.0, 1.0)]).unwrap();
    let s = steiner_symmetrize(&t).unwrap();
    let want = Polygon::new(vec![p(0.0, -0.5), p(1.0, 0.0), p(0.0, 0.5)]).unwrap();
    assert!(same_vertex_set(&s, &want, 1e-15), "{:?}", s.vertices());
}

#[test]
fn symmetric_convex_fixtures_are_fixed_points() {
    for name in ["disk", "diamond", "square"] {
        let fx = steinsym::verify::fixture(name).unwrap();
        let s = steiner_symmetrize(&fx.polygon).unwrap();
        assert!(same_vertex_set(&s, &fx.polygon, 1e-12), "{name}");
    }
}

#[test]
fn steiner_invariants_on_every_fixture() {
    for fx in corpus().unwrap() {
        let q = &fx.polygon;
        let s = steiner_symmetrize(q).unwrap();
        assert!(rel(s.area(), q.area()) < 1e-9, "{}", fx.name);
        assert!(s.perimeter() <= q.perimeter() + 1e-9, "{}", fx.name);
        assert!(s.diameter() <= q.diameter() + 1e-9, "{}", fx.name);
        assert!(boundary_hausdorff(&s, &s.conjugate()) < 1e-12, "{}", fx.name);
        let s2 = steiner_symmetrize(&s).unwrap();
        assert!(same_vertex_set(&s2, &s, 1e-9), "{}", fx.name);
    }
}

#[test]
fn circular_disk_and_half_disk() {
    let disk = Polygon::regular(256, 1.0, p(0.0, 0.0), 0.0).unwrap();
    let c = circular_symmetrize(&disk, 512).unwrap();
    assert!(boundary_hausdorff(&c, &disk) < 2e-2);

    let half = half_disk(1.0, p(0.0, 0.0), 256).unwrap();
    let c = circular_symmetrize(&half, 512).unwrap();
    let right = half_disk(1.0, p(0.0, 0.0), 256).unwrap().rotate(-PI / 2.0);
    let d = boundary_hausdorff(&c, &right);
    assert!(d < 2e-2, "{d}");
}

#[test]
fn circular_square_area() {
    let sq = Polygon::rectangle(-1.0, 1.0, -1.0, 1.0).unwrap();
    let c = circular_symmetrize(&sq, 512).unwrap();
    assert!(rel(c.area(), 4.0) < 1e-2, "{}", c.area());
}

#[test]
fn circular_budget_is_checked() {
    let sq = Polygon::rectangle(-1.0, 1.0, -1.0, 1.0).unwrap();
    assert!(matches!(circular_symmetrize(&sq, 63), Err(Error::InvalidInput(_))));
}

#[test]
fn circular_invariants_on_every_fixture() {
    for fx in corpus().unwrap() {
        let q = &fx.polygon;
        let c = circular_symmetrize_detailed(q, 512).unwrap();
        let s = &c.polygon;
        assert!(!c.degraded, "{}", fx.name);
        assert!(rel(s.area(), q.area()) < 1e-2, "{}: {} vs {}", fx.name, s.area(), q.area());
        assert!(s.perimeter() <= q.perimeter() * 1.01, "{}", fx.name);
        assert!(s.contains_strictly(p(0.0, 0.0)), "{}", fx.name);
        assert!(boundary_hausdorff(s, &s.conjugate()) < 1e-9, "{}", fx.name);
    }
}

#[test]
fn circular_of_domain_missing_origin() {
    let q = Polygon::rectangle(1.0, 2.0, -0.5, 0.5).unwrap();
    let s = circular_symmetrize(&q, 512).unwrap();
    assert!(!s.contains(p(0.0, 0.0)));
    assert!(rel(s.area(), 1.0) < 1e-2);
}

#[test]
fn exp_of_rectangles_is_annular_sector() {
    let r = Polygon::rectangle(0.0, 1.0, -1.0, 1.0).unwrap();
    let e = exp_domain(&r, 4096).unwrap();
    assert!(boundary_hausdorff(&e, &sector(1.0, E, -1.0, 1.0, 2000)) < 1e-2);
    // Sector area (θ/2)(R² − r²) with θ = 2.
    assert!(rel(e.area(), E * E - 1.0) < 1e-3);

    let r = Polygon::rectangle(0.0, 1.0, 2.0, 4.0).unwrap();
    let e = exp_domain(&r, 4096).unwrap();
    assert!(boundary_hausdorff(&e, &sector(1.0, E, 2.0, 4.0, 2000)) < 1e-2);
}

#[test]
fn exp_rejects_tall_domains() {
    let r = Polygon::rectangle(0.0, 1.0, 0.0, 2.0 * PI + 0.1).unwrap();
    assert!(matches!(exp_domain(&r, 4096), Err(Error::PreconditionViolation(_))));
}

#[test]
fn exp_commutes_with_symmetrization_on_rectangles() {
    for fx in corpus().unwrap().into_iter().filter(|f| f.has(Tag::Rectangle) && !f.has(Tag::Tall)) {
        let q = &fx.polygon;
        let a = exp_domain(&steiner_symmetrize(q).unwrap(), 4096).unwrap();
        let b = circular_symmetrize(&exp_domain(q, 4096).unwrap(), 512).unwrap();
        let d = boundary_hausdorff(&a, &b);
        assert!(d < 2e-2, "{}: {d}", fx.name);
    }
}

fn star_polygon() -> impl Strategy<Value = Polygon> {
    (5usize..20).prop_flat_map(|n| {
        proptest::collection::vec(0.3f64..2.0, n).prop_map(move |rs| {
            let vs = rs
                .iter()
                .enumerate()
                .map(|(k, &r)| Point::from_polar(r, 2.0 * PI * k as f64 / n as f64))
                .collect();
            Polygon::new(vs).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn steiner_preserves_area_and_shrinks(q in star_polygon(), phi in 0.0f64..6.3) {
        let q = rotate(&q, phi);
        let s = steiner_symmetrize(&q).unwrap();
        prop_assert!(rel(s.area(), q.area()) < 1e-9);
        prop_assert!(s.perimeter() <= q.perimeter() + 1e-9);
        prop_assert!(s.diameter() <= q.diameter() + 1e-9);
        let s2 = steiner_symmetrize(&s).unwrap();
        prop_assert!(same_vertex_set(&s2, &s, 1e-9));
    }

    #[test]
    fn circular_preserves_area(q in star_polygon(), phi in 0.0f64..6.3) {
        let q = rotate(&q, phi);
        let s = circular_symmetrize(&q, 512).unwrap();
        prop_assert!(rel(s.area(), q.area()) < 1e-2);
        prop_assert!(s.perimeter() <= q.perimeter() * 1.01);
        prop_assert!(s.contains_strictly(p(0.0, 0.0)));
    }
}
