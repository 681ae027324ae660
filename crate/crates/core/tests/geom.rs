use std::f64::consts::PI;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use steinsym::geom::*;
use steinsym::verify::{corpus, finger};
use steinsym::Error;

fn p(x: f64, y: f64) -> Point {
    Point::new(x, y)
}

fn unit_square() -> Polygon {
    Polygon::new(vec![p(0.0, 0.0), p(1.0, 0.0), p(1.0, 1.0), p(0.0, 1.0)]).unwrap()
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1e-300)
}

/// Even-odd ray casting, written independently of the library.
fn inside(vs: &[Point], z: Point) -> bool {
    let mut c = false;
    let n = vs.len();
    for i in 0..n {
        let (a, b) = (vs[i], vs[(i + 1) % n]);
        if (a.im > z.im) != (b.im > z.im) {
            let x = a.re + (z.im - a.im) * (b.re - a.re) / (b.im - a.im);
            if z.re < x {
                c = !c;
            }
        }
    }
    c
}

#[test]
fn square_and_regular_polygon_measures() {
    let sq = unit_square();
    assert_eq!(area(&sq), 1.0);
    assert_eq!(perimeter(&sq), 4.0);
    assert!((diameter(&sq) - 2f64.sqrt()).abs() < 1e-15);

    let r = Polygon::rectangle(0.0, 2.0, 0.0, 1.0).unwrap();
    assert!((perimeter(&r) - 6.0).abs() < 1e-15);
    assert!((diameter(&r) - 5f64.sqrt()).abs() < 1e-15);

    let g = Polygon::regular(64, 1.0, p(0.0, 0.0), 0.0).unwrap();
    assert!(rel(area(&g), 32.0 * (2.0 * PI / 64.0).sin()) < 1e-13);
    assert!((area(&g) - 3.13655).abs() < 1e-5);
    assert!((diameter(&g) - 2.0).abs() < 1e-14);
}

#[test]
fn clockwise_input_is_reversed() {
    let cw = Polygon::new(vec![p(0.0, 0.0), p(0.0, 1.0), p(1.0, 1.0), p(1.0, 0.0)]).unwrap();
    assert_eq!(area(&cw), 1.0);
}

#[test]
fn invalid_polygons_are_rejected() {
    let bowtie = Polygon::new(vec![p(0.0, 0.0), p(1.0, 1.0), p(1.0, 0.0), p(0.0, 1.0)]);
    assert!(matches!(bowtie, Err(Error::InvalidInput(_))));
    let flat = Polygon::new(vec![p(0.0, 0.0), p(1.0, 0.0), p(2.0, 0.0)]);
    assert!(matches!(flat, Err(Error::InvalidInput(_))));
    assert!(Polygon::new(vec![p(0.0, 0.0), p(1.0, 0.0)]).is_err());
    let dup = Polygon::new(vec![p(0.0, 0.0), p(1.0, 0.0), p(1.0, 0.0), p(0.0, 1.0)]);
    assert!(dup.is_err());
}

#[test]
fn json_round_trip() {
    let f = finger().unwrap();
    let back = Polygon::from_json(&f.to_json()).unwrap();
    assert_eq!(back.vertices(), f.vertices());
    assert_eq!(back.hash_hex(), f.hash_hex());
    assert!(Polygon::from_json("[[0,0],[1,0]]").is_err());
    assert!(Polygon::from_json("not json").is_err());
}

#[test]
fn finger_area_matches_monte_carlo() {
    let f = finger().unwrap();
    let (x0, x1, y0, y1) = f.bounds();
    let box_area = (x1 - x0) * (y1 - y0);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let n = 1_000_000;
    let hits = (0..n)
        .filter(|_| inside(f.vertices(), p(rng.gen_range(x0..x1), rng.gen_range(y0..y1))))
        .count();
    let mc = box_area * hits as f64 / n as f64;
    assert!(rel(area(&f), mc) < 5e-3, "shoelace {} vs Monte Carlo {mc}", area(&f));
}

#[test]
fn vertical_slices_of_square_and_triangle() {
    let s = vertical_slices(&unit_square());
    assert_eq!(s.kind, SliceKind::VerticalLength);
    for t in [0.1, 0.5, 0.9] {
        assert!((s.value_at(t) - 1.0).abs() < 1e-14);
    }
    assert_eq!(s.value_at(-0.5), 0.0);
    assert_eq!(s.value_at(1.5), 0.0);

    let tri = Polygon::new(vec![p(0.0, 0.0), p(1.0, 0.0), p(0.0, 1.0)]).unwrap();
    let s = vertical_slices(&tri);
    for t in [0.0, 0.25, 0.5, 0.75] {
        assert!((s.value_at(t) - (1.0 - t)).abs() < 1e-14, "t = {t}");
    }
    assert!((s.integral() - 0.5).abs() < 1e-15);
}

#[test]
fn vertical_slices_match_direct_intersection() {
    // Independent oracle: intersect the line x = t with every edge.
    let f = finger().unwrap();
    let prof = vertical_slices(&f);
    let (x0, x1, _, _) = f.bounds();
    let vs = f.vertices();
    for k in 1..50 {
        let t = x0 + (x1 - x0) * (k as f64 + 0.37) / 50.0;
        let mut ys: Vec<f64> = (0..vs.len())
            .filter_map(|i| {
                let (a, b) = (vs[i], vs[(i + 1) % vs.len()]);
                ((a.re <= t) != (b.re <= t)).then(|| a.im + (t - a.re) * (b.im - a.im) / (b.re - a.re))
            })
            .collect();
        ys.sort_by(f64::total_cmp);
        let len: f64 = ys.chunks(2).map(|c| c[1] - c[0]).sum();
        assert!((prof.value_at(t) - len).abs() < 1e-12, "t = {t}: {} vs {len}", prof.value_at(t));
    }
}

#[test]
fn slice_integrals_equal_area_on_every_fixture() {
    for fx in corpus().unwrap() {
        let a = area(&fx.polygon);
        let v = vertical_slices(&fx.polygon).integral();
        assert!(rel(v, a) < 1e-9, "{}: {v} vs {a}", fx.name);

        let vs = fx.polygon.vertices();
        let t_max = vs.iter().map(|z| z.norm()).fold(0.0, f64::max);
        let radii: Vec<f64> = (0..=4000).map(|k| t_max * 1.001 * k as f64 / 4000.0).collect();
        let r = radial_slices(&fx.polygon, &radii);
        assert_eq!(r.kind, SliceKind::AngularMeasure);
        assert!(r.left.iter().all(|&m| (0.0..=2.0 * PI + 1e-12).contains(&m)));
        assert!(rel(r.integral(), a) < 2e-3, "{}: radial {} vs {a}", fx.name, r.integral());
    }
}

#[test]
fn angular_measure_examples() {
    let disk = Polygon::regular(256, 1.0, p(0.0, 0.0), 0.0).unwrap();
    assert!((angular_measure(&disk, 0.5) - 2.0 * PI).abs() < 1e-6);
    let half = steinsym::verify::half_disk(1.0, p(0.0, 0.0), 256).unwrap();
    assert!((angular_measure(&half, 0.5) - PI).abs() < 1e-3);
    assert_eq!(angular_measure(&disk, 1.5), 0.0);
}

#[test]
fn isoperimetric_on_every_fixture() {
    for fx in corpus().unwrap() {
        let (a, l) = (area(&fx.polygon), perimeter(&fx.polygon));
        assert!(4.0 * PI * a <= l * l, "{}", fx.name);
        let near = rel(l * l, 4.0 * PI * a) < 1e-3;
        assert_eq!(near, fx.name == "disk" || fx.name == "translated-disk" || fx.name == "lifted-disk", "{}", fx.name);
    }
}

#[test]
fn rotate_and_scale_examples() {
    let sq = Polygon::rectangle(-1.0, 1.0, -1.0, 1.0).unwrap();
    assert_eq!(rotate(&sq, 0.0).vertices(), sq.vertices());
    let q = rotate(&sq, PI / 2.0);
    for v in sq.vertices() {
        assert!(q.vertices().iter().any(|w| (w - v).norm() < 1e-14));
    }
    assert_eq!(scale(&sq, 1.0).unwrap().vertices(), sq.vertices());
    assert!((area(&scale(&unit_square(), 2.0).unwrap()) - 4.0).abs() < 1e-14);
    let back = scale(&scale(&sq, 0.5).unwrap(), 2.0).unwrap();
    assert_eq!(back.vertices(), sq.vertices());
    assert!(matches!(scale(&sq, 0.0), Err(Error::InvalidInput(_))));
    assert!(matches!(scale(&sq, -1.0), Err(Error::InvalidInput(_))));

    for fx in corpus().unwrap() {
        let b = rotate(&rotate(&fx.polygon, 0.83), -0.83);
        for (v, w) in fx.polygon.vertices().iter().zip(b.vertices()) {
            assert!((v - w).norm() < 1e-12, "{}", fx.name);
        }
    }
}

#[test]
fn hausdorff_examples() {
    let sq = unit_square();
    assert_eq!(boundary_hausdorff(&sq, &sq), 0.0);
    let c = p(0.5, 0.5);
    let big = scale(&sq.translate(-c), 1.1).unwrap().translate(c);
    let d = boundary_hausdorff(&sq, &big);
    assert!((d - 0.05 * 2f64.sqrt()).abs() < 2e-3, "{d}");
    let centred = sq.translate(-c);
    assert!(boundary_hausdorff(&centred, &rotate(&centred, PI / 2.0)) < 1e-12);
}

fn star_polygon() -> impl Strategy<Value = Polygon> {
    // Radii at sorted angles around the origin give a simple star-shaped
    // polygon.
    (5usize..24).prop_flat_map(|n| {
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
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn rotation_preserves_measures(q in star_polygon(), phi in -10.0f64..10.0) {
        let r = rotate(&q, phi);
        prop_assert!(rel(area(&r), area(&q)) < 1e-12);
        prop_assert!(rel(perimeter(&r), perimeter(&q)) < 1e-12);
        prop_assert!(rel(diameter(&r), diameter(&q)) < 1e-12);
    }

    #[test]
    fn rotate_and_scale_commute(q in star_polygon(), phi in -4.0f64..4.0, c in 0.1f64..10.0) {
        let a = scale(&rotate(&q, phi), c).unwrap();
        let b = rotate(&scale(&q, c).unwrap(), phi);
        for (v, w) in a.vertices().iter().zip(b.vertices()) {
            prop_assert!((v - w).norm() < 1e-12 * (1.0 + v.norm()));
        }
    }

    #[test]
    fn scaling_is_homogeneous(q in star_polygon(), c in 0.1f64..10.0) {
        let s = scale(&q, c).unwrap();
        prop_assert!(rel(area(&s), c * c * area(&q)) < 1e-12);
        prop_assert!(rel(perimeter(&s), c * perimeter(&q)) < 1e-12);
    }

    #[test]
    fn slices_integrate_to_area(q in star_polygon(), phi in 0.0f64..6.3) {
        let q = rotate(&q, phi);
        prop_assert!(rel(vertical_slices(&q).integral(), area(&q)) < 1e-9);
        prop_assert!(4.0 * PI * area(&q) <= perimeter(&q).powi(2));
    }

    #[test]
    fn hausdorff_is_symmetric_and_bounded_by_shift(q in star_polygon(), dx in -0.5f64..0.5) {
        let t = q.translate(p(dx, 0.0));
        let (a, b) = (boundary_hausdorff(&q, &t), boundary_hausdorff(&t, &q));
        prop_assert!((a - b).abs() < 1e-12);
        prop_assert!(a <= dx.abs() + 1e-12);
    }
}
