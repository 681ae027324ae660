use std::f64::consts::PI;

use serde::Serialize;
use steinsym::conformal::{build_map, taylor_coefficients, ConformalMap};
use steinsym::{Point, Polygon};

use crate::error::CliResult;
use crate::input::{load_polygon, parse_point, write_file};
use crate::svg::{side_by_side, Panel};
use crate::{Global, MapArgs};

#[derive(Serialize)]
struct MapSummary {
    name: String,
    polygon_hash: String,
    w0: [f64; 2],
    tol: f64,
    deriv0: f64,
    eps_b: f64,
    value_error: f64,
    points: usize,
    injective: bool,
}

pub fn run(g: &Global, a: &MapArgs) -> CliResult<()> {
    let cfg = g.config()?;
    let (name, p) = load_polygon(&a.input)?;
    let w0 = parse_point(&a.w0)?;
    let m = build_map(&p, w0, cfg.tol_map)?;
    let summary = MapSummary {
        name: name.clone(),
        polygon_hash: p.hash_hex(),
        w0: [w0.re, w0.im],
        tol: m.tol(),
        deriv0: m.deriv0(),
        eps_b: m.eps_b(),
        value_error: m.value_error(),
        points: m.num_points(),
        injective: m.is_injective(),
    };
    println!("map onto {name}: f'(0) = {:.12}", summary.deriv0);
    println!("boundary error {:.3e}, value error {:.3e}, {} points", summary.eps_b, summary.value_error, summary.points);
    let coeffs = match a.coefficients {
        Some(n) => Some(taylor_coefficients(&m, n, a.rho)?),
        None => None,
    };
    if let Some(c) = &coeffs {
        let (area, tail) = c.area_estimate();
        println!("area from coefficients {area:.8} (tail {tail:.2e}), polygon area {:.8}", p.area());
    }
    if let Some(dir) = &a.out {
        write_file(&dir.join("map.json"), serde_json::to_string_pretty(&summary).expect("summary serializes"))?;
        write_file(&dir.join("map.svg"), grid_svg(&m, &p)?)?;
        if let Some(c) = &coeffs {
            let mut s = String::from("n,re,im,abs,error\n");
            for (n, (v, e)) in c.values.iter().zip(&c.errors).enumerate() {
                s.push_str(&format!("{n},{:e},{:e},{:e},{:e}\n", v.re, v.im, v.norm(), e));
            }
            write_file(&dir.join("coefficients.csv"), s)?;
        }
        println!("wrote {}", dir.display());
    }
    Ok(())
}

/// Polar grid in the disk next to its image.
fn grid_svg(m: &ConformalMap, p: &Polygon) -> CliResult<String> {
    let disk = Polygon::regular(256, 1.0, Point::new(0.0, 0.0), 0.0)?;
    let mut left = Panel::new("unit disk").polygon(disk);
    let mut right = Panel::new("image").polygon(p.clone());
    let circle = |r: f64| (0..=200).map(move |k| Point::from_polar(r, 2.0 * PI * k as f64 / 200.0));
    let ray = |t: f64| (0..=100).map(move |k| Point::from_polar(0.98 * k as f64 / 100.0, t));
    let mut curves: Vec<Vec<Point>> = [0.25, 0.5, 0.75, 0.9, 0.97].iter().map(|&r| circle(r).collect()).collect();
    curves.extend((0..16).map(|k| ray(2.0 * PI * k as f64 / 16.0).collect()));
    for c in curves {
        let image = c.iter().map(|&z| m.eval(z)).collect::<steinsym::Result<Vec<_>>>()?;
        left = left.polyline(c);
        right = right.polyline(image);
    }
    Ok(side_by_side(left, right))
}
