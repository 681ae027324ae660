use serde::Serialize;
use steinsym::verify::{search_p0, Harness, P0Search};

use crate::error::CliResult;
use crate::input::{load_fixtures, write_file};
use crate::{Global, SearchP0Args};

#[derive(Serialize)]
struct P0Report<'a> {
    r: f64,
    p_max: f64,
    searches: &'a [P0Search],
    /// Smallest violating exponent; the critical exponent lies in `[2, this]`.
    min_p_star: Option<f64>,
}

/// One row per fixture: `fixture,r,p_max,p_star,lo,hi,evaluations`.
pub fn p0_csv(rows: &[P0Search]) -> String {
    let mut s = String::from("fixture,r,p_max,p_star,bracket_lo,bracket_hi,evaluations\n");
    let num = |x: Option<f64>| x.map_or(String::new(), |v| format!("{v:e}"));
    for r in rows {
        s.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            r.fixture,
            r.r,
            r.p_max,
            num(r.p_star),
            num(r.bracket.map(|b| b.0)),
            num(r.bracket.map(|b| b.1)),
            r.evaluations.len()
        ));
    }
    s
}

pub fn run(g: &Global, a: &SearchP0Args) -> CliResult<()> {
    let mut cfg = g.config()?;
    cfg.p0_radius = a.r;
    cfg.p0_max = a.pmax;
    let h = Harness::new(cfg)?;
    let fixtures = load_fixtures(Some(&a.fixture))?;
    let mut rows = Vec::new();
    for fx in &fixtures {
        let s = search_p0(&h, fx, a.r)?;
        match s.p_star {
            Some(p) => println!("{:<18} p* = {p:.4}", fx.name),
            None => println!("{:<18} no violation <= {}", fx.name, a.pmax),
        }
        rows.push(s);
    }
    let min = rows.iter().filter_map(|s| s.p_star).reduce(f64::min);
    match min {
        Some(p) => println!("empirical bracket for the critical exponent: [2, {p:.4}]"),
        None => println!("no violation found up to p = {}", a.pmax),
    }
    if let Some(dir) = &a.out {
        write_file(&dir.join("p0.csv"), p0_csv(&rows))?;
        let rep = P0Report {
            r: a.r,
            p_max: a.pmax,
            searches: &rows,
            min_p_star: min,
        };
        write_file(&dir.join("p0.json"), serde_json::to_string_pretty(&rep).expect("report serializes"))?;
    }
    Ok(())
}
