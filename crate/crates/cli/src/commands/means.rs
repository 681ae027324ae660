use steinsym::conformal::{build_map, hardy_mean_tol, hardy_norm, hardy_sup};

use crate::error::CliResult;
use crate::input::{load_polygon, parse_list, parse_point, write_file};
use crate::{Global, MeansArgs};

pub fn run(g: &Global, a: &MeansArgs) -> CliResult<()> {
    let cfg = g.config()?;
    let (name, p) = load_polygon(&a.input)?;
    let w0 = parse_point(&a.w0)?;
    let rs = parse_list(&a.r)?;
    let ps = parse_list(&a.p)?;
    let m = build_map(&p, w0, cfg.tol_map)?;
    let mut csv = String::from("fixture,r,p,value,error\n");
    let fp = steinsym::verify::fmt_p;
    for &r in &rs {
        for &pp in &ps {
            let est = if pp.is_infinite() {
                hardy_sup(&m, r, cfg.tol_quadrature)?
            } else {
                hardy_mean_tol(&m, r, pp, cfg.tol_quadrature)?
            };
            let (v, e) = (est.value, est.error + m.value_error());
            csv.push_str(&format!("{name},{r},{},{v:e},{e:e}\n", fp(pp)));
        }
    }
    if a.boundary {
        for &pp in &ps {
            let n = hardy_norm(&m, pp)?;
            // The boundary row reports the interval midpoint and half-width.
            csv.push_str(&format!(
                "{name},1,{},{:e},{:e}\n",
                fp(pp),
                0.5 * (n.lo + n.hi),
                0.5 * (n.hi - n.lo)
            ));
        }
    }
    print!("{csv}");
    if let Some(out) = &a.out {
        write_file(out, &csv)?;
    }
    Ok(())
}
