use steinsym::symmetry::{circular_symmetrize_detailed, exp_domain, steiner_symmetrize};
use steinsym::Polygon;

use crate::error::CliResult;
use crate::input::{load_polygon, write_file};
use crate::svg::{side_by_side, Panel};
use crate::{Global, SymMode, SymmetrizeArgs};

pub fn run(_g: &Global, a: &SymmetrizeArgs) -> CliResult<()> {
    let (name, p) = load_polygon(&a.input)?;
    let out = match a.mode {
        SymMode::Steiner => steiner_symmetrize(&p)?,
        SymMode::Circular => {
            let c = circular_symmetrize_detailed(&p, a.radial_budget)?;
            if c.degraded {
                log::warn!("circular symmetrization of {name} contains an annular band; output approximated");
            }
            c.polygon
        }
        SymMode::Exp => exp_domain(&p, a.boundary_budget)?,
    };
    write_file(&a.out, out.to_json())?;
    let svg_path = a.out.with_extension("svg");
    let mode = format!("{:?}", a.mode).to_lowercase();
    write_file(
        &svg_path,
        side_by_side(
            Panel::new(format!("{name}")).polygon(p.clone()),
            Panel::new(format!("{mode} of {name}")).polygon(out.clone()),
        ),
    )?;
    print_measures(&p, &out);
    println!("wrote {} and {}", a.out.display(), svg_path.display());
    Ok(())
}

fn print_measures(before: &Polygon, after: &Polygon) {
    println!("{:<10} {:>16} {:>16} {:>12}", "measure", "before", "after", "delta");
    for (m, x, y) in [
        ("area", before.area(), after.area()),
        ("perimeter", before.perimeter(), after.perimeter()),
        ("diameter", before.diameter(), after.diameter()),
    ] {
        println!("{m:<10} {x:>16.10} {y:>16.10} {:>12.3e}", y - x);
    }
    println!("relative area delta {:.3e}", (after.area() / before.area() - 1.0).abs());
}
