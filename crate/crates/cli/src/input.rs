//! Polygons and fixtures named on the command line.

use std::path::Path;

use steinsym::verify::{corpus, fixture, Fixture};
use steinsym::{Point, Polygon};

use crate::error::{CliError, CliResult};

/// A corpus fixture by name, or a polygon JSON file (`[[x, y], ...]`).
pub fn load_polygon(spec: &str) -> CliResult<(String, Polygon)> {
    if let Ok(fx) = fixture(spec) {
        return Ok((fx.name, fx.polygon));
    }
    let path = Path::new(spec);
    if !path.exists() {
        return Err(CliError::Input(format!("{spec} is neither a fixture name nor a file")));
    }
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(format!("reading {spec}"), e))?;
    let poly = Polygon::from_json(&text).map_err(|e| CliError::Input(format!("{spec}: {e}")))?;
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| spec.to_string());
    Ok((name, poly))
}

/// Fixture for a polygon read from a file: the alternate center sits at half
/// the boundary distance of the origin.
pub fn file_fixture(name: &str, polygon: Polygon) -> CliResult<Fixture> {
    let d = polygon.boundary_distance(Point::new(0.0, 0.0));
    let alt = Point::new(2.0, 1.0) / 5f64.sqrt() * (0.5 * d);
    Ok(Fixture::new(name, polygon, &[], "read from file", alt)?)
}

/// Comma-separated fixture names or files; `None` or `all` is the corpus.
pub fn load_fixtures(list: Option<&str>) -> CliResult<Vec<Fixture>> {
    let all = corpus()?;
    let Some(list) = list.filter(|l| *l != "all") else {
        return Ok(all);
    };
    let mut out = Vec::new();
    for part in list.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        match all.iter().find(|f| f.name == part) {
            Some(fx) => out.push(fx.clone()),
            None => {
                let (name, poly) = load_polygon(part)?;
                out.push(file_fixture(&name, poly)?);
            }
        }
    }
    if out.is_empty() {
        return Err(CliError::Input("no fixtures given".into()));
    }
    Ok(out)
}

/// Parses `x,y` into a point.
pub fn parse_point(s: &str) -> CliResult<Point> {
    let bad = || CliError::Input(format!("expected x,y, got {s:?}"));
    let (x, y) = s.split_once(',').ok_or_else(bad)?;
    let x: f64 = x.trim().parse().map_err(|_| bad())?;
    let y: f64 = y.trim().parse().map_err(|_| bad())?;
    Ok(Point::new(x, y))
}

/// Parses a comma-separated list of numbers; `inf` is accepted.
pub fn parse_list(s: &str) -> CliResult<Vec<f64>> {
    s.split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| match p {
            "inf" | "∞" => Ok(f64::INFINITY),
            _ => p.parse().map_err(|_| CliError::Input(format!("not a number: {p:?}"))),
        })
        .collect()
}

pub fn write_file(path: &Path, contents: impl AsRef<[u8]>) -> CliResult<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|e| CliError::io(format!("creating {}", dir.display()), e))?;
    }
    std::fs::write(path, contents).map_err(|e| CliError::io(format!("writing {}", path.display()), e))
}
