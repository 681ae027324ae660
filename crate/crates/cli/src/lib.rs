//! Command-line front-end of `steinsym`.
//!
//! Every subcommand returns `Ok(())` or a [`CliError`] carrying its exit
//! status: 2 for bad input, 3 for a violated precondition, 4 for a theorem
//! violated beyond its error budget.

pub mod commands;
pub mod error;
pub mod input;
pub mod record;
pub mod svg;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use steinsym::verify::VerifyConfig;

pub use error::{CliError, CliResult};

#[derive(Parser, Debug)]
#[command(name = "steinsym", version, about = "Symmetrization, conformal maps and inequality checks on polygons")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

/// Flags shared by every subcommand.
#[derive(Args, Debug, Clone, Default)]
pub struct Global {
    /// Seed for every random choice.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Boundary tolerance of the conformal maps, relative to half the
    /// diameter.
    #[arg(long, global = true)]
    pub tol_map: Option<f64>,
    /// Relative tolerance of the circle quadrature.
    #[arg(long, global = true)]
    pub tol_quadrature: Option<f64>,
    /// Factor applied to every error budget.
    #[arg(long, global = true)]
    pub budget_multiplier: Option<f64>,
}

impl Global {
    fn is_empty(&self) -> bool {
        self.seed.is_none() && self.tol_map.is_none() && self.tol_quadrature.is_none() && self.budget_multiplier.is_none()
    }

    /// The default configuration with the flags applied.
    pub fn config(&self) -> CliResult<VerifyConfig> {
        let mut c = VerifyConfig::default();
        if let Some(s) = self.seed {
            c.seed = s;
        }
        if let Some(t) = self.tol_map {
            c.tol_map = t;
        }
        if let Some(t) = self.tol_quadrature {
            c.tol_quadrature = t;
        }
        if let Some(b) = self.budget_multiplier {
            c.budget_multiplier = b;
        }
        c.validate()?;
        Ok(c)
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Symmetrize a polygon and write it with a side-by-side SVG.
    Symmetrize(SymmetrizeArgs),
    /// Build the Riemann map onto a polygon and report its accuracy.
    Map(MapArgs),
    /// Integral means of the Riemann map.
    Means(MeansArgs),
    /// Run the rotate, symmetrize and shrink process.
    Deform(DeformArgs),
    /// Run inequality suites over the fixture corpus.
    Verify(VerifyArgs),
    /// Search for the smallest exponent violating the Steiner mean inequality.
    SearchP0(SearchP0Args),
    /// Summarize the output directory of a verification run.
    Report(ReportArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum SymMode {
    Steiner,
    Circular,
    Exp,
}

#[derive(Args, Debug)]
pub struct SymmetrizeArgs {
    /// Fixture name or polygon JSON file.
    pub input: String,
    #[arg(long, value_enum, default_value = "steiner")]
    pub mode: SymMode,
    /// Output polygon JSON; the SVG goes next to it.
    #[arg(long, short)]
    pub out: PathBuf,
    #[arg(long, default_value_t = 512)]
    pub radial_budget: usize,
    #[arg(long, default_value_t = 4096)]
    pub boundary_budget: usize,
}

#[derive(Args, Debug)]
pub struct MapArgs {
    /// Fixture name or polygon JSON file.
    pub input: String,
    /// Image of the origin, as `x,y`.
    #[arg(long, default_value = "0,0", allow_hyphen_values = true)]
    pub w0: String,
    /// Also compute this many Taylor coefficients.
    #[arg(long)]
    pub coefficients: Option<usize>,
    #[arg(long, default_value_t = 0.99)]
    pub rho: f64,
    /// Directory for map.json, map.svg and coefficients.csv.
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct MeansArgs {
    /// Fixture name or polygon JSON file.
    pub input: String,
    #[arg(long, default_value = "0,0", allow_hyphen_values = true)]
    pub w0: String,
    /// Radii, comma separated.
    #[arg(long, default_value = "0.5,0.9")]
    pub r: String,
    /// Exponents, comma separated; `inf` gives the maximum modulus.
    #[arg(long, default_value = "2,4,inf")]
    pub p: String,
    /// Also estimate the boundary norms.
    #[arg(long)]
    pub boundary: bool,
    /// Write the table as CSV.
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum DeformMode {
    Shrunk,
    Unshrunk,
}

#[derive(Args, Debug)]
pub struct DeformArgs {
    /// Fixture name or polygon JSON file.
    pub input: String,
    #[arg(long, default_value_t = 1.0)]
    pub alpha: f64,
    /// `greedy`, `golden`, `random` or `fixed:a,b,...` (radians).
    #[arg(long, default_value = "greedy")]
    pub strategy: String,
    #[arg(long, default_value_t = 200)]
    pub steps: usize,
    #[arg(long, value_enum, default_value = "shrunk")]
    pub mode: DeformMode,
    /// Stop once the boundary is this close to the disk of equal area.
    #[arg(long, default_value_t = 1e-2)]
    pub hausdorff_tol: f64,
    /// Directory for telemetry, verdicts and summary.
    #[arg(long, short)]
    pub out: PathBuf,
    /// Also write an SVG filmstrip of the domains.
    #[arg(long)]
    pub filmstrip: bool,
    /// Rescale the input so that `f′(0) ≥ 1` and `‖f‖₂ ≥ α` with one
    /// equality.
    #[arg(long)]
    pub normalize: bool,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Comma-separated suites: p2, perimeter, norms, realpart, coefficients,
    /// hayman, n2alpha, p0 or all.
    #[arg(long, default_value = "all")]
    pub suite: String,
    /// Comma-separated fixture names or polygon files; default is the corpus.
    #[arg(long)]
    pub fixtures: Option<String>,
    #[arg(long, short)]
    pub out: PathBuf,
    /// Rerun the configuration of a run record and compare the verdicts.
    #[arg(long)]
    pub replay: Option<PathBuf>,
    /// Persist conformal maps in this directory.
    #[arg(long)]
    pub cache_dir: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct SearchP0Args {
    /// Fixture names or files, comma separated, or `all`.
    #[arg(long, default_value = "all")]
    pub fixture: String,
    #[arg(long, default_value_t = 0.9)]
    pub r: f64,
    #[arg(long, default_value_t = 200.0)]
    pub pmax: f64,
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct ReportArgs {
    /// Output directory of `verify`.
    pub dir: PathBuf,
}

/// Runs one parsed command line.
pub fn run(cli: Cli) -> CliResult<()> {
    let g = &cli.global;
    match cli.command {
        Command::Symmetrize(a) => commands::symmetrize::run(g, &a),
        Command::Map(a) => commands::map::run(g, &a),
        Command::Means(a) => commands::means::run(g, &a),
        Command::Deform(a) => commands::deform::run(g, &a),
        Command::Verify(a) => {
            if a.replay.is_some() && !g.is_empty() {
                log::warn!("tolerance and seed flags are ignored when replaying");
            }
            commands::verify::run(g, &a)
        }
        Command::SearchP0(a) => commands::search_p0::run(g, &a),
        Command::Report(a) => commands::report::run(&a),
    }
}
