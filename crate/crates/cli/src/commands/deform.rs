use serde::Serialize;
use steinsym::dynamics::{
    blaschke_condition, kernel_convergence_probe, run_deformation, write_telemetry, AngleStrategy, BlaschkeCondition,
    KernelVerdict, Mode, RunConfig, RunOutcome, RunReport, KERNEL_TOL,
};
use steinsym::conformal::{build_map, hardy_norm};
use steinsym::verify::{csv_string, params, Gate, Outcome, Summary, Verdict};

use super::gate;
use crate::error::{CliError, CliResult};
use crate::input::{load_polygon, parse_list, write_file};
use crate::svg::{grid, Panel};
use crate::{DeformArgs, DeformMode, Global};
use steinsym::Point;

/// Largest tolerated relative area drift of an unshrunk run.
pub const AREA_DRIFT_TOL: f64 = 1e-6;
/// Most domains shown in a filmstrip.
const FILMSTRIP_FRAMES: usize = 12;

#[derive(Serialize)]
struct DeformSummary {
    fixture: String,
    alpha: f64,
    mode: Mode,
    strategy: AngleStrategy,
    outcome: RunOutcome,
    steps: usize,
    product: f64,
    lower_bound: f64,
    bound_excess: f64,
    final_hausdorff: f64,
    target_radius: f64,
    area_initial: f64,
    area_final: f64,
    kernel: Option<KernelVerdict>,
    blaschke: Option<BlaschkeCondition>,
    verdicts: Summary,
}

pub fn parse_strategy(s: &str, seed: u64) -> CliResult<AngleStrategy> {
    Ok(match s {
        "greedy" => AngleStrategy::greedy(),
        "golden" => AngleStrategy::GoldenAngle,
        "random" => AngleStrategy::UniformRandom { seed },
        _ => match s.strip_prefix("fixed:") {
            Some(list) => AngleStrategy::FixedList {
                angles: parse_list(list)?,
            },
            None => return Err(CliError::Input(format!("unknown strategy {s:?}"))),
        },
    })
}

pub fn run(g: &Global, a: &DeformArgs) -> CliResult<()> {
    let vc = g.config()?;
    let (name, mut p0) = load_polygon(&a.input)?;
    let f = build_map(&p0, Point::new(0.0, 0.0), vc.tol_map)?;
    let (d0, n2) = (f.deriv0(), hardy_norm(&f, 2.0)?.mid());
    let mut in_class = d0 >= 1.0 - vc.tol_map && n2 >= a.alpha * (1.0 - vc.tol_map);
    if a.normalize {
        let s = (1.0 / d0).max(a.alpha / n2);
        p0 = p0.scale(s)?;
        in_class = true;
        println!("{name}: rescaled by {s:.10} into the class");
    } else if !in_class {
        log::warn!("{name} is outside the class: f'(0) = {d0:.6}, |f|_2 = {n2:.6}, alpha = {}", a.alpha);
    }
    let mode = match a.mode {
        DeformMode::Shrunk => Mode::Shrunk,
        DeformMode::Unshrunk => Mode::Unshrunk,
    };
    let strategy = parse_strategy(&a.strategy, vc.seed)?;
    let mut cfg = RunConfig::new(a.alpha, mode, strategy.clone());
    cfg.stop.max_steps = a.steps;
    cfg.stop.hausdorff_tol = Some(a.hausdorff_tol);
    cfg.step.tol_map = vc.tol_map;
    cfg.snapshot_every = 1;
    let rep = run_deformation(&p0, &cfg)?;

    let verdicts = run_verdicts(&name, &rep, mode, in_class, vc.tol_map, vc.budget_multiplier);
    let factors = rep.state.factors();
    let blaschke = if factors.len() >= 10 {
        Some(blaschke_condition(&factors, vc.tol_map)?)
    } else {
        None
    };
    let domains: Vec<_> = rep.snapshots.iter().map(|(_, p)| p.clone()).collect();
    let kernel = if domains.len() >= 2 {
        Some(kernel_convergence_probe(&domains, KERNEL_TOL)?)
    } else {
        None
    };
    let summary = DeformSummary {
        fixture: name.clone(),
        alpha: a.alpha,
        mode,
        strategy,
        outcome: rep.outcome,
        steps: rep.state.step,
        product: rep.state.product,
        lower_bound: rep.lower_bound,
        bound_excess: rep.bound_excess,
        final_hausdorff: rep.final_hausdorff(),
        target_radius: rep.telemetry.last().map_or(f64::NAN, |t| t.target_radius),
        area_initial: p0.area(),
        area_final: rep.state.current.area(),
        kernel,
        blaschke,
        verdicts: Summary::of(&verdicts),
    };

    std::fs::create_dir_all(&a.out).map_err(|e| CliError::io(format!("creating {}", a.out.display()), e))?;
    write_telemetry(&a.out.join("telemetry.jsonl"), &rep.telemetry).map_err(CliError::from)?;
    write_file(&a.out.join("verdicts.csv"), csv_string(&verdicts))?;
    write_file(&a.out.join("final.json"), rep.state.current.to_json())?;
    write_file(
        &a.out.join("summary.json"),
        serde_json::to_string_pretty(&summary).expect("summary serializes"),
    )?;
    if a.filmstrip {
        write_file(&a.out.join("filmstrip.svg"), filmstrip(&rep))?;
    }

    match rep.outcome {
        RunOutcome::Converged { step } => println!("{name}: converged after {step} steps"),
        RunOutcome::Stagnated { step } => println!("{name}: stagnated at step {step}"),
        RunOutcome::BudgetExhausted => println!("{name}: step budget exhausted"),
    }
    println!(
        "product {:.10}, lower bound {:.10}, Hausdorff to disk {:.3e}",
        summary.product, summary.lower_bound, summary.final_hausdorff
    );
    gate(&verdicts)
}

/// Bound, bookkeeping and drift verdicts of one run.
fn run_verdicts(name: &str, rep: &RunReport, mode: Mode, in_class: bool, tol_map: f64, multiplier: f64) -> Vec<Verdict> {
    let steps = rep.state.history.len();
    let par = params(&[("alpha", rep.state.alpha.to_string()), ("steps", steps.to_string())]);
    // Each factor carries the spread of its ‖g‖₂ interval and the map error.
    let rel: f64 = rep
        .state
        .history
        .iter()
        .map(|r| (r.h2_hi - r.h2_lo) / r.h2_lo + tol_map)
        .sum();
    let budget = multiplier * rep.state.product * rel;
    let t = Gate::Theorem;
    let mut out = Vec::new();
    if mode == Mode::Shrunk && in_class {
        out.push(Verdict::compare("product-lower-bound", name, par.clone(), rep.lower_bound, rep.state.product, budget, t));
        out.push(Verdict::compare("product-upper-bound", name, par.clone(), rep.state.product, 1.0, budget, t));
    } else if mode == Mode::Shrunk {
        let why = "input map is outside the class; rerun with --normalize".to_string();
        out.push(Verdict::skipped("product-lower-bound", name, par.clone(), why, t));
    }
    let log_sum: f64 = rep.state.factors().iter().map(|c| -c.ln()).sum();
    out.push(Verdict::compare(
        "blaschke-log-sum",
        name,
        par.clone(),
        (-rep.state.product.ln() - log_sum).abs(),
        1e-12,
        0.0,
        t,
    ));
    if mode == Mode::Unshrunk {
        let a0 = rep.snapshots.first().map_or(f64::NAN, |s| s.1.area());
        out.push(Verdict::compare(
            "area-drift",
            name,
            par.clone(),
            (rep.state.current.area() / a0 - 1.0).abs(),
            AREA_DRIFT_TOL,
            0.0,
            t,
        ));
    }
    let (outcome, note) = match rep.outcome {
        RunOutcome::Converged { step } => (Outcome::Pass, format!("converged at step {step}")),
        RunOutcome::Stagnated { step } => (Outcome::Inconclusive, format!("stagnated at step {step}")),
        RunOutcome::BudgetExhausted => (Outcome::Inconclusive, "step budget exhausted".into()),
    };
    out.push(Verdict::report("convergence", name, par, outcome, note));
    out
}

fn filmstrip(rep: &RunReport) -> String {
    let n = rep.snapshots.len();
    let take = n.min(FILMSTRIP_FRAMES).max(1);
    let panels: Vec<Panel> = (0..take)
        .map(|k| {
            let i = if take == 1 { 0 } else { k * (n - 1) / (take - 1) };
            let (step, p) = &rep.snapshots[i];
            Panel::new(format!("step {step}")).polygon(p.clone())
        })
        .collect();
    let cols = (take as f64).sqrt().ceil() as usize;
    grid(&panels, cols)
}
