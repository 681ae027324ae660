use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::context::Harness;
use super::fixture::Fixture;
use super::verdict::{fmt_p, params, Gate, Outcome, Verdict};
use crate::conformal::{
    hardy_mean_tol, hardy_means_tol, hardy_norm, hardy_norms_finite, hardy_sup, image_curve_length,
    area_series, real_part_means_shifted, real_part_sup, taylor_coefficients, Coefficients, Dilation, DiskMap,
    MeanFunctional,
};
use crate::error::{Error, Result};
use crate::geom::{vertical_slices, Point, Polygon};
use crate::symmetry::{circular_symmetrize, exp_domain, steiner_symmetrize};

/// Relative slack of the derivative comparisons.
pub const DERIVATIVE_SLACK: f64 = 1e-3;
/// Relative slack of the circular-symmetrization perimeter comparison,
/// covering the radial discretization.
pub const CIRCULAR_PERIMETER_SLACK: f64 = 1e-2;
/// Relative area tolerance of the circular symmetrization.
pub const CIRCULAR_AREA_TOL: f64 = 1e-2;
/// Relative tolerance of the coefficient area identity.
pub const COEFFICIENT_AREA_TOL: f64 = 1e-2;
/// Tolerance on `||a₀| - |A₀||`.
pub const A0_TOL: f64 = 1e-6;
/// Hausdorff tolerance of the exponential commutation check.
pub const COMMUTATION_TOL: f64 = 2e-2;
/// Headroom of the `2π/M` rescaling: `M = 1.05 · max l(a)`.
pub const RESCALE_HEADROOM: f64 = 1.05;
/// Radius used to recover `f′(0)` from `M₂(r)/r`.
pub const SMALL_RADIUS: f64 = 0.01;
/// Node counts compared for the real-part supremum.
const SUP_NODES: [usize; 2] = [4096, 8192];
/// Boundary budget of the exponential image.
const EXP_BUDGET: usize = 4096;

fn origin() -> Point {
    Point::new(0.0, 0.0)
}

/// `M_p(r, f)` (`max |f|` for `p = ∞`) and its error including the map's
/// value error.
pub fn mean_with_error<M: DiskMap + ?Sized>(h: &Harness, map: &M, r: f64, p: f64) -> Result<(f64, f64)> {
    let e = if p.is_infinite() {
        hardy_sup(map, r, h.config.tol_quadrature.max(1e-9))?
    } else {
        hardy_mean_tol(map, r, p, h.config.tol_quadrature)?
    };
    Ok((e.value, e.error + map.value_error()))
}

/// `M₂(r, f) ≤ M₂(r, G)` for `G` normalized onto the Steiner
/// symmetrization, at every radius of the grid.
pub fn check_steiner_p2(h: &Harness, fx: &Fixture) -> Result<Vec<Verdict>> {
    let f = h.map(&fx.polygon, origin())?;
    let g = h.map(&steiner_symmetrize(&fx.polygon)?, origin())?;
    let mut out = Vec::new();
    for &r in &h.config.r_grid {
        let (a, ea) = mean_with_error(h, &*f, r, 2.0)?;
        let (b, eb) = mean_with_error(h, &*g, r, 2.0)?;
        out.push(Verdict::compare(
            "steiner-p2-mean",
            &fx.name,
            params(&[("r", r.to_string()), ("p", "2".into())]),
            a,
            b,
            h.budget(ea + eb),
            Gate::Theorem,
        ));
    }
    Ok(out)
}

/// One point of the exponent scan.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanPoint {
    pub p: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub budget: f64,
}

impl ScanPoint {
    pub fn margin(&self) -> f64 {
        self.rhs - self.lhs
    }

    /// `M_p(f) > M_p(G)` by more than three budgets.
    pub fn violated(&self) -> bool {
        self.margin() < -super::verdict::VIOLATION_FACTOR * self.budget
    }
}

/// Result of the critical-exponent search on one fixture.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct P0Search {
    pub fixture: String,
    pub r: f64,
    pub p_max: f64,
    /// Smallest violating exponent found, up to the bisection tolerance.
    pub p_star: Option<f64>,
    /// Final bracket `(non-violating, violating)`.
    pub bracket: Option<(f64, f64)>,
    /// Scan and bisection evaluations in order.
    pub evaluations: Vec<ScanPoint>,
}

impl P0Search {
    pub fn verdict(&self) -> Verdict {
        let at = |p: f64| self.evaluations.iter().find(|s| s.p == p);
        match self.p_star.and_then(at) {
            Some(s) => Verdict::compare(
                "p0-search",
                &self.fixture,
                params(&[("r", self.r.to_string()), ("p", s.p.to_string())]),
                s.lhs,
                s.rhs,
                s.budget,
                Gate::Search,
            )
            .with_note(match self.bracket {
                Some((lo, hi)) => format!("crossing in ({lo}, {hi}]"),
                None => "violated at the first scan point".into(),
            }),
            None => {
                let last = self.evaluations.last().expect("scan is never empty");
                Verdict::compare(
                    "p0-search",
                    &self.fixture,
                    params(&[("r", self.r.to_string()), ("p", last.p.to_string())]),
                    last.lhs,
                    last.rhs,
                    last.budget,
                    Gate::Search,
                )
                .with_note(format!("no violation up to p = {}", self.p_max))
            }
        }
    }
}

/// Smallest `p ∈ [2, p_max]` with `M_p(r, f) > M_p(r, G) + 3·budget`:
/// a geometric scan followed by bisection of the first crossing.
pub fn search_p0(h: &Harness, fx: &Fixture, r: f64) -> Result<P0Search> {
    if !(0.5..=0.99).contains(&r) {
        return Err(Error::InvalidInput(format!("search radius {r} outside [0.5, 0.99]")));
    }
    let cfg = &h.config;
    let f = h.map(&fx.polygon, origin())?;
    let g = h.map(&steiner_symmetrize(&fx.polygon)?, origin())?;
    let eval = |p: f64| -> Result<ScanPoint> {
        let (a, ea) = mean_with_error(h, &*f, r, p)?;
        let (b, eb) = mean_with_error(h, &*g, r, p)?;
        Ok(ScanPoint { p, lhs: a, rhs: b, budget: h.budget(ea + eb) })
    };
    let n = cfg.p0_scan;
    let ratio = cfg.p0_max / 2.0;
    let mut evaluations = Vec::new();
    let mut prev: Option<f64> = None;
    let mut hit = None;
    for k in 0..n {
        let p = if k + 1 == n { cfg.p0_max } else { 2.0 * ratio.powf(k as f64 / (n - 1) as f64) };
        let s = eval(p)?;
        let bad = s.violated();
        evaluations.push(s);
        if bad {
            hit = Some(p);
            break;
        }
        prev = Some(p);
    }
    let (p_star, bracket) = match (prev, hit) {
        (_, None) => (None, None),
        (None, Some(p)) => (Some(p), None),
        (Some(mut lo), Some(mut hi)) => {
            while hi - lo > cfg.p0_tol * hi {
                let mid = (lo * hi).sqrt();
                let s = eval(mid)?;
                let bad = s.violated();
                evaluations.push(s);
                if bad {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            (Some(hi), Some((lo, hi)))
        }
    };
    Ok(P0Search {
        fixture: fx.name.clone(),
        r,
        p_max: cfg.p0_max,
        p_star,
        bracket,
        evaluations,
    })
}

/// Perimeter, area and diameter under Steiner symmetrization, and perimeter
/// and area under circular symmetrization.
pub fn check_perimeter_reduction(h: &Harness, fx: &Fixture) -> Result<Vec<Verdict>> {
    let p = &fx.polygon;
    let s = steiner_symmetrize(p)?;
    let (a, l, d) = (p.area(), p.perimeter(), p.diameter());
    let name = &fx.name;
    let mut out = vec![
        Verdict::compare("steiner-perimeter", name, String::new(), s.perimeter(), l, 1e-9 * l, Gate::Theorem),
        Verdict::compare(
            "steiner-area",
            name,
            String::new(),
            (s.area() - a).abs() / a,
            1e-9,
            0.0,
            Gate::Theorem,
        ),
        Verdict::compare("steiner-diameter", name, String::new(), s.diameter(), d, 1e-9 * d, Gate::Theorem),
    ];
    let budget = params(&[("radial_budget", h.config.radial_budget.to_string())]);
    match circular_symmetrize(p, h.config.radial_budget) {
        Ok(c) => {
            out.push(Verdict::compare(
                "circular-perimeter",
                name,
                budget.clone(),
                c.perimeter(),
                l * (1.0 + CIRCULAR_PERIMETER_SLACK),
                1e-9 * l,
                Gate::Theorem,
            ));
            out.push(Verdict::compare(
                "circular-area",
                name,
                budget,
                (c.area() - a).abs() / a,
                CIRCULAR_AREA_TOL,
                0.0,
                Gate::Theorem,
            ));
        }
        Err(e) => out.push(Verdict::skipped("circular-perimeter", name, budget, e.to_string(), Gate::Theorem)),
    }
    Ok(out)
}

/// `f′(0) ≤ F′(0)` for circular symmetrization (at the origin and at the
/// fixture's second center) and `f′(0) ≤ g′(0)` for Steiner symmetrization.
pub fn check_hayman_derivative(h: &Harness, fx: &Fixture) -> Result<Vec<Verdict>> {
    let p = &fx.polygon;
    let tol = h.config.tol_map;
    let c = circular_symmetrize(p, h.config.radial_budget)?;
    let mut out = Vec::new();
    for w0 in [origin(), fx.alt_w0] {
        let par = params(&[("w0", format!("{}{:+}i", w0.re, w0.im))]);
        let center = Point::new(w0.norm(), 0.0);
        if !c.contains_strictly(center) {
            out.push(Verdict::skipped(
                "hayman-circular",
                &fx.name,
                par,
                format!("|f(0)| = {} is not inside the symmetrized domain", w0.norm()),
                Gate::Theorem,
            ));
            continue;
        }
        let f = h.map(p, w0)?.deriv0();
        let g = h.map(&c, center)?.deriv0();
        out.push(Verdict::compare(
            "hayman-circular",
            &fx.name,
            par,
            f,
            g * (1.0 + DERIVATIVE_SLACK),
            h.budget(tol * (f + g)),
            Gate::Theorem,
        ));
    }
    let f = h.map(p, origin())?.deriv0();
    let g = h.map(&steiner_symmetrize(p)?, origin())?.deriv0();
    out.push(Verdict::compare(
        "hayman-steiner",
        &fx.name,
        params(&[("w0", "0+0i".into())]),
        f,
        g * (1.0 + DERIVATIVE_SLACK),
        h.budget(tol * (f + g)),
        Gate::Theorem,
    ));
    Ok(out)
}

/// Which branch of the coefficient dichotomy a pair of expansions shows.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "branch", rename_all = "kebab-case")]
pub enum CoefficientPattern {
    /// `|aₙ| = |Aₙ|` for all `n` within the error bars.
    AllEqual,
    /// `|a_{n₁}| > |A_{n₁}|` and `|a_{n₂}| < |A_{n₂}|`, smallest such indices.
    Mixed { n1: usize, n2: usize },
    /// Strict differences in one direction only.
    OneSided { index: usize, larger: bool },
}

/// Compares `|aₙ|` and `|Aₙ|` for `n ≥ 1` with tolerance
/// `errₙ + Errₙ + slack`. A map error bounded by `slack` on the closed disk
/// moves every coefficient by at most `slack` (Cauchy with `ρ → 1`).
pub fn coefficient_pattern(a: &Coefficients, b: &Coefficients, slack: f64) -> CoefficientPattern {
    let n = a.len().min(b.len());
    let mut n1 = None;
    let mut n2 = None;
    for k in 1..n {
        let tol = a.errors[k] + b.errors[k] + slack;
        let d = a.values[k].norm() - b.values[k].norm();
        if d > tol && n1.is_none() {
            n1 = Some(k);
        }
        if -d > tol && n2.is_none() {
            n2 = Some(k);
        }
    }
    match (n1, n2) {
        (Some(n1), Some(n2)) => CoefficientPattern::Mixed { n1, n2 },
        (None, None) => CoefficientPattern::AllEqual,
        (Some(k), None) => CoefficientPattern::OneSided { index: k, larger: true },
        (None, Some(k)) => CoefficientPattern::OneSided { index: k, larger: false },
    }
}

/// The coefficient dichotomy for circular symmetrization: area identity,
/// `|a₀| = |A₀|`, `|a₁| ≤ |A₁|` and the branch reached.
pub fn check_coefficient_theorem(h: &Harness, fx: &Fixture) -> Result<Vec<Verdict>> {
    let cfg = &h.config;
    let c = circular_symmetrize(&fx.polygon, cfg.radial_budget)?;
    let f = h.map(&fx.polygon, origin())?;
    let g = h.map(&c, origin())?;
    let par = params(&[("n", cfg.coefficient_count.to_string()), ("rho", cfg.coefficient_rho.to_string())]);
    let coeffs = taylor_coefficients(&*f, cfg.coefficient_count, cfg.coefficient_rho)
        .and_then(|a| Ok((a, taylor_coefficients(&*g, cfg.coefficient_count, cfg.coefficient_rho)?)));
    let (a, b) = match coeffs {
        Ok(ab) => ab,
        Err(e @ Error::CoefficientPrecisionFailure { .. }) => {
            return Ok(vec![Verdict::report("coef-pattern", &fx.name, par, Outcome::Inconclusive, e.to_string())]);
        }
        Err(e) => return Err(e),
    };
    let name = &fx.name;
    let sa = area_series(&*f, cfg.coefficient_count, cfg.coefficient_area_max)?;
    let sb = area_series(&*g, cfg.coefficient_count, cfg.coefficient_area_max)?;
    let poly_err = ((sa.value / fx.polygon.area() - 1.0).abs()).max((sb.value / c.area() - 1.0).abs());
    let ve = f.value_error() + g.value_error();
    let mut note = format!(
        "N {} {}; tails {:.3e} {:.3e}; worst deviation from polygon area {poly_err:.3e}",
        sa.count, sb.count, sa.tail, sb.tail
    );
    if !(sa.settled && sb.settled) {
        note.push_str("; series not settled");
    }
    let mut out = vec![
        Verdict::compare(
            "coef-area",
            name,
            params(&[("n_max", cfg.coefficient_area_max.to_string())]),
            (sa.value - sb.value).abs() / sb.value,
            COEFFICIENT_AREA_TOL,
            0.0,
            Gate::Theorem,
        )
        .with_note(note),
        Verdict::compare(
            "coef-a0",
            name,
            par.clone(),
            (a.values[0].norm() - b.values[0].norm()).abs(),
            A0_TOL,
            h.budget(a.errors[0] + b.errors[0] + ve),
            Gate::Theorem,
        ),
        Verdict::compare(
            "coef-a1",
            name,
            par.clone(),
            a.values[1].norm(),
            b.values[1].norm() * (1.0 + DERIVATIVE_SLACK),
            h.budget(a.errors[1] + b.errors[1] + ve),
            Gate::Theorem,
        ),
    ];
    let pattern = coefficient_pattern(&a, &b, h.budget(ve));
    let (branch, outcome) = match &pattern {
        CoefficientPattern::AllEqual => ("branch=all-equal".to_string(), Outcome::Pass),
        CoefficientPattern::Mixed { n1, n2 } => (format!("branch=mixed;n1={n1};n2={n2}"), Outcome::Pass),
        CoefficientPattern::OneSided { index, larger } => {
            (format!("branch=one-sided;index={index};larger={larger}"), Outcome::Inconclusive)
        }
    };
    out.push(Verdict::report("coef-pattern", name, format!("{par};{branch}"), outcome, String::new()));
    Ok(out)
}

/// `M_p(r)` for every configured exponent (`max|f|` at `p = ∞`), with
/// errors including the map's value error.
fn means_with_error<M: DiskMap + ?Sized>(h: &Harness, map: &M, r: f64) -> Result<Vec<(f64, f64, f64)>> {
    let ve = map.value_error();
    let mut out: Vec<(f64, f64, f64)> = hardy_means_tol(map, r, &h.config.p_grid, h.config.tol_quadrature)?
        .into_iter()
        .zip(&h.config.p_grid)
        .map(|(e, &p)| (p, e.value, e.error + ve))
        .collect();
    if h.config.include_sup {
        let (m, e) = mean_with_error(h, map, r, f64::INFINITY)?;
        out.push((f64::INFINITY, m, e));
    }
    Ok(out)
}

/// `M_p(r) ≤ L(r)/(2π^{2/p})` with `L(r)` the length of `f(|z| = r)`
/// (`max|f| ≤ L(r)/2` at `p = ∞`).
fn interior_rows<M: DiskMap + ?Sized>(h: &Harness, name: &str, map: &M) -> Result<Vec<Verdict>> {
    let mut out = Vec::new();
    for &r in &h.config.r_grid {
        let len = image_curve_length(map, r)?;
        for (p, m, em) in means_with_error(h, map, r)? {
            let k = 1.0 / (2.0 * PI.powf(2.0 / p));
            out.push(Verdict::compare(
                "mean-vs-length",
                name,
                params(&[("r", r.to_string()), ("p", fmt_p(p))]),
                m,
                k * len.value,
                h.budget(em + k * len.error),
                Gate::Theorem,
            ));
        }
    }
    Ok(out)
}

/// `π^{1-2/p} · perimeter / 2π`.
pub fn norm_length_bound(p: f64, perimeter: f64) -> f64 {
    PI.powf(1.0 - 2.0 / p) * perimeter / (2.0 * PI)
}

/// The norm chain on the fixture map: interior means against image length,
/// boundary norms against perimeter, and the same with `f(0) ≠ 0`.
pub fn check_norm_chain(h: &Harness, fx: &Fixture) -> Result<Vec<Verdict>> {
    let f = h.map(&fx.polygon, origin())?;
    let mut out = interior_rows(h, &fx.name, &*f)?;
    let perim = fx.polygon.perimeter();
    for (theorem, w0) in [("norm-vs-length", origin()), ("norm-vs-length-offset", fx.alt_w0)] {
        let map = h.map(&fx.polygon, w0)?;
        let mut norms = hardy_norms_finite(&*map, &h.config.p_grid)?;
        if h.config.include_sup {
            norms.push(hardy_norm(&map, f64::INFINITY)?);
        }
        for n in norms {
            let p = n.p;
            let half = 0.5 * (n.hi - n.lo);
            out.push(Verdict::compare(
                theorem,
                &fx.name,
                params(&[("p", fmt_p(p)), ("w0", format!("{}{:+}i", w0.re, w0.im))]),
                n.estimate,
                norm_length_bound(p, perim) + w0.norm(),
                h.budget(half + map.value_error()),
                Gate::Theorem,
            ));
        }
    }
    Ok(out)
}

/// The norm chain for the extremal map `f(z) = αz`, where the `p = 2` rows
/// are equalities.
pub fn check_norm_chain_dilation(h: &Harness, alpha: f64) -> Result<Vec<Verdict>> {
    let name = format!("dilation-{alpha}");
    let map = Dilation(alpha);
    let mut out = interior_rows(h, &name, &map)?;
    for n in hardy_norms_finite(&map, &h.config.p_grid)? {
        let p = n.p;
        out.push(Verdict::compare(
            "norm-vs-length",
            &name,
            params(&[("p", fmt_p(p)), ("w0", "0+0i".into())]),
            n.estimate,
            norm_length_bound(p, 2.0 * PI * alpha),
            h.budget(0.5 * (n.hi - n.lo)),
            Gate::Theorem,
        ));
    }
    Ok(out)
}

/// The functionals of the real-part suite.
pub fn default_functionals() -> Vec<MeanFunctional> {
    let mut v: Vec<MeanFunctional> = [0.5, 1.0, 2.0].into_iter().map(|p| MeanFunctional::Exp { p }).collect();
    v.extend([1.5, 2.0, 4.0].into_iter().map(|p| MeanFunctional::PlusPower { p }));
    v.push(MeanFunctional::ExpPlusPower { p: 2.0 });
    v.push(MeanFunctional::exponential_series(20, 2.0));
    v
}

fn functional_id(phi: &MeanFunctional) -> &'static str {
    match phi {
        MeanFunctional::Power { .. } => "realpart-power",
        MeanFunctional::Exp { .. } => "realpart-exp",
        MeanFunctional::PlusPower { .. } => "realpart-plus-power",
        MeanFunctional::ExpPlusPower { .. } => "realpart-exp-plus-power",
        MeanFunctional::EntireSeries { .. } => "realpart-series",
    }
}

/// Scale bringing every vertical slice below `2π`: 1 when already so,
/// `2π/(1.05·max l)` otherwise. Errors when rescaling is disabled.
pub fn realpart_scale(p: &Polygon, rescale: bool) -> Result<f64> {
    let lmax = vertical_slices(p).max_value();
    if lmax < 2.0 * PI {
        return Ok(1.0);
    }
    if !rescale {
        return Err(Error::PreconditionViolation(format!(
            "vertical slice of length {lmax:.6} is not shorter than 2π and rescaling is disabled"
        )));
    }
    Ok(2.0 * PI / (RESCALE_HEADROOM * lmax))
}

/// `(1/2π)∫Φ(Re f)` with a budget from the quadrature error and the
/// spread between `Φ(Re f ± value_error)`.
/// Means of every functional with errors widened by the map's value error:
/// `Φ` is non-decreasing, so shifting `Re f` by `±δ` brackets the exact mean.
fn phi_means<M: DiskMap + ?Sized>(map: &M, r: f64, phis: &[MeanFunctional]) -> Result<Vec<(f64, f64)>> {
    let ve = map.value_error();
    let terms: Vec<_> = phis.iter().flat_map(|phi| [(phi, 0.0), (phi, ve), (phi, -ve)]).collect();
    let est = real_part_means_shifted(map, r, &terms)?;
    Ok(est
        .chunks(3)
        .map(|e| {
            let (m, up, dn) = (&e[0], &e[1], &e[2]);
            (m.value, m.error + 0.5 * (up.value - dn.value) + up.error.max(dn.error))
        })
        .collect())
}

/// Steiner symmetrization against convex non-decreasing functionals of
/// `Re f`, the supremum of `(Re f)₊` and the range of `Re`.
pub fn check_realpart_suite(h: &Harness, fx: &Fixture) -> Result<Vec<Verdict>> {
    let s = realpart_scale(&fx.polygon, h.config.realpart_rescale)?;
    let p = if s == 1.0 { fx.polygon.clone() } else { fx.polygon.scale(s)? };
    let sym = steiner_symmetrize(&p)?;
    let f = h.map(&p, origin())?;
    let g = h.map(&sym, origin())?;
    let name = &fx.name;
    let mut out = Vec::new();
    for &r in &h.config.realpart_radii {
        let phis = default_functionals();
        let ma = phi_means(&*f, r, &phis)?;
        let mb = phi_means(&*g, r, &phis)?;
        for ((phi, (a, ea)), (b, eb)) in phis.iter().zip(ma).zip(mb) {
            out.push(Verdict::compare(
                functional_id(phi),
                name,
                params(&[("r", r.to_string()), ("phi", phi.to_string()), ("scale", s.to_string())]),
                a,
                b,
                h.budget(ea + eb),
                Gate::Theorem,
            ));
        }
        let sup = |m: &crate::conformal::ConformalMap| -> Result<(f64, f64)> {
            let a = real_part_sup(m, r, SUP_NODES[0])?;
            let b = real_part_sup(m, r, SUP_NODES[1])?;
            Ok((b, (b - a).abs() + m.value_error()))
        };
        let (a, ea) = sup(&f)?;
        let (b, eb) = sup(&g)?;
        out.push(Verdict::compare(
            "realpart-sup",
            name,
            params(&[("r", r.to_string()), ("scale", s.to_string())]),
            a,
            b,
            h.budget(ea + eb),
            Gate::Theorem,
        ));
    }
    let (x0, x1, _, _) = p.bounds();
    let (s0, s1, _, _) = sym.bounds();
    out.push(Verdict::compare(
        "realpart-range",
        name,
        params(&[("scale", s.to_string())]),
        (x0 - s0).abs() + (x1 - s1).abs(),
        1e-9 * (x1 - x0),
        0.0,
        Gate::Theorem,
    ));
    Ok(out)
}

/// `exp(Steiner(p))` against the circular symmetrization of `exp(p)`.
pub fn check_exp_commutation(h: &Harness, fx: &Fixture) -> Result<Verdict> {
    let s = realpart_scale(&fx.polygon, h.config.realpart_rescale)?;
    let p = if s == 1.0 { fx.polygon.clone() } else { fx.polygon.scale(s)? };
    let a = exp_domain(&steiner_symmetrize(&p)?, EXP_BUDGET)?;
    let b = circular_symmetrize(&exp_domain(&p, EXP_BUDGET)?, h.config.radial_budget)?;
    let d = crate::geom::boundary_hausdorff(&a, &b);
    Ok(Verdict::compare(
        "exp-commutation",
        &fx.name,
        params(&[("scale", s.to_string())]),
        d,
        COMMUTATION_TOL,
        0.0,
        Gate::Theorem,
    ))
}

/// `M₂(r, f) ≤ M₂(r, F)` for `F` onto the circular symmetrization with
/// `F(0) = |f(0)|`, and the derivative at the origin recovered from the
/// means at a small radius.
pub fn check_baernstein_circular(h: &Harness, fx: &Fixture) -> Result<Vec<Verdict>> {
    let c = circular_symmetrize(&fx.polygon, h.config.radial_budget)?;
    let mut out = Vec::new();
    for w0 in [origin(), fx.alt_w0] {
        let w = format!("{}{:+}i", w0.re, w0.im);
        let center = Point::new(w0.norm(), 0.0);
        if !c.contains_strictly(center) {
            out.push(Verdict::skipped(
                "baernstein-log-mean",
                &fx.name,
                params(&[("w0", w)]),
                format!("|f(0)| = {} is not inside the symmetrized domain", w0.norm()),
                Gate::Theorem,
            ));
            continue;
        }
        let f = h.map(&fx.polygon, w0)?;
        let g = h.map(&c, center)?;
        for &r in &h.config.r_grid {
            let (a, ea) = mean_with_error(h, &*f, r, 2.0)?;
            let (b, eb) = mean_with_error(h, &*g, r, 2.0)?;
            out.push(Verdict::compare(
                "baernstein-log-mean",
                &fx.name,
                params(&[("w0", w.clone()), ("r", r.to_string()), ("phi", "exp-2".into())]),
                a,
                b,
                h.budget(ea + eb),
                Gate::Theorem,
            ));
        }
    }
    let f = h.map(&fx.polygon, origin())?;
    let g = h.map(&c, origin())?;
    let r = SMALL_RADIUS;
    let ef = hardy_mean_tol(&*f, r, 2.0, h.config.tol_quadrature)?;
    let eg = hardy_mean_tol(&*g, r, 2.0, h.config.tol_quadrature)?;
    let (df, dg) = (ef.value / r, eg.value / r);
    let tol = h.config.tol_map;
    out.push(Verdict::compare(
        "baernstein-derivative",
        &fx.name,
        params(&[("r", r.to_string())]),
        df,
        dg * (1.0 + DERIVATIVE_SLACK),
        h.budget((ef.error + eg.error) / r + tol * (df + dg)),
        Gate::Theorem,
    ));
    out.push(Verdict::compare(
        "baernstein-derivative-consistency",
        &fx.name,
        params(&[("r", r.to_string())]),
        (df / f.deriv0() - 1.0).abs(),
        DERIVATIVE_SLACK,
        0.0,
        Gate::Theorem,
    ));
    Ok(out)
}

/// A single skipped row carrying the error that stopped a check.
pub(super) fn skip(theorem: &str, fx: &str, e: &Error, gate: Gate) -> Vec<Verdict> {
    vec![Verdict::skipped(theorem, fx, String::new(), e.to_string(), gate)]
}
