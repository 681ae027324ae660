use std::fmt;

use serde::{Deserialize, Serialize};

use super::quad::{ln_mean_exp, CircleSamples, Estimate, DEFAULT_QUAD_TOL, INITIAL_NODES};
use super::DiskMap;
use crate::error::{Error, Result};

/// A convex non-decreasing `Φ` applied to `Re f`.
///
/// Every kind is evaluated through `ln Φ` so that large arguments never
/// overflow.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum MeanFunctional {
    /// `x^p` on `x ≥ 0` (`p ≥ 1`); only defined where `Re f ≥ 0`.
    Power { p: f64 },
    /// `e^{px}` (`p ≥ 0`).
    Exp { p: f64 },
    /// `(x₊)^p` (`p ≥ 1`).
    PlusPower { p: f64 },
    /// `exp((x₊)^p)` (`p ≥ 1`).
    ExpPlusPower { p: f64 },
    /// `Σ cₙ (x₊)^{pn}` with `cₙ ≥ 0` (`p ≥ 1`).
    EntireSeries { coeffs: Vec<f64>, p: f64 },
}

impl MeanFunctional {
    /// Truncated series of `e^y`: coefficients `1/n!` for `n < terms`.
    pub fn exponential_series(terms: usize, p: f64) -> Self {
        let mut c = Vec::with_capacity(terms);
        let mut f = 1.0;
        for n in 0..terms {
            if n > 0 {
                f /= n as f64;
            }
            c.push(f);
        }
        MeanFunctional::EntireSeries { coeffs: c, p }
    }

    /// Checks the parameter ranges.
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidInput(m));
        match self {
            MeanFunctional::Exp { p } if !(*p >= 0.0 && p.is_finite()) => {
                bad(format!("exp-p needs p ≥ 0, got {p}"))
            }
            MeanFunctional::Power { p }
            | MeanFunctional::PlusPower { p }
            | MeanFunctional::ExpPlusPower { p }
                if !(*p >= 1.0 && p.is_finite()) =>
            {
                bad(format!("{self} needs p ≥ 1"))
            }
            MeanFunctional::EntireSeries { coeffs, p } => {
                if !(*p >= 1.0 && p.is_finite()) {
                    return bad(format!("entire-series needs p ≥ 1, got {p}"));
                }
                if coeffs.is_empty() || coeffs.iter().any(|c| !(*c >= 0.0 && c.is_finite())) {
                    return bad("entire-series coefficients must be finite and ≥ 0".into());
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    /// `ln Φ(x)`; `-∞` where `Φ = 0`, NaN where `Φ` is undefined.
    pub fn ln_phi(&self, x: f64) -> f64 {
        match self {
            MeanFunctional::Power { p } => {
                if x < 0.0 {
                    f64::NAN
                } else {
                    p * x.ln()
                }
            }
            MeanFunctional::Exp { p } => {
                if *p == 0.0 {
                    0.0
                } else {
                    p * x
                }
            }
            MeanFunctional::PlusPower { p } => {
                if x > 0.0 {
                    p * x.ln()
                } else {
                    f64::NEG_INFINITY
                }
            }
            MeanFunctional::ExpPlusPower { p } => x.max(0.0).powf(*p),
            MeanFunctional::EntireSeries { coeffs, p } => {
                let y = x.max(0.0).powf(*p);
                if y == 0.0 {
                    return coeffs[0].ln();
                }
                let ly = y.ln();
                let terms: Vec<f64> = coeffs
                    .iter()
                    .enumerate()
                    .map(|(n, &c)| c.ln() + n as f64 * ly)
                    .collect();
                ln_mean_exp(&terms) + (terms.len() as f64).ln()
            }
        }
    }

    /// `Φ(x)` (may overflow to infinity).
    pub fn phi(&self, x: f64) -> f64 {
        self.ln_phi(x).exp()
    }
}

impl fmt::Display for MeanFunctional {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MeanFunctional::Power { p } => write!(f, "power-{p}"),
            MeanFunctional::Exp { p } => write!(f, "exp-{p}"),
            MeanFunctional::PlusPower { p } => write!(f, "plus-power-{p}"),
            MeanFunctional::ExpPlusPower { p } => write!(f, "exp-plus-power-{p}"),
            MeanFunctional::EntireSeries { coeffs, p } => {
                write!(f, "entire-series-{}terms-{p}", coeffs.len())
            }
        }
    }
}

/// `ln((1/2π)∫Φ(Re f(re^{iθ}))dθ)` with its relative error.
pub fn real_part_ln_mean<M: DiskMap + ?Sized>(
    map: &M,
    r: f64,
    phi: &MeanFunctional,
) -> Result<(f64, f64, usize)> {
    real_part_ln_mean_shifted(map, r, phi, 0.0)
}

/// [`real_part_ln_mean`] of `Φ(Re f + shift)`.
///
/// Since `Φ` is non-decreasing, shifting by `±δ` brackets the mean of any
/// map within `δ` of `f`.
pub fn real_part_ln_mean_shifted<M: DiskMap + ?Sized>(
    map: &M,
    r: f64,
    phi: &MeanFunctional,
    shift: f64,
) -> Result<(f64, f64, usize)> {
    phi.validate()?;
    if !(0.0..=0.999).contains(&r) {
        return Err(Error::InvalidInput(format!("radius {r} outside [0, 0.999]")));
    }
    let undefined = || {
        Error::PreconditionViolation(format!("{phi} is undefined where Re f < 0"))
    };
    if r == 0.0 {
        let f0 = map.eval_with_deriv(num_complex::Complex64::new(0.0, 0.0))?.0;
        let v = phi.ln_phi(f0.re + shift);
        if v.is_nan() {
            return Err(undefined());
        }
        return Ok((v, 0.0, 1));
    }
    let mut s = CircleSamples::new(map, r, INITIAL_NODES)?;
    let (ln, rel, n) = s.ln_mean(map, |_, f, _| phi.ln_phi(f.re + shift), DEFAULT_QUAD_TOL)?;
    if ln.is_nan() {
        return Err(undefined());
    }
    Ok((ln, rel, n))
}

/// `(1/2π)∫Φ(Re f(re^{iθ}))dθ`.
pub fn real_part_mean<M: DiskMap + ?Sized>(
    map: &M,
    r: f64,
    phi: &MeanFunctional,
) -> Result<Estimate> {
    real_part_mean_shifted(map, r, phi, 0.0)
}

/// `(1/2π)∫Φ(Re f(re^{iθ}) + shift)dθ`.
pub fn real_part_mean_shifted<M: DiskMap + ?Sized>(
    map: &M,
    r: f64,
    phi: &MeanFunctional,
    shift: f64,
) -> Result<Estimate> {
    let (ln, rel, nodes) = real_part_ln_mean_shifted(map, r, phi, shift)?;
    let value = ln.exp();
    Ok(Estimate {
        value,
        error: value * rel,
        nodes,
    })
}

/// [`real_part_mean_shifted`] for several `(Φ, shift)` pairs, sharing one
/// set of circle samples.
pub fn real_part_means_shifted<M: DiskMap + ?Sized>(
    map: &M,
    r: f64,
    terms: &[(&MeanFunctional, f64)],
) -> Result<Vec<Estimate>> {
    if r == 0.0 || terms.is_empty() {
        return terms
            .iter()
            .map(|&(phi, shift)| real_part_mean_shifted(map, r, phi, shift))
            .collect();
    }
    if !(0.0..=0.999).contains(&r) {
        return Err(Error::InvalidInput(format!("radius {r} outside [0, 0.999]")));
    }
    let mut s = CircleSamples::new(map, r, INITIAL_NODES)?;
    let mut out = Vec::with_capacity(terms.len());
    for &(phi, shift) in terms {
        phi.validate()?;
        let (ln, rel, nodes) = s.ln_mean(map, |_, f, _| phi.ln_phi(f.re + shift), DEFAULT_QUAD_TOL)?;
        if ln.is_nan() {
            return Err(Error::PreconditionViolation(format!("{phi} is undefined where Re f < 0")));
        }
        let value = ln.exp();
        out.push(Estimate {
            value,
            error: value * rel,
            nodes,
        });
    }
    Ok(out)
}

/// `max_θ (Re f(re^{iθ}))₊` over the quadrature nodes used for the means.
pub fn real_part_sup<M: DiskMap + ?Sized>(map: &M, r: f64, nodes: usize) -> Result<f64> {
    let s = CircleSamples::new(map, r, nodes)?;
    Ok(s.max(|_, f, _| f.re.max(0.0)))
}
