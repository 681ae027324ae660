use std::f64::consts::PI;

use num_complex::Complex64 as C;
use serde::{Deserialize, Serialize};

use super::quad::{periodic_mean, CircleSamples, Estimate, DEFAULT_QUAD_TOL, INITIAL_NODES, MAX_NODES};
use super::{ConformalMap, DiskMap};
use crate::error::{Error, Result};

/// Radii used to extrapolate boundary norms.
pub const NORM_RADII: [f64; 3] = [0.99, 0.995, 0.999];
/// Relative spread above which a norm interval is flagged wide.
pub const WIDE_SPREAD: f64 = 1e-2;

fn check_radius(r: f64) -> Result<()> {
    if !(0.0..=0.999).contains(&r) {
        return Err(Error::InvalidInput(format!("radius {r} outside [0, 0.999]")));
    }
    Ok(())
}

/// `M_p(r, f) = ((1/2π)∫|f(re^{iθ})|^p dθ)^{1/p}` by adaptive trapezoid
/// quadrature with the default relative tolerance.
pub fn hardy_mean<M: DiskMap + ?Sized>(map: &M, r: f64, p: f64) -> Result<Estimate> {
    hardy_mean_tol(map, r, p, DEFAULT_QUAD_TOL)
}

/// [`hardy_mean`] with an explicit relative tolerance.
pub fn hardy_mean_tol<M: DiskMap + ?Sized>(map: &M, r: f64, p: f64, tol: f64) -> Result<Estimate> {
    check_radius(r)?;
    if !(p > 0.0 && p.is_finite()) {
        return Err(Error::InvalidInput(format!("exponent {p} must be positive and finite")));
    }
    if r == 0.0 {
        let f0 = map.eval_with_deriv(C::new(0.0, 0.0))?.0.norm();
        return Ok(Estimate { value: f0, error: 0.0, nodes: 1 });
    }
    let mut s = CircleSamples::new(map, r, INITIAL_NODES)?;
    let (ln, rel, nodes) = s.ln_mean(map, |_, f, _| p * f.norm().ln(), tol)?;
    let value = (ln / p).exp();
    Ok(Estimate {
        value,
        error: value * rel / p,
        nodes,
    })
}

/// [`hardy_mean_tol`] for several exponents, sharing the circle samples.
pub fn hardy_means_tol<M: DiskMap + ?Sized>(
    map: &M,
    r: f64,
    ps: &[f64],
    tol: f64,
) -> Result<Vec<Estimate>> {
    check_radius(r)?;
    if let Some(p) = ps.iter().find(|p| !(**p > 0.0 && p.is_finite())) {
        return Err(Error::InvalidInput(format!("exponent {p} must be positive and finite")));
    }
    if r == 0.0 {
        let f0 = map.eval_with_deriv(C::new(0.0, 0.0))?.0.norm();
        return Ok(ps.iter().map(|_| Estimate { value: f0, error: 0.0, nodes: 1 }).collect());
    }
    let mut s = CircleSamples::new(map, r, INITIAL_NODES)?;
    let mut out = Vec::with_capacity(ps.len());
    for &p in ps {
        let (ln, rel, nodes) = s.ln_mean(map, |_, f, _| p * f.norm().ln(), tol)?;
        let value = (ln / p).exp();
        out.push(Estimate { value, error: value * rel / p, nodes });
    }
    Ok(out)
}

/// `max_θ |f(re^{iθ})|`, refined until doubling the nodes changes it by less
/// than `tol` relative.
pub fn hardy_sup<M: DiskMap + ?Sized>(map: &M, r: f64, tol: f64) -> Result<Estimate> {
    check_radius(r)?;
    let mut s = CircleSamples::new(map, r, INITIAL_NODES)?;
    let mut prev = s.max(|_, f, _| f.norm());
    loop {
        s.refine(map)?;
        let cur = s.max(|_, f, _| f.norm());
        let change = cur - prev;
        if change <= tol * cur {
            return Ok(Estimate { value: cur, error: change, nodes: s.len() });
        }
        if 2 * s.len() > MAX_NODES {
            return Err(Error::PrecisionFailure { error: change, nodes: s.len() });
        }
        prev = cur;
    }
}

/// Boundary norm `‖f‖_p` reported as an interval.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NormInterval {
    pub p: f64,
    pub lo: f64,
    pub hi: f64,
    /// Extrapolated value (finite `p`) or `sup_{w∈D}|w|` (`p = ∞`), which
    /// is exact for a map onto `D`.
    pub estimate: f64,
    /// `(r, M_p(r))` samples used.
    pub samples: Vec<(f64, f64)>,
    /// Relative width above 1%.
    pub wide: bool,
}

impl NormInterval {
    pub fn mid(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    /// `(hi - lo) / mid`.
    pub fn spread(&self) -> f64 {
        (self.hi - self.lo) / self.mid()
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }
}

/// `‖f‖_p = lim_{r→1} M_p(r, f)`.
///
/// For finite `p` the means at `r ∈ {0.99, 0.995, 0.999}` are extrapolated
/// to `r = 1` linearly (last two radii) and quadratically (all three); the
/// interval is centered on the linear value with half-width twice the
/// disagreement plus quadrature error, and never extends below the mean at
/// `r = 0.999`. For `p = ∞` the interval runs from the sampled maximum at
/// `r = 0.999` to `sup_{w∈D}|w|`.
pub fn hardy_norm(map: &ConformalMap, p: f64) -> Result<NormInterval> {
    if p.is_infinite() && p > 0.0 {
        let m = hardy_sup(map, NORM_RADII[2], 1e-6)?;
        let hi = map
            .target()
            .vertices()
            .iter()
            .map(|v| v.norm())
            .fold(0.0, f64::max);
        return Ok(interval_inf(m, hi));
    }
    hardy_norm_finite(map, p)
}

/// [`hardy_norm`] for any [`DiskMap`] and finite `p`.
pub fn hardy_norm_finite<M: DiskMap + ?Sized>(map: &M, p: f64) -> Result<NormInterval> {
    Ok(hardy_norms_finite(map, &[p])?.remove(0))
}

/// [`hardy_norm_finite`] for several exponents, sharing the circle samples
/// at each radius.
pub fn hardy_norms_finite<M: DiskMap + ?Sized>(map: &M, ps: &[f64]) -> Result<Vec<NormInterval>> {
    let mut means = Vec::with_capacity(NORM_RADII.len());
    for &r in &NORM_RADII {
        means.push(hardy_means_tol(map, r, ps, DEFAULT_QUAD_TOL)?);
    }
    Ok(ps
        .iter()
        .enumerate()
        .map(|(k, &p)| {
            let samples: Vec<(f64, f64)> = NORM_RADII.iter().zip(&means).map(|(&r, m)| (r, m[k].value)).collect();
            let qerr = means.iter().map(|m| m[k].error).fold(0.0, f64::max);
            extrapolate(p, samples, qerr)
        })
        .collect())
}

fn extrapolate(p: f64, samples: Vec<(f64, f64)>, qerr: f64) -> NormInterval {
    let h: Vec<f64> = samples.iter().map(|s| 1.0 - s.0).collect();
    let m: Vec<f64> = samples.iter().map(|s| s.1).collect();
    let lin = m[2] + (m[2] - m[1]) * h[2] / (h[1] - h[2]);
    // Lagrange interpolation through the three points, evaluated at h = 0.
    let mut quad = 0.0;
    for i in 0..3 {
        let mut w = 1.0;
        for j in 0..3 {
            if i != j {
                w *= h[j] / (h[j] - h[i]);
            }
        }
        quad += w * m[i];
    }
    let half = 2.0 * (lin - quad).abs() + 2.0 * qerr;
    let lo = (lin - half).max(m[2] - qerr).min(lin);
    let hi = lin + half;
    let mid = 0.5 * (lo + hi);
    NormInterval {
        p,
        lo,
        hi,
        estimate: lin,
        samples,
        wide: (hi - lo) > WIDE_SPREAD * mid,
    }
}

fn interval_inf(m: Estimate, hi: f64) -> NormInterval {
    let lo = m.value.min(hi);
    let mid = 0.5 * (lo + hi);
    NormInterval {
        p: f64::INFINITY,
        lo,
        hi,
        estimate: hi,
        samples: vec![(NORM_RADII[2], m.value)],
        wide: (hi - lo) > WIDE_SPREAD * mid,
    }
}

/// `∫₀^{2π}|f′(e^{iθ})|dθ`, the length of the boundary: for a polygon
/// target this is its perimeter.
pub fn boundary_derivative_integral(map: &ConformalMap) -> f64 {
    map.target().perimeter()
}

/// `r∫₀^{2π}|f′(re^{iθ})|dθ`, the length of the image of `|z| = r`.
pub fn image_curve_length<M: DiskMap + ?Sized>(map: &M, r: f64) -> Result<Estimate> {
    check_radius(r)?;
    let mut s = CircleSamples::new(map, r, INITIAL_NODES)?;
    let e = s.mean(map, |_, _, d| d.norm(), DEFAULT_QUAD_TOL, 0.0)?;
    let k = 2.0 * PI * r;
    Ok(Estimate {
        value: k * e.value,
        error: k * e.error,
        nodes: e.nodes,
    })
}

/// Limit of [`image_curve_length`] as `r → 1`, extrapolated from
/// `r ∈ {0.99, 0.995, 0.999}` under the model `L(r) = L - c(1-r)^β`
/// (corners of opening `πα` give `β = α`). Returns `(L, β)`.
pub fn image_curve_length_limit<M: DiskMap + ?Sized>(map: &M) -> Result<(f64, f64)> {
    let mut l = [0.0; 3];
    for (i, &r) in NORM_RADII.iter().enumerate() {
        l[i] = image_curve_length(map, r)?.value;
    }
    let h = NORM_RADII.map(|r| 1.0 - r);
    let (d1, d2) = (l[1] - l[0], l[2] - l[1]);
    if !(d1 > 0.0 && d2 > 0.0) {
        return Ok((l[2], f64::NAN));
    }
    let ratio = |b: f64| (h[1].powf(b) - h[2].powf(b)) / (h[0].powf(b) - h[1].powf(b));
    let target = d2 / d1;
    // ratio is decreasing in β.
    let (mut lo, mut hi) = (1e-3, 4.0);
    if target >= ratio(lo) || target <= ratio(hi) {
        return Ok((l[2], f64::NAN));
    }
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        if ratio(mid) > target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let b = 0.5 * (lo + hi);
    let c = d2 / (h[1].powf(b) - h[2].powf(b));
    Ok((l[2] + c * h[2].powf(b), b))
}

/// `(1/2π)∫(1-|a|²)/|e^{iθ}-a|² dθ`, which is 1 for `|a| < 1`.
pub fn poisson_kernel_mass(a: C) -> Result<Estimate> {
    let k = 1.0 - a.norm_sqr();
    periodic_mean(|t| Ok(k / (C::from_polar(1.0, t) - a).norm_sqr()), 1e-12, 0.0)
}

/// Radii at which both sides of the change-of-variable identity are
/// evaluated before linear extrapolation to `r = 1`.
pub const MOEBIUS_RADII: [f64; 2] = [0.998, 0.999];

/// Relative residual of
/// `∫|F(e^{iψ})|^p dψ = ∫|f(e^{iθ}) - f(a)|^p (1-|a|²)/|e^{iθ}-a|² dθ`
/// with `F(z) = f((z+a)/(1+āz)) - f(a)`.
///
/// Both sides are evaluated on `|z| = r` for the radii in
/// [`MOEBIUS_RADII`] and extrapolated linearly to `r = 1`.
pub fn moebius_identity_check<M: DiskMap + ?Sized>(map: &M, a: C, p: f64) -> Result<f64> {
    if !(a.norm() <= 0.9) {
        return Err(Error::InvalidInput(format!("|a| = {} exceeds 0.9", a.norm())));
    }
    if !(p > 0.0 && p.is_finite()) {
        return Err(Error::InvalidInput(format!("exponent {p} must be positive and finite")));
    }
    let fa = map.eval_with_deriv(a)?.0;
    let k = 1.0 - a.norm_sqr();
    let tol = 1e-10;
    let mut left = [0.0; 2];
    let mut right = [0.0; 2];
    for (i, &r) in MOEBIUS_RADII.iter().enumerate() {
        left[i] = periodic_mean(
            |t| {
                let z = C::from_polar(r, t);
                let w = (z + a) / (1.0 + a.conj() * z);
                Ok((map.eval_with_deriv(w)?.0 - fa).norm().powf(p))
            },
            tol,
            0.0,
        )?
        .value;
        right[i] = periodic_mean(
            |t| {
                let f = map.eval_with_deriv(C::from_polar(r, t))?.0;
                let kern = k / (C::from_polar(1.0, t) - a).norm_sqr();
                Ok((f - fa).norm().powf(p) * kern)
            },
            tol,
            0.0,
        )?
        .value;
    }
    let l = 2.0 * left[1] - left[0];
    let rr = 2.0 * right[1] - right[0];
    let scale = l.abs().max(rr.abs());
    Ok(if scale > 0.0 { (l - rr).abs() / scale } else { 0.0 })
}
