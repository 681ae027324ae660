use std::f64::consts::PI;

use num_complex::Complex64 as C;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use super::DiskMap;
use crate::error::{Error, Result};

/// Offset of the second radius used for the consistency check.
pub const CROSS_RADIUS_OFFSET: f64 = 0.05;

/// Taylor coefficients `a₀..a_N` with per-coefficient error bounds.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Coefficients {
    pub values: Vec<C>,
    /// Bound on `|aₙ - exact aₙ|` covering aliasing and rounding at both
    /// sample radii.
    pub errors: Vec<f64>,
    pub rho: f64,
    pub samples: usize,
}

impl Coefficients {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `π Σ n|aₙ|²` over the computed range.
    pub fn area_partial_sum(&self) -> f64 {
        PI * self
            .values
            .iter()
            .enumerate()
            .map(|(n, a)| n as f64 * a.norm_sqr())
            .sum::<f64>()
    }

    /// Ratio of the last two complete dyadic blocks of `n|aₙ|²`; `∞` with
    /// fewer than eight coefficients.
    pub fn block_ratio(&self) -> f64 {
        let n = self.values.len();
        let top = n.next_power_of_two() / 2;
        if top < 8 {
            return f64::INFINITY;
        }
        let block = |lo: usize, hi: usize| -> f64 {
            (lo..hi).map(|k| k as f64 * self.values[k].norm_sqr()).sum::<f64>()
        };
        block(top / 2, top) / block(top / 4, top / 2)
    }

    /// `π Σ n|aₙ|²` with the tail beyond the last coefficient estimated from
    /// the ratio of the last two dyadic blocks. Returns `(value, tail)`.
    pub fn area_estimate(&self) -> (f64, f64) {
        let partial = self.area_partial_sum();
        let n = self.values.len();
        let block = |lo: usize, hi: usize| -> f64 {
            (lo..hi.min(n))
                .map(|k| k as f64 * self.values[k].norm_sqr())
                .sum::<f64>()
        };
        let top = n.next_power_of_two() / 2;
        if top < 8 {
            return (partial, 0.0);
        }
        let last = block(top / 2, top);
        let prev = block(top / 4, top / 2);
        let rest = block(top, n);
        let tail = if prev > 0.0 && last < prev {
            let q = last / prev;
            // Geometric continuation of the dyadic blocks, minus what is
            // already summed past `top`.
            (last * q / (1.0 - q) - rest).max(0.0)
        } else {
            last
        };
        (partial + PI * tail, PI * tail)
    }
}

/// Dyadic block ratio under which the tail model is trusted.
pub const TAIL_RATIO_MAX: f64 = 0.75;
/// Relative tail size under which [`area_series`] stops refining.
pub const TAIL_REL_MAX: f64 = 1e-3;

/// Result of [`area_series`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AreaSeries {
    /// Partial sum plus the estimated tail.
    pub value: f64,
    pub partial: f64,
    pub tail: f64,
    /// Coefficients used at the final level.
    pub count: usize,
    pub rho: f64,
    /// Ratio of the last two dyadic blocks.
    pub ratio: f64,
    /// Whether the tail model was trusted at the final level.
    pub settled: bool,
}

/// `π Σ n|aₙ|²` by coefficient doubling. Each level takes `N` coefficients
/// at `ρ = 1 - 4/N` without the cross-radius check. Refinement stops once
/// the dyadic blocks decay geometrically, the tail is small and the value
/// agrees with the previous level, or at `max`.
pub fn area_series<M: DiskMap + ?Sized>(map: &M, start: usize, max: usize) -> Result<AreaSeries> {
    let mut count = start.max(64).next_power_of_two();
    let mut previous = f64::NAN;
    loop {
        let rho = (1.0 - 4.0 / count as f64).clamp(0.5, 1.0 - 1e-6);
        let samples = default_samples(count, rho);
        let (values, _) = raw(map, count, rho, samples)?;
        let c = Coefficients {
            values,
            errors: Vec::new(),
            rho,
            samples,
        };
        let (value, tail) = c.area_estimate();
        let ratio = c.block_ratio();
        let settled = ratio <= TAIL_RATIO_MAX
            && tail <= TAIL_REL_MAX * value
            && (value - previous).abs() <= TAIL_REL_MAX * value;
        log::debug!("area series N={count} value={value} tail={tail} ratio={ratio}");
        if settled || 2 * count > max {
            return Ok(AreaSeries {
                value,
                partial: c.area_partial_sum(),
                tail,
                count,
                rho,
                ratio,
                settled,
            });
        }
        previous = value;
        count *= 2;
    }
}

/// Sample count used for `count` coefficients at radius `rho`: a power of
/// two with at least four samples per coefficient and enough resolution for
/// features of width `1 - rho`.
pub fn default_samples(count: usize, rho: f64) -> usize {
    let need = (4 * (count + 1)).max((16.0 / (1.0 - rho)).ceil() as usize).max(256);
    need.next_power_of_two()
}

/// Coefficients `a₀..a_N` of `f`, computed by FFT of `f(ρe^{iθ})` and
/// divided by `ρⁿ`, then recomputed at `ρ - 0.05` as a consistency check.
///
/// # Errors
///
/// `InvalidInput` for `ρ ∉ [0.5, 0.999]`; `CoefficientPrecisionFailure`
/// when the two radii disagree by more than the combined error bound.
pub fn taylor_coefficients<M: DiskMap + ?Sized>(
    map: &M,
    count: usize,
    rho: f64,
) -> Result<Coefficients> {
    taylor_coefficients_with(map, count, rho, default_samples(count, rho))
}

/// [`taylor_coefficients`] with an explicit sample count (`count ≤ samples/4`).
pub fn taylor_coefficients_with<M: DiskMap + ?Sized>(
    map: &M,
    count: usize,
    rho: f64,
    samples: usize,
) -> Result<Coefficients> {
    if !(0.5..=0.999).contains(&rho) {
        return Err(Error::InvalidInput(format!("sample radius {rho} outside [0.5, 0.999]")));
    }
    if 4 * count > samples {
        return Err(Error::InvalidInput(format!(
            "{count} coefficients need at least {} samples, got {samples}",
            4 * count
        )));
    }
    let (a, e) = raw(map, count, rho, samples)?;
    let (b, eb) = raw(map, count, rho - CROSS_RADIUS_OFFSET, samples)?;
    let mut errors = Vec::with_capacity(count + 1);
    for n in 0..=count {
        let bound = e[n] + eb[n];
        let diff = (a[n] - b[n]).norm();
        if diff > bound {
            return Err(Error::CoefficientPrecisionFailure {
                index: n,
                difference: diff,
                bound,
            });
        }
        errors.push(bound);
    }
    Ok(Coefficients {
        values: a,
        errors,
        rho,
        samples,
    })
}

/// One FFT pass: coefficients and their error bounds at radius `rho`.
fn raw<M: DiskMap + ?Sized>(
    map: &M,
    count: usize,
    rho: f64,
    samples: usize,
) -> Result<(Vec<C>, Vec<f64>)> {
    let mut buf: Vec<C> = (0..samples)
        .map(|j| {
            let t = 2.0 * PI * j as f64 / samples as f64;
            map.eval_with_deriv(C::from_polar(rho, t)).map(|(f, _)| f)
        })
        .collect::<Result<_>>()?;
    let fmax = buf.iter().map(|z| z.norm()).fold(0.0, f64::max);
    FftPlanner::new().plan_fft_forward(samples).process(&mut buf);
    let scale = 1.0 / samples as f64;
    // Frequencies in the upper half are negative frequencies and aliases;
    // for an analytic f they measure contamination.
    let tail = buf[samples / 2..]
        .iter()
        .map(|z| z.norm() * scale)
        .fold(0.0, f64::max);
    let noise = 3.0 * tail + 8.0 * f64::EPSILON * fmax * (samples as f64).log2();
    let mut values = Vec::with_capacity(count + 1);
    let mut errors = Vec::with_capacity(count + 1);
    let mut rn = 1.0;
    for c in buf.iter().take(count + 1) {
        values.push(c * scale / rn);
        errors.push(noise / rn);
        rn *= rho;
    }
    Ok((values, errors))
}
