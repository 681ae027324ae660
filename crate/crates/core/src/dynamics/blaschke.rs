use num_complex::Complex64 as C;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest `|z|` accepted by [`blaschke_eval`].
pub const BLASCHKE_MAX_RADIUS: f64 = 0.99;

/// Explicitly summed continuation of the fitted tail, as a multiple of the
/// prefix length.
const TAIL_EXPLICIT_FACTOR: usize = 64;

/// Trend of the partial sums `Σ(1 - c_n)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "trend", rename_all = "kebab-case")]
pub enum SumTrend {
    /// Every increment from `from` on is below the tolerance.
    Settled { from: usize },
    /// The last two quarter blocks decay geometrically; `tail` is the
    /// continued remainder.
    Decaying { tail: f64 },
    Undetermined,
}

/// Partial sums of the Blaschke condition over a factor history.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BlaschkeCondition {
    /// `Σ_{k≤n}(1 - c_k)`.
    pub partial_sums: Vec<f64>,
    /// `Σ log(1/c_k)`.
    pub log_sum: f64,
    pub trend: SumTrend,
}

impl BlaschkeCondition {
    pub fn bounded(&self) -> bool {
        !matches!(self.trend, SumTrend::Undetermined)
    }
}

/// Partial sums `Σ(1 - c_n)` and their trend. Needs at least 10 factors in
/// `(0, 1]`.
pub fn blaschke_condition(factors: &[f64], increment_tol: f64) -> Result<BlaschkeCondition> {
    if factors.len() < 10 {
        return Err(Error::InvalidInput(format!(
            "Blaschke condition needs at least 10 factors, got {}",
            factors.len()
        )));
    }
    check_zeros(factors)?;
    let mut partial_sums = Vec::with_capacity(factors.len());
    let mut s = 0.0;
    for &c in factors {
        s += 1.0 - c;
        partial_sums.push(s);
    }
    let log_sum = factors.iter().map(|c| -c.ln()).sum();
    let inc: Vec<f64> = factors.iter().map(|c| 1.0 - c).collect();
    let n = inc.len();
    let settled = (0..n)
        .rev()
        .take_while(|&k| inc[k] <= increment_tol)
        .last();
    let trend = match settled {
        Some(from) if from < n - 1 => SumTrend::Settled { from },
        _ => {
            let q = n / 4;
            let b1: f64 = inc[n - 2 * q..n - q].iter().sum();
            let b2: f64 = inc[n - q..].iter().sum();
            if b1 > 0.0 && b2 < b1 {
                let r = b2 / b1;
                SumTrend::Decaying { tail: b2 * r / (1.0 - r) }
            } else {
                SumTrend::Undetermined
            }
        }
    };
    Ok(BlaschkeCondition {
        partial_sums,
        log_sum,
        trend,
    })
}

fn check_zeros(c: &[f64]) -> Result<()> {
    if let Some(bad) = c.iter().find(|&&x| !(x > 0.0 && x <= 1.0)) {
        return Err(Error::InvalidInput(format!("zero {bad} outside (0, 1]")));
    }
    Ok(())
}

/// Value of a finite Blaschke product and its continuation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BlaschkeValue {
    /// `∏(z - c_n)/(1 - c_n z)` over the given zeros.
    pub value: C,
    /// `∏(c_n - z)/(1 - c_n z)`, the same product with the normalization
    /// under which the infinite product converges.
    pub normalized: C,
    /// Normalized infinite product with the tail continued along the power
    /// law fitted to `1 - c_n`; `None` when no summable fit exists.
    pub limit: Option<C>,
    /// Bound on `|limit - normalized|` under the fitted law.
    pub tail_bound: f64,
    /// Fitted `1 - c_j ≈ A (j + b)^{-s}` as `(A, b, s)`, `j` the 1-based
    /// position.
    pub model: Option<(f64, f64, f64)>,
}

/// Evaluates the Blaschke product with zeros `c_n ∈ (0, 1]` at `|z| ≤ 0.99`.
///
/// The tail beyond the prefix is continued with the law
/// `1 - c_j = A (j + b)^{-s}` fitted exactly through positions `N/4`, `N/2`
/// and `N`; it is summed term by term up to `64 N` and by the integral of
/// the first-order term beyond.
pub fn blaschke_eval(zeros: &[f64], z: C) -> Result<BlaschkeValue> {
    check_zeros(zeros)?;
    if !(z.norm() <= BLASCHKE_MAX_RADIUS) {
        return Err(Error::InvalidInput(format!("|z| = {} exceeds {BLASCHKE_MAX_RADIUS}", z.norm())));
    }
    let one = C::new(1.0, 0.0);
    let mut value = one;
    let mut log_norm = C::new(0.0, 0.0);
    for &c in zeros {
        let f = (z - c) / (one - c * z);
        value *= f;
        log_norm += (-f).ln();
    }
    let normalized = if zeros.len() % 2 == 0 { value } else { -value };
    let n = zeros.len();
    let model = fit_tail(zeros);
    let (limit, tail_bound) = match model {
        Some((a, b, s)) => {
            let factor = (1.0 + z.norm()) / (1.0 - z.norm());
            let mut tail = C::new(0.0, 0.0);
            let mut bound = 0.0;
            let end = n * TAIL_EXPLICIT_FACTOR;
            for j in n + 1..=end {
                let d = a * (j as f64 + b).powf(-s);
                let c = 1.0 - d;
                tail += ((c - z) / (one - c * z)).ln();
                bound += d * factor;
            }
            let x = end as f64 + 0.5 + b;
            let rest = a * x.powf(1.0 - s) / (s - 1.0);
            tail -= rest * (one + z) / (one - z);
            bound += rest * factor;
            let limit = (log_norm + tail).exp();
            (Some(limit), normalized.norm() * bound.exp_m1())
        }
        None => (None, f64::INFINITY),
    };
    Ok(BlaschkeValue {
        value,
        normalized,
        limit,
        tail_bound,
        model,
    })
}

/// Exact fit of `A (j + b)^{-s}` through positions `N/4`, `N/2`, `N`.
fn fit_tail(zeros: &[f64]) -> Option<(f64, f64, f64)> {
    let n = zeros.len();
    if n < 16 {
        return None;
    }
    let j = [n / 4, n / 2, n];
    let d: Vec<f64> = j.iter().map(|&k| 1.0 - zeros[k - 1]).collect();
    if d.iter().any(|&x| !(x > 0.0)) {
        return None;
    }
    let l: Vec<f64> = d.iter().map(|x| x.ln()).collect();
    let target = (l[0] - l[1]) / (l[1] - l[2]);
    let jf = j.map(|k| k as f64);
    let ratio = |b: f64| ((jf[1] + b) / (jf[0] + b)).ln() / ((jf[2] + b) / (jf[1] + b)).ln();
    // ratio decreases from +∞ (b → -j₀) to (j₁-j₀)/(j₂-j₁) (b → ∞).
    if !(target.is_finite() && target > ratio(1e12 * jf[2])) {
        return None;
    }
    let (mut lo, mut hi) = (-jf[0] + 1e-9 * jf[0], 1e12 * jf[2]);
    for _ in 0..200 {
        let mid = if hi / lo.abs().max(1.0) > 1e3 && lo > 0.0 {
            (lo * hi).sqrt()
        } else {
            0.5 * (lo + hi)
        };
        if ratio(mid) > target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let b = 0.5 * (lo + hi);
    let s = (l[1] - l[2]) / ((jf[2] + b) / (jf[1] + b)).ln();
    if !(s > 1.0) {
        return None;
    }
    let a = (l[2] + s * (jf[2] + b).ln()).exp();
    Some((a, b, s))
}
