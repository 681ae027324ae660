//! Adaptive trapezoid rule for periodic integrands.
//!
//! The node count doubles until two successive sums agree; the old nodes are
//! reused. For analytic periodic integrands the rule converges geometrically,
//! so the difference between the `N` and `N/2` sums bounds the error of the
//! `N` sum with a wide margin.

use std::f64::consts::PI;

use num_complex::Complex64 as C;
use serde::{Deserialize, Serialize};

use super::DiskMap;
use crate::error::{Error, Result};

/// Default relative error target.
pub const DEFAULT_QUAD_TOL: f64 = 1e-8;
/// Node count of the first pass.
pub const INITIAL_NODES: usize = 64;
/// Largest node count tried before giving up.
pub const MAX_NODES: usize = 1 << 18;

/// A quadrature result: `value` is a mean `(1/2π)∫ g dθ`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub value: f64,
    /// Absolute error estimate of `value`.
    pub error: f64,
    pub nodes: usize,
}

/// Samples of `f` and `f′` on the circle `|z| = r` at `N` equispaced nodes
/// `θ_j = 2πj/N`.
#[derive(Clone, Debug)]
pub struct CircleSamples {
    r: f64,
    theta: Vec<f64>,
    f: Vec<C>,
    df: Vec<C>,
}

impl CircleSamples {
    pub fn new<M: DiskMap + ?Sized>(map: &M, r: f64, n: usize) -> Result<Self> {
        let mut s = CircleSamples {
            r,
            theta: Vec::with_capacity(n),
            f: Vec::with_capacity(n),
            df: Vec::with_capacity(n),
        };
        for j in 0..n {
            let t = 2.0 * PI * j as f64 / n as f64;
            let (f, d) = DiskMap::eval_with_deriv(map, C::from_polar(r, t))?;
            s.theta.push(t);
            s.f.push(f);
            s.df.push(d);
        }
        Ok(s)
    }

    pub fn radius(&self) -> f64 {
        self.r
    }

    pub fn len(&self) -> usize {
        self.f.len()
    }

    pub fn is_empty(&self) -> bool {
        self.f.is_empty()
    }

    /// Doubles the node count, keeping the old nodes at even positions.
    pub fn refine<M: DiskMap + ?Sized>(&mut self, map: &M) -> Result<()> {
        let n = self.len();
        let mut theta = Vec::with_capacity(2 * n);
        let mut f = Vec::with_capacity(2 * n);
        let mut df = Vec::with_capacity(2 * n);
        for j in 0..n {
            theta.push(self.theta[j]);
            f.push(self.f[j]);
            df.push(self.df[j]);
            let t = PI * (2 * j + 1) as f64 / n as f64;
            let (v, d) = DiskMap::eval_with_deriv(map, C::from_polar(self.r, t))?;
            theta.push(t);
            f.push(v);
            df.push(d);
        }
        self.theta = theta;
        self.f = f;
        self.df = df;
        Ok(())
    }

    pub fn values(&self) -> &[C] {
        &self.f
    }

    pub fn derivatives(&self) -> &[C] {
        &self.df
    }

    pub fn angles(&self) -> &[f64] {
        &self.theta
    }

    fn mean_stride<G: Fn(f64, C, C) -> f64>(&self, g: &G, stride: usize) -> f64 {
        let mut s = 0.0;
        let mut k = 0usize;
        for j in (0..self.len()).step_by(stride) {
            s += g(self.theta[j], self.f[j], self.df[j]);
            k += 1;
        }
        s / k as f64
    }

    fn ln_mean_stride<G: Fn(f64, C, C) -> f64>(&self, g: &G, stride: usize) -> f64 {
        let vals: Vec<f64> = (0..self.len())
            .step_by(stride)
            .map(|j| g(self.theta[j], self.f[j], self.df[j]))
            .collect();
        ln_mean_exp(&vals)
    }

    /// Mean of `g(θ, f, f′)`, refining until the relative change is below
    /// `rel_tol` (or the absolute change below `abs_tol`).
    pub fn mean<M: DiskMap + ?Sized, G: Fn(f64, C, C) -> f64>(
        &mut self,
        map: &M,
        g: G,
        rel_tol: f64,
        abs_tol: f64,
    ) -> Result<Estimate> {
        loop {
            let full = self.mean_stride(&g, 1);
            let half = self.mean_stride(&g, 2);
            let err = (full - half).abs();
            if err <= rel_tol * full.abs() + abs_tol {
                return Ok(Estimate {
                    value: full,
                    error: err,
                    nodes: self.len(),
                });
            }
            if 2 * self.len() > MAX_NODES {
                return Err(Error::PrecisionFailure {
                    error: err,
                    nodes: self.len(),
                });
            }
            self.refine(map)?;
        }
    }

    /// Log of the mean of `exp(lg(θ, f, f′))`, evaluated with log-sum-exp.
    /// Returns `(ln mean, relative error)`.
    pub fn ln_mean<M: DiskMap + ?Sized, G: Fn(f64, C, C) -> f64>(
        &mut self,
        map: &M,
        lg: G,
        rel_tol: f64,
    ) -> Result<(f64, f64, usize)> {
        loop {
            let full = self.ln_mean_stride(&lg, 1);
            let half = self.ln_mean_stride(&lg, 2);
            if full.is_nan() {
                return Ok((full, f64::NAN, self.len()));
            }
            let rel = if full == f64::NEG_INFINITY && half == f64::NEG_INFINITY {
                0.0
            } else {
                (full - half).exp_m1().abs()
            };
            if rel <= rel_tol {
                return Ok((full, rel, self.len()));
            }
            if 2 * self.len() > MAX_NODES {
                return Err(Error::PrecisionFailure {
                    error: rel,
                    nodes: self.len(),
                });
            }
            self.refine(map)?;
        }
    }

    /// Largest `g(θ, f, f′)` over the current nodes.
    pub fn max<G: Fn(f64, C, C) -> f64>(&self, g: G) -> f64 {
        (0..self.len())
            .map(|j| g(self.theta[j], self.f[j], self.df[j]))
            .fold(f64::NEG_INFINITY, f64::max)
    }
}

/// `ln((1/n) Σ e^{v_j})` without overflow.
pub(crate) fn ln_mean_exp(v: &[f64]) -> f64 {
    let m = v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if m == f64::NEG_INFINITY {
        return m;
    }
    if m == f64::INFINITY {
        return m;
    }
    let s: f64 = v.iter().map(|&x| (x - m).exp()).sum();
    m + (s / v.len() as f64).ln()
}

/// Adaptive trapezoid mean `(1/2π)∫₀^{2π} g(θ) dθ` for a general periodic
/// integrand.
pub fn periodic_mean<G: FnMut(f64) -> Result<f64>>(
    mut g: G,
    rel_tol: f64,
    abs_tol: f64,
) -> Result<Estimate> {
    let mut n = INITIAL_NODES;
    let mut vals: Vec<f64> = (0..n)
        .map(|j| g(2.0 * PI * j as f64 / n as f64))
        .collect::<Result<_>>()?;
    loop {
        let full: f64 = vals.iter().sum::<f64>() / n as f64;
        let half: f64 = vals.iter().step_by(2).sum::<f64>() / (n / 2) as f64;
        let err = (full - half).abs();
        if err <= rel_tol * full.abs() + abs_tol {
            return Ok(Estimate {
                value: full,
                error: err,
                nodes: n,
            });
        }
        if 2 * n > MAX_NODES {
            return Err(Error::PrecisionFailure { error: err, nodes: n });
        }
        let mut next = Vec::with_capacity(2 * n);
        for (j, &v) in vals.iter().enumerate() {
            next.push(v);
            next.push(g(PI * (2 * j + 1) as f64 / n as f64)?);
        }
        vals = next;
        n *= 2;
    }
}
