use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::{Point, Polygon};

/// Which slice family a profile describes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SliceKind {
    /// Length `l(t)` of the vertical line `x = t` inside the domain.
    VerticalLength,
    /// Angular measure `|D(t)|` of the circle `|z| = t` inside the domain.
    AngularMeasure,
}

/// Slice measures sampled at sorted abscissae or radii.
///
/// `left[j]` and `right[j]` are the one-sided limits at `breakpoints[j]`.
/// For vertical profiles the function is linear between breakpoints, so the
/// profile is exact. Angular profiles are samples and `left == right` except
/// where one-sided limits were requested.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SliceProfile {
    pub kind: SliceKind,
    pub breakpoints: Vec<f64>,
    pub left: Vec<f64>,
    pub right: Vec<f64>,
}

impl SliceProfile {
    /// Value at `t`, interpolating linearly between breakpoints and taking
    /// the right limit at a breakpoint. Zero outside the breakpoint range.
    pub fn value_at(&self, t: f64) -> f64 {
        let b = &self.breakpoints;
        if b.is_empty() || t < b[0] || t > b[b.len() - 1] {
            return 0.0;
        }
        let j = b.partition_point(|&x| x <= t);
        if j == 0 {
            return self.right[0];
        }
        let i = j - 1;
        if b[i] == t || i + 1 == b.len() {
            return if i + 1 == b.len() { self.left[i] } else { self.right[i] };
        }
        let s = (t - b[i]) / (b[i + 1] - b[i]);
        self.right[i] * (1.0 - s) + self.left[i + 1] * s
    }

    /// Largest one-sided value.
    pub fn max_value(&self) -> f64 {
        self.left
            .iter()
            .chain(&self.right)
            .fold(0.0f64, |m, &v| m.max(v))
    }

    /// Trapezoid integral: `∫ l(t) dt` (exact for vertical profiles) or
    /// `∫ t |D(t)| dt` for angular profiles.
    pub fn integral(&self) -> f64 {
        let b = &self.breakpoints;
        let w = |j: usize, v: f64| match self.kind {
            SliceKind::VerticalLength => v,
            SliceKind::AngularMeasure => b[j] * v,
        };
        (0..b.len().saturating_sub(1))
            .map(|j| 0.5 * (w(j, self.right[j]) + w(j + 1, self.left[j + 1])) * (b[j + 1] - b[j]))
            .sum()
    }
}

/// Exact vertical slice profile of `p`.
///
/// Breakpoints are the distinct vertex abscissae, merged when closer than
/// `1e-12` of the horizontal extent. Each edge contributes `±y(t)` on its
/// span, with the sign fixed by its direction, and the contributions are
/// accumulated with difference arrays. One-sided limits closer than `1e-12`
/// of the bounding box are merged, and lengths below that are set to zero.
///
/// # Complexity
///
/// O(n log n).
pub fn vertical_slices(p: &Polygon) -> SliceProfile {
    let v = p.vertices();
    let mut xs: Vec<f64> = v.iter().map(|z| z.re).collect();
    xs.sort_by(f64::total_cmp);
    let width = xs[xs.len() - 1] - xs[0];
    let merge = 1e-12 * width;
    let mut bp: Vec<f64> = Vec::with_capacity(xs.len());
    for x in xs {
        match bp.last() {
            Some(&l) if x - l <= merge => {}
            _ => bp.push(x),
        }
    }
    let index = |x: f64| -> usize {
        let j = bp.partition_point(|&b| b <= x + merge);
        j - 1
    };
    let m = bp.len();
    let mut da = vec![0.0; m + 1];
    let mut db = vec![0.0; m + 1];
    for (a, b) in p.edges() {
        let (ia, ib) = (index(a.re), index(b.re));
        if ia == ib {
            continue;
        }
        let slope = (b.im - a.im) / (b.re - a.re);
        let icpt = a.im - slope * a.re;
        let s = if a.re > b.re { 1.0 } else { -1.0 };
        let (lo, hi) = if ia < ib { (ia, ib) } else { (ib, ia) };
        da[lo] += s * icpt;
        da[hi] -= s * icpt;
        db[lo] += s * slope;
        db[hi] -= s * slope;
    }
    let mut left = vec![0.0; m];
    let mut right = vec![0.0; m];
    let (mut ca, mut cb) = (0.0, 0.0);
    for j in 0..m.saturating_sub(1) {
        ca += da[j];
        cb += db[j];
        right[j] = (ca + cb * bp[j]).max(0.0);
        left[j + 1] = (ca + cb * bp[j + 1]).max(0.0);
    }
    // Continuous slices come out of the accumulation with rounding-level
    // jumps and vanishing slices with rounding-level lengths; snap both so
    // that no spurious tiny edges appear.
    let (ylo, yhi) = v.iter().fold((f64::MAX, f64::MIN), |(a, b), z| (a.min(z.im), b.max(z.im)));
    let snap = 1e-12 * (width + yhi - ylo);
    for j in 0..m {
        for x in [&mut left[j], &mut right[j]] {
            if *x <= snap {
                *x = 0.0;
            }
        }
        if (left[j] - right[j]).abs() <= snap {
            let mid = 0.5 * (left[j] + right[j]);
            left[j] = mid;
            right[j] = mid;
        }
    }
    SliceProfile {
        kind: SliceKind::VerticalLength,
        breakpoints: bp,
        left,
        right,
    }
}

/// Angular measure `|D(t)|` of `{θ : t e^{iθ} ∈ p}`, in `[0, 2π]`.
///
/// The circle is split at its exact crossings with the edges and each arc is
/// classified by the location of its midpoint.
pub fn angular_measure(p: &Polygon, t: f64) -> f64 {
    if t <= 0.0 {
        return if p.contains(Point::new(0.0, 0.0)) { 2.0 * PI } else { 0.0 };
    }
    let mut angles = circle_crossings(p, t);
    if angles.is_empty() {
        return if p.contains(Point::new(t, 0.0)) { 2.0 * PI } else { 0.0 };
    }
    angles.sort_by(f64::total_cmp);
    let k = angles.len();
    let mut total = 0.0;
    for i in 0..k {
        let a0 = angles[i];
        let a1 = if i + 1 < k { angles[i + 1] } else { angles[0] + 2.0 * PI };
        if a1 - a0 <= 0.0 {
            continue;
        }
        let mid = Point::from_polar(t, 0.5 * (a0 + a1));
        if p.contains(mid) {
            total += a1 - a0;
        }
    }
    total.min(2.0 * PI)
}

/// Angles in `(-π, π]` where the circle `|z| = t` meets the boundary.
pub(crate) fn circle_crossings(p: &Polygon, t: f64) -> Vec<f64> {
    let mut out = Vec::new();
    let t2 = t * t;
    for (a, b) in p.edges() {
        let d = b - a;
        let qa = d.norm_sqr();
        let qb = 2.0 * (a.conj() * d).re;
        let qc = a.norm_sqr() - t2;
        let disc = qb * qb - 4.0 * qa * qc;
        if disc < 0.0 {
            continue;
        }
        let sq = disc.sqrt();
        // Numerically stable roots.
        let q = -0.5 * (qb + qb.signum() * sq);
        let mut roots = [f64::NAN, f64::NAN];
        if q != 0.0 {
            roots[0] = q / qa;
            roots[1] = qc / q;
        } else {
            roots[0] = 0.0;
        }
        for (k, &s) in roots.iter().enumerate() {
            if k == 1 && disc == 0.0 {
                break;
            }
            if (0.0..1.0).contains(&s) {
                out.push((a + d * s).arg());
            }
        }
    }
    out
}

/// Angular profile of `p` sampled at `radii` (sorted ascending on output).
pub fn radial_slices(p: &Polygon, radii: &[f64]) -> SliceProfile {
    let mut r: Vec<f64> = radii.to_vec();
    r.sort_by(f64::total_cmp);
    r.dedup();
    let vals: Vec<f64> = r.iter().map(|&t| angular_measure(p, t)).collect();
    SliceProfile {
        kind: SliceKind::AngularMeasure,
        breakpoints: r,
        left: vals.clone(),
        right: vals,
    }
}
