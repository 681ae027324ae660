//! Geodesic zipper: a composition of elementary slit maps taking a polygonal
//! domain onto the upper half-plane, followed by a Möbius map onto the disk.
//!
//! Reference: D. E. Marshall and S. Rohde, "Convergence of a variant of the
//! zipper algorithm for conformal mapping", SIAM J. Numer. Anal. 45 (2007).

use num_complex::Complex64 as C;
use serde::{Deserialize, Serialize};
use twofloat::TwoFloat as DD;

/// One elementary map `z ↦ sqrt((z/(1 - k z))² + c²)`, opening the
/// geodesic slit from 0 to a point of the upper half-plane.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub(crate) struct Slit {
    pub k: f64,
    pub c: f64,
}

/// The composed map. `forward` goes from the domain to the disk, `inverse`
/// from the disk to the domain.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub(crate) struct Zipper {
    pub p0: C,
    pub p1: C,
    pub slits: Vec<Slit>,
    /// `1/ζ₀` where `ζ₀` is the image of `p0` before the last map.
    pub inv_zeta0: f64,
    /// Half-plane image of the normalization point.
    pub h: C,
    /// Unimodular factor applied last.
    pub rot: C,
}

/// Principal square root without the polar round trip.
#[inline]
pub(crate) fn csqrt(z: C) -> C {
    let (x, y) = (z.re, z.im);
    let r = (x * x + y * y).sqrt();
    if r == 0.0 {
        return C::new(0.0, y);
    }
    if !r.is_finite() {
        return z.sqrt();
    }
    if x >= 0.0 {
        let t = (0.5 * (r + x)).sqrt();
        C::new(t, 0.5 * y / t)
    } else {
        let t = (0.5 * (r - x)).sqrt();
        C::new(0.5 * y.abs() / t, t.copysign(y))
    }
}

/// Picks the sign of `s` (a square root) that lies in the closed upper
/// half-plane. On the real axis the sign follows `hint`.
#[inline]
fn upper(s: C, hint: f64) -> C {
    if s.im < 0.0 || (s.im == 0.0 && (s.re > 0.0) != (hint > 0.0)) {
        -s
    } else {
        s
    }
}

/// The slit map commutes with `z ↦ -z̄`, so input and output share the sign
/// of the real part. Rounding can break this when the real part is tiny.
#[inline]
fn same_side(u: C, re: f64) -> C {
    if (u.re > 0.0 && re < 0.0) || (u.re < 0.0 && re > 0.0) {
        C::new(-u.re, u.im)
    } else {
        u
    }
}

impl Slit {
    /// Slit map for the tip `a` (`Im a > 0`).
    pub fn new(a: C) -> Slit {
        let n = a.norm_sqr();
        Slit {
            k: a.re / n,
            c: n / a.im,
        }
    }

    #[inline]
    pub fn forward(&self, z: C) -> C {
        let u = z / (1.0 - z * self.k);
        let ic = C::new(0.0, self.c);
        let s = csqrt(u - ic) * csqrt(u + ic);
        same_side(upper(s, u.re), u.re)
    }

    /// Image of a real point, with `x = 0` sent to the left side `-c`.
    /// Carried in double-double: near the slit base the image is
    /// `±(c + u²/2c)` and the offset would vanish in f64.
    #[inline]
    pub fn forward_real(&self, x: DD) -> DD {
        let u = x / (DD::from(1.0) - x * self.k);
        let w = (u * u + self.c * self.c).sqrt();
        if u.hi() > 0.0 {
            w
        } else {
            -w
        }
    }

    /// Same map acting on `q = 1/x` (so that `x = ∞` is `q = 0`).
    #[inline]
    pub fn forward_reciprocal(&self, q: f64) -> f64 {
        let qu = q - self.k;
        if qu == 0.0 {
            return 0.0;
        }
        qu.signum() * qu.abs() / (1.0 + (self.c * qu).powi(2)).sqrt()
    }

    /// Inverse map and its derivative `dz/dw`.
    #[inline]
    pub fn inverse(&self, w: C) -> (C, C) {
        let s = csqrt(w - self.c) * csqrt(w + self.c);
        let u = same_side(upper(s, w.re), w.re);
        let den = 1.0 + u * self.k;
        let z = u / den;
        let dz = (w / u) / (den * den);
        (z, dz)
    }

    /// Inverse on the real axis: points with `|w| > c` stay real, the rest
    /// land on the slit.
    #[inline]
    pub fn inverse_real(&self, w: DD) -> Either {
        let d = (w - self.c) * (w + self.c);
        if d.hi() >= 0.0 {
            let r = d.sqrt();
            let u = if w.hi() > 0.0 { r } else { -r };
            return Either::Real(u / (DD::from(1.0) + u * self.k));
        }
        let u = C::new(0.0, f64::from((-d).sqrt()));
        Either::Complex(u / (1.0 + u * self.k))
    }
}

/// A point that is either exactly real or a general complex number.
#[derive(Clone, Copy, Debug)]
pub(crate) enum Either {
    Real(DD),
    Complex(C),
}

impl Zipper {
    /// First map `i·sqrt((z - p1)/(z - p0))`.
    #[inline]
    pub fn first(&self, z: C) -> C {
        let s = (z - self.p1) / (z - self.p0);
        C::i() * csqrt(s)
    }

    /// Last half-plane map `-(z/(1 - z/ζ₀))²`.
    #[inline]
    pub fn last(&self, z: C) -> C {
        let m = z / (1.0 - z * self.inv_zeta0);
        -(m * m)
    }

    /// Domain point to upper half-plane.
    pub fn to_half_plane(&self, z: C) -> C {
        let mut w = self.first(z);
        for s in &self.slits {
            w = s.forward(w);
        }
        self.last(w)
    }

    /// Domain point to the disk.
    pub fn forward(&self, z: C) -> C {
        let w = self.to_half_plane(z);
        self.rot * (w - self.h) / (w - self.h.conj())
    }

    /// Disk point to the domain, with derivative.
    pub fn inverse(&self, zeta: C) -> (C, C) {
        let tau = zeta * self.rot.conj();
        let den = 1.0 - tau;
        let mut z = (self.h - self.h.conj() * tau) / den;
        let mut d = self.rot.conj() * (self.h - self.h.conj()) / (den * den);
        // Last map.
        let v = C::i() * csqrt(z);
        d *= -0.5 / v;
        let den = 1.0 + v * self.inv_zeta0;
        z = v / den;
        d /= den * den;
        for s in self.slits.iter().rev() {
            let (zz, dz) = s.inverse(z);
            z = zz;
            d *= dz;
        }
        // First map.
        let s = -(z * z);
        let ds = -2.0 * z;
        let den = 1.0 - s;
        let out = (self.p1 - s * self.p0) / den;
        d *= ds * (self.p1 - self.p0) / (den * den);
        (out, d)
    }
}

impl Zipper {
    /// Boundary image of the disk point `e^{iθ}`, evaluated on the real axis
    /// of each intermediate half-plane.
    pub fn boundary(&self, theta: f64) -> C {
        // With φ = θ - arg(rot), the Möbius preimage is h.re - h.im·cot(φ/2).
        let phi = theta - self.rot.arg();
        let half = (0.5 * phi).tan();
        if half == 0.0 {
            return self.p0;
        }
        let x = DD::from(self.h.re) - DD::from(self.h.im) / half;
        // Last map: v² = -x.
        let mut state = if x.hi() <= 0.0 {
            let v = -(-x).sqrt();
            Either::Real(v / (DD::from(1.0) + v * self.inv_zeta0))
        } else {
            let v = C::new(0.0, f64::from(x).sqrt());
            Either::Complex(v / (1.0 + v * self.inv_zeta0))
        };
        for s in self.slits.iter().rev() {
            state = match state {
                Either::Real(w) => s.inverse_real(w),
                Either::Complex(w) => Either::Complex(s.inverse(w).0),
            };
        }
        let z = match state {
            Either::Real(w) => C::new(f64::from(w), 0.0),
            Either::Complex(w) => w,
        };
        let sq = -(z * z);
        (self.p1 - sq * self.p0) / (1.0 - sq)
    }
}

/// Result of zipping a closed sequence of boundary points.
pub(crate) struct Zipped {
    pub zipper: Zipper,
    /// Disk angle of every boundary point, in the order given.
    pub angles: Vec<f64>,
    /// Number of points that fell onto the real axis and were nudged.
    pub clamped: usize,
}

/// Builds the zipper for boundary points `pts` (counterclockwise, closed
/// implicitly) normalized so that `w0` goes to 0.
///
/// # Complexity
///
/// O(m²) for m points.
pub(crate) fn zip(pts: &[C], w0: C) -> Zipped {
    let m = pts.len();
    let mut z = Zipper {
        p0: pts[0],
        p1: pts[1],
        slits: Vec::with_capacity(m.saturating_sub(2)),
        inv_zeta0: 0.0,
        h: C::new(0.0, 1.0),
        rot: C::new(1.0, 0.0),
    };
    let mut cur: Vec<C> = pts[2..].iter().map(|&p| z.first(p)).collect();
    let mut real: Vec<DD> = vec![DD::from(0.0); m];
    let mut w = z.first(w0);
    let mut q = 0.0;
    let mut clamped = 0;
    for k in 0..cur.len() {
        let mut a = cur[k];
        let floor = 1e-14 * a.norm().max(f64::MIN_POSITIVE);
        if !(a.im > floor) {
            clamped += 1;
            a.im = floor;
        }
        let s = Slit::new(a);
        for r in real.iter_mut().take(k + 2).skip(1) {
            *r = s.forward_real(*r);
        }
        for c in cur.iter_mut().skip(k + 1) {
            *c = s.forward(*c);
        }
        q = s.forward_reciprocal(q);
        w = s.forward(w);
        real[k + 2] = DD::from(0.0);
        z.slits.push(s);
    }
    z.inv_zeta0 = q;
    z.h = z.last(w);
    let tmp = Zipper { rot: C::new(1.0, 0.0), ..z.clone() };
    let (_, d0) = tmp.inverse(C::new(0.0, 0.0));
    z.rot = d0 / d0.norm();

    let mut angles = Vec::with_capacity(m);
    angles.push(z.rot.arg());
    let rot = z.rot.arg();
    for &x in &real[1..] {
        let mm = x / (DD::from(1.0) - x * q);
        // Möbius image of the real point y: rot·(y - h)/(y - h̄).
        let d = f64::from(-(mm * mm) - z.h.re);
        angles.push(rot - 2.0 * z.h.im.atan2(d));
    }
    Zipped {
        zipper: z,
        angles,
        clamped,
    }
}
