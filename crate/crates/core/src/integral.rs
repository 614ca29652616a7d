//! Stationary-phase integral representations of the density and the
//! distribution function for `alpha != 1`, `x != 0`.
//!
//! With `theta* = theta sign(x)` and
//!
//! ```text
//! U(phi) = (sin(alpha (phi + pi theta / 2)) / cos phi)^(alpha/(1-alpha))
//!          * cos(phi (1-alpha) - pi alpha theta / 2) / cos phi
//! ```
//!
//! the density is `alpha / (pi |alpha-1|) ∫ exp{-|x|^(alpha/(alpha-1)) U} U |x|^(1/(alpha-1)) dphi`
//! over `(-pi theta*/2, pi/2)`. Writing `z = ln U + alpha/(alpha-1) ln|x|`, the
//! integrand equals `exp(z - e^z) / |x|`, which is what is evaluated: it
//! never overflows and its maximum sits exactly where `z = 0`.

use std::f64::consts::{FRAC_1_PI, FRAC_PI_2, PI};

use serde::Serialize;

use crate::error::{Result, StableError};
use crate::params::validate_alpha_theta;
use crate::quad::{adaptive_quad_points, QuadResult, DEFAULT_MAX_SUBDIVISIONS};

/// Below this distance from one, results carry a near-`alpha = 1` flag.
pub const NEAR_ALPHA_ONE: f64 = 5e-3;

/// `ln U` from `u = phi + pi theta/2` and `v = pi/2 - phi`, with `phi` taken
/// from whichever of the two is passed as `phi`; `NaN` outside the interval.
#[inline]
fn ln_big_u_uv(u: f64, v: f64, phi: f64, alpha: f64, theta: f64) -> f64 {
    if !(u > 0.0 && v > 0.0) {
        return f64::NAN;
    }
    let ln_sin = (alpha * u).sin().ln();
    let ln_cos_phi = v.sin().ln();
    let ln_c2 = (phi * (1.0 - alpha) - FRAC_PI_2 * alpha * theta).cos().ln();
    alpha / (1.0 - alpha) * (ln_sin - ln_cos_phi) + ln_c2 - ln_cos_phi
}

/// `ln U(phi, alpha, theta)`; `NaN` outside the open interval.
fn ln_big_u(phi: f64, alpha: f64, theta: f64) -> f64 {
    ln_big_u_uv(phi + FRAC_PI_2 * theta, FRAC_PI_2 - phi, phi, alpha, theta)
}

/// `U(phi, alpha, theta)` on the open interval `(-pi theta/2, pi/2)`.
pub fn big_u(phi: f64, alpha: f64, theta: f64) -> Result<f64> {
    if alpha == 1.0 {
        return Err(StableError::AlphaOne);
    }
    let lo = -FRAC_PI_2 * theta;
    if !(phi > lo && phi < FRAC_PI_2) {
        return Err(StableError::Domain(format!("phi = {phi} outside ({lo}, pi/2)")));
    }
    Ok(ln_big_u(phi, alpha, theta).exp())
}

/// Integrand data for one `(x, alpha, theta)` with `theta*` already applied.
#[derive(Debug, Clone, Copy)]
struct Kernel {
    alpha: f64,
    theta: f64,
    shift: f64,
    lo: f64,
    hi: f64,
}

/// Halves of `(lo, hi)`: the lower one is integrated in `phi`, the upper one
/// in `v = pi/2 - phi`, which keeps peaks close to `pi/2` representable.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Half {
    Lower,
    Upper,
}

/// Bisection for the root of a monotone `z` on `(a, b)`; `None` unless some
/// probe reaches `|z| < 8`.
fn bisect_root<F: Fn(f64) -> f64>(z: F, a: f64, b: f64, increasing: bool) -> Option<f64> {
    let (mut a, mut b) = (a, b);
    let mut best: Option<(f64, f64)> = None;
    for _ in 0..2000 {
        let m = 0.5 * (a + b);
        if !(m > a && m < b) {
            break;
        }
        let zm = z(m);
        if zm.is_nan() {
            break;
        }
        if best.is_none_or(|(_, bz)| zm.abs() < bz) {
            best = Some((m, zm.abs()));
        }
        if (zm < 0.0) == increasing {
            a = m;
        } else {
            b = m;
        }
    }
    match best {
        Some((s, zabs)) if zabs < 8.0 => Some(s),
        _ => None,
    }
}

impl Kernel {
    fn new(x: f64, alpha: f64, theta: f64) -> Self {
        let theta_star = if x < 0.0 { -theta } else { theta };
        Self {
            alpha,
            theta: theta_star,
            shift: alpha / (alpha - 1.0) * x.abs().ln(),
            lo: -FRAC_PI_2 * theta_star,
            hi: FRAC_PI_2,
        }
    }

    fn is_empty(&self) -> bool {
        !(self.hi > self.lo)
    }

    fn mid(&self) -> f64 {
        self.lo + 0.5 * (self.hi - self.lo)
    }

    /// Range of the local variable on `half`.
    fn range(&self, half: Half) -> (f64, f64) {
        match half {
            Half::Lower => (self.lo, self.mid()),
            Half::Upper => (0.0, self.hi - self.mid()),
        }
    }

    /// `z = ln U + alpha/(alpha-1) ln|x|` at local coordinate `s` of `half`.
    #[inline]
    fn z(&self, half: Half, s: f64) -> f64 {
        let ln_u = match half {
            Half::Lower => ln_big_u(s, self.alpha, self.theta),
            Half::Upper => ln_big_u_uv(self.hi - self.lo - s, s, FRAC_PI_2 - s, self.alpha, self.theta),
        };
        ln_u + self.shift
    }

    /// Direction of `z` in the local variable.
    fn increasing(&self, half: Half) -> bool {
        (self.alpha < 1.0) == (half == Half::Lower)
    }

    /// `exp(z - e^z)`; zero where `U` is not defined numerically.
    #[inline]
    fn density_kernel(&self, half: Half, s: f64) -> f64 {
        let z = self.z(half, s);
        if z.is_nan() {
            return 0.0;
        }
        let r = (z - z.exp()).exp();
        if r.is_finite() {
            r
        } else {
            0.0
        }
    }

    /// Integrand of the distribution-function representation:
    /// `exp(-e^z)` for `alpha < 1`, `1 - exp(-e^z)` for `alpha > 1`.
    #[inline]
    fn cdf_kernel(&self, half: Half, s: f64) -> f64 {
        let z = self.z(half, s);
        if z.is_nan() {
            // endpoint limits: U -> 0 at the lower end for alpha < 1,
            // U -> inf at the lower end for alpha > 1
            return if half == Half::Lower { 1.0 } else { 0.0 };
        }
        if self.alpha < 1.0 {
            (-z.exp()).exp()
        } else {
            -(-z.exp()).exp_m1()
        }
    }

    /// Maximizer of the density kernel in `phi` over the whole interval.
    fn peak_phi(&self) -> Option<f64> {
        if self.is_empty() {
            return None;
        }
        bisect_root(|phi| self.z(Half::Lower, phi), self.lo, self.hi, self.alpha < 1.0)
    }

    /// Peak width from a parabolic fit of `ln(kernel)` around `s0`.
    fn peak_width(&self, half: Half, s0: f64) -> Option<f64> {
        let (a, b) = self.range(half);
        let ln_k = |s: f64| {
            let z = self.z(half, s);
            z - z.exp()
        };
        let l0 = ln_k(s0);
        let mut delta = 0.5 * (s0 - a).min(b - s0);
        for _ in 0..400 {
            if !(delta > 0.0) || s0 + delta == s0 {
                return None;
            }
            let lp = ln_k(s0 + delta);
            let lm = ln_k(s0 - delta);
            let drop = (l0 - lp).max(l0 - lm);
            if lp.is_finite() && lm.is_finite() && drop < 0.5 {
                let curvature = (lp - 2.0 * l0 + lm) / (delta * delta);
                let w = 1.0 / (-curvature).sqrt();
                return if curvature < 0.0 && w > 0.0 && w.is_finite() {
                    Some(w)
                } else {
                    None
                };
            }
            delta *= 0.25;
        }
        None
    }

    /// Initial partition of `half`: the peak plus a geometric ladder of
    /// flanking points so that the tails next to a very narrow peak are resolved.
    fn breakpoints(&self, half: Half) -> Vec<f64> {
        let (a, b) = self.range(half);
        let mut pts = vec![a, b];
        if let Some(s0) = bisect_root(|s| self.z(half, s), a, b, self.increasing(half)) {
            pts.push(s0);
            if let Some(w) = self.peak_width(half, s0) {
                let mut step = w;
                while s0 - step > a || s0 + step < b {
                    for p in [s0 - step, s0 + step] {
                        if p > a && p < b {
                            pts.push(p);
                        }
                    }
                    step *= 4.0;
                }
            }
        }
        pts.sort_by(f64::total_cmp);
        pts.dedup();
        pts
    }

    /// Sum of the adaptive quadratures of `f` over both halves.
    fn integrate<F: Fn(Half, f64) -> f64>(&self, f: F, tol: f64, max_sub: usize) -> QuadResult {
        let mut total = QuadResult {
            value: 0.0,
            abs_error_estimate: 0.0,
            subdivisions: 0,
            converged: true,
        };
        for half in [Half::Lower, Half::Upper] {
            let q = adaptive_quad_points(|s| f(half, s), &self.breakpoints(half), 0.5 * tol, max_sub);
            total.value += q.value;
            total.abs_error_estimate += q.abs_error_estimate;
            total.subdivisions += q.subdivisions;
            total.converged &= q.converged;
        }
        total
    }
}

/// Maximizer of the density integrand over `(-pi theta*/2, pi/2)`, or `None`
/// when the crossing cannot be resolved in double precision.
pub fn locate_peak(x: f64, alpha: f64, theta: f64) -> Option<f64> {
    if alpha == 1.0 || x == 0.0 {
        return None;
    }
    Kernel::new(x, alpha, theta).peak_phi()
}

/// Integrand of the density representation as a function of `phi`
/// (without the constant `alpha / (pi |alpha - 1|)`):
/// `exp{-|x|^(alpha/(alpha-1)) U(phi, alpha, theta*)} U |x|^(1/(alpha-1))`.
pub fn pdf_integrand(phi: f64, x: f64, alpha: f64, theta: f64) -> f64 {
    Kernel::new(x, alpha, theta).density_kernel(Half::Lower, phi) / x.abs()
}

/// Result of an integral-representation evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IntegralEval {
    pub quad: QuadResult,
    /// `0 < |alpha - 1| < 5e-3`: the representation is ill-conditioned.
    pub near_alpha_one: bool,
    /// The distribution-function value was clamped into `[0, 1]`.
    pub clamped: bool,
}

impl IntegralEval {
    pub fn value(&self) -> f64 {
        self.quad.value
    }
}

fn check_args(x: f64, alpha: f64, theta: f64) -> Result<()> {
    validate_alpha_theta(alpha, theta)?;
    if alpha == 1.0 {
        return Err(StableError::AlphaOne);
    }
    if x == 0.0 {
        return Err(StableError::AtZero);
    }
    if !x.is_finite() {
        return Err(StableError::NonFinite(x));
    }
    Ok(())
}

fn max_subdivisions(alpha: f64) -> (usize, bool) {
    let near = (alpha - 1.0).abs() < NEAR_ALPHA_ONE;
    let n = if near {
        4 * DEFAULT_MAX_SUBDIVISIONS
    } else {
        DEFAULT_MAX_SUBDIVISIONS
    };
    (n, near)
}

/// Density of the standard law by the integral representation.
///
/// `NotConverged` is reported through `quad.converged = false` together
/// with the best available value.
pub fn integral_pdf(x: f64, alpha: f64, theta: f64, quad_tol: f64) -> Result<IntegralEval> {
    check_args(x, alpha, theta)?;
    let kernel = Kernel::new(x, alpha, theta);
    let (max_sub, near_alpha_one) = max_subdivisions(alpha);
    if kernel.is_empty() {
        return Ok(IntegralEval {
            quad: QuadResult {
                value: 0.0,
                abs_error_estimate: 0.0,
                subdivisions: 0,
                converged: true,
            },
            near_alpha_one,
            clamped: false,
        });
    }
    let prefactor = alpha / (PI * (alpha - 1.0).abs() * x.abs());
    let q = kernel.integrate(|h, s| kernel.density_kernel(h, s), quad_tol / prefactor, max_sub);
    Ok(IntegralEval {
        quad: QuadResult {
            value: q.value * prefactor,
            abs_error_estimate: q.abs_error_estimate * prefactor,
            ..q
        },
        near_alpha_one,
        clamped: false,
    })
}

/// `G^(+)(|x|, alpha, theta*)`, the distribution function on the positive
/// half-line in terms of the reflected asymmetry.
fn g_plus(kernel: &Kernel, quad_tol: f64, max_sub: usize) -> QuadResult {
    let base = 0.5 * (1.0 - kernel.theta);
    if kernel.is_empty() {
        return QuadResult {
            value: base,
            abs_error_estimate: 0.0,
            subdivisions: 0,
            converged: true,
        };
    }
    let q = kernel.integrate(|h, s| kernel.cdf_kernel(h, s), quad_tol * PI, max_sub);
    QuadResult {
        value: base + q.value * FRAC_1_PI,
        abs_error_estimate: q.abs_error_estimate * FRAC_1_PI,
        ..q
    }
}

/// Distribution function of the standard law by the integral representation,
/// `G(x) = (1 - sign x)/2 + sign(x) G^(+)(|x|, theta sign x)`, clamped to `[0, 1]`.
pub fn integral_cdf(x: f64, alpha: f64, theta: f64, quad_tol: f64) -> Result<IntegralEval> {
    check_args(x, alpha, theta)?;
    let kernel = Kernel::new(x, alpha, theta);
    let (max_sub, near_alpha_one) = max_subdivisions(alpha);
    let gp = g_plus(&kernel, quad_tol, max_sub);
    let raw = if x > 0.0 { gp.value } else { 1.0 - gp.value };
    let value = raw.clamp(0.0, 1.0);
    Ok(IntegralEval {
        quad: QuadResult { value, ..gp },
        near_alpha_one,
        clamped: value != raw,
    })
}
