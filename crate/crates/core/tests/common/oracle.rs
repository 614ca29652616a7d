//! Reference density by direct inversion of the characteristic function,
//!
//! ```text
//! g(x) = 1/pi ∫_0^∞ exp(-t^alpha c) cos(t x - t^alpha s) dt,   c = cos(pi alpha theta / 2), s = sin(pi alpha theta / 2)
//! ```
//!
//! integrated over half-periods of `cos(t x)` with an adaptive
//! Gauss-Legendre rule that shares nothing with the library's quadrature.

#![allow(dead_code)]

use std::f64::consts::PI;
use std::sync::OnceLock;

const GL_ORDER: usize = 20;

/// Nodes and weights of the Gauss-Legendre rule on [-1, 1] by Newton
/// iteration on the Legendre polynomial.
fn gauss_legendre() -> &'static (Vec<f64>, Vec<f64>) {
    static RULE: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    RULE.get_or_init(|| {
        let n = GL_ORDER;
        let mut xs = vec![0.0; n];
        let mut ws = vec![0.0; n];
        for i in 0..n {
            let mut z = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0, z);
                for k in 2..=n {
                    let kf = k as f64;
                    let p2 = ((2.0 * kf - 1.0) * z * p1 - (kf - 1.0) * p0) / kf;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n as f64 * (z * p1 - p0) / (z * z - 1.0);
                let dz = p1 / dp;
                z -= dz;
                if dz.abs() < 1e-16 {
                    break;
                }
            }
            xs[i] = z;
            ws[i] = 2.0 / ((1.0 - z * z) * dp * dp);
        }
        (xs, ws)
    })
}

fn gl<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> f64 {
    let (xs, ws) = gauss_legendre();
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    xs.iter().zip(ws).map(|(&x, &w)| w * f(c + h * x)).sum::<f64>() * h
}

/// Recursive bisection until the whole-panel and two-half estimates agree.
fn adaptive<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, whole: f64, tol: f64, depth: u32) -> (f64, f64) {
    let m = 0.5 * (a + b);
    let left = gl(f, a, m);
    let right = gl(f, m, b);
    let diff = (left + right - whole).abs();
    if diff <= tol || depth == 0 {
        return (left + right, diff);
    }
    let (l, el) = adaptive(f, a, m, left, 0.5 * tol, depth - 1);
    let (r, er) = adaptive(f, m, b, right, 0.5 * tol, depth - 1);
    (l + r, el + er)
}

/// Fixed 20-point rule on each panel between consecutive `edges`.
pub fn gl_composite<F: Fn(f64) -> f64>(f: &F, edges: &[f64]) -> f64 {
    edges.windows(2).map(|w| gl(f, w[0], w[1])).sum()
}

pub fn integrate<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> (f64, f64) {
    adaptive(f, a, b, gl(f, a, b), tol, 40)
}

/// `∫_T^∞ exp(-c t^alpha) dt` bounded from above.
fn tail_bound(t_max: f64, alpha: f64, c: f64) -> f64 {
    let u = t_max.powf(alpha);
    let lead = (-c * u).exp() * t_max.powf(1.0 - alpha) / (alpha * c);
    if alpha >= 1.0 {
        // t^alpha >= T^alpha + alpha T^(alpha-1) (t - T) by convexity
        lead
    } else {
        // ∫_U^∞ e^(-c u) u^k du <= e^(-cU) U^k / (c - k/U) for k = 1/alpha - 1
        let k = 1.0 / alpha - 1.0;
        lead / (1.0 - k / (c * u))
    }
}

/// Reference density of the standard law with `(value, error estimate)`.
pub fn oracle_pdf_err(x: f64, alpha: f64, theta: f64, tol: f64) -> (f64, f64) {
    let c = (0.5 * PI * alpha * theta).cos();
    let s = (0.5 * PI * alpha * theta).sin();
    assert!(c > 0.0, "oracle needs cos(pi alpha theta / 2) > 0");
    let k = (1.0 / alpha - 1.0).max(0.0);
    let mut t_max = ((10.0 / tol).ln() / c).powf(1.0 / alpha);
    while c * t_max.powf(alpha) <= 2.0 * k {
        t_max *= 2.0;
    }
    let f = |t: f64| (-t.powf(alpha) * c).exp() * (t * x - t.powf(alpha) * s).cos();
    let half_period = if x == 0.0 { 1.0 } else { PI / x.abs() };
    let step = half_period.min(t_max / 16.0);
    let panels = (t_max / step).ceil() as usize;
    let panel_tol = 0.1 * tol * PI / panels as f64;
    let mut value = 0.0;
    let mut err = 0.0;
    for i in 0..panels {
        let a = i as f64 * step;
        let b = ((i + 1) as f64 * step).min(t_max);
        let (v, e) = integrate(&f, a, b, panel_tol);
        value += v;
        err += e;
    }
    err += tail_bound(t_max, alpha, c);
    (value / PI, err / PI)
}

pub fn oracle_pdf(x: f64, alpha: f64, theta: f64, tol: f64) -> f64 {
    oracle_pdf_err(x, alpha, theta, tol).0
}

/// Density of the law with scale `lambda`.
pub fn oracle_pdf_scaled(x: f64, alpha: f64, theta: f64, lambda: f64, tol: f64) -> f64 {
    let s = lambda.powf(-1.0 / alpha);
    s * oracle_pdf(x * s, alpha, theta, tol / s)
}
