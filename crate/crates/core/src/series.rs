//! Power-series expansions of the density and distribution function about
//! `x = 0`, their remainder bounds and the derived threshold coordinates.
//!
//! With `s_n = sin(pi/2 (n+1)(1-theta))` the partial sums are
//!
//! ```text
//! g_N(x) = 1/(alpha pi) sum_{n<N} x^n/n! Γ((n+1)/alpha) s_n
//! G_N(x) = (1-theta)/2 + 1/(alpha pi) sum_{n<N} x^(n+1)/(n+1)! Γ((n+1)/alpha) s_n
//! ```
//!
//! with remainders bounded by `|x|^N Γ((N+1)/alpha) / (alpha pi N!)` and
//! `|x|^(N+1) Γ((N+1)/alpha) / (alpha pi (N+1)!)` respectively. Every bound and
//! threshold is evaluated in log-space.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::Result;
use crate::params::validate_alpha_theta;
use crate::special::{cos_half_pi, ln_gamma, sin_half_pi, CompensatedSum};

/// Convergence behaviour of the expansion about zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    /// `alpha < 1`: divergent, asymptotic as `x -> 0`.
    Asymptotic,
    /// `alpha = 1`: converges for `|x| < 1`.
    UnitDisc,
    /// `alpha > 1`: converges for every `x`.
    Entire,
}

pub fn regime(alpha: f64) -> Regime {
    if alpha < 1.0 {
        Regime::Asymptotic
    } else if alpha == 1.0 {
        Regime::UnitDisc
    } else {
        Regime::Entire
    }
}

/// A truncated series value together with its certified remainder bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SeriesEval {
    pub value: f64,
    pub n_terms: usize,
    /// Closed-form bound on the truncation remainder (exact arithmetic).
    pub remainder_bound: f64,
    /// Certified truncation bound, see [`pdf_error_bound`].
    pub error_bound: f64,
    pub regime: Regime,
    /// Estimate of the floating-point error accumulated while forming and
    /// summing the terms (root-sum-square model of independent roundings
    /// per term). Not part of the remainder bound.
    pub rounding_error: f64,
}

const LN_MAX: f64 = 709.782_712_893_384;

#[inline]
fn ln_alpha_pi(alpha: f64) -> f64 {
    (alpha * PI).ln()
}

fn exp_bound(ln_bound: f64) -> f64 {
    if ln_bound > LN_MAX {
        f64::INFINITY
    } else {
        ln_bound.exp()
    }
}

/// `ln Γ((N+1)/alpha) - ln (N+shift)! - ln(alpha pi)`, shared by the bounds
/// and the thresholds so that both see the same rounded value.
fn ln_coeff(alpha: f64, n: usize, shift: usize) -> f64 {
    let nf = n as f64;
    ln_gamma((nf + 1.0) / alpha) - ln_gamma(nf + 1.0 + shift as f64) - ln_alpha_pi(alpha)
}

/// `ln` of `|x|^(N+shift) Γ((N+1)/alpha) / (alpha pi (N+shift)!)`; `-inf` at `x = 0`.
fn ln_bound(x: f64, alpha: f64, n: usize, shift: usize) -> f64 {
    if x == 0.0 {
        return f64::NEG_INFINITY;
    }
    ((n + shift) as f64).mul_add(x.abs().ln(), ln_coeff(alpha, n, shift))
}

fn ln_pdf_bound(x: f64, alpha: f64, n: usize) -> f64 {
    ln_bound(x, alpha, n, 0)
}

fn ln_cdf_bound(x: f64, alpha: f64, n: usize) -> f64 {
    ln_bound(x, alpha, n, 1)
}

/// `|x|^N Γ((N+1)/alpha) / (alpha pi N!)`; `+inf` if not representable.
pub fn pdf_remainder_bound(x: f64, alpha: f64, n: usize) -> f64 {
    exp_bound(ln_pdf_bound(x, alpha, n))
}

/// `|x|^(N+1) Γ((N+1)/alpha) / (alpha pi (N+1)!)`.
pub fn cdf_remainder_bound(x: f64, alpha: f64, n: usize) -> f64 {
    exp_bound(ln_cdf_bound(x, alpha, n))
}

/// `exp((ln epsilon - c) / k)` with the subtraction carried in two parts.
fn solve_threshold(epsilon: f64, c: f64, k: usize) -> f64 {
    let a = epsilon.ln();
    let hi = a - c;
    let b = hi - a;
    let lo = (a - (hi - b)) + (-c - b);
    let kf = k as f64;
    let q = hi / kf;
    let r = (-q).mul_add(kf, hi);
    (q + (r + lo) / kf).exp()
}

/// Largest `|x|` at which the `N`-term density bound equals `epsilon`:
/// `(alpha pi epsilon N! / Γ((N+1)/alpha))^(1/N)`.
pub fn threshold_x_pdf(alpha: f64, epsilon: f64, n: usize) -> f64 {
    solve_threshold(epsilon, ln_coeff(alpha, n, 0), n)
}

/// Distribution-function threshold:
/// `(pi epsilon alpha (N+1)! / Γ((N+1)/alpha))^(1/(N+1))`.
pub fn threshold_x_cdf(alpha: f64, epsilon: f64, n: usize) -> f64 {
    solve_threshold(epsilon, ln_coeff(alpha, n, 1), n + 1)
}

/// Classical remainder bound for the parameterization "B" density expansion
/// (`alpha < 1`), `|x|^N Γ((N+1)/alpha) / (pi alpha N!) cos(pi alpha beta / 2)^(-(N+1)/alpha)`.
pub fn zolotarev_bound(x: f64, alpha: f64, beta_b: f64, n: usize) -> f64 {
    let c = (0.5 * PI * alpha * beta_b).cos();
    let nf = n as f64;
    exp_bound(ln_pdf_bound(x, alpha, n) - (nf + 1.0) / alpha * c.ln())
}

/// `ln` of `|x|^(N+shift) Γ((N+1)/alpha) / (alpha pi (N+shift)!) cos(pi alpha theta / 2)^(-(N+1)/alpha)`,
/// the remainder bounded through the modulus of its integrand.
fn ln_modulus_bound(x: f64, alpha: f64, theta: f64, n: usize, shift: usize) -> f64 {
    let c = cos_half_pi(alpha * theta.abs());
    ln_bound(x, alpha, n, shift) - (n as f64 + 1.0) / alpha * c.ln()
}

/// Longest explicit stretch of the tail sum before giving up.
const TAIL_MAX_TERMS: usize = 100_000;

/// `ln` of a bound on `sum_{k>=N} b_k` for the term majorants `b_k` when
/// `alpha >= 1`. Wendel's inequality `Γ(z+h)/Γ(z) <= z^h` (`0 < h <= 1`) gives
/// `b_(j+1)/b_j <= R_k = |x| alpha^(-1/alpha) (k+1)^(1/alpha-1)` for all `j >= k`,
/// so the sum is explicit up to the first `k` with `R_k < 1` and geometric after.
/// Returns `+inf` once the partial sum exceeds `exp(ln_cap)`.
fn ln_tail_bound(x: f64, alpha: f64, n: usize, shift: usize, ln_cap: f64) -> f64 {
    if x == 0.0 {
        return f64::NEG_INFINITY;
    }
    if alpha < 1.0 {
        return f64::INFINITY;
    }
    let h = 1.0 / alpha;
    let ln_r0 = x.abs().ln() - h * alpha.ln();
    let ln_ratio = |k: usize| ln_r0 + (h - 1.0) * (k as f64 + 1.0).ln();
    let k_star = if ln_ratio(n) < 0.0 {
        n
    } else if h == 1.0 {
        return f64::INFINITY;
    } else {
        // smallest k with R_k < 1
        let k = (ln_r0 / (1.0 - h)).exp().floor();
        if !(k < (n + TAIL_MAX_TERMS) as f64) {
            return f64::INFINITY;
        }
        (k as usize).max(n)
    };
    let first = ln_bound(x, alpha, n, shift);
    let mut sum = CompensatedSum::new();
    for k in n..k_star {
        sum.add((ln_bound(x, alpha, k, shift) - first).exp());
        if first + sum.total().ln() > ln_cap {
            return f64::INFINITY;
        }
    }
    let mut k = k_star;
    while !(ln_ratio(k) < 0.0) {
        sum.add((ln_bound(x, alpha, k, shift) - first).exp());
        k += 1;
    }
    let last = ln_bound(x, alpha, k, shift) - first;
    sum.add(last.exp() / -ln_ratio(k).exp_m1());
    first + sum.total().ln()
}

fn ln_error_bound(x: f64, alpha: f64, theta: f64, n: usize, shift: usize) -> f64 {
    ln_modulus_bound(x, alpha, theta, n, shift).min(ln_tail_bound(x, alpha, n, shift, f64::INFINITY))
}

fn certifies(x: f64, alpha: f64, theta: f64, n: usize, shift: usize, ln_eps: f64) -> bool {
    ln_modulus_bound(x, alpha, theta, n, shift) <= ln_eps
        || ln_tail_bound(x, alpha, n, shift, ln_eps) <= ln_eps
}

/// Certified bound on `|g - g_N|`.
///
/// Bounding the remainder integrand by its modulus gives
/// [`pdf_remainder_bound`] times `cos(pi alpha theta / 2)^(-(N+1)/alpha)`; for
/// `alpha >= 1` the tail sum of the term majorants is also a bound, and the
/// smaller of the two is returned. For `theta = 0` this coincides with
/// [`pdf_remainder_bound`], for `theta != 0` it can be larger.
pub fn pdf_error_bound(x: f64, alpha: f64, theta: f64, n: usize) -> f64 {
    exp_bound(ln_error_bound(x, alpha, theta, n, 0))
}

/// Certified bound on `|G - G_N|`, built like [`pdf_error_bound`].
pub fn cdf_error_bound(x: f64, alpha: f64, theta: f64, n: usize) -> f64 {
    exp_bound(ln_error_bound(x, alpha, theta, n, 1))
}

/// Majorant `1/(alpha pi) sum_{n<N} |x|^n Γ((n+1)/alpha) / n!` of the
/// partial sums.
pub fn series_majorant(x: f64, alpha: f64, n: usize) -> f64 {
    let mut sum = CompensatedSum::new();
    for k in 0..n {
        let kf = k as f64;
        let ln_t = if k == 0 {
            ln_gamma(1.0 / alpha)
        } else if x == 0.0 {
            continue;
        } else {
            kf * x.abs().ln() - ln_gamma(kf + 1.0) + ln_gamma((kf + 1.0) / alpha)
        };
        sum.add(exp_bound(ln_t));
    }
    sum.total() / (alpha * PI)
}

/// Outcome of choosing the number of terms for a target accuracy.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TermChoice {
    Achieved(usize),
    /// No admissible `N <= n_max` meets the target; carries the `N` with the
    /// smallest bound and that bound (optimal truncation).
    Unachievable {
        best_n: usize,
        best_bound: f64,
    },
}

impl TermChoice {
    pub fn n_terms(&self) -> usize {
        match *self {
            TermChoice::Achieved(n) => n,
            TermChoice::Unachievable { best_n, .. } => best_n,
        }
    }
}

fn choose_with(
    ln_bound: impl Fn(usize) -> f64,
    x: f64,
    alpha: f64,
    epsilon: f64,
    n_max: usize,
) -> TermChoice {
    if x == 0.0 {
        return TermChoice::Achieved(1);
    }
    let ln_eps = epsilon.ln();
    let mut best_n = 1;
    let mut best = ln_bound(1);
    if alpha >= 1.0 {
        for n in 1..=n_max {
            let b = ln_bound(n);
            if b <= ln_eps {
                return TermChoice::Achieved(n);
            }
            if b < best {
                best = b;
                best_n = n;
            }
        }
    } else {
        // ln bound is convex in N when alpha < 1: stop at the first increase.
        for n in 2..=n_max {
            let b = ln_bound(n);
            if b < best {
                best = b;
                best_n = n;
            } else {
                break;
            }
        }
        if best <= ln_eps {
            return TermChoice::Achieved(best_n);
        }
    }
    TermChoice::Unachievable {
        best_n,
        best_bound: exp_bound(best),
    }
}

/// Number of density terms needed to certify `epsilon` at `x`.
///
/// For `alpha >= 1` this is the smallest `N <= n_max` whose bound meets the
/// target. For `alpha < 1` the series is only asymptotic, so the `N`
/// minimizing the bound (ties to the smaller `N`) is returned when that
/// minimum meets the target.
pub fn choose_terms(x: f64, alpha: f64, epsilon: f64, n_max: usize) -> TermChoice {
    choose_with(|n| ln_pdf_bound(x, alpha, n), x, alpha, epsilon, n_max)
}

/// Distribution-function counterpart of [`choose_terms`].
pub fn choose_terms_cdf(x: f64, alpha: f64, epsilon: f64, n_max: usize) -> TermChoice {
    choose_with(|n| ln_cdf_bound(x, alpha, n), x, alpha, epsilon, n_max)
}

fn choose_certified(x: f64, alpha: f64, theta: f64, epsilon: f64, n_max: usize, shift: usize) -> TermChoice {
    let ln_eps = epsilon.ln();
    if alpha < 1.0 {
        return choose_with(
            |n| ln_modulus_bound(x, alpha, theta, n, shift),
            x,
            alpha,
            epsilon,
            n_max,
        );
    }
    let bound = |n| exp_bound(ln_error_bound(x, alpha, theta, n, shift));
    match choose_with(|n| ln_bound(x, alpha, n, shift), x, alpha, epsilon, n_max) {
        TermChoice::Achieved(n0) => {
            for n in n0..=n_max {
                if certifies(x, alpha, theta, n, shift, ln_eps) {
                    return TermChoice::Achieved(n);
                }
            }
            TermChoice::Unachievable {
                best_n: n_max,
                best_bound: bound(n_max),
            }
        }
        TermChoice::Unachievable { best_n, .. } => TermChoice::Unachievable {
            best_n,
            best_bound: bound(best_n),
        },
    }
}

/// Number of density terms for which [`pdf_error_bound`] certifies `epsilon`
/// at `x`, chosen as in [`choose_terms`].
pub fn choose_terms_certified(x: f64, alpha: f64, theta: f64, epsilon: f64, n_max: usize) -> TermChoice {
    choose_certified(x, alpha, theta, epsilon, n_max, 0)
}

/// Distribution-function counterpart of [`choose_terms_certified`].
pub fn choose_terms_certified_cdf(x: f64, alpha: f64, theta: f64, epsilon: f64, n_max: usize) -> TermChoice {
    choose_certified(x, alpha, theta, epsilon, n_max, 1)
}

const UNIT_ROUNDOFF: f64 = 0.5 * f64::EPSILON;

/// Largest argument for which `Γ` is evaluated directly.
const DIRECT_GAMMA_MAX: f64 = 170.0;

/// `m * 2^e`, a double with an unbounded exponent. Rescaling by powers of two
/// is exact, so products keep the rounding of ordinary multiplication.
#[derive(Debug, Clone, Copy)]
struct Scaled {
    m: f64,
    e: i32,
}

impl Scaled {
    fn new(v: f64) -> Self {
        let (m, e) = libm::frexp(v);
        Self { m, e }
    }

    fn mul(self, v: f64) -> Self {
        let (m, e) = libm::frexp(self.m * v);
        Self { m, e: self.e + e }
    }

    fn mul_scaled(self, o: Scaled) -> Self {
        let (m, e) = libm::frexp(self.m * o.m);
        Self {
            m,
            e: self.e + o.e + e,
        }
    }

    fn to_f64(self) -> f64 {
        libm::ldexp(self.m, self.e)
    }
}

/// `Γ(a)` as a [`Scaled`], via `Γ(r) r (r+1) ... (a-1)` with `r <= 170`, and
/// the number of multiplications used.
fn gamma_scaled(a: f64) -> (Scaled, usize) {
    if a <= DIRECT_GAMMA_MAX {
        return (Scaled::new(libm::tgamma(a)), 0);
    }
    let k = (a - DIRECT_GAMMA_MAX).ceil() as usize;
    let r = a - k as f64;
    let mut g = Scaled::new(libm::tgamma(r));
    for j in 0..k {
        g = g.mul(r + j as f64);
    }
    (g, k)
}

/// Sums `sum_{n<N} c_n * magnitude_n * s_n` where `magnitude_n = |x|^(n+shift) / (n+shift)!`
/// and `c_n = Γ((n+1)/alpha)`, returning (sum / (alpha pi), rounding estimate).
fn sum_terms(x: f64, alpha: f64, theta: f64, n: usize, shift: usize, init: f64) -> (f64, f64) {
    let ax = x.abs();
    let one_minus_theta = 1.0 - theta;
    let mut acc = CompensatedSum::new();
    let mut abs_err = 0.0;
    // |x|^(n+shift) / (n+shift)!
    let mut ratio = Scaled::new(1.0);
    for k in 1..=shift {
        ratio = ratio.mul(ax / k as f64);
    }
    for k in 0..n {
        let kf = k as f64;
        if k > 0 {
            ratio = ratio.mul(ax / (kf + shift as f64));
        }
        if ratio.m == 0.0 {
            break;
        }
        let s = sin_half_pi((kf + 1.0) * one_minus_theta);
        if s == 0.0 {
            continue;
        }
        let p = kf + shift as f64;
        let (g, steps) = gamma_scaled((kf + 1.0) / alpha);
        let magnitude = ratio.mul_scaled(g).to_f64();
        if magnitude == 0.0 {
            continue;
        }
        // independent roundings: two per factor of the power/factorial ratio,
        // one per Gamma recurrence step, a few for tgamma and the products
        let rel_err = UNIT_ROUNDOFF * ((2.0 * p + steps as f64).sqrt() + 8.0);
        let sign = if x < 0.0 && (p as u64) % 2 == 1 { -1.0 } else { 1.0 };
        let term = sign * s * magnitude;
        abs_err += term.abs() * rel_err;
        acc.add(term);
    }
    let total = acc.total();
    let scale = 1.0 / (alpha * PI);
    let value = init + total * scale;
    if !value.is_finite() {
        // terms beyond the double-precision range
        return (value, f64::INFINITY);
    }
    (
        value,
        (abs_err + UNIT_ROUNDOFF * total.abs()) * scale + UNIT_ROUNDOFF * init.abs(),
    )
}

/// `N`-term partial sum of the density expansion with its remainder bound.
pub fn pdf_series(x: f64, alpha: f64, theta: f64, n: usize) -> Result<SeriesEval> {
    validate_alpha_theta(alpha, theta)?;
    let n = n.max(1);
    let (value, rounding_error) = sum_terms(x, alpha, theta, n, 0, 0.0);
    Ok(SeriesEval {
        value,
        n_terms: n,
        remainder_bound: pdf_remainder_bound(x, alpha, n),
        error_bound: pdf_error_bound(x, alpha, theta, n),
        regime: regime(alpha),
        rounding_error,
    })
}

/// `(1-theta)/2` plus the `N`-term partial sum of the distribution-function
/// expansion, with its remainder bound.
pub fn cdf_series(x: f64, alpha: f64, theta: f64, n: usize) -> Result<SeriesEval> {
    validate_alpha_theta(alpha, theta)?;
    let n = n.max(1);
    if x == 0.0 {
        return Ok(SeriesEval {
            value: 0.5 * (1.0 - theta),
            n_terms: n,
            remainder_bound: 0.0,
            error_bound: 0.0,
            regime: regime(alpha),
            rounding_error: 0.0,
        });
    }
    let (value, rounding_error) = sum_terms(x, alpha, theta, n, 1, 0.5 * (1.0 - theta));
    Ok(SeriesEval {
        value,
        n_terms: n,
        remainder_bound: cdf_remainder_bound(x, alpha, n),
        error_bound: cdf_error_bound(x, alpha, theta, n),
        regime: regime(alpha),
        rounding_error,
    })
}
