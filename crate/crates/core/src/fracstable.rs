//! Fractionally stable densities as the Mellin convolution
//!
//! ```text
//! q(x, alpha, beta, theta) = ∫_0^∞ g(x y^(beta/alpha), alpha, theta, lambda) g(y, beta, 1) y^(beta/alpha) dy
//! ```
//!
//! of a strictly stable density with a one-sided stable density
//! (`theta = 1`, `0 < beta < 1`). Both inner densities go through the hybrid
//! evaluator, so arguments close to zero are handled by the series.

use std::cell::RefCell;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Param, Result, StableError};
use crate::evaluator::{pdf, EvalResult, Method, Warning};
use crate::params::{EvalOptions, StableParams};
use crate::quad::{adaptive_quad_aux, DEFAULT_MAX_SUBDIVISIONS};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FracParams {
    pub alpha: f64,
    pub beta: f64,
    pub theta: f64,
    pub lambda: f64,
}

impl FracParams {
    pub fn new(alpha: f64, beta: f64, theta: f64, lambda: f64) -> Result<Self> {
        let p = Self {
            alpha,
            beta,
            theta,
            lambda,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        self.outer().validate()?;
        if !(self.beta > 0.0 && self.beta <= 1.0) {
            return Err(StableError::OutOfRange {
                param: Param::Beta,
                message: format!("beta = {} must satisfy 0 < beta <= 1", self.beta),
            });
        }
        Ok(())
    }

    fn outer(&self) -> StableParams {
        StableParams {
            alpha: self.alpha,
            theta: self.theta,
            lambda: self.lambda,
        }
    }

    fn inner(&self) -> StableParams {
        StableParams {
            alpha: self.beta,
            theta: 1.0,
            lambda: 1.0,
        }
    }
}

/// Per-call record of the inner evaluations of `g(x y^(beta/alpha), alpha, theta, lambda)`.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct InnerStats {
    /// `(argument, method)` for every inner call on the outer law.
    pub outer_calls: Vec<(f64, Method)>,
    /// Method counts for the one-sided law calls.
    pub one_sided_series: usize,
    pub one_sided_integral: usize,
    pub one_sided_closed_form: usize,
}

impl InnerStats {
    pub fn count(&self, method: Method) -> usize {
        self.outer_calls.iter().filter(|(_, m)| *m == method).count()
    }
}

/// Mode of the one-sided density `g(y, beta, 1)`: log-spaced bracketing
/// followed by golden-section refinement in `ln y`.
fn one_sided_mode(beta: f64) -> Result<f64> {
    let p = StableParams::standard(beta, 1.0)?;
    let opts = EvalOptions::default().with_epsilon(1e-9).with_quad_tol(1e-9);
    let f = |ln_y: f64| pdf(ln_y.exp(), &p, &opts).map(|r| r.value);
    let (lo, hi, step) = (-40.0f64, 40.0f64, 0.25f64);
    let mut best = (lo, f64::NEG_INFINITY);
    let mut t = lo;
    while t <= hi {
        let v = f(t)?;
        if v > best.1 {
            best = (t, v);
        }
        t += step;
    }
    let (mut a, mut b) = (best.0 - step, best.0 + step);
    let r = 0.5 * (5f64.sqrt() - 1.0);
    let mut c = b - r * (b - a);
    let mut d = a + r * (b - a);
    let (mut fc, mut fd) = (f(c)?, f(d)?);
    for _ in 0..60 {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = f(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = f(d)?;
        }
    }
    Ok((0.5 * (a + b)).exp())
}

fn frac_pdf_impl(
    x: f64,
    fp: &FracParams,
    tol: f64,
    stats: Option<&RefCell<InnerStats>>,
) -> Result<EvalResult> {
    fp.validate()?;
    if fp.beta == 1.0 {
        return Err(StableError::DegenerateInner);
    }
    if !x.is_finite() {
        return Err(StableError::NonFinite(x));
    }
    if !(tol > 0.0) {
        return Err(StableError::InvalidOption(format!("tol = {tol} must be > 0")));
    }
    if x == 0.0 && fp.alpha <= 1.0 {
        return Err(StableError::DivergentAtZero);
    }
    let outer = fp.outer();
    let inner = fp.inner();
    let eps_in = tol / 10.0;
    let opts_outer = EvalOptions::default().with_epsilon(eps_in).with_quad_tol(eps_in);
    let opts_inner = opts_outer;
    let s = fp.beta / fp.alpha;
    let m = one_sided_mode(fp.beta)?;

    let failure: RefCell<Option<StableError>> = RefCell::new(None);
    let warnings: RefCell<Vec<Warning>> = RefCell::new(Vec::new());

    // integrand in y, with the propagated inner error as auxiliary output
    let integrand = |y: f64| -> (f64, f64) {
        if failure.borrow().is_some() || !(y > 0.0) || !y.is_finite() {
            return (0.0, 0.0);
        }
        let ys = y.powf(s);
        let g2 = match pdf(y, &inner, &opts_inner) {
            Ok(r) => r,
            Err(e) => {
                failure.borrow_mut().get_or_insert(e);
                return (0.0, 0.0);
            }
        };
        if let Some(st) = stats {
            let mut st = st.borrow_mut();
            match g2.method {
                Method::Series => st.one_sided_series += 1,
                Method::Integral => st.one_sided_integral += 1,
                Method::ClosedForm => st.one_sided_closed_form += 1,
            }
        }
        if g2.value == 0.0 && g2.error_estimate == 0.0 {
            return (0.0, 0.0);
        }
        let arg = x * ys;
        let g1 = match pdf(arg, &outer, &opts_outer) {
            Ok(r) => r,
            Err(e) => {
                failure.borrow_mut().get_or_insert(e);
                return (0.0, 0.0);
            }
        };
        if let Some(st) = stats {
            st.borrow_mut().outer_calls.push((arg, g1.method));
        }
        for w in g1.warnings.iter().chain(g2.warnings.iter()) {
            let mut ws = warnings.borrow_mut();
            if !ws.contains(w) {
                ws.push(*w);
            }
        }
        let value = g1.value * g2.value * ys;
        let err = (g1.error_estimate * g2.value.abs() + g1.value.abs() * g2.error_estimate) * ys;
        (value, err)
    };

    // (0, m] directly, [m, ∞) through y = m exp(t / (1 - t)), which turns the
    // algebraic tail of the one-sided law into exponential decay in t
    let (head, head_err) = adaptive_quad_aux(integrand, &[0.0, m], 0.5 * tol, DEFAULT_MAX_SUBDIVISIONS);
    let tail_integrand = |t: f64| -> (f64, f64) {
        let u = 1.0 - t;
        if !(u > 0.0) {
            return (0.0, 0.0);
        }
        let y = m * (t / u).exp();
        if !y.is_finite() {
            return (0.0, 0.0);
        }
        let (v, e) = integrand(y);
        if v == 0.0 && e == 0.0 {
            return (0.0, 0.0);
        }
        let jac = y / (u * u);
        (v * jac, e * jac)
    };
    let (tail, tail_err) =
        adaptive_quad_aux(tail_integrand, &[0.0, 1.0], 0.5 * tol, DEFAULT_MAX_SUBDIVISIONS);

    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    let mut warnings = warnings.into_inner();
    warnings.retain(|w| *w != Warning::NotConverged);
    if !(head.converged && tail.converged) {
        warnings.push(Warning::NotConverged);
    }
    Ok(EvalResult {
        value: head.value + tail.value,
        method: Method::Integral,
        error_estimate: head.abs_error_estimate + tail.abs_error_estimate + head_err + tail_err,
        warnings,
        n_terms: None,
    })
}

/// Fractionally stable density at `x` to absolute tolerance `tol`.
///
/// `beta = 1` is rejected (the inner law is a point mass and `q = g`), as is
/// `x = 0` for `alpha <= 1`, where the mixing moment `E[Y^(beta/alpha)]` is infinite.
pub fn frac_pdf(x: f64, fp: &FracParams, tol: f64) -> Result<EvalResult> {
    frac_pdf_impl(x, fp, tol, None)
}

/// [`frac_pdf`] together with a record of which route each inner evaluation took.
pub fn frac_pdf_instrumented(x: f64, fp: &FracParams, tol: f64) -> Result<(EvalResult, InnerStats)> {
    let stats = RefCell::new(InnerStats::default());
    let r = frac_pdf_impl(x, fp, tol, Some(&stats))?;
    Ok((r, stats.into_inner()))
}

/// Pointwise [`frac_pdf`] over `xs` in parallel; output order matches input.
pub fn frac_pdf_grid(xs: &[f64], fp: &FracParams, tol: f64) -> Vec<Result<EvalResult>> {
    xs.par_iter().map(|&x| frac_pdf(x, fp, tol)).collect()
}

/// `sum_i ln q(x_i)`; `-inf` if some density value is zero.
pub fn log_likelihood(data: &[f64], fp: &FracParams, tol: f64) -> Result<f64> {
    if data.is_empty() {
        return Err(StableError::EmptyData);
    }
    let values: Vec<Result<EvalResult>> = frac_pdf_grid(data, fp, tol);
    let mut total = 0.0;
    for r in values {
        let v = r?.value;
        if !(v > 0.0) {
            return Ok(f64::NEG_INFINITY);
        }
        total += v.ln();
    }
    Ok(total)
}
