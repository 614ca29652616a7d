//! Public density and distribution-function entry points.
//!
//! Each call picks one of three routes: an exact closed form, the power
//! series when its certified error bound meets the requested accuracy, or the
//! integral representation. The result records which route was taken, an
//! error estimate and any warnings.

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::closed::{
    cdf_alpha1, cdf_at_zero, closed_form_cdf, closed_form_pdf, density_alpha1, density_at_zero,
};
use crate::error::{Result, StableError};
use crate::integral::{integral_cdf, integral_pdf, IntegralEval};
use crate::params::{standardize, EvalOptions, MethodChoice, StableParams};
use crate::series::{
    cdf_series, choose_terms_certified, choose_terms_certified_cdf, pdf_series, SeriesEval, TermChoice,
};

/// Largest accepted floating-point error of a series value, as a share of epsilon.
const ROUNDING_SHARE: f64 = 0.5;

/// Relative error attributed to closed-form evaluations.
const CLOSED_FORM_REL_ERROR: f64 = 8.0 * f64::EPSILON;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    ClosedForm,
    Series,
    Integral,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::ClosedForm => "closed_form",
            Method::Series => "series",
            Method::Integral => "integral",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Warning {
    /// `0 < |alpha - 1| < 5e-3` on the integral route.
    NearAlphaOne,
    /// The requested accuracy was not certified.
    NotConverged,
    /// A distribution-function value was clamped into `[0, 1]`.
    Clamped,
    /// Best-effort series at optimal truncation where the quadrature failed.
    BelowIntegralReliability,
}

impl Warning {
    pub fn as_str(&self) -> &'static str {
        match self {
            Warning::NearAlphaOne => "near_alpha_one",
            Warning::NotConverged => "not_converged",
            Warning::Clamped => "clamped",
            Warning::BelowIntegralReliability => "below_integral_reliability",
        }
    }
}

impl fmt::Display for Warning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EvalResult {
    pub value: f64,
    pub method: Method,
    /// Certified truncation bound on the series route, the quadrature
    /// estimate on the integral route.
    pub error_estimate: f64,
    pub warnings: Vec<Warning>,
    /// Number of series terms, when the series was used.
    pub n_terms: Option<usize>,
}

impl EvalResult {
    fn closed(value: f64) -> Self {
        Self {
            value,
            method: Method::ClosedForm,
            error_estimate: CLOSED_FORM_REL_ERROR * value.abs(),
            warnings: Vec::new(),
            n_terms: None,
        }
    }

    fn series(s: &SeriesEval, scale: f64) -> Self {
        Self {
            value: s.value * scale,
            method: Method::Series,
            error_estimate: s.error_bound * scale,
            warnings: Vec::new(),
            n_terms: Some(s.n_terms),
        }
    }

    fn integral(r: &IntegralEval, scale: f64) -> Self {
        let mut warnings = Vec::new();
        if r.near_alpha_one {
            warnings.push(Warning::NearAlphaOne);
        }
        if r.clamped {
            warnings.push(Warning::Clamped);
        }
        Self {
            value: r.quad.value * scale,
            method: Method::Integral,
            error_estimate: r.quad.abs_error_estimate * scale,
            warnings,
            n_terms: None,
        }
    }

    pub fn has_warnings(&self) -> bool {
        !self.warnings.is_empty()
    }

    fn warn(&mut self, w: Warning) {
        if !self.warnings.contains(&w) {
            self.warnings.push(w);
        }
    }
}

/// The pieces that differ between density and distribution function.
struct Side {
    at_zero: fn(&StableParams) -> Result<f64>,
    alpha1: fn(f64, f64) -> Result<f64>,
    fast_path: fn(f64, &StableParams) -> Option<f64>,
    choose: fn(f64, f64, f64, f64, usize) -> TermChoice,
    series: fn(f64, f64, f64, usize) -> Result<SeriesEval>,
    integral: fn(f64, f64, f64, f64) -> Result<IntegralEval>,
    /// Densities carry the factor `lambda^(-1/alpha)`, distribution functions do not.
    scaled: bool,
}

const PDF_SIDE: Side = Side {
    at_zero: |p| density_at_zero(p.alpha, p.theta),
    alpha1: density_alpha1,
    fast_path: closed_form_pdf,
    choose: choose_terms_certified,
    series: pdf_series,
    integral: integral_pdf,
    scaled: true,
};

const CDF_SIDE: Side = Side {
    at_zero: |p| Ok(cdf_at_zero(p.theta)),
    alpha1: cdf_alpha1,
    fast_path: closed_form_cdf,
    choose: choose_terms_certified_cdf,
    series: cdf_series,
    integral: integral_cdf,
    scaled: false,
};

fn evaluate(side: &Side, x: f64, params: &StableParams, opts: &EvalOptions) -> Result<EvalResult> {
    params.validate()?;
    opts.validate()?;
    if !x.is_finite() {
        return Err(StableError::NonFinite(x));
    }
    let (alpha, theta) = (params.alpha, params.theta);
    let (xs, s) = standardize(x, params);
    let scale = if side.scaled { s } else { 1.0 };
    let eps = opts.epsilon_for(alpha);
    let eps_std = eps / scale;

    let closed = || -> Result<Option<f64>> {
        if xs == 0.0 {
            return Ok(Some((side.at_zero)(params)? * scale));
        }
        if alpha == 1.0 {
            return Ok(Some((side.alpha1)(xs, theta)? * scale));
        }
        Ok((side.fast_path)(x, params))
    };

    // (result, rounding estimate already scaled)
    let run_series = |n: usize| -> Result<(EvalResult, f64)> {
        let s = (side.series)(xs, alpha, theta, n)?;
        Ok((EvalResult::series(&s, scale), s.rounding_error * scale))
    };

    let quad_tol = opts.quad_tol.min(eps) / scale;

    match opts.method {
        MethodChoice::ClosedForm => match closed()? {
            Some(v) => Ok(EvalResult::closed(v)),
            None => Err(StableError::Domain(format!(
                "no closed form for alpha = {alpha}, theta = {theta} at x = {x}"
            ))),
        },
        MethodChoice::Series => {
            let choice = (side.choose)(xs, alpha, theta, eps_std, opts.n_max);
            let (mut r, rounding) = run_series(choice.n_terms())?;
            if !(r.error_estimate <= eps && rounding <= ROUNDING_SHARE * eps) {
                r.warn(Warning::NotConverged);
            }
            Ok(r)
        }
        MethodChoice::Integral => {
            let q = (side.integral)(xs, alpha, theta, quad_tol)?;
            let mut r = EvalResult::integral(&q, scale);
            if !q.quad.converged && !(r.error_estimate <= eps) {
                r.warn(Warning::NotConverged);
            }
            Ok(r)
        }
        MethodChoice::Auto => {
            if let Some(v) = closed()? {
                return Ok(EvalResult::closed(v));
            }
            let choice = (side.choose)(xs, alpha, theta, eps_std, opts.n_max);
            let series = if let TermChoice::Achieved(n) = choice {
                let (r, rounding) = run_series(n)?;
                if r.error_estimate <= eps && rounding <= ROUNDING_SHARE * eps {
                    return Ok(r);
                }
                Some(r)
            } else {
                None
            };
            let q = (side.integral)(xs, alpha, theta, quad_tol)?;
            let integral = EvalResult::integral(&q, scale);
            if q.quad.converged || integral.error_estimate <= eps {
                return Ok(integral);
            }
            // Neither route certified the target: keep the smaller error estimate.
            let series = match series {
                Some(r) => r,
                None => run_series(choice.n_terms())?.0,
            };
            if series.error_estimate < integral.error_estimate {
                let mut r = series;
                r.warn(if alpha < 1.0 {
                    Warning::BelowIntegralReliability
                } else {
                    Warning::NotConverged
                });
                Ok(r)
            } else {
                let mut r = integral;
                r.warn(Warning::NotConverged);
                Ok(r)
            }
        }
    }
}

/// Density of the strictly stable law at `x`.
pub fn pdf(x: f64, params: &StableParams, opts: &EvalOptions) -> Result<EvalResult> {
    evaluate(&PDF_SIDE, x, params, opts)
}

/// Distribution function of the strictly stable law at `x`, clamped to `[0, 1]`.
pub fn cdf(x: f64, params: &StableParams, opts: &EvalOptions) -> Result<EvalResult> {
    let mut r = evaluate(&CDF_SIDE, x, params, opts)?;
    let clamped = r.value.clamp(0.0, 1.0);
    if clamped != r.value {
        r.value = clamped;
        r.warn(Warning::Clamped);
    }
    Ok(r)
}

/// Pointwise [`pdf`] over `xs`, evaluated in parallel; output order matches input.
pub fn pdf_grid(xs: &[f64], params: &StableParams, opts: &EvalOptions) -> Vec<Result<EvalResult>> {
    xs.par_iter().map(|&x| pdf(x, params, opts)).collect()
}

/// Pointwise [`cdf`] over `xs`, evaluated in parallel; output order matches input.
pub fn cdf_grid(xs: &[f64], params: &StableParams, opts: &EvalOptions) -> Vec<Result<EvalResult>> {
    xs.par_iter().map(|&x| cdf(x, params, opts)).collect()
}
