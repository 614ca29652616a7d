//! Probability density and distribution function of strictly stable laws in
//! Zolotarev's parameterization "C",
//!
//! ```text
//! E exp(i t X) = exp{-lambda |t|^alpha exp(-i pi alpha theta sign(t) / 2)},
//! 0 < alpha <= 2, |theta| <= min(1, 2/alpha - 1), lambda > 0,
//! ```
//!
//! evaluated by a hybrid of closed forms, power series about `x = 0` with
//! certified remainder bounds, and the stationary-phase integral
//! representation. Fractionally stable densities are obtained from a Mellin
//! convolution on top of the same evaluator.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod closed;
pub mod error;
pub mod evaluator;
pub mod fracstable;
pub mod integral;
pub mod params;
pub mod quad;
pub mod series;
pub mod special;

pub use closed::{
    cdf_alpha1, cdf_at_zero, closed_form_cdf, closed_form_pdf, density_alpha1, density_at_zero,
};
pub use error::{Param, Result, StableError};
pub use evaluator::{cdf, cdf_grid, pdf, pdf_grid, EvalResult, Method, Warning};
pub use fracstable::{frac_pdf, frac_pdf_grid, log_likelihood, FracParams};
pub use integral::{integral_cdf, integral_pdf, locate_peak, IntegralEval};
pub use params::{standardize, theta_max, EvalOptions, MethodChoice, StableParams};
pub use quad::{adaptive_quad, QuadResult};
pub use series::{
    cdf_error_bound, cdf_series, choose_terms, choose_terms_cdf, choose_terms_certified,
    choose_terms_certified_cdf, pdf_error_bound, pdf_remainder_bound, pdf_series, regime, threshold_x_cdf,
    threshold_x_pdf, zolotarev_bound, Regime, SeriesEval, TermChoice,
};
