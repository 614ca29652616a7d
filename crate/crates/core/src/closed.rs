//! Elementary-function special cases: values at `x = 0`, the `alpha = 1`
//! family, the Gaussian (`alpha = 2`) and the one-sided Lévy laws
//! (`alpha = 1/2`, `theta = ±1`).

use std::f64::consts::{FRAC_1_PI, PI};

use crate::error::{Result, StableError};
use crate::params::{standardize, validate_alpha_theta, StableParams};
use crate::special::{cos_half_pi, gamma, ln_gamma, sin_half_pi};

/// `1 / (2 sqrt(pi))`
const INV_TWO_SQRT_PI: f64 = 0.282_094_791_773_878_14;

/// Density of the standard law at the origin, `cos(pi theta / 2) Γ(1/alpha + 1) / pi`.
pub fn density_at_zero(alpha: f64, theta: f64) -> Result<f64> {
    validate_alpha_theta(alpha, theta)?;
    let c = cos_half_pi(theta);
    if c == 0.0 {
        return Ok(0.0);
    }
    let s = 1.0 / alpha + 1.0;
    let g = gamma(s);
    if g.is_finite() {
        Ok(c * g * FRAC_1_PI)
    } else {
        Ok((c.ln() + ln_gamma(s) - PI.ln()).exp())
    }
}

/// `G(0) = (1 - theta) / 2` for every admissible law.
pub fn cdf_at_zero(theta: f64) -> f64 {
    0.5 * (1.0 - theta)
}

fn check_alpha1(theta: f64) -> Result<()> {
    if theta.abs() >= 1.0 {
        Err(StableError::Degenerate)
    } else {
        Ok(())
    }
}

/// Density of the standard `alpha = 1` law (asymmetric Cauchy).
pub fn density_alpha1(x: f64, theta: f64) -> Result<f64> {
    check_alpha1(theta)?;
    let s = sin_half_pi(theta);
    let c = cos_half_pi(theta);
    // x^2 - 2 x s + 1 = (x - s)^2 + c^2
    let d = x - s;
    Ok(c / (PI * (d * d + c * c)))
}

/// Distribution function of the standard `alpha = 1` law.
pub fn cdf_alpha1(x: f64, theta: f64) -> Result<f64> {
    check_alpha1(theta)?;
    let s = sin_half_pi(theta);
    let c = cos_half_pi(theta);
    Ok(0.5 + ((x - s) / c).atan() * FRAC_1_PI)
}

/// Gaussian density with characteristic function `exp(-t^2)` (variance 2).
pub fn gaussian_pdf(x: f64) -> f64 {
    (-0.25 * x * x).exp() * INV_TWO_SQRT_PI
}

pub fn gaussian_cdf(x: f64) -> f64 {
    0.5 * libm::erfc(-0.5 * x)
}

/// One-sided Lévy density (`alpha = 1/2`, `theta = 1`), supported on `x > 0`.
pub fn levy_pdf(x: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    x.powf(-1.5) * (-0.25 / x).exp() * INV_TWO_SQRT_PI
}

pub fn levy_cdf(x: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    libm::erfc(0.5 / x.sqrt())
}

/// Closed-form density if one exists for these parameters (`alpha = 2`,
/// `alpha = 1`, or `alpha = 1/2` with `|theta| = 1`); `None` otherwise.
pub fn closed_form_pdf(x: f64, params: &StableParams) -> Option<f64> {
    let (xs, scale) = standardize(x, params);
    let (alpha, theta) = (params.alpha, params.theta);
    let standard = if alpha == 2.0 {
        gaussian_pdf(xs)
    } else if alpha == 1.0 {
        density_alpha1(xs, theta).ok()?
    } else if alpha == 0.5 && theta == 1.0 {
        levy_pdf(xs)
    } else if alpha == 0.5 && theta == -1.0 {
        levy_pdf(-xs)
    } else {
        return None;
    };
    Some(standard * scale)
}

/// Closed-form distribution function counterpart of [`closed_form_pdf`].
pub fn closed_form_cdf(x: f64, params: &StableParams) -> Option<f64> {
    let (xs, _) = standardize(x, params);
    let (alpha, theta) = (params.alpha, params.theta);
    if alpha == 2.0 {
        Some(gaussian_cdf(xs))
    } else if alpha == 1.0 {
        cdf_alpha1(xs, theta).ok()
    } else if alpha == 0.5 && theta == 1.0 {
        Some(levy_cdf(xs))
    } else if alpha == 0.5 && theta == -1.0 {
        Some(1.0 - levy_cdf(-xs))
    } else {
        None
    }
}
