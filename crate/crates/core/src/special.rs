//! Gamma-function and trigonometric helpers shared by the series and
//! closed-form code.

use std::f64::consts::FRAC_PI_2;

/// `ln |Γ(x)|` together with the sign of `Γ(x)`.
pub fn ln_gamma_signed(x: f64) -> (f64, i32) {
    libm::lgamma_r(x)
}

/// `ln Γ(x)` for `x > 0`.
#[inline]
pub fn ln_gamma(x: f64) -> f64 {
    debug_assert!(x > 0.0);
    libm::lgamma_r(x).0
}

/// `Γ(x)` for `x > 0`. Uses the direct evaluation while it is representable
/// and falls back to `exp(ln Γ)` (which then saturates to `+∞`).
pub fn gamma(x: f64) -> f64 {
    if x < 171.0 {
        libm::tgamma(x)
    } else {
        ln_gamma(x).exp()
    }
}

/// `sin(π r / 2)` with the argument reduced modulo 4 before scaling, so that
/// integer `r` yields exact zeros and exact `±1`.
pub fn sin_half_pi(r: f64) -> f64 {
    let r = r.rem_euclid(4.0);
    if r <= 1.0 {
        (FRAC_PI_2 * r).sin()
    } else if r <= 2.0 {
        (FRAC_PI_2 * (2.0 - r)).sin()
    } else if r <= 3.0 {
        -(FRAC_PI_2 * (r - 2.0)).sin()
    } else {
        -(FRAC_PI_2 * (4.0 - r)).sin()
    }
}

/// `cos(π r / 2)`, exact at integer `r`.
#[inline]
pub fn cos_half_pi(r: f64) -> f64 {
    sin_half_pi(1.0 - r)
}

/// Neumaier-compensated running sum.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    carry: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, value: f64) {
        let t = self.sum + value;
        if self.sum.abs() >= value.abs() {
            self.carry += (self.sum - t) + value;
        } else {
            self.carry += (value - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn total(&self) -> f64 {
        self.sum + self.carry
    }
}
