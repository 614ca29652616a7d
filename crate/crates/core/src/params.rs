//! Distribution parameters, evaluation options and the scaling to the
//! standard (`lambda = 1`) law.

use serde::{Deserialize, Serialize};

use crate::error::{Param, Result, StableError};

/// Relative slack allowed on `|theta| <= min(1, 2/alpha - 1)` so that a
/// boundary value typed as a decimal (e.g. `1/3`) is not rejected by one ulp.
const THETA_SLACK: f64 = 1e-14;

/// Largest admissible `|theta|` for the given `alpha`.
pub fn theta_max(alpha: f64) -> f64 {
    (2.0 / alpha - 1.0).min(1.0)
}

/// Parameters `(alpha, theta, lambda)` of a strictly stable law with
/// characteristic function `exp{-lambda |t|^alpha exp(-i pi alpha theta sign(t) / 2)}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StableParams {
    pub alpha: f64,
    pub theta: f64,
    pub lambda: f64,
}

impl StableParams {
    /// Builds and validates a parameter set.
    pub fn new(alpha: f64, theta: f64, lambda: f64) -> Result<Self> {
        let p = Self { alpha, theta, lambda };
        p.validate()?;
        Ok(p)
    }

    /// Standard law (`lambda = 1`).
    pub fn standard(alpha: f64, theta: f64) -> Result<Self> {
        Self::new(alpha, theta, 1.0)
    }

    /// Checks every admissibility invariant; `alpha = 1, |theta| = 1` is
    /// rejected as degenerate.
    pub fn validate(&self) -> Result<()> {
        validate_alpha_theta(self.alpha, self.theta)?;
        if !(self.lambda > 0.0) || !self.lambda.is_finite() {
            return Err(StableError::OutOfRange {
                param: Param::Lambda,
                message: format!("lambda = {} must satisfy lambda > 0", self.lambda),
            });
        }
        Ok(())
    }

    /// Degenerate point of the family (no density exists).
    pub fn is_degenerate(&self) -> bool {
        self.alpha == 1.0 && self.theta.abs() == 1.0
    }

    /// Same law with the sign of the asymmetry flipped (law of `-X`).
    pub fn reflected(&self) -> Self {
        Self {
            theta: -self.theta,
            ..*self
        }
    }
}

/// Validation of `(alpha, theta)` alone.
pub fn validate_alpha_theta(alpha: f64, theta: f64) -> Result<()> {
    if !(alpha > 0.0 && alpha <= 2.0) {
        return Err(StableError::OutOfRange {
            param: Param::Alpha,
            message: format!("alpha = {alpha} must satisfy 0 < alpha <= 2"),
        });
    }
    let bound = theta_max(alpha);
    if !theta.is_finite() || theta.abs() > bound * (1.0 + THETA_SLACK) {
        return Err(StableError::OutOfRange {
            param: Param::Theta,
            message: format!("theta = {theta} must satisfy |theta| <= min(1, 2/alpha - 1) = {bound}"),
        });
    }
    if alpha == 1.0 && theta.abs() == 1.0 {
        return Err(StableError::Degenerate);
    }
    Ok(())
}

/// Maps `x` to the standard law: returns `(x * lambda^(-1/alpha), lambda^(-1/alpha))`.
///
/// Since `lambda |t|^alpha = |lambda^(1/alpha) t|^alpha`,
/// `g(x; lambda) = lambda^(-1/alpha) g(x lambda^(-1/alpha); 1)` and
/// `G(x; lambda) = G(x lambda^(-1/alpha); 1)`.
pub fn standardize(x: f64, params: &StableParams) -> (f64, f64) {
    if params.lambda == 1.0 {
        return (x, 1.0);
    }
    let scale = params.lambda.powf(-1.0 / params.alpha);
    (x * scale, scale)
}

/// Evaluation route requested by the caller.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MethodChoice {
    #[default]
    Auto,
    Series,
    Integral,
    ClosedForm,
}

impl std::str::FromStr for MethodChoice {
    type Err = StableError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(Self::Auto),
            "series" => Ok(Self::Series),
            "integral" => Ok(Self::Integral),
            "closed_form" | "closed-form" => Ok(Self::ClosedForm),
            other => Err(StableError::InvalidOption(format!("unknown method '{other}'"))),
        }
    }
}

/// Accuracy and routing knobs for the evaluator.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvalOptions {
    /// Target absolute accuracy. `None` picks `1e-10` for `alpha >= 1` and
    /// `1e-8` for `alpha < 1`.
    pub epsilon: Option<f64>,
    /// Maximum number of series terms.
    pub n_max: usize,
    /// Absolute tolerance handed to the quadrature.
    pub quad_tol: f64,
    pub method: MethodChoice,
}

impl Default for EvalOptions {
    fn default() -> Self {
        Self {
            epsilon: None,
            n_max: 500,
            quad_tol: 1e-12,
            method: MethodChoice::Auto,
        }
    }
}

impl EvalOptions {
    pub fn with_epsilon(mut self, epsilon: f64) -> Self {
        self.epsilon = Some(epsilon);
        self
    }

    pub fn with_method(mut self, method: MethodChoice) -> Self {
        self.method = method;
        self
    }

    pub fn with_quad_tol(mut self, quad_tol: f64) -> Self {
        self.quad_tol = quad_tol;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if let Some(eps) = self.epsilon {
            if !(eps > 0.0) {
                return Err(StableError::InvalidOption(format!("epsilon = {eps} must be > 0")));
            }
        }
        if self.n_max < 1 {
            return Err(StableError::InvalidOption("n_max must be >= 1".into()));
        }
        if !(self.quad_tol > 0.0) {
            return Err(StableError::InvalidOption(format!(
                "quad_tol = {} must be > 0",
                self.quad_tol
            )));
        }
        Ok(())
    }

    /// Effective accuracy target for a given `alpha`.
    pub fn epsilon_for(&self, alpha: f64) -> f64 {
        self.epsilon.unwrap_or(if alpha < 1.0 { 1e-8 } else { 1e-10 })
    }
}
