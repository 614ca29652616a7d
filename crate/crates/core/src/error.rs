use thiserror::Error;

/// Which parameter violated its admissible range.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Param {
    Alpha,
    Theta,
    Lambda,
    Beta,
}

impl std::fmt::Display for Param {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            Param::Alpha => "alpha",
            Param::Theta => "theta",
            Param::Lambda => "lambda",
            Param::Beta => "beta",
        };
        f.write_str(name)
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum StableError {
    #[error("{param} out of range: {message}")]
    OutOfRange { param: Param, message: String },

    #[error("degenerate law: alpha = 1 with |theta| = 1 has no density")]
    Degenerate,

    #[error("inner one-sided law is degenerate for beta = 1; use pdf(x, alpha, theta, lambda) directly")]
    DegenerateInner,

    #[error("integral representation requires alpha != 1; use the closed form")]
    AlphaOne,

    #[error("integral representation requires x != 0; use the value at zero")]
    AtZero,

    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid option: {0}")]
    InvalidOption(String),

    #[error("fractionally stable density diverges at x = 0 for alpha <= 1")]
    DivergentAtZero,

    #[error("empty data set")]
    EmptyData,

    #[error("non-finite input: {0}")]
    NonFinite(f64),
}

pub type Result<T> = std::result::Result<T, StableError>;
