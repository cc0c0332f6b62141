use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("gamma function pole at x = {0}")]
    Pole(f64),

    #[error("{what}: no convergence after {terms} terms")]
    Convergence { what: &'static str, terms: usize },

    #[error("parameter pole: {0}")]
    ParameterPole(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("quotient {0} has a vanishing denominator")]
    QuotientPole(&'static str),

    #[error("kappa = {kappa} lies within 1e-7 of the pole at {pole}; evaluate through closedform")]
    PoleDispatch { kappa: f64, pole: f64 },

    #[error("point on or too close to the boundary: {0}")]
    BoundaryDivergence(String),

    #[error("kappa = {kappa}: no printed closed form for {what}")]
    UnsupportedBlock { kappa: f64, what: &'static str },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("degenerate denominator in {0}")]
    DegenerateDenominator(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
