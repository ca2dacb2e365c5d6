use thiserror::Error;

/// Errors produced by series arithmetic, the equation language and the Bratu solver.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("series order mismatch: {left} vs {right}; align truncation orders first")]
    OrderMismatch { left: usize, right: usize },

    #[error("derivative order {m} exceeds series order {order}")]
    DerivativeTooHigh { m: usize, order: usize },

    #[error("invalid series: {0}")]
    InvalidSeries(String),

    #[error("0^0 undefined")]
    ZeroToZero,

    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("implicit form at {pos}: right-hand side uses D(u,{found}) but the equation isolates D(u,{lhs})")]
    ImplicitForm {
        pos: usize,
        found: usize,
        lhs: usize,
    },

    #[error("unsupported operator at {pos}: {found}")]
    Unsupported { pos: usize, found: String },

    #[error(
        "causality violation: right-hand side reads U(k+{offset}) but only U(k+{limit}) is known"
    )]
    Causality { offset: usize, limit: usize },

    #[error("pow of zero-constant subexpression at order {k}")]
    PowOfZeroConstant { k: usize },

    #[error("non-finite coefficient produced at order {k}")]
    NonFinite { k: usize },

    #[error("expected {expected} initial values, got {got}")]
    InitialConditions { expected: usize, got: usize },

    #[error("no sign change found for gamma in [0, {gamma_max}] ({rejected} rejected: series not converged at x = 1)")]
    NoSignChange { gamma_max: f64, rejected: usize },

    #[error("no analytic solution: theta = sqrt(2 lambda) cosh(theta/4) has no root for lambda = {lambda}")]
    NoAnalyticRoot { lambda: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
