//! Error type shared across the solver library.

use thiserror::Error;

/// Everything that can go wrong inside the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A model or run parameter failed validation.
    #[error("invalid parameter {name}={value}: must satisfy {constraint}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        constraint: &'static str,
    },

    /// An input was outside an operation's domain (non-finite, wrong scenario, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// An information schedule violated one of its invariants.
    #[error("invalid schedule: {0}")]
    Schedule(String),

    /// Doubling the node count moved the integral by more than the tolerance.
    #[error(
        "quadrature did not converge: doubling {nodes} nodes moved the result by {delta:.3e} \
         (tolerance {tolerance:.3e})"
    )]
    QuadratureNoConvergence {
        nodes: usize,
        delta: f64,
        tolerance: f64,
    },

    /// Bracket expansion ran out of room without finding a sign change.
    #[error(
        "root bracketing failed: no sign change within half-width {halfwidth:.3e} \
         (residuals f(lo)={f_lo:.3e}, f(hi)={f_hi:.3e})"
    )]
    BracketExpansionFailed { halfwidth: f64, f_lo: f64, f_hi: f64 },

    /// Bisection hit the iteration cap before reaching the residual tolerance.
    #[error("solver stalled after {iterations} iterations with residual {residual:.3e}")]
    SolverStalled { iterations: u32, residual: f64 },
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
