//! Symmetric contest micro-foundation for campaign informativeness.
//!
//! Primary informativeness is not assumed — it can be earned. Each of `n`
//! contestants buys signal effort `q_i` at quadratic cost, and wins a prize
//! worth `n` with a contest success function proportional to `q_i^r`. The
//! symmetric equilibrium effort has the closed form `q* = sqrt(r(n−1)/(a·n))`,
//! which grows with the field size — the micro-foundation for information
//! schedules whose primaries sharpen as more challengers enter.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Contest primitives.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TullockParams {
    /// Number of contestants (at least 2).
    pub n: u32,
    /// Contest decisiveness exponent, in (0, 1] for a well-behaved optimum.
    pub r: f64,
    /// Quadratic effort cost coefficient (> 0).
    pub a: f64,
}

impl TullockParams {
    /// Builds and validates contest parameters.
    pub fn new(n: u32, r: f64, a: f64) -> Result<Self> {
        let params = Self { n, r, a };
        params.validate()?;
        Ok(params)
    }

    /// Checks the admissible ranges.
    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::Domain(format!(
                "a contest needs at least 2 contestants, got {}",
                self.n
            )));
        }
        if !self.r.is_finite() || self.r <= 0.0 || self.r > 1.0 {
            return Err(Error::InvalidParameter {
                name: "r",
                value: self.r,
                constraint: "0 < r <= 1",
            });
        }
        if !self.a.is_finite() || self.a <= 0.0 {
            return Err(Error::InvalidParameter {
                name: "a",
                value: self.a,
                constraint: "finite and > 0",
            });
        }
        Ok(())
    }
}

/// Symmetric equilibrium effort: q* = sqrt(r(n−1)/(a·n)).
pub fn tullock_equilibrium(params: &TullockParams) -> Result<f64> {
    params.validate()?;
    let n = f64::from(params.n);
    Ok((params.r * (n - 1.0) / (params.a * n)).sqrt())
}

/// A contestant's payoff when exerting `qi` against `n−1` rivals each at
/// `q_others`: prize `n` times the win probability, minus the quadratic cost.
pub fn tullock_payoff(params: &TullockParams, qi: f64, q_others: f64) -> f64 {
    let n = f64::from(params.n);
    let rivals = (n - 1.0) * q_others.powf(params.r);
    let own = qi.powf(params.r);
    n * own / (own + rivals) - 0.5 * params.a * qi * qi
}

/// Marginal payoff of effort at `(qi, q_others)`: zero at the symmetric
/// equilibrium, positive below it, negative above it.
pub fn tullock_foc_residual(params: &TullockParams, qi: f64, q_others: f64) -> f64 {
    let n = f64::from(params.n);
    let rivals = (n - 1.0) * q_others.powf(params.r);
    let own = qi.powf(params.r);
    let denom = own + rivals;
    n * params.r * qi.powf(params.r - 1.0) * rivals / (denom * denom) - params.a * qi
}

// ----------------------------------------------------------------------------
