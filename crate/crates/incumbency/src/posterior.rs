//! Bayesian quality updating from noisy campaign signals.
//!
//! Every candidate's quality is drawn from a normal prior; voters observe
//! normal signals about it and form conjugate posteriors. Three information
//! environments appear in the model:
//!
//! * **Primary stage** — left-side voters see one signal per challenger with
//!   noise variance `sigma_s2`.
//! * **General election** — all voters see one signal per contender. Noise is
//!   `beta * sigma_s2` for the incumbent and for a challenger read by
//!   same-side voters, and `lambda * beta * sigma_s2` for a challenger read
//!   by opposite-side voters.
//! * **Two signals** — left-side voters carry both their primary signal and
//!   the general-election signal about the surviving challenger, and combine
//!   them by precision weighting.
//!
//! Weights are reported explicitly so the variance algebra downstream (vote
//! shares, threshold solving) can reuse them.

use serde::{Deserialize, Serialize};

use crate::params::{Candidate, ModelParams, VoterIdeology};

/// How a voter reads a contender in the general election.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum GeneralRole {
    /// The incumbent, covered with noise variance `beta * sigma_s2`.
    Incumbent,
    /// A challenger read by voters on the challenger's own side.
    ChallengerAligned,
    /// A challenger read by voters on the incumbent's side
    /// (noise variance `lambda * beta * sigma_s2`).
    ChallengerCrossover,
}

/// Linear posterior-mean weights on the prior mean and the observed signals.
///
/// The posterior mean is `prior * prior_mean + general * s_g + primary * s_p`
/// with whichever signal terms the environment provides; weights always sum
/// to one.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PosteriorWeights {
    /// Weight on the prior mean.
    pub prior: f64,
    /// Weight on the primary-stage signal (zero when unavailable).
    pub primary: f64,
    /// Weight on the general-election signal (zero when unavailable).
    pub general: f64,
}

impl PosteriorWeights {
    /// Weights for a voter holding only a primary signal.
    pub fn primary_only(params: &ModelParams) -> Self {
        let w = params.sigma_q2 / (params.sigma_q2 + params.sigma_s2);
        Self { prior: 1.0 - w, primary: w, general: 0.0 }
    }

    /// Weights for a voter holding only a general-election signal about a
    /// contender in the given role.
    pub fn general_only(params: &ModelParams, role: GeneralRole) -> Self {
        let noise = general_noise_variance(params, role);
        let w = params.sigma_q2 / (params.sigma_q2 + noise);
        Self { prior: 1.0 - w, primary: 0.0, general: w }
    }

    /// Precision-weighted combination of a primary signal (noise `sigma_s2`)
    /// and an aligned general-election signal (noise `beta * sigma_s2`).
    pub fn two_signal(params: &ModelParams) -> Self {
        let prior_precision = 1.0 / params.sigma_q2;
        let general_precision = 1.0 / (params.beta * params.sigma_s2);
        let primary_precision = 1.0 / params.sigma_s2;
        let total = prior_precision + general_precision + primary_precision;
        Self {
            prior: prior_precision / total,
            primary: primary_precision / total,
            general: general_precision / total,
        }
    }
}

/// Signal noise variance for each general-election role.
pub fn general_noise_variance(params: &ModelParams, role: GeneralRole) -> f64 {
    match role {
        GeneralRole::Incumbent | GeneralRole::ChallengerAligned => params.beta * params.sigma_s2,
        GeneralRole::ChallengerCrossover => params.lambda * params.beta * params.sigma_s2,
    }
}

/// A voter's payoff from a candidate: perceived quality, minus the quadratic
/// ideological distance cost, plus the valence shock if the candidate is the
/// incumbent.
pub fn valuation(
    params: &ModelParams,
    voter: VoterIdeology,
    candidate: Candidate,
    perceived_q: f64,
    eps: f64,
) -> f64 {
    let distance = voter.value() - candidate.position();
    let incumbency = if candidate == Candidate::Incumbent { eps } else { 0.0 };
    perceived_q - params.t * distance * distance + incumbency
}

/// Posterior mean quality of a challenger after its primary signal alone.
/// Challengers have prior mean zero, so only the signal term survives.
pub fn posterior_mean_primary(params: &ModelParams, s_p: f64) -> f64 {
    PosteriorWeights::primary_only(params).primary * s_p
}

/// Posterior mean quality after a single general-election signal. The
/// incumbent's prior mean is `q`; challengers' is zero.
pub fn posterior_mean_general(params: &ModelParams, role: GeneralRole, s_g: f64) -> f64 {
    let w = PosteriorWeights::general_only(params, role);
    let prior_mean = match role {
        GeneralRole::Incumbent => params.q,
        GeneralRole::ChallengerAligned | GeneralRole::ChallengerCrossover => 0.0,
    };
    w.prior * prior_mean + w.general * s_g
}

/// Posterior mean quality of the surviving challenger for a left-side voter
/// holding both signals (challenger prior mean is zero).
pub fn posterior_mean_two_signal(params: &ModelParams, s_g: f64, s_p: f64) -> f64 {
    let w = PosteriorWeights::two_signal(params);
    w.general * s_g + w.primary * s_p
}

// ----------------------------------------------------------------------------
