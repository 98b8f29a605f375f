//! Incumbent vote shares by electorate segment.
//!
//! In the general election each voter compares the incumbent against the
//! surviving challenger. Quadratic distance costs cancel to a term linear in
//! the voter's position, so the incumbent wins voter `x` exactly when a
//! normal random variable (the perceived-quality gap) exceeds
//! `t(1 - 2x) - eps - q`. The incumbent's mass on a segment is therefore an
//! integral of `1 - Φ(z(x))` with `z` linear in `x` — smooth, and ideal for
//! Gauss–Legendre.
//!
//! The standard deviation of the quality gap differs by segment and scenario:
//! left-side voters read the challenger through their own-side coverage (and,
//! with two challengers, also carry a primary signal about the winner), while
//! right-side voters read the challenger through noisier crossover coverage.
//! With two signals in play there are two defensible ways to aggregate the
//! winner's perceived-quality variance, captured by [`VarianceMode`].

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::normal::phi;
use crate::params::ModelParams;
use crate::posterior::PosteriorWeights;
use crate::quad::{GaussLegendre, QuadratureSpec};

/// Beyond this |z| the integrand is 0 or 1 to within 1e-16, so segments whose
/// whole range lies past it are resolved without quadrature.
const Z_SATURATE: f64 = 8.5;

/// How many challengers reached the general election.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Scenario {
    /// No challenger entered; the incumbent takes the whole electorate.
    Uncontested,
    /// A single challenger entered, so there was no primary contest and
    /// voters hold only general-election signals.
    OneChallenger,
    /// Two challengers fought a primary; left-side voters carry a primary
    /// signal about the winner on top of the general-election signal.
    TwoChallengers,
}

/// Variance aggregation for the primary winner's perceived quality.
///
/// A left-side voter's posterior about the surviving challenger mixes a
/// primary signal and a general-election signal. Both signals share the
/// challenger's true quality, so their unconditional draws are positively
/// correlated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum VarianceMode {
    /// Sums the two signals' variance contributions as if their draws were
    /// independent, ignoring the shared quality component.
    #[default]
    IndependentSignals,
    /// Adds the covariance term from the shared quality component, giving
    /// the exact ex-ante variance of the two-signal posterior mean.
    CovarianceCorrected,
}

/// Electorate halves: challengers sit at 0, the incumbent at 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Segment {
    /// Voters with x < 1/2 — the challengers' side, primary participants.
    Left,
    /// Voters with x >= 1/2 — the incumbent's side.
    Right,
}

impl Segment {
    fn bounds(self) -> (f64, f64) {
        match self {
            Segment::Left => (0.0, 0.5),
            Segment::Right => (0.5, 1.0),
        }
    }
}

/// Incumbent vote mass by segment, as fractions of the whole electorate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SegmentShare {
    /// Incumbent mass among left-side voters (at most  0.5).
    pub left_share: f64,
    /// Incumbent mass among right-side voters (at most 0.5).
    pub right_share: f64,
    /// Sum of the two; the incumbent wins when this exceeds 1/2.
    pub total_share: f64,
}

/// Ex-ante variance of a perceived quality formed from one own-side or
/// incumbent general-election signal.
pub fn solo_posterior_variance(params: &ModelParams) -> f64 {
    let sq2 = params.sigma_q2;
    sq2 * sq2 / (sq2 + params.beta * params.sigma_s2)
}

/// Ex-ante variance of a perceived quality formed from one crossover
/// general-election signal.
pub fn crossover_posterior_variance(params: &ModelParams) -> f64 {
    let sq2 = params.sigma_q2;
    sq2 * sq2 / (sq2 + params.lambda * params.beta * params.sigma_s2)
}

/// Ex-ante variance of a left-side voter's perceived quality of the primary
/// winner, who is read through both a primary and a general-election signal.
pub fn winner_posterior_variance(params: &ModelParams, mode: VarianceMode) -> f64 {
    let w = PosteriorWeights::two_signal(params);
    let a = w.general;
    let b = w.primary;
    let sq2 = params.sigma_q2;
    let general_noise = params.beta * params.sigma_s2;
    let primary_noise = params.sigma_s2;
    match mode {
        VarianceMode::IndependentSignals => {
            a * a * (sq2 + general_noise) + b * b * (sq2 + primary_noise)
        }
        VarianceMode::CovarianceCorrected => {
            (a + b) * (a + b) * sq2 + a * a * general_noise + b * b * primary_noise
        }
    }
}

/// Standard deviation of the incumbent-minus-challenger quality gap when a
/// single challenger ran (no primary signal anywhere).
pub fn diff_std_one_challenger(params: &ModelParams, segment: Segment) -> f64 {
    let incumbent = solo_posterior_variance(params);
    let challenger = match segment {
        Segment::Left => solo_posterior_variance(params),
        Segment::Right => crossover_posterior_variance(params),
    };
    (incumbent + challenger).sqrt()
}

/// Standard deviation of the quality gap for left-side voters when the
/// challenger survived a primary.
pub fn diff_std_two_challenger_left(params: &ModelParams, mode: VarianceMode) -> f64 {
    (solo_posterior_variance(params) + winner_posterior_variance(params, mode)).sqrt()
}

/// Gap standard deviation for any contested segment/scenario combination.
pub fn segment_std(
    params: &ModelParams,
    scenario: Scenario,
    segment: Segment,
    mode: VarianceMode,
) -> Result<f64> {
    match scenario {
        Scenario::Uncontested => {
            Err(Error::Domain("no quality gap exists in an uncontested race".into()))
        }
        Scenario::OneChallenger => Ok(diff_std_one_challenger(params, segment)),
        Scenario::TwoChallengers => match segment {
            Segment::Left => Ok(diff_std_two_challenger_left(params, mode)),
            // Right-side voters never see the primary, so their read of the
            // winner matches the single-challenger crossover case.
            Segment::Right => Ok(diff_std_one_challenger(params, Segment::Right)),
        },
    }
}

/// Integrates the incumbent's mass over one segment, with a node-doubling
/// convergence check.
fn segment_mass(
    params: &ModelParams,
    eps: f64,
    sd: f64,
    segment: Segment,
    spec: &QuadratureSpec,
) -> Result<f64> {
    let (lo, hi) = segment.bounds();
    let z = |x: f64| (params.t * (1.0 - 2.0 * x) - eps - params.q) / sd;
    // z is linear in x, so the extremes sit at the endpoints.
    let (z_lo, z_hi) = (z(lo), z(hi));
    if z_lo >= Z_SATURATE && z_hi >= Z_SATURATE {
        return Ok(0.0);
    }
    if z_lo <= -Z_SATURATE && z_hi <= -Z_SATURATE {
        return Ok(hi - lo);
    }
    let integrand = |x: f64| 1.0 - phi(z(x));
    let coarse = GaussLegendre::cached(spec.nodes)?.integrate(lo, hi, integrand);
    let fine = GaussLegendre::cached(2 * spec.nodes)?.integrate(lo, hi, integrand);
    let delta = (fine - coarse).abs();
    if delta > spec.tolerance {
        return Err(Error::QuadratureNoConvergence {
            nodes: spec.nodes,
            delta,
            tolerance: spec.tolerance,
        });
    }
    Ok(fine)
}

/// Incumbent vote share by segment for a realized valence shock `eps`.
pub fn incumbent_vote_share(
    params: &ModelParams,
    scenario: Scenario,
    eps: f64,
    mode: VarianceMode,
    spec: &QuadratureSpec,
) -> Result<SegmentShare> {
    params.validate()?;
    spec.validate()?;
    if !eps.is_finite() {
        return Err(Error::Domain(format!("valence shock must be finite, got {eps}")));
    }
    if scenario == Scenario::Uncontested {
        return Ok(SegmentShare { left_share: 0.5, right_share: 0.5, total_share: 1.0 });
    }
    let left_sd = segment_std(params, scenario, Segment::Left, mode)?;
    let right_sd = segment_std(params, scenario, Segment::Right, mode)?;
    let left_share = segment_mass(params, eps, left_sd, Segment::Left, spec)?;
    let right_share = segment_mass(params, eps, right_sd, Segment::Right, spec)?;
    Ok(SegmentShare { left_share, right_share, total_share: left_share + right_share })
}

// ----------------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn unit_params() -> ModelParams {
        ModelParams {
            t: 1.0,
            q: 0.1,
            sigma_q2: 1.0,
            sigma_s2: 1.0,
            beta: 1.0,
            lambda: 2.0,
            ..ModelParams::baseline()
        }
    }

    #[test]
    fn solo_and_crossover_variances() {
        let p = unit_params();
        assert_relative_eq!(solo_posterior_variance(&p), 0.5, max_relative = 1e-15);
        // lambda = 2 doubles the crossover noise
        assert_relative_eq!(crossover_posterior_variance(&p), 1.0 / 3.0, max_relative = 1e-15);
    }

    #[test]
    fn winner_variance_in_both_modes_at_unit_parameters() {
        // Equal precisions give weights a = b = 1/3.
        let p = unit_params();
        let independent = winner_posterior_variance(&p, VarianceMode::IndependentSignals);
        let corrected = winner_posterior_variance(&p, VarianceMode::CovarianceCorrected);
        assert_relative_eq!(independent, 4.0 / 9.0, max_relative = 1e-14);
        assert_relative_eq!(corrected, 2.0 / 3.0, max_relative = 1e-14);
    }

    #[test]
    fn covariance_correction_only_adds_variance() {
        for (sq2, ss2, beta) in
            [(1.0, 1.0, 1.0), (0.5, 2.0, 0.7), (3.0, 0.4, 2.5), (1.0, 10.0, 0.1)]
        {
            let p = ModelParams { sigma_q2: sq2, sigma_s2: ss2, beta, ..unit_params() };
            let independent = winner_posterior_variance(&p, VarianceMode::IndependentSignals);
            let corrected = winner_posterior_variance(&p, VarianceMode::CovarianceCorrected);
            let w = PosteriorWeights::two_signal(&p);
            assert_relative_eq!(
                corrected,
                independent + 2.0 * w.general * w.primary * sq2,
                max_relative = 1e-13
            );
            assert!(corrected > independent);
        }
    }

    #[test]
    fn gap_standard_deviations() {
        let p = unit_params();
        // one challenger, left: two solo posteriors
        assert_relative_eq!(
            diff_std_one_challenger(&p, Segment::Left),
            1.0,
            max_relative = 1e-15
        );
        // one challenger, right, lambda = 3: sqrt(1/2 + 1/4)
        let p3 = ModelParams { lambda: 3.0, ..p };
        assert_relative_eq!(
            diff_std_one_challenger(&p3, Segment::Right),
            0.75f64.sqrt(),
            max_relative = 1e-15
        );
        // two challengers, left: sqrt(1/2 + 4/9) and sqrt(1/2 + 2/3)
        assert_relative_eq!(
            diff_std_two_challenger_left(&p, VarianceMode::IndependentSignals),
            (17.0f64 / 18.0).sqrt(),
            max_relative = 1e-15
        );
        assert_relative_eq!(
            diff_std_two_challenger_left(&p, VarianceMode::CovarianceCorrected),
            (7.0f64 / 6.0).sqrt(),
            max_relative = 1e-15
        );
    }

    #[test]
    fn right_segment_ignores_the_primary() {
        let p = unit_params();
        let one = segment_std(&p, Scenario::OneChallenger, Segment::Right, VarianceMode::IndependentSignals)
            .unwrap();
        let two = segment_std(&p, Scenario::TwoChallengers, Segment::Right, VarianceMode::CovarianceCorrected)
            .unwrap();
        assert_eq!(one, two);
        assert!(segment_std(&p, Scenario::Uncontested, Segment::Left, VarianceMode::IndependentSignals)
            .is_err());
    }

    #[test]
    fn uncontested_share_is_everything() {
        let share = incumbent_vote_share(
            &unit_params(),
            Scenario::Uncontested,
            0.3,
            VarianceMode::IndependentSignals,
            &QuadratureSpec::default(),
        )
        .unwrap();
        assert_eq!(share.left_share, 0.5);
        assert_eq!(share.right_share, 0.5);
        assert_eq!(share.total_share, 1.0);
    }

    #[test]
    fn pinned_one_challenger_share() {
        // Cross-checked against a one-million-point trapezoid evaluation of
        // the same integrand.
        let share = incumbent_vote_share(
            &unit_params(),
            Scenario::OneChallenger,
            0.0,
            VarianceMode::IndependentSignals,
            &QuadratureSpec::default(),
        )
        .unwrap();
        assert_relative_eq!(share.total_share, 0.54241541949333769, max_relative = 1e-12);
        assert_relative_eq!(
            share.total_share,
            share.left_share + share.right_share,
            max_relative = 1e-15
        );
    }

    #[test]
    fn share_is_increasing_in_the_valence_shock() {
        let p = unit_params();
        let spec = QuadratureSpec::default();
        let mut prev = -1.0;
        for i in 0..=20 {
            let eps = -3.0 + 0.3 * i as f64;
            let share =
                incumbent_vote_share(&p, Scenario::TwoChallengers, eps, VarianceMode::default(), &spec)
                    .unwrap();
            assert!(share.total_share > prev, "not increasing at eps={eps}");
            assert!(share.left_share <= 0.5 + 1e-12 && share.right_share <= 0.5 + 1e-12);
            prev = share.total_share;
        }
    }

    #[test]
    fn deep_tails_saturate() {
        let p = unit_params();
        let spec = QuadratureSpec::default();
        let lost = incumbent_vote_share(&p, Scenario::OneChallenger, -60.0, VarianceMode::default(), &spec)
            .unwrap();
        assert_eq!(lost.total_share, 0.0);
        let swept = incumbent_vote_share(&p, Scenario::OneChallenger, 60.0, VarianceMode::default(), &spec)
            .unwrap();
        assert_eq!(swept.total_share, 1.0);
    }

    #[test]
    fn symmetric_race_splits_the_electorate() {
        // t = 0 and q = 0 make every voter indifferent in expectation, so
        // with no shock each segment splits in half.
        let p = ModelParams { t: 0.0, q: 0.0, ..unit_params() };
        let spec = QuadratureSpec::default();
        for scenario in [Scenario::OneChallenger, Scenario::TwoChallengers] {
            let share =
                incumbent_vote_share(&p, scenario, 0.0, VarianceMode::default(), &spec).unwrap();
            assert_relative_eq!(share.total_share, 0.5, max_relative = 1e-12);
            assert_relative_eq!(share.left_share, 0.25, max_relative = 1e-12);
        }
    }

    #[test]
    fn equal_coverage_segments_match_when_distance_does_not_matter() {
        // With t = 0 the position term vanishes; with lambda = 1 both
        // segments read the lone challenger equally well.
        let p = ModelParams { t: 0.0, lambda: 1.0, ..unit_params() };
        let share = incumbent_vote_share(
            &p,
            Scenario::OneChallenger,
            0.7,
            VarianceMode::default(),
            &QuadratureSpec::default(),
        )
        .unwrap();
        assert_relative_eq!(share.left_share, share.right_share, max_relative = 1e-12);
    }

    #[test]
    fn offsetting_shock_restores_the_even_split() {
        // With lambda = 1 the gap distribution is the same on both segments,
        // and eps = -q centers it; the linear position term then cancels
        // between mirrored voters, leaving exactly half the electorate.
        let p = ModelParams { lambda: 1.0, q: 0.4, ..unit_params() };
        let share = incumbent_vote_share(
            &p,
            Scenario::OneChallenger,
            -0.4,
            VarianceMode::default(),
            &QuadratureSpec::default(),
        )
        .unwrap();
        assert_relative_eq!(share.total_share, 0.5, max_relative = 1e-12);
    }

    #[test]
    fn rejects_bad_inputs() {
        let p = unit_params();
        let spec = QuadratureSpec::default();
        assert!(incumbent_vote_share(&p, Scenario::OneChallenger, f64::NAN, VarianceMode::default(), &spec)
            .is_err());
        let bad = ModelParams { sigma_q2: -1.0, ..p };
        assert!(incumbent_vote_share(&bad, Scenario::OneChallenger, 0.0, VarianceMode::default(), &spec)
            .is_err());
        let bad_spec = QuadratureSpec { nodes: 0, tolerance: 1e-10 };
        assert!(incumbent_vote_share(&p, Scenario::OneChallenger, 0.0, VarianceMode::default(), &bad_spec)
            .is_err());
    }

    #[test]
    fn tiny_node_budget_fails_loudly_when_it_cannot_converge() {
        // One node cannot resolve the integrand to 1e-14; the doubling check
        // must report it rather than return a wrong answer.
        let p = ModelParams { t: 8.0, ..unit_params() };
        let spec = QuadratureSpec { nodes: 1, tolerance: 1e-14 };
        let err = incumbent_vote_share(&p, Scenario::OneChallenger, 0.0, VarianceMode::default(), &spec)
            .unwrap_err();
        assert!(matches!(err, Error::QuadratureNoConvergence { .. }));
    }
}
