//! Winning-threshold solver and closed-form race comparisons.
//!
//! For a realized valence shock the incumbent's total vote share is strictly
//! increasing in the shock, so there is a unique threshold shock `eps_star`
//! at which the share crosses one half: the incumbent wins the election
//! exactly when the shock lands above it. The solver finds that root by
//! bisection inside a geometrically expanded bracket — slower than secant
//! but immune to the flat tails the share curve develops far from the root.
//!
//! The module also houses the closed-form comparisons built on the same
//! variance algebra: the critical signal-to-prior noise ratio above which a
//! primary-tested challenger is *worse* for the challengers' side than a lone
//! challenger, and the equivalent statement phrased as a variance comparison.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::normal::phi;
use crate::params::ModelParams;
use crate::quad::QuadratureSpec;
use crate::vote_share::{
    incumbent_vote_share, segment_std, solo_posterior_variance, winner_posterior_variance,
    Scenario, Segment, VarianceMode,
};

/// Root-finder controls.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverSpec {
    /// Accept the root once |vote share − 1/2| falls below this.
    pub tolerance: f64,
    /// Bisection iteration cap.
    pub max_iterations: u32,
    /// Starting bracket half-width; `None` derives one from the parameters.
    pub initial_halfwidth: Option<f64>,
    /// Multiplier applied to the half-width until the bracket straddles the
    /// root (must exceed 1).
    pub expansion_factor: f64,
}

impl Default for SolverSpec {
    fn default() -> Self {
        Self { tolerance: 1e-10, max_iterations: 200, initial_halfwidth: None, expansion_factor: 2.0 }
    }
}

impl SolverSpec {
    /// Rejects configurations the solver cannot run with.
    pub fn validate(&self) -> Result<()> {
        if !self.tolerance.is_finite() || self.tolerance <= 0.0 {
            return Err(Error::Domain(format!(
                "solver tolerance must be finite and positive, got {}",
                self.tolerance
            )));
        }
        if self.max_iterations == 0 {
            return Err(Error::Domain("solver needs at least one iteration".into()));
        }
        if !self.expansion_factor.is_finite() || self.expansion_factor <= 1.0 {
            return Err(Error::Domain(format!(
                "bracket expansion factor must exceed 1, got {}",
                self.expansion_factor
            )));
        }
        if let Some(hw) = self.initial_halfwidth {
            if !hw.is_finite() || hw <= 0.0 {
                return Err(Error::Domain(format!(
                    "initial bracket half-width must be finite and positive, got {hw}"
                )));
            }
        }
        Ok(())
    }
}

/// A solved winning threshold with solver diagnostics.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThresholdResult {
    /// Valence shock at which the incumbent's total share equals one half.
    pub eps_star: f64,
    /// Probability the shock exceeds the threshold: Φ(−eps_star/σ_ε).
    pub win_prob_incumbent: f64,
    /// Bisection iterations used.
    pub iterations: u32,
    /// Final residual (total share minus one half) at `eps_star`.
    pub residual: f64,
    /// Final bracket; contains `eps_star`.
    pub bracket: (f64, f64),
}

/// Solves the winning threshold with default quadrature.
pub fn solve_threshold(
    params: &ModelParams,
    scenario: Scenario,
    mode: VarianceMode,
    spec: &SolverSpec,
) -> Result<ThresholdResult> {
    solve_threshold_with_quad(params, scenario, mode, spec, &QuadratureSpec::default())
}

/// Solves the winning threshold with explicit quadrature controls.
pub fn solve_threshold_with_quad(
    params: &ModelParams,
    scenario: Scenario,
    mode: VarianceMode,
    spec: &SolverSpec,
    quad: &QuadratureSpec,
) -> Result<ThresholdResult> {
    params.validate()?;
    spec.validate()?;
    quad.validate()?;
    if scenario == Scenario::Uncontested {
        return Err(Error::Domain(
            "an uncontested race has no winning threshold to solve for".into(),
        ));
    }
    // Perfectly symmetric race: the share at zero shock is exactly one half.
    if params.t == 0.0 && params.q == 0.0 && params.lambda == 1.0 {
        return Ok(ThresholdResult {
            eps_star: 0.0,
            win_prob_incumbent: 0.5,
            iterations: 0,
            residual: 0.0,
            bracket: (0.0, 0.0),
        });
    }

    let residual_at = |eps: f64| -> Result<f64> {
        Ok(incumbent_vote_share(params, scenario, eps, mode, quad)?.total_share - 0.5)
    };

    // Past |q| + t + 5σ the share saturates, so this half-width brackets the
    // root for any valid parameters; expansion covers user-supplied widths.
    let sigma_max = segment_std(params, scenario, Segment::Left, mode)?
        .max(segment_std(params, scenario, Segment::Right, mode)?);
    let hw0 = spec
        .initial_halfwidth
        .unwrap_or_else(|| params.q.abs() + params.t + 5.0 * sigma_max);
    let max_halfwidth = 1e3 * hw0;

    let mut halfwidth = hw0;
    let (mut lo, mut hi, mut f_lo, mut f_hi) = loop {
        let lo = -halfwidth;
        let hi = halfwidth;
        let f_lo = residual_at(lo)?;
        let f_hi = residual_at(hi)?;
        if f_lo <= 0.0 && f_hi >= 0.0 {
            break (lo, hi, f_lo, f_hi);
        }
        let next = halfwidth * spec.expansion_factor;
        if next > max_halfwidth {
            return Err(Error::BracketExpansionFailed { halfwidth, f_lo, f_hi });
        }
        halfwidth = next;
    };

    let mut iterations = 0;
    while iterations < spec.max_iterations {
        iterations += 1;
        let mid = 0.5 * (lo + hi);
        let f_mid = residual_at(mid)?;
        if f_mid.abs() <= spec.tolerance {
            return Ok(ThresholdResult {
                eps_star: mid,
                win_prob_incumbent: win_prob(mid, params.sigma_eps),
                iterations,
                residual: f_mid,
                bracket: (lo, hi),
            });
        }
        if f_mid < 0.0 {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
            f_hi = f_mid;
        }
    }
    let residual = if f_lo.abs() <= f_hi.abs() { f_lo } else { f_hi };
    Err(Error::SolverStalled { iterations, residual })
}

/// Probability the valence shock clears a threshold: Φ(−eps_star/σ_ε).
pub fn win_prob(eps_star: f64, sigma_eps: f64) -> f64 {
    phi(-eps_star / sigma_eps)
}

/// Critical value of σ_s²/σ_Q² above which adding a second challenger moves
/// the winning threshold in the incumbent's favor.
///
/// Uses the rationalized form 4 / (β(√((β−1)² + 8) + (β−1))), which avoids
/// the subtractive cancellation the textbook form suffers at large β.
pub fn critical_noise_ratio(beta: f64) -> f64 {
    let bm1 = beta - 1.0;
    4.0 / (beta * ((bm1 * bm1 + 8.0).sqrt() + bm1))
}

/// True when the signal environment is noisy enough that a primary-tested
/// challenger is weaker against the incumbent than a lone challenger
/// (two-challenger threshold below the one-challenger threshold).
pub fn duo_helps_incumbent(params: &ModelParams) -> bool {
    params.sigma_s2 / params.sigma_q2 > critical_noise_ratio(params.beta)
}

/// The same comparison in the per-field-size form used along information
/// schedules: β(e)σ_s²(e)/σ_Q² against the critical ratio scaled by β(e).
pub fn more_challengers_help_incumbent(beta_e: f64, sigma_s2_e: f64, sigma_q2: f64) -> bool {
    let bm1 = beta_e - 1.0;
    let rhs = 4.0 / ((bm1 * bm1 + 8.0).sqrt() + bm1);
    beta_e * sigma_s2_e / sigma_q2 > rhs
}

/// True when a left-side voter's perceived-quality variance for a
/// primary-tested challenger exceeds the variance for a lone challenger —
/// the variance comparison underlying [`duo_helps_incumbent`].
pub fn duo_variance_exceeds_solo(params: &ModelParams, mode: VarianceMode) -> bool {
    winner_posterior_variance(params, mode) > solo_posterior_variance(params)
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
            sigma_eps: 1.0,
            ..ModelParams::baseline()
        }
    }

    fn default_solve(params: &ModelParams, scenario: Scenario) -> ThresholdResult {
        solve_threshold(params, scenario, VarianceMode::IndependentSignals, &SolverSpec::default())
            .unwrap()
    }

    #[test]
    fn equal_coverage_threshold_offsets_the_quality_advantage() {
        // With lambda = 1 both segments read a lone challenger equally well
        // and eps = -q equalizes the race exactly.
        for q in [-1.0, -0.3, 0.0, 0.3, 1.0] {
            let p = ModelParams { q, lambda: 1.0, ..unit_params() };
            let result = default_solve(&p, Scenario::OneChallenger);
            assert!(
                (result.eps_star - (-q)).abs() < 1e-8,
                "q={q}: eps_star={} expected {}",
                result.eps_star,
                -q
            );
        }
    }

    #[test]
    fn crossover_noise_pushes_the_threshold_down() {
        let p = ModelParams { q: 0.3, lambda: 2.0, ..unit_params() };
        let result = default_solve(&p, Scenario::OneChallenger);
        assert!(result.eps_star < -0.3);
    }

    #[test]
    fn pinned_two_challenger_threshold() {
        // Frozen by a dense sign-scan (step 1e-6) over the share residual.
        let result = default_solve(&unit_params(), Scenario::TwoChallengers);
        assert!((result.eps_star - (-0.11423250475109933)).abs() < 1e-6);
    }

    #[test]
    fn result_invariants_hold() {
        let p = ModelParams { q: 0.4, lambda: 1.7, ..unit_params() };
        let spec = SolverSpec::default();
        for scenario in [Scenario::OneChallenger, Scenario::TwoChallengers] {
            let r = solve_threshold(&p, scenario, VarianceMode::default(), &spec).unwrap();
            assert!(r.residual.abs() <= spec.tolerance);
            assert!(r.bracket.0 <= r.eps_star && r.eps_star <= r.bracket.1);
            assert_relative_eq!(
                r.win_prob_incumbent,
                win_prob(r.eps_star, p.sigma_eps),
                max_relative = 1e-15
            );
            assert!(r.iterations > 0);
        }
    }

    #[test]
    fn win_prob_reference_points() {
        assert_relative_eq!(win_prob(0.0, 1.0), 0.5, max_relative = 1e-15);
        assert_relative_eq!(win_prob(-1.0, 1.0), 0.84134474606854295, max_relative = 1e-14);
        assert!(win_prob(60.0, 1.0) < 1e-300);
        // scale of the shock matters
        assert_relative_eq!(win_prob(-2.0, 2.0), win_prob(-1.0, 1.0), max_relative = 1e-15);
    }

    #[test]
    fn symmetric_race_short_circuits() {
        let p = ModelParams { t: 0.0, q: 0.0, lambda: 1.0, ..unit_params() };
        let r = default_solve(&p, Scenario::OneChallenger);
        assert_eq!(r.eps_star, 0.0);
        assert_eq!(r.win_prob_incumbent, 0.5);
        assert_eq!(r.iterations, 0);
        assert_eq!(r.residual, 0.0);
        assert_eq!(r.bracket, (0.0, 0.0));
    }

    #[test]
    fn uncontested_is_rejected() {
        let err = solve_threshold(
            &unit_params(),
            Scenario::Uncontested,
            VarianceMode::default(),
            &SolverSpec::default(),
        )
        .unwrap_err();
        assert!(matches!(err, Error::Domain(_)));
    }

    #[test]
    fn threshold_falls_as_quality_or_crossover_noise_rise() {
        // finite-difference signs on a small grid
        let h = 1e-4;
        for beta in [0.5, 1.0, 2.0] {
            for lambda in [1.2, 1.6, 2.5] {
                for q in [-0.3, 0.1, 0.5] {
                    for scenario in [Scenario::OneChallenger, Scenario::TwoChallengers] {
                        let p = ModelParams { beta, lambda, q, ..unit_params() };
                        let up_q = ModelParams { q: q + h, ..p };
                        let up_l = ModelParams { lambda: lambda + h, ..p };
                        let base = default_solve(&p, scenario).eps_star;
                        assert!(
                            default_solve(&up_q, scenario).eps_star < base,
                            "threshold rose in q at beta={beta} lambda={lambda} q={q}"
                        );
                        assert!(
                            default_solve(&up_l, scenario).eps_star < base,
                            "threshold rose in lambda at beta={beta} lambda={lambda} q={q}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn rescaling_the_race_preserves_the_win_probability() {
        // (t, q, sigma_eps) scale by k and the variances by k^2: the
        // threshold scales by k and the win probability is unchanged.
        let k: f64 = 2.5;
        let p = unit_params();
        let scaled = ModelParams {
            t: p.t * k,
            q: p.q * k,
            sigma_q2: p.sigma_q2 * k * k,
            sigma_s2: p.sigma_s2 * k * k,
            sigma_eps: p.sigma_eps * k,
            ..p
        };
        for scenario in [Scenario::OneChallenger, Scenario::TwoChallengers] {
            let base = default_solve(&p, scenario);
            let big = default_solve(&scaled, scenario);
            assert_relative_eq!(big.eps_star, k * base.eps_star, max_relative = 1e-6);
            assert_relative_eq!(
                big.win_prob_incumbent,
                base.win_prob_incumbent,
                max_relative = 1e-8
            );
        }
    }

    #[test]
    fn critical_ratio_reference_points() {
        assert_relative_eq!(critical_noise_ratio(1.0), std::f64::consts::SQRT_2, max_relative = 1e-15);
        assert!(critical_noise_ratio(100.0) < 0.01);
        // stable at extreme beta where the textbook form cancels to zero
        let extreme = critical_noise_ratio(1e9);
        assert!(extreme > 0.0 && extreme < 1e-17);
        let mut prev = f64::INFINITY;
        for i in 1..=400 {
            let beta = 0.05 * i as f64;
            let r = critical_noise_ratio(beta);
            assert!(r < prev, "not decreasing at beta={beta}");
            prev = r;
        }
    }

    #[test]
    fn noise_condition_examples() {
        let p = |ss2: f64, sq2: f64, beta: f64| ModelParams {
            sigma_s2: ss2,
            sigma_q2: sq2,
            beta,
            ..unit_params()
        };
        assert!(duo_helps_incumbent(&p(2.0, 1.0, 1.0)));
        assert!(!duo_helps_incumbent(&p(1.0, 1.0, 1.0)));
        // the inequality is strict: the boundary itself is false
        let boundary = critical_noise_ratio(1.0);
        assert!(!duo_helps_incumbent(&p(boundary, 1.0, 1.0)));
    }

    #[test]
    fn per_field_size_form_matches() {
        assert!(more_challengers_help_incumbent(1.0, 3.0, 1.0));
        assert!(!more_challengers_help_incumbent(1.0, 1.0, 1.0));
        for (beta, ss2, sq2) in [(0.5, 4.0, 1.0), (2.0, 0.3, 0.8), (1.3, 1.1, 1.0), (3.0, 0.2, 0.5)] {
            let params = ModelParams { beta, sigma_s2: ss2, sigma_q2: sq2, ..unit_params() };
            assert_eq!(
                more_challengers_help_incumbent(beta, ss2, sq2),
                duo_helps_incumbent(&params),
                "forms disagree at beta={beta} ss2={ss2} sq2={sq2}"
            );
        }
    }

    #[test]
    fn variance_comparison_matches_the_noise_condition() {
        // The independent-signals variance inequality reduces algebraically
        // to the noise-ratio condition.
        for i in 0..200 {
            let beta = 0.1 + 0.07 * i as f64;
            let ratio = 0.05 + 0.09 * i as f64;
            let params = ModelParams { beta, sigma_s2: ratio, sigma_q2: 1.0, ..unit_params() };
            assert_eq!(
                duo_variance_exceeds_solo(&params, VarianceMode::IndependentSignals),
                duo_helps_incumbent(&params),
                "mismatch at beta={beta} ratio={ratio}"
            );
        }
    }

    #[test]
    fn corrected_variance_comparison_can_flip() {
        // With a strong prior and precise signals the covariance term alone
        // pushes the duo variance past the solo variance even though the
        // noise-ratio condition fails.
        let params = ModelParams {
            sigma_q2: 0.25,
            sigma_s2: 0.025,
            beta: 0.3,
            ..unit_params()
        };
        assert!(!duo_helps_incumbent(&params));
        assert!(!duo_variance_exceeds_solo(&params, VarianceMode::IndependentSignals));
        assert!(duo_variance_exceeds_solo(&params, VarianceMode::CovarianceCorrected));
    }

    #[test]
    fn spec_validation() {
        let ok = SolverSpec::default();
        assert!(ok.validate().is_ok());
        assert!(SolverSpec { tolerance: 0.0, ..ok }.validate().is_err());
        assert!(SolverSpec { max_iterations: 0, ..ok }.validate().is_err());
        assert!(SolverSpec { expansion_factor: 1.0, ..ok }.validate().is_err());
        assert!(SolverSpec { initial_halfwidth: Some(-1.0), ..ok }.validate().is_err());
    }

    #[test]
    fn starved_bracket_fails_loudly() {
        // A microscopic bracket can never expand to reach the root.
        let spec = SolverSpec { initial_halfwidth: Some(1e-300), ..SolverSpec::default() };
        let err = solve_threshold(
            &unit_params(),
            Scenario::OneChallenger,
            VarianceMode::default(),
            &spec,
        )
        .unwrap_err();
        assert!(matches!(err, Error::BracketExpansionFailed { .. }));
    }

    #[test]
    fn iteration_cap_reports_a_stall() {
        let spec = SolverSpec { max_iterations: 3, tolerance: 1e-14, ..SolverSpec::default() };
        let err = solve_threshold(
            &unit_params(),
            Scenario::OneChallenger,
            VarianceMode::default(),
            &spec,
        )
        .unwrap_err();
        match err {
            Error::SolverStalled { iterations, .. } => assert_eq!(iterations, 3),
            other => panic!("unexpected error {other:?}"),
        }
    }
}
