//! Seeded Monte Carlo electorate: an independent check on the analytics.
//!
//! The simulator never touches the quadrature or solver code paths. It draws
//! a finite electorate, walks it through the primary and the general
//! election exactly as the generative model prescribes — idiosyncratic
//! quality perceptions, noisy signals, conjugate posterior votes, plurality
//! rule — and reports frequencies. Agreement with the analytic shares and
//! win probabilities is then evidence for both.
//!
//! Determinism contract: results are a pure function of `(params, spec)`.
//! Every trial runs on its own ChaCha8 stream (`seed_from_u64(seed)` +
//! `set_stream(trial_index)`), and aggregation sums integers, so estimates
//! are bit-identical across runs and thread counts. Normal draws use the
//! ziggurat sampler; the generator and draw order are fixed, making runs
//! reproducible across machines for a given crate version.
//!
//! Two selection modes cover the gap between theory and pipeline. The
//! analytic two-challenger formulas treat the surviving challenger's signals
//! as unconditioned draws, so the default mode picks the primary winner by
//! fair coin and draws fresh signals. The full pipeline instead runs the
//! primary for real — left voters' primary signals both decide the primary
//! and persist into their general-election posteriors — quantifying the
//! selection effect the analytics leave out.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::params::{Candidate, ModelParams, VoterIdeology};
use crate::posterior::{
    posterior_mean_general, posterior_mean_primary, posterior_mean_two_signal, valuation,
    GeneralRole,
};
use crate::vote_share::Scenario;

/// How the primary winner is determined in two-challenger simulations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum SelectionMode {
    /// Fair-coin winner with fresh signals — matches the analytic treatment.
    #[default]
    UnconditionalWinner,
    /// Real primary: left voters vote on primary signals, and those signals
    /// persist into their general-election posteriors.
    FullPipeline,
}

/// Valence-shock handling per trial.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum EpsMode {
    /// Every trial uses this shock value.
    Fixed(f64),
    /// Each trial draws a fresh shock from N(0, sigma_eps^2).
    Random,
}

/// Simulation size, seeding, and mode switches.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimulationSpec {
    /// Electorate size per trial (even, at least 2, so the two ideological
    /// halves are balanced in expectation).
    pub n_voters: u32,
    /// Number of independent trials.
    pub n_trials: u64,
    /// Master seed; trial `i` runs on stream `i` of this seed.
    pub seed: u64,
    /// Race configuration to simulate.
    pub scenario: Scenario,
    /// Primary-winner selection mode.
    pub selection: SelectionMode,
    /// Valence-shock mode.
    pub eps: EpsMode,
}

impl SimulationSpec {
    /// Checks the size and shock constraints.
    pub fn validate(&self) -> Result<()> {
        if self.n_voters < 2 || self.n_voters % 2 != 0 {
            return Err(Error::Domain(format!(
                "n_voters must be even and at least 2, got {}",
                self.n_voters
            )));
        }
        if self.n_trials == 0 {
            return Err(Error::Domain("n_trials must be at least 1".into()));
        }
        if let EpsMode::Fixed(value) = self.eps {
            if !value.is_finite() {
                return Err(Error::Domain(format!(
                    "fixed valence shock must be finite, got {value}"
                )));
            }
        }
        Ok(())
    }
}

/// Outcome of one simulated election.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrialOutcome {
    /// Who won the general election.
    pub winner: Candidate,
    /// Who won the primary (two-challenger scenarios only).
    pub primary_winner: Option<Candidate>,
    /// General-election votes for the incumbent.
    pub incumbent_votes: u64,
    /// General-election votes for the surviving challenger.
    pub challenger_votes: u64,
    /// Valence shock realized in this trial.
    pub eps: f64,
}

/// Frequency estimate of the incumbent's re-election probability.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ElectionEstimate {
    /// Fraction of trials the incumbent won.
    pub win_prob_hat: f64,
    /// Binomial standard error sqrt(p(1-p)/n_trials).
    pub std_error: f64,
    /// Trials behind the estimate.
    pub n_trials: u64,
    /// Primary wins per challenger (first and second label).
    pub primary_wins: [u64; 2],
}

/// Mean incumbent vote share at one fixed shock value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SharePoint {
    /// Shock the electorate was simulated under.
    pub eps: f64,
    /// Mean incumbent share across trials.
    pub share_hat: f64,
    /// Standard error of that mean (0 when only one trial ran).
    pub std_error: f64,
}

#[inline]
fn draw_normal<R: Rng>(rng: &mut R, mean: f64, sd: f64) -> f64 {
    mean + sd * rng.sample::<f64, _>(StandardNormal)
}

/// Per-voter draws buffered between the primary and general passes of the
/// full pipeline. Primary signals are only drawn (and only read) for
/// left-side voters.
struct VoterDraw {
    x: f64,
    q_first: f64,
    q_second: f64,
    q_incumbent: f64,
    sp_first: f64,
    sp_second: f64,
}

/// Simulates one election. `first`/`second` fix which challenger label's
/// draws come first in the stream; swapping them must only relabel outputs.
fn run_trial<R: Rng>(
    params: &ModelParams,
    spec: &SimulationSpec,
    rng: &mut R,
    first: Candidate,
    second: Candidate,
) -> TrialOutcome {
    let eps = match spec.eps {
        EpsMode::Fixed(value) => value,
        EpsMode::Random => draw_normal(rng, 0.0, params.sigma_eps),
    };
    if spec.scenario == Scenario::Uncontested {
        return TrialOutcome {
            winner: Candidate::Incumbent,
            primary_winner: None,
            incumbent_votes: u64::from(spec.n_voters),
            challenger_votes: 0,
            eps,
        };
    }

    let sd_q = params.sigma_q2.sqrt();
    let sd_sp = params.sigma_s2.sqrt();
    let sd_g_own = (params.beta * params.sigma_s2).sqrt();
    let sd_g_cross = (params.lambda * params.beta * params.sigma_s2).sqrt();

    // Resolve the surviving challenger and, for left voters, the primary
    // signal they carry into the general election (NaN when absent).
    let (challenger, primary_winner, voters): (Candidate, Option<Candidate>, Vec<(f64, f64, f64, f64)>) =
        match (spec.scenario, spec.selection) {
            (Scenario::OneChallenger, _) => {
                let voters = (0..spec.n_voters)
                    .map(|_| {
                        let x: f64 = rng.random();
                        let q_ch = draw_normal(rng, 0.0, sd_q);
                        let q_inc = draw_normal(rng, params.q, sd_q);
                        (x, q_ch, q_inc, f64::NAN)
                    })
                    .collect();
                (Candidate::Challenger1, None, voters)
            }
            (Scenario::TwoChallengers, SelectionMode::UnconditionalWinner) => {
                let winner = if rng.random::<bool>() { second } else { first };
                let voters = (0..spec.n_voters)
                    .map(|_| {
                        let x: f64 = rng.random();
                        let q_ch = draw_normal(rng, 0.0, sd_q);
                        let q_inc = draw_normal(rng, params.q, sd_q);
                        let sp = if x < 0.5 { draw_normal(rng, q_ch, sd_sp) } else { f64::NAN };
                        (x, q_ch, q_inc, sp)
                    })
                    .collect();
                (winner, Some(winner), voters)
            }
            (Scenario::TwoChallengers, SelectionMode::FullPipeline) => {
                let draws: Vec<VoterDraw> = (0..spec.n_voters)
                    .map(|_| {
                        let x: f64 = rng.random();
                        let q_first = draw_normal(rng, 0.0, sd_q);
                        let q_second = draw_normal(rng, 0.0, sd_q);
                        let q_incumbent = draw_normal(rng, params.q, sd_q);
                        let (sp_first, sp_second) = if x < 0.5 {
                            (draw_normal(rng, q_first, sd_sp), draw_normal(rng, q_second, sd_sp))
                        } else {
                            (f64::NAN, f64::NAN)
                        };
                        VoterDraw { x, q_first, q_second, q_incumbent, sp_first, sp_second }
                    })
                    .collect();
                let mut votes_first = 0u64;
                let mut votes_second = 0u64;
                for draw in draws.iter().filter(|d| d.x < 0.5) {
                    let m_first = posterior_mean_primary(params, draw.sp_first);
                    let m_second = posterior_mean_primary(params, draw.sp_second);
                    if m_first > m_second {
                        votes_first += 1;
                    } else if m_second > m_first {
                        votes_second += 1;
                    } else if rng.random::<bool>() {
                        votes_second += 1;
                    } else {
                        votes_first += 1;
                    }
                }
                let winner_is_first = match votes_first.cmp(&votes_second) {
                    std::cmp::Ordering::Greater => true,
                    std::cmp::Ordering::Less => false,
                    std::cmp::Ordering::Equal => !rng.random::<bool>(),
                };
                let winner = if winner_is_first { first } else { second };
                let voters = draws
                    .into_iter()
                    .map(|d| {
                        let (q_ch, sp) = if winner_is_first {
                            (d.q_first, d.sp_first)
                        } else {
                            (d.q_second, d.sp_second)
                        };
                        (d.x, q_ch, d.q_incumbent, sp)
                    })
                    .collect();
                (winner, Some(winner), voters)
            }
            (Scenario::Uncontested, _) => unreachable!("handled above"),
        };

    // General election: every voter draws a signal about each contender and
    // votes on posterior valuations.
    let carries_primary_signal = spec.scenario == Scenario::TwoChallengers;
    let mut incumbent_votes = 0u64;
    let mut challenger_votes = 0u64;
    for (x, q_ch, q_inc, sp) in voters {
        let left = x < 0.5;
        let s_g_ch = draw_normal(rng, q_ch, if left { sd_g_own } else { sd_g_cross });
        let s_g_inc = draw_normal(rng, q_inc, sd_g_own);
        let perceived_ch = if left {
            if carries_primary_signal {
                posterior_mean_two_signal(params, s_g_ch, sp)
            } else {
                posterior_mean_general(params, GeneralRole::ChallengerAligned, s_g_ch)
            }
        } else {
            posterior_mean_general(params, GeneralRole::ChallengerCrossover, s_g_ch)
        };
        let perceived_inc = posterior_mean_general(params, GeneralRole::Incumbent, s_g_inc);
        let voter = VoterIdeology::new(x).expect("uniform draw lies in [0, 1)");
        let v_ch = valuation(params, voter, challenger, perceived_ch, eps);
        let v_inc = valuation(params, voter, Candidate::Incumbent, perceived_inc, eps);
        if v_inc > v_ch {
            incumbent_votes += 1;
        } else if v_ch > v_inc {
            challenger_votes += 1;
        } else if rng.random::<bool>() {
            challenger_votes += 1;
        } else {
            incumbent_votes += 1;
        }
    }

    let winner = match incumbent_votes.cmp(&challenger_votes) {
        std::cmp::Ordering::Greater => Candidate::Incumbent,
        std::cmp::Ordering::Less => challenger,
        std::cmp::Ordering::Equal => {
            if rng.random::<bool>() {
                challenger
            } else {
                Candidate::Incumbent
            }
        }
    };
    TrialOutcome { winner, primary_winner, incumbent_votes, challenger_votes, eps }
}

/// Simulates a single election trial on the caller's generator.
pub fn simulate_trial<R: Rng>(
    params: &ModelParams,
    spec: &SimulationSpec,
    rng: &mut R,
) -> Result<TrialOutcome> {
    params.validate()?;
    spec.validate()?;
    Ok(run_trial(params, spec, rng, Candidate::Challenger1, Candidate::Challenger2))
}

fn trial_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Estimates the incumbent's re-election probability. The valence shock is
/// always drawn fresh per trial here, even when the caller configured a
/// fixed shock, because a fixed shock answers a different question (a share,
/// not a probability).
pub fn estimate_win_prob(params: &ModelParams, spec: &SimulationSpec) -> Result<ElectionEstimate> {
    params.validate()?;
    spec.validate()?;
    let forced = SimulationSpec { eps: EpsMode::Random, ..*spec };
    let (wins, primary_first, primary_second) = (0..spec.n_trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = trial_rng(spec.seed, trial);
            let outcome =
                run_trial(params, &forced, &mut rng, Candidate::Challenger1, Candidate::Challenger2);
            (
                u64::from(outcome.winner == Candidate::Incumbent),
                u64::from(outcome.primary_winner == Some(Candidate::Challenger1)),
                u64::from(outcome.primary_winner == Some(Candidate::Challenger2)),
            )
        })
        .reduce(|| (0, 0, 0), |a, b| (a.0 + b.0, a.1 + b.1, a.2 + b.2));
    let n = spec.n_trials as f64;
    let p_hat = wins as f64 / n;
    Ok(ElectionEstimate {
        win_prob_hat: p_hat,
        std_error: (p_hat * (1.0 - p_hat) / n).sqrt(),
        n_trials: spec.n_trials,
        primary_wins: [primary_first, primary_second],
    })
}

/// Estimates the incumbent's mean vote share at each fixed shock value.
/// Grid point `j` uses streams `j*n_trials..(j+1)*n_trials`, so points are
/// statistically independent and the whole curve is seed-deterministic.
pub fn estimate_vote_share_curve(
    params: &ModelParams,
    spec: &SimulationSpec,
    eps_grid: &[f64],
) -> Result<Vec<SharePoint>> {
    params.validate()?;
    spec.validate()?;
    for &eps in eps_grid {
        if !eps.is_finite() {
            return Err(Error::Domain(format!("share grid values must be finite, got {eps}")));
        }
    }
    let n_trials = spec.n_trials;
    let n_voters = f64::from(spec.n_voters);
    let mut curve = Vec::with_capacity(eps_grid.len());
    for (point_index, &eps) in eps_grid.iter().enumerate() {
        let point_spec = SimulationSpec { eps: EpsMode::Fixed(eps), ..*spec };
        let (votes, votes_sq) = (0..n_trials)
            .into_par_iter()
            .map(|trial| {
                let mut rng = trial_rng(spec.seed, point_index as u64 * n_trials + trial);
                let outcome = run_trial(
                    params,
                    &point_spec,
                    &mut rng,
                    Candidate::Challenger1,
                    Candidate::Challenger2,
                );
                (outcome.incumbent_votes, u128::from(outcome.incumbent_votes).pow(2))
            })
            .reduce(|| (0u64, 0u128), |a, b| (a.0 + b.0, a.1 + b.1));
        let n = n_trials as f64;
        let share_hat = votes as f64 / (n * n_voters);
        let std_error = if n_trials > 1 {
            let mean_votes = votes as f64 / n;
            let var_votes = (votes_sq as f64 - n * mean_votes * mean_votes) / (n - 1.0);
            (var_votes.max(0.0) / n).sqrt() / n_voters
        } else {
            0.0
        };
        curve.push(SharePoint { eps, share_hat, std_error });
    }
    Ok(curve)
}

// ----------------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use super::*;

    fn base_params() -> ModelParams {
        ModelParams {
            t: 1.0,
            q: 0.1,
            sigma_q2: 1.0,
            sigma_s2: 1.0,
            beta: 1.0,
            lambda: 2.0,
            sigma_eps: 1.0,
            entry_cost: 0.05,
        }
    }

    fn base_spec() -> SimulationSpec {
        SimulationSpec {
            n_voters: 100,
            n_trials: 400,
            seed: 7,
            scenario: Scenario::OneChallenger,
            selection: SelectionMode::UnconditionalWinner,
            eps: EpsMode::Random,
        }
    }

    #[test]
    fn spec_validation_rules() {
        let ok = base_spec();
        assert!(ok.validate().is_ok());
        assert!(SimulationSpec { n_voters: 0, ..ok }.validate().is_err());
        assert!(SimulationSpec { n_voters: 101, ..ok }.validate().is_err());
        assert!(SimulationSpec { n_trials: 0, ..ok }.validate().is_err());
        assert!(SimulationSpec { eps: EpsMode::Fixed(f64::NAN), ..ok }.validate().is_err());
        assert!(SimulationSpec { eps: EpsMode::Fixed(0.0), ..ok }.validate().is_ok());
    }

    #[test]
    fn same_seed_is_bit_identical() {
        let params = base_params();
        let spec = SimulationSpec { scenario: Scenario::TwoChallengers, ..base_spec() };
        let a = estimate_win_prob(&params, &spec).unwrap();
        let b = estimate_win_prob(&params, &spec).unwrap();
        assert_eq!(a, b);
        let curve_a = estimate_vote_share_curve(&params, &spec, &[-1.0, 0.0, 1.0]).unwrap();
        let curve_b = estimate_vote_share_curve(&params, &spec, &[-1.0, 0.0, 1.0]).unwrap();
        assert_eq!(curve_a, curve_b);
        // a different seed moves the estimate
        let other = estimate_win_prob(&params, &SimulationSpec { seed: 8, ..spec }).unwrap();
        assert_ne!(a.win_prob_hat, other.win_prob_hat);
    }

    #[test]
    fn challenger_labels_are_pure_relabels() {
        let params = base_params();
        let spec = SimulationSpec {
            scenario: Scenario::TwoChallengers,
            selection: SelectionMode::FullPipeline,
            n_voters: 60,
            ..base_spec()
        };
        for trial in 0..20 {
            let mut rng_a = trial_rng(11, trial);
            let mut rng_b = trial_rng(11, trial);
            let normal =
                run_trial(&params, &spec, &mut rng_a, Candidate::Challenger1, Candidate::Challenger2);
            let swapped =
                run_trial(&params, &spec, &mut rng_b, Candidate::Challenger2, Candidate::Challenger1);
            assert_eq!(normal.incumbent_votes, swapped.incumbent_votes);
            assert_eq!(normal.challenger_votes, swapped.challenger_votes);
            let flip = |c: Candidate| match c {
                Candidate::Challenger1 => Candidate::Challenger2,
                Candidate::Challenger2 => Candidate::Challenger1,
                Candidate::Incumbent => Candidate::Incumbent,
            };
            assert_eq!(normal.primary_winner.map(flip), swapped.primary_winner);
            assert_eq!(flip(normal.winner), swapped.winner);
        }
    }

    #[test]
    fn dominant_quality_sweeps_the_electorate() {
        let params = ModelParams { t: 0.0, q: 10.0, ..base_params() };
        let spec = SimulationSpec {
            eps: EpsMode::Fixed(0.0),
            n_trials: 50,
            ..base_spec()
        };
        let mut wins = 0;
        for trial in 0..spec.n_trials {
            let mut rng = trial_rng(spec.seed, trial);
            let outcome = simulate_trial(&params, &spec, &mut rng).unwrap();
            wins += u64::from(outcome.winner == Candidate::Incumbent);
        }
        assert!(wins >= 49, "incumbent won only {wins}/50 with a 10-sigma edge");
    }

    #[test]
    fn symmetric_primary_splits_evenly() {
        let params = base_params();
        let spec = SimulationSpec {
            scenario: Scenario::TwoChallengers,
            selection: SelectionMode::FullPipeline,
            n_voters: 50,
            n_trials: 2000,
            ..base_spec()
        };
        let estimate = estimate_win_prob(&params, &spec).unwrap();
        let total = estimate.primary_wins[0] + estimate.primary_wins[1];
        assert_eq!(total, spec.n_trials);
        // 3 SE of a fair binomial over 2000 trials
        let three_se = 3.0 * (2000.0f64 * 0.25).sqrt();
        let imbalance = (estimate.primary_wins[0] as f64 - 1000.0).abs();
        assert!(imbalance <= three_se, "primary split {:?}", estimate.primary_wins);
    }

    #[test]
    fn fully_symmetric_race_splits_votes() {
        let params = ModelParams { t: 0.0, q: 0.0, lambda: 1.0, ..base_params() };
        let spec = SimulationSpec {
            n_voters: 200,
            n_trials: 500,
            eps: EpsMode::Fixed(0.0),
            ..base_spec()
        };
        let curve = estimate_vote_share_curve(&params, &spec, &[0.0]).unwrap();
        let point = curve[0];
        assert!(
            (point.share_hat - 0.5).abs() <= 3.0 * point.std_error,
            "share {} strayed from 1/2 (SE {})",
            point.share_hat,
            point.std_error
        );
    }

    #[test]
    fn share_curve_rises_with_the_shock() {
        let params = base_params();
        let spec = SimulationSpec { n_voters: 200, n_trials: 300, ..base_spec() };
        let curve = estimate_vote_share_curve(&params, &spec, &[-2.0, 0.0, 2.0]).unwrap();
        assert!(curve[0].share_hat + 3.0 * curve[0].std_error < curve[1].share_hat);
        assert!(curve[1].share_hat + 3.0 * curve[1].std_error < curve[2].share_hat);
        // deep-tail shock hands the incumbent essentially everyone
        let tail = estimate_vote_share_curve(
            &params,
            &SimulationSpec { n_trials: 20, ..spec },
            &[10.0 * (params.t + params.q.abs() + 1.0)],
        )
        .unwrap();
        assert!(tail[0].share_hat >= 0.99);
    }

    #[test]
    fn estimate_matches_analytics_loosely() {
        // lambda = 1 pins the threshold at -q, so the analytic win
        // probability is Phi(q / sigma_eps); the simulator should land near
        // it even at modest sizes.
        let params = ModelParams { q: 0.3, t: 0.5, lambda: 1.0, ..base_params() };
        let spec = SimulationSpec { n_voters: 400, n_trials: 2000, ..base_spec() };
        let estimate = estimate_win_prob(&params, &spec).unwrap();
        let analytic = crate::solver::win_prob(-0.3, params.sigma_eps);
        assert!(
            (estimate.win_prob_hat - analytic).abs() < 0.05,
            "estimate {} vs analytic {analytic}",
            estimate.win_prob_hat
        );
        assert_eq!(
            estimate.std_error,
            (estimate.win_prob_hat * (1.0 - estimate.win_prob_hat) / 2000.0).sqrt()
        );
    }

    #[test]
    fn win_prob_estimation_ignores_a_fixed_shock() {
        // A fixed +1000 shock would hand the incumbent every trial; the
        // estimator must draw random shocks instead.
        let params = base_params();
        let spec = SimulationSpec {
            eps: EpsMode::Fixed(1000.0),
            n_voters: 50,
            n_trials: 200,
            ..base_spec()
        };
        let estimate = estimate_win_prob(&params, &spec).unwrap();
        assert!(estimate.win_prob_hat < 1.0);
    }

    #[test]
    fn vanishing_shock_scale_decides_by_threshold_sign() {
        // q > 0 with lambda = 1 puts the threshold at -q < 0; shocks near 0
        // then always clear it.
        let params = ModelParams { q: 0.3, t: 0.5, lambda: 1.0, sigma_eps: 1e-9, ..base_params() };
        let spec = SimulationSpec { n_voters: 500, n_trials: 100, ..base_spec() };
        let estimate = estimate_win_prob(&params, &spec).unwrap();
        assert!(estimate.win_prob_hat >= 0.99);
    }

    #[test]
    fn quadrupling_trials_halves_the_standard_error() {
        let params = base_params();
        let small = SimulationSpec { n_trials: 500, ..base_spec() };
        let large = SimulationSpec { n_trials: 2000, ..base_spec() };
        let se_small = estimate_win_prob(&params, &small).unwrap().std_error;
        let se_large = estimate_win_prob(&params, &large).unwrap().std_error;
        let ratio = se_small / se_large;
        assert!((1.6..=2.4).contains(&ratio), "SE ratio {ratio}");
    }

    #[test]
    fn uncontested_trials_are_unanimous() {
        let params = base_params();
        let spec = SimulationSpec { scenario: Scenario::Uncontested, ..base_spec() };
        let mut rng = trial_rng(3, 0);
        let outcome = simulate_trial(&params, &spec, &mut rng).unwrap();
        assert_eq!(outcome.winner, Candidate::Incumbent);
        assert_eq!(outcome.incumbent_votes, u64::from(spec.n_voters));
        assert_eq!(outcome.challenger_votes, 0);
        assert_eq!(outcome.primary_winner, None);
    }

    #[test]
    fn one_challenger_reports_no_primary() {
        let params = base_params();
        let spec = base_spec();
        let mut rng = trial_rng(5, 0);
        let outcome = simulate_trial(&params, &spec, &mut rng).unwrap();
        assert_eq!(outcome.primary_winner, None);
        assert_eq!(
            outcome.incumbent_votes + outcome.challenger_votes,
            u64::from(spec.n_voters)
        );
        let estimate = estimate_win_prob(&params, &spec).unwrap();
        assert_eq!(estimate.primary_wins, [0, 0]);
    }

    #[test]
    fn selection_modes_share_the_estimator_contract() {
        let params = base_params();
        for selection in [SelectionMode::UnconditionalWinner, SelectionMode::FullPipeline] {
            let spec = SimulationSpec {
                scenario: Scenario::TwoChallengers,
                selection,
                n_voters: 50,
                n_trials: 200,
                ..base_spec()
            };
            let estimate = estimate_win_prob(&params, &spec).unwrap();
            assert!((0.0..=1.0).contains(&estimate.win_prob_hat));
            assert_eq!(estimate.primary_wins[0] + estimate.primary_wins[1], 200);
        }
    }
}
