//! Entry game, information schedules, and comparative-statics sweeps.
//!
//! Challenger entry is a two-stage calculation. Solving the winning
//! threshold for each contested scenario prices the two entry regimes: a
//! challenger entering a two-way primary expects half the incumbent's losing
//! probability, while a lone challenger claims all of it. Comparing the entry
//! cost against those two expected prizes yields the equilibrium number of
//! entrants (indifference resolves to entry).
//!
//! Larger challenger fields are modeled through their effect on campaign
//! information: an [`InfoSchedule`] maps each field size `e` to the signal
//! environment `(sigma_s2(e), beta(e))`, holding the attention-adjusted
//! variance `beta * sigma_s2` fixed while the primary stage grows more
//! informative. The general election after any contested primary keeps the
//! two-stage structure, so field size enters only through the schedule.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::normal::phi;
use crate::params::ModelParams;
use crate::solver::{duo_helps_incumbent, more_challengers_help_incumbent, solve_threshold, SolverSpec};
use crate::vote_share::{Scenario, VarianceMode};

/// Entry-game solution: how many challengers enter and everyone's chances.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EquilibriumOutcome {
    /// Number of challengers entering in equilibrium (0, 1, or 2).
    pub n_entrants: u8,
    /// Incumbent's re-election probability given the entry outcome.
    pub win_prob_incumbent: f64,
    /// Each entering challenger's probability of winning office.
    pub win_prob_per_challenger: f64,
    /// Expected prize of entering a two-challenger race: half the incumbent's
    /// losing probability under the two-challenger threshold.
    pub t_duo: f64,
    /// Expected prize of entering alone: the incumbent's losing probability
    /// under the one-challenger threshold.
    pub t_solo: f64,
    /// Winning threshold against a lone challenger.
    pub eps_star_solo: f64,
    /// Winning threshold against a primary-tested challenger.
    pub eps_star_duo: f64,
}

/// Solves the entry game for the given parameters.
pub fn equilibrium_entry(params: &ModelParams, mode: VarianceMode) -> Result<EquilibriumOutcome> {
    let spec = SolverSpec::default();
    let solo = solve_threshold(params, Scenario::OneChallenger, mode, &spec)?;
    let duo = solve_threshold(params, Scenario::TwoChallengers, mode, &spec)?;
    let t_solo = phi(solo.eps_star / params.sigma_eps);
    let t_duo = 0.5 * phi(duo.eps_star / params.sigma_eps);
    let c = params.entry_cost;

    let n_entrants: u8 = if t_duo < t_solo {
        if c <= t_duo {
            2
        } else if c <= t_solo {
            1
        } else {
            0
        }
    } else if c <= t_duo {
        2
    } else {
        0
    };

    let win_prob_incumbent = match n_entrants {
        2 => duo.win_prob_incumbent,
        1 => solo.win_prob_incumbent,
        _ => 1.0,
    };
    let win_prob_per_challenger = if n_entrants == 0 {
        0.0
    } else {
        (1.0 - win_prob_incumbent) / f64::from(n_entrants)
    };

    Ok(EquilibriumOutcome {
        n_entrants,
        win_prob_incumbent,
        win_prob_per_challenger,
        t_duo,
        t_solo,
        eps_star_solo: solo.eps_star,
        eps_star_duo: duo.eps_star,
    })
}

/// One stage of an information schedule: the signal environment when `e`
/// challengers contest the primary.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScheduleEntry {
    /// Field size this stage applies to.
    pub e: u32,
    /// Primary signal noise variance at this field size.
    pub sigma_s2: f64,
    /// General-election attention multiplier at this field size.
    pub beta: f64,
}

/// Signal environment as a function of the challenger field size.
///
/// Valid schedules cover `e = 1..=e_max` contiguously, have strictly falling
/// `sigma_s2` (bigger primaries are more informative), and hold the product
/// `beta * sigma_s2` constant so the general-election environment is
/// comparable across field sizes.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InfoSchedule {
    entries: Vec<ScheduleEntry>,
}

/// Relative slack allowed in the constant-product invariant.
const PRODUCT_TOLERANCE: f64 = 1e-9;

impl InfoSchedule {
    /// Validates and wraps a stage table.
    pub fn new(entries: Vec<ScheduleEntry>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::Schedule("a schedule needs at least one stage".into()));
        }
        for (i, entry) in entries.iter().enumerate() {
            let expected = i as u32 + 1;
            if entry.e != expected {
                return Err(Error::Schedule(format!(
                    "stages must be numbered contiguously from 1: position {i} holds e={}, expected e={expected}",
                    entry.e
                )));
            }
            if !entry.sigma_s2.is_finite() || entry.sigma_s2 <= 0.0 {
                return Err(Error::Schedule(format!(
                    "sigma_s2 must be positive and finite: stage e={} has {}",
                    entry.e, entry.sigma_s2
                )));
            }
            if !entry.beta.is_finite() || entry.beta <= 0.0 {
                return Err(Error::Schedule(format!(
                    "beta must be positive and finite: stage e={} has {}",
                    entry.e, entry.beta
                )));
            }
        }
        for pair in entries.windows(2) {
            if pair[1].sigma_s2 >= pair[0].sigma_s2 {
                return Err(Error::Schedule(format!(
                    "sigma_s2 must fall strictly with field size: sigma_s2({}) = {} does not undercut sigma_s2({}) = {}",
                    pair[1].e, pair[1].sigma_s2, pair[0].e, pair[0].sigma_s2
                )));
            }
        }
        let product0 = entries[0].beta * entries[0].sigma_s2;
        for entry in &entries[1..] {
            let product = entry.beta * entry.sigma_s2;
            if (product - product0).abs() > PRODUCT_TOLERANCE * product0 {
                return Err(Error::Schedule(format!(
                    "beta * sigma_s2 must stay constant across stages: stage e={} gives {product}, stage e=1 gives {product0}",
                    entry.e
                )));
            }
        }
        Ok(Self { entries })
    }

    /// The workhorse family sigma_s2(e) = sigma_s2(1)/e, beta(e) = beta(1)·e.
    pub fn harmonic(sigma_s2_1: f64, beta_1: f64, e_max: u32) -> Result<Self> {
        if e_max == 0 {
            return Err(Error::Schedule("a schedule needs at least one stage".into()));
        }
        let entries = (1..=e_max)
            .map(|e| ScheduleEntry {
                e,
                sigma_s2: sigma_s2_1 / f64::from(e),
                beta: beta_1 * f64::from(e),
            })
            .collect();
        Self::new(entries)
    }

    /// Demo schedule whose re-election curve rises from the first contested
    /// field size on (the per-field-size condition holds from e = 2).
    pub fn demo_rising() -> Self {
        Self::harmonic(1.2, 1.0, 6).expect("demo schedule is valid by construction")
    }

    /// Demo schedule whose re-election curve dips at two challengers before
    /// rising (the per-field-size condition only holds from e = 3).
    pub fn demo_dip_then_rise() -> Self {
        Self::harmonic(0.75, 1.0, 6).expect("demo schedule is valid by construction")
    }

    /// Largest field size the schedule covers.
    pub fn e_max(&self) -> u32 {
        self.entries.len() as u32
    }

    /// All stages in field-size order.
    pub fn entries(&self) -> &[ScheduleEntry] {
        &self.entries
    }

    /// The stage for field size `e` (1-based).
    pub fn entry(&self, e: u32) -> Result<&ScheduleEntry> {
        if e == 0 || e > self.e_max() {
            return Err(Error::Schedule(format!(
                "schedule covers e = 1..={}, requested e={e}",
                self.e_max()
            )));
        }
        Ok(&self.entries[(e - 1) as usize])
    }
}

/// Incumbent re-election probability as the challenger field grows from
/// empty to `e_max`, using the schedule's signal environment at each size.
pub fn winprob_vs_challengers(
    params: &ModelParams,
    schedule: &InfoSchedule,
    mode: VarianceMode,
    e_max: u32,
) -> Result<Vec<(u32, f64)>> {
    if e_max > schedule.e_max() {
        return Err(Error::Schedule(format!(
            "schedule covers e = 1..={}, requested curve up to e={e_max}",
            schedule.e_max()
        )));
    }
    let spec = SolverSpec::default();
    let mut curve = Vec::with_capacity(e_max as usize + 1);
    curve.push((0, 1.0));
    for e in 1..=e_max {
        let stage = schedule.entry(e)?;
        let stage_params = params.with_signal(stage.sigma_s2, stage.beta)?;
        let scenario = if e == 1 { Scenario::OneChallenger } else { Scenario::TwoChallengers };
        let result = solve_threshold(&stage_params, scenario, mode, &spec)?;
        curve.push((e, result.win_prob_incumbent));
    }
    Ok(curve)
}

/// Evaluates the per-field-size helping condition at every stage of the
/// schedule.
pub fn more_challengers_condition_profile(schedule: &InfoSchedule, sigma_q2: f64) -> Vec<bool> {
    schedule
        .entries()
        .iter()
        .map(|stage| more_challengers_help_incumbent(stage.beta, stage.sigma_s2, sigma_q2))
        .collect()
}

/// True when the profile never switches from true back to false — the
/// persistence property the helping condition satisfies along any valid
/// schedule.
pub fn is_once_true_always_true(profile: &[bool]) -> bool {
    !profile.windows(2).any(|pair| pair[0] && !pair[1])
}

/// Sweepable parameter axes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SweepAxis {
    /// Incumbent's prior mean quality.
    Q,
    /// Crossover noise multiplier.
    Lambda,
    /// General-election attention multiplier.
    Beta,
    /// Signal-to-prior noise ratio sigma_s2 / sigma_q2 (moves sigma_s2).
    Ratio,
    /// Challenger entry cost.
    EntryCost,
}

impl SweepAxis {
    /// Stable lowercase name used in output tables.
    pub fn name(&self) -> &'static str {
        match self {
            SweepAxis::Q => "q",
            SweepAxis::Lambda => "lambda",
            SweepAxis::Beta => "beta",
            SweepAxis::Ratio => "ratio",
            SweepAxis::EntryCost => "entry_cost",
        }
    }

    fn apply(&self, base: &ModelParams, value: f64) -> ModelParams {
        let mut p = *base;
        match self {
            SweepAxis::Q => p.q = value,
            SweepAxis::Lambda => p.lambda = value,
            SweepAxis::Beta => p.beta = value,
            SweepAxis::Ratio => p.sigma_s2 = value * p.sigma_q2,
            SweepAxis::EntryCost => p.entry_cost = value,
        }
        p
    }
}

impl std::str::FromStr for SweepAxis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "q" => Ok(SweepAxis::Q),
            "lambda" => Ok(SweepAxis::Lambda),
            "beta" => Ok(SweepAxis::Beta),
            "ratio" => Ok(SweepAxis::Ratio),
            "entry_cost" => Ok(SweepAxis::EntryCost),
            other => Err(Error::Domain(format!(
                "unknown sweep axis {other:?}; expected one of q, lambda, beta, ratio, entry_cost"
            ))),
        }
    }
}

/// One grid point of a comparative-statics sweep. Numeric fields are empty
/// when that point's solve failed; the failure is recorded in `error`.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    /// Axis name (stable, lowercase).
    pub axis: String,
    /// Grid value applied to the axis.
    pub value: f64,
    /// Winning threshold against a lone challenger.
    pub eps_star_solo: Option<f64>,
    /// Winning threshold against a primary-tested challenger.
    pub eps_star_duo: Option<f64>,
    /// Two-challenger entry prize.
    pub t_duo: Option<f64>,
    /// Lone-challenger entry prize.
    pub t_solo: Option<f64>,
    /// Equilibrium number of entrants.
    pub n_entrants: Option<u8>,
    /// Incumbent's re-election probability.
    pub win_prob_incumbent: Option<f64>,
    /// Each entrant's probability of winning office.
    pub win_prob_per_challenger: Option<f64>,
    /// Whether the noise environment makes a contested primary help the
    /// incumbent.
    pub duo_helps_incumbent: Option<bool>,
    /// Failure note when this point could not be solved.
    pub error: Option<String>,
}

/// Sweeps one axis across a grid, solving the full entry game at each point.
/// Rows come back in grid order; per-point failures are recorded, not fatal.
pub fn comparative_statics_sweep(
    base: &ModelParams,
    axis: SweepAxis,
    grid: &[f64],
    mode: VarianceMode,
) -> Vec<SweepRow> {
    grid.par_iter()
        .map(|&value| {
            let params = axis.apply(base, value);
            let mut row = SweepRow {
                axis: axis.name().to_string(),
                value,
                eps_star_solo: None,
                eps_star_duo: None,
                t_duo: None,
                t_solo: None,
                n_entrants: None,
                win_prob_incumbent: None,
                win_prob_per_challenger: None,
                duo_helps_incumbent: None,
                error: None,
            };
            if params.validate().is_ok() {
                row.duo_helps_incumbent = Some(duo_helps_incumbent(&params));
            }
            match equilibrium_entry(&params, mode) {
                Ok(outcome) => {
                    row.eps_star_solo = Some(outcome.eps_star_solo);
                    row.eps_star_duo = Some(outcome.eps_star_duo);
                    row.t_duo = Some(outcome.t_duo);
                    row.t_solo = Some(outcome.t_solo);
                    row.n_entrants = Some(outcome.n_entrants);
                    row.win_prob_incumbent = Some(outcome.win_prob_incumbent);
                    row.win_prob_per_challenger = Some(outcome.win_prob_per_challenger);
                }
                Err(err) => row.error = Some(err.to_string()),
            }
            row
        })
        .collect()
}

// ----------------------------------------------------------------------------
