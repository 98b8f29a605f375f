//! Solver for a two-stage electoral competition model with Bayesian voters.
//!
//! Two challengers sit at one end of a unit ideological line and an incumbent
//! at the other. Voters learn about candidate quality from noisy campaign
//! signals — a primary-stage signal for left-side voters, general-election
//! signals for everyone — and vote on conjugate-posterior valuations. The
//! crate answers the model's quantitative questions analytically and checks
//! itself with a simulator:
//!
//! * [`posterior`] — signal environments and posterior-mean weights.
//! * [`vote_share`] — incumbent vote-share integrals by electorate segment.
//! * [`solver`] — winning-threshold root finding and closed-form race
//!   comparisons.
//! * [`equilibrium`] — challenger entry game, information schedules for
//!   growing fields, comparative-statics sweeps.
//! * [`tullock`] — contest micro-foundation for campaign informativeness.
//! * [`mc`] — seeded Monte Carlo electorate, the independent oracle.
//! * [`normal`], [`quad`] — the numeric kernels (high-accuracy Φ and
//!   Gauss–Legendre quadrature) everything above stands on.
//!
//! Everything is deterministic: analytics are pure functions, and the
//! simulator is a pure function of its seed.

pub mod equilibrium;
pub mod error;
pub mod mc;
pub mod normal;
pub mod params;
pub mod posterior;
pub mod quad;
pub mod solver;
pub mod tullock;
pub mod vote_share;

pub use equilibrium::{
    comparative_statics_sweep, equilibrium_entry, is_once_true_always_true,
    more_challengers_condition_profile, winprob_vs_challengers, EquilibriumOutcome, InfoSchedule,
    ScheduleEntry, SweepAxis, SweepRow,
};
pub use error::{Error, Result};
pub use mc::{
    estimate_vote_share_curve, estimate_win_prob, simulate_trial, ElectionEstimate, EpsMode,
    SelectionMode, SharePoint, SimulationSpec, TrialOutcome,
};
pub use normal::{erf, erfc, gaussian_cdf};
pub use params::{Candidate, ModelParams, VoterIdeology};
pub use posterior::{
    posterior_mean_general, posterior_mean_primary, posterior_mean_two_signal, valuation,
    GeneralRole, PosteriorWeights,
};
pub use quad::{GaussLegendre, QuadratureSpec};
pub use solver::{
    critical_noise_ratio, duo_helps_incumbent, duo_variance_exceeds_solo,
    more_challengers_help_incumbent, solve_threshold, solve_threshold_with_quad, win_prob,
    SolverSpec, ThresholdResult,
};
pub use tullock::{tullock_equilibrium, tullock_foc_residual, tullock_payoff, TullockParams};
pub use vote_share::{
    incumbent_vote_share, solo_posterior_variance, winner_posterior_variance, Scenario, Segment,
    SegmentShare, VarianceMode,
};
