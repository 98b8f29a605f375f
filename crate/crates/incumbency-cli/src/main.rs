//! Command-line front end for the electoral-competition solver.
//!
//! Six subcommands cover the library's surface: `solve` finds winning
//! thresholds, `sweep` tabulates comparative statics along one parameter
//! axis, `challengers` traces win probability against the challenger field
//! size, `simulate` checks the analytics against the Monte Carlo electorate,
//! `equilibrium` solves the entry game, and `tullock` solves the
//! information-provision contest.
//!
//! Every run is deterministic given its full configuration (seed included).
//! Settings come from three layers with strict precedence: command-line
//! flags, then the `--config` file, then built-in defaults. Exit codes
//! distinguish failure classes: 0 success, 1 I/O failure, 2 usage error,
//! 3 numeric failure.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use incumbency::{
    comparative_statics_sweep, equilibrium_entry, estimate_win_prob, is_once_true_always_true,
    more_challengers_condition_profile, solve_threshold_with_quad, tullock_equilibrium,
    tullock_foc_residual, winprob_vs_challengers, ElectionEstimate, EpsMode, InfoSchedule,
    ModelParams, QuadratureSpec, Scenario, ScheduleEntry, SelectionMode, SimulationSpec,
    SolverSpec, SweepAxis, SweepRow, ThresholdResult, TullockParams, VarianceMode,
};

use crate::config::{Format, Settings};

mod config;
mod render;

// ---------------------------------------------------------------------------
// command surface
// ---------------------------------------------------------------------------

#[derive(Parser)]
#[command(
    name = "incumbency",
    version,
    about = "Solve, sweep, and simulate a two-stage electoral competition model"
)]
struct Cli {
    /// Flat `key = value` settings file applied beneath the flags.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

/// Model parameters shared by every model-facing subcommand. Each flag is
/// optional; unset values fall back to the config file, then to defaults.
#[derive(Args, Default)]
struct ModelFlags {
    /// Taste-cost weight on squared voter–candidate distance.
    #[arg(long, allow_negative_numbers = true)]
    t: Option<f64>,
    /// Incumbent's prior mean quality.
    #[arg(long, allow_negative_numbers = true)]
    q: Option<f64>,
    /// Prior variance of candidate quality.
    #[arg(long, allow_negative_numbers = true)]
    sigma_q2: Option<f64>,
    /// Primary-signal noise variance.
    #[arg(long, allow_negative_numbers = true)]
    sigma_s2: Option<f64>,
    /// General-election signal noise multiplier.
    #[arg(long, allow_negative_numbers = true)]
    beta: Option<f64>,
    /// Extra noise multiplier on challenger signals received across the
    /// ideological divide (at least 1).
    #[arg(long, allow_negative_numbers = true)]
    lambda: Option<f64>,
    /// Valence-shock standard deviation.
    #[arg(long, allow_negative_numbers = true)]
    sigma_eps: Option<f64>,
    /// Challenger entry cost (office prize is 1).
    #[arg(long, allow_negative_numbers = true)]
    entry_cost: Option<f64>,
    /// Posterior variance accounting: independent_signals or
    /// covariance_corrected.
    #[arg(long, value_parser = config::parse_mode)]
    mode: Option<VarianceMode>,
}

/// Root-finding and quadrature controls (read by `solve`).
#[derive(Args, Default)]
struct SolverFlags {
    /// Accept the threshold once |vote share - 1/2| falls below this.
    #[arg(long, allow_negative_numbers = true)]
    solver_tolerance: Option<f64>,
    /// Bisection iteration cap.
    #[arg(long)]
    max_iterations: Option<u32>,
    /// Starting bracket half-width for the threshold search.
    #[arg(long, allow_negative_numbers = true)]
    initial_halfwidth: Option<f64>,
    /// Bracket growth factor while hunting for a sign change (> 1).
    #[arg(long, allow_negative_numbers = true)]
    expansion_factor: Option<f64>,
    /// Gauss-Legendre node count for vote-share integrals.
    #[arg(long)]
    nodes: Option<usize>,
    /// Allowed shift in any integral when the node count doubles.
    #[arg(long, allow_negative_numbers = true)]
    quad_tolerance: Option<f64>,
}

/// Simulation size and mode switches (read by `simulate`).
#[derive(Args, Default)]
struct SimFlags {
    /// Electorate size per trial (even, at least 2).
    #[arg(long)]
    n_voters: Option<u32>,
    /// Number of simulated elections.
    #[arg(long)]
    n_trials: Option<u64>,
    /// Master seed; each trial runs on its own deterministic substream.
    #[arg(long)]
    seed: Option<u64>,
    /// Primary-winner selection: unconditional_winner or full_pipeline.
    #[arg(long, value_parser = config::parse_selection)]
    selection: Option<SelectionMode>,
}

/// Where and how results are rendered.
#[derive(Args, Default)]
struct OutputFlags {
    /// Rendering: text, csv, or json (sweep supports csv and json).
    #[arg(long, value_parser = Format::from_str)]
    format: Option<Format>,
    /// Write to this file instead of stdout; relative paths land in
    /// $INCUMBENCY_OUTPUT_DIR when that variable is set.
    #[arg(long, value_name = "FILE")]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Solve the winning threshold and the incumbent's win probability.
    Solve {
        /// Number of challengers in the race (1 or 2).
        #[arg(long)]
        challengers: Option<u8>,
        #[command(flatten)]
        model: ModelFlags,
        #[command(flatten)]
        solver: SolverFlags,
        #[command(flatten)]
        out: OutputFlags,
    },
    /// Sweep one parameter axis and tabulate thresholds, prizes, and entry.
    Sweep {
        /// Axis to sweep: q, lambda, beta, ratio, or entry_cost.
        #[arg(long, value_parser = config::parse_axis)]
        axis: Option<SweepAxis>,
        /// Inclusive lower end of an evenly spaced grid.
        #[arg(long, allow_negative_numbers = true)]
        from: Option<f64>,
        /// Inclusive upper end of an evenly spaced grid.
        #[arg(long, allow_negative_numbers = true)]
        to: Option<f64>,
        /// Number of grid points (0 emits only the header row).
        #[arg(long)]
        points: Option<u32>,
        /// Explicit comma-separated grid values; overrides from/to/points.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        grid: Option<Vec<f64>>,
        #[command(flatten)]
        model: ModelFlags,
        #[command(flatten)]
        out: OutputFlags,
    },
    /// Trace the incumbent's win probability against the challenger field
    /// size under an information schedule.
    Challengers {
        /// CSV schedule file with header `e,sigma_s2,beta`.
        #[arg(long, value_name = "FILE", conflicts_with = "demo")]
        schedule: Option<PathBuf>,
        /// Built-in schedule: rising or dip_then_rise.
        #[arg(long, value_parser = parse_demo)]
        demo: Option<Demo>,
        /// Largest field size to evaluate (defaults to the whole schedule).
        #[arg(long)]
        e_max: Option<u32>,
        #[command(flatten)]
        model: ModelFlags,
        #[command(flatten)]
        out: OutputFlags,
    },
    /// Estimate the incumbent's win probability with the seeded electorate
    /// simulator and compare it to the analytic value.
    Simulate {
        /// Number of challengers in the race (0, 1, or 2).
        #[arg(long)]
        challengers: Option<u8>,
        #[command(flatten)]
        model: ModelFlags,
        #[command(flatten)]
        sim: SimFlags,
        #[command(flatten)]
        out: OutputFlags,
    },
    /// Solve the challenger entry game at the configured entry cost.
    Equilibrium {
        #[command(flatten)]
        model: ModelFlags,
        #[command(flatten)]
        out: OutputFlags,
    },
    /// Solve the symmetric information-provision contest.
    Tullock {
        /// Number of contestants (at least 2).
        #[arg(long)]
        n: Option<u32>,
        /// Contest decisiveness exponent in (0, 1].
        #[arg(long, allow_negative_numbers = true)]
        r: Option<f64>,
        /// Quadratic effort-cost coefficient.
        #[arg(long, allow_negative_numbers = true)]
        a: Option<f64>,
        #[command(flatten)]
        out: OutputFlags,
    },
}

/// Built-in information schedules.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Demo {
    Rising,
    DipThenRise,
}

fn parse_demo(value: &str) -> Result<Demo, String> {
    match value.replace('-', "_").as_str() {
        "rising" => Ok(Demo::Rising),
        "dip_then_rise" => Ok(Demo::DipThenRise),
        other => Err(format!(
            "unknown demo schedule {other:?} (expected rising or dip_then_rise)"
        )),
    }
}

// ---------------------------------------------------------------------------
// failure classes and exit codes
// ---------------------------------------------------------------------------

enum CliError {
    /// The request itself is malformed: bad flag values, bad config keys,
    /// parameters outside their domain, invalid schedules.
    Usage(String),
    /// The request was well-formed but the computation failed to converge.
    Numeric(incumbency::Error),
    /// Reading or writing a file failed.
    Io(std::io::Error),
}

/// Classifies a library error: bad inputs are usage errors, convergence
/// failures are numeric errors.
fn lift(err: incumbency::Error) -> CliError {
    use incumbency::Error;
    match err {
        Error::InvalidParameter { .. } | Error::Domain(_) | Error::Schedule(_) => {
            CliError::Usage(err.to_string())
        }
        Error::QuadratureNoConvergence { .. }
        | Error::BracketExpansionFailed { .. }
        | Error::SolverStalled { .. } => CliError::Numeric(err),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Io(err)) => {
            eprintln!("io error: {err}");
            ExitCode::from(1)
        }
        Err(CliError::Usage(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
        Err(CliError::Numeric(err)) => {
            eprintln!("numeric error: {err}");
            ExitCode::from(3)
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let settings = match &cli.config {
        Some(path) => Settings::from_file(path).map_err(CliError::Usage)?,
        None => Settings::default(),
    };
    match cli.command {
        Command::Solve { challengers, model, solver, out } => {
            cmd_solve(challengers, &model, &solver, &out, &settings)
        }
        Command::Sweep { axis, from, to, points, grid, model, out } => {
            cmd_sweep(axis, from, to, points, grid, &model, &out, &settings)
        }
        Command::Challengers { schedule, demo, e_max, model, out } => {
            cmd_challengers(schedule.as_deref(), demo, e_max, &model, &out, &settings)
        }
        Command::Simulate { challengers, model, sim, out } => {
            cmd_simulate(challengers, &model, &sim, &out, &settings)
        }
        Command::Equilibrium { model, out } => cmd_equilibrium(&model, &out, &settings),
        Command::Tullock { n, r, a, out } => cmd_tullock(n, r, a, &out, &settings),
    }
}

// ---------------------------------------------------------------------------
// layered configuration
// ---------------------------------------------------------------------------

fn merged<T: Copy>(flag: Option<T>, file: Option<T>, default: T) -> T {
    flag.or(file).unwrap_or(default)
}

fn build_params(model: &ModelFlags, s: &Settings) -> ModelParams {
    let base = ModelParams::baseline();
    ModelParams {
        t: merged(model.t, s.t, base.t),
        q: merged(model.q, s.q, base.q),
        sigma_q2: merged(model.sigma_q2, s.sigma_q2, base.sigma_q2),
        sigma_s2: merged(model.sigma_s2, s.sigma_s2, base.sigma_s2),
        beta: merged(model.beta, s.beta, base.beta),
        lambda: merged(model.lambda, s.lambda, base.lambda),
        sigma_eps: merged(model.sigma_eps, s.sigma_eps, base.sigma_eps),
        entry_cost: merged(model.entry_cost, s.entry_cost, base.entry_cost),
    }
}

fn build_mode(model: &ModelFlags, s: &Settings) -> VarianceMode {
    merged(model.mode, s.mode, VarianceMode::default())
}

fn build_solver_spec(solver: &SolverFlags, s: &Settings) -> SolverSpec {
    let base = SolverSpec::default();
    SolverSpec {
        tolerance: merged(solver.solver_tolerance, s.solver_tolerance, base.tolerance),
        max_iterations: merged(solver.max_iterations, s.max_iterations, base.max_iterations),
        initial_halfwidth: solver
            .initial_halfwidth
            .or(s.initial_halfwidth)
            .or(base.initial_halfwidth),
        expansion_factor: merged(
            solver.expansion_factor,
            s.expansion_factor,
            base.expansion_factor,
        ),
    }
}

fn build_quad_spec(solver: &SolverFlags, s: &Settings) -> QuadratureSpec {
    let base = QuadratureSpec::default();
    QuadratureSpec {
        nodes: merged(solver.nodes, s.nodes, base.nodes),
        tolerance: merged(solver.quad_tolerance, s.quad_tolerance, base.tolerance),
    }
}

fn build_scenario(flag: Option<u8>, file: Option<u8>) -> Result<Scenario, CliError> {
    let count = flag
        .or(file)
        .ok_or_else(|| CliError::Usage("--challengers is required (0, 1, or 2)".into()))?;
    match count {
        0 => Ok(Scenario::Uncontested),
        1 => Ok(Scenario::OneChallenger),
        2 => Ok(Scenario::TwoChallengers),
        other => Err(CliError::Usage(format!(
            "--challengers must be 0, 1, or 2, got {other}"
        ))),
    }
}

// ---------------------------------------------------------------------------
// rendering plumbing
// ---------------------------------------------------------------------------

fn serialization_failure(err: String) -> CliError {
    CliError::Io(std::io::Error::other(err))
}

/// Renders rows as text (caller-supplied), CSV, or a JSON array, then writes
/// them to the requested destination.
fn emit_rows<T: Serialize>(
    format: Format,
    rows: &[T],
    text: impl FnOnce() -> String,
    output: Option<&Path>,
) -> Result<(), CliError> {
    let rendered = match format {
        Format::Text => text(),
        Format::Csv => render::to_csv(rows).map_err(serialization_failure)?,
        Format::Json => render::to_json(&rows).map_err(serialization_failure)?,
    };
    render::emit(&rendered, output).map_err(CliError::Io)
}

/// Like [`emit_rows`] for commands whose result is a single record: CSV gets
/// a header plus one row, JSON gets a bare object.
fn emit_one<T: Serialize>(
    format: Format,
    row: &T,
    text: impl FnOnce() -> String,
    output: Option<&Path>,
) -> Result<(), CliError> {
    let rendered = match format {
        Format::Text => text(),
        Format::Csv => render::to_csv(std::slice::from_ref(row)).map_err(serialization_failure)?,
        Format::Json => render::to_json(row).map_err(serialization_failure)?,
    };
    render::emit(&rendered, output).map_err(CliError::Io)
}

// ---------------------------------------------------------------------------
// solve
// ---------------------------------------------------------------------------

/// Flat, column-stable view of a threshold solution.
#[derive(Serialize)]
struct SolveRow {
    eps_star: f64,
    win_prob_incumbent: f64,
    iterations: u32,
    residual: f64,
    bracket_lo: f64,
    bracket_hi: f64,
}

impl From<ThresholdResult> for SolveRow {
    fn from(result: ThresholdResult) -> Self {
        SolveRow {
            eps_star: result.eps_star,
            win_prob_incumbent: result.win_prob_incumbent,
            iterations: result.iterations,
            residual: result.residual,
            bracket_lo: result.bracket.0,
            bracket_hi: result.bracket.1,
        }
    }
}

fn cmd_solve(
    challengers: Option<u8>,
    model: &ModelFlags,
    solver: &SolverFlags,
    out: &OutputFlags,
    s: &Settings,
) -> Result<(), CliError> {
    let params = build_params(model, s);
    let scenario = build_scenario(challengers, s.challengers)?;
    let result = solve_threshold_with_quad(
        &params,
        scenario,
        build_mode(model, s),
        &build_solver_spec(solver, s),
        &build_quad_spec(solver, s),
    )
    .map_err(lift)?;
    let row = SolveRow::from(result);
    let text = || {
        let mut text = String::new();
        let _ = writeln!(text, "eps_star           = {}", row.eps_star);
        let _ = writeln!(text, "win_prob_incumbent = {}", row.win_prob_incumbent);
        let _ = writeln!(text, "iterations         = {}", row.iterations);
        let _ = writeln!(text, "residual           = {}", row.residual);
        let _ = writeln!(text, "bracket            = [{}, {}]", row.bracket_lo, row.bracket_hi);
        text
    };
    emit_one(
        merged(out.format, s.format, Format::Text),
        &row,
        text,
        resolve_output(out, s).as_deref(),
    )
}

fn resolve_output(out: &OutputFlags, s: &Settings) -> Option<PathBuf> {
    out.output
        .clone()
        .or_else(|| s.output.as_ref().map(PathBuf::from))
}

// ---------------------------------------------------------------------------
// sweep
// ---------------------------------------------------------------------------

fn linspace(from: f64, to: f64, points: u32) -> Vec<f64> {
    match points {
        0 => Vec::new(),
        1 => vec![from],
        _ => (0..points)
            .map(|i| from + (to - from) * f64::from(i) / f64::from(points - 1))
            .collect(),
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_sweep(
    axis: Option<SweepAxis>,
    from: Option<f64>,
    to: Option<f64>,
    points: Option<u32>,
    grid: Option<Vec<f64>>,
    model: &ModelFlags,
    out: &OutputFlags,
    s: &Settings,
) -> Result<(), CliError> {
    let axis = axis
        .or(s.axis)
        .ok_or_else(|| CliError::Usage("--axis is required (q, lambda, beta, ratio, entry_cost)".into()))?;
    let grid = match grid {
        Some(values) => values,
        None => {
            let from = from.or(s.from).ok_or_else(|| {
                CliError::Usage("--from and --to (or an explicit --grid) are required".into())
            })?;
            let to = to.or(s.to).ok_or_else(|| {
                CliError::Usage("--from and --to (or an explicit --grid) are required".into())
            })?;
            linspace(from, to, merged(points, s.points, 21))
        }
    };
    let rows = comparative_statics_sweep(&build_params(model, s), axis, &grid, build_mode(model, s));
    let format = merged(out.format, s.format, Format::Csv);
    if format == Format::Text {
        return Err(CliError::Usage(
            "sweep renders tables; pass --format csv or --format json".into(),
        ));
    }
    let rendered = if rows.is_empty() && format == Format::Csv {
        render::csv_header_only::<SweepRow>().map_err(serialization_failure)?
    } else {
        match format {
            Format::Csv => render::to_csv(&rows).map_err(serialization_failure)?,
            _ => render::to_json(&rows).map_err(serialization_failure)?,
        }
    };
    render::emit(&rendered, resolve_output(out, s).as_deref()).map_err(CliError::Io)
}

// ---------------------------------------------------------------------------
// challengers
// ---------------------------------------------------------------------------

/// One field size on the win-probability curve.
#[derive(Serialize)]
struct CurveRow {
    e: u32,
    win_prob_incumbent: f64,
    /// Whether adding a challenger at this field size helps the incumbent
    /// (empty for the uncontested row).
    condition_holds: Option<bool>,
}

/// Wraps the curve with its shape classification for JSON output.
#[derive(Serialize)]
struct CurveDocument {
    shape: String,
    rows: Vec<CurveRow>,
}

fn load_schedule(path: &Path) -> Result<InfoSchedule, CliError> {
    let mut reader = csv::Reader::from_path(path)
        .map_err(|err| CliError::Usage(format!("schedule file {}: {err}", path.display())))?;
    let mut entries: Vec<ScheduleEntry> = Vec::new();
    for record in reader.deserialize() {
        let entry = record
            .map_err(|err| CliError::Usage(format!("schedule file {}: {err}", path.display())))?;
        entries.push(entry);
    }
    InfoSchedule::new(entries).map_err(lift)
}

/// Describes the curve's shape over the contested field sizes (e >= 1).
fn classify_curve(curve: &[(u32, f64)]) -> String {
    let rises: Vec<bool> = curve
        .windows(2)
        .skip(1)
        .map(|pair| pair[1].1 > pair[0].1)
        .collect();
    if rises.is_empty() {
        return "single field size; no shape to classify".into();
    }
    if rises.iter().all(|&r| r) {
        return "rising at every field size".into();
    }
    if !rises.iter().any(|&r| r) {
        return "falling at every field size".into();
    }
    if is_once_true_always_true(&rises) {
        let bottom = curve[1 + rises.iter().position(|&r| r).unwrap_or(0)].0;
        return format!("falls to e = {bottom}, then rises");
    }
    "irregular: rises and falls alternate".into()
}

fn cmd_challengers(
    schedule_path: Option<&Path>,
    demo: Option<Demo>,
    e_max: Option<u32>,
    model: &ModelFlags,
    out: &OutputFlags,
    s: &Settings,
) -> Result<(), CliError> {
    let schedule = match schedule_path {
        Some(path) => load_schedule(path)?,
        None => match demo.unwrap_or(Demo::Rising) {
            Demo::Rising => InfoSchedule::demo_rising(),
            Demo::DipThenRise => InfoSchedule::demo_dip_then_rise(),
        },
    };
    let params = build_params(model, s);
    let e_max = merged(e_max, s.e_max, schedule.e_max());
    let curve =
        winprob_vs_challengers(&params, &schedule, build_mode(model, s), e_max).map_err(lift)?;
    let conditions = more_challengers_condition_profile(&schedule, params.sigma_q2);

    let shape = classify_curve(&curve);
    let rows: Vec<CurveRow> = curve
        .iter()
        .map(|&(e, win_prob_incumbent)| CurveRow {
            e,
            win_prob_incumbent,
            condition_holds: (e >= 1).then(|| conditions[(e - 1) as usize]),
        })
        .collect();

    let format = merged(out.format, s.format, Format::Text);
    let output = resolve_output(out, s);
    if format == Format::Json {
        let document = CurveDocument { shape, rows };
        let rendered = render::to_json(&document).map_err(serialization_failure)?;
        return render::emit(&rendered, output.as_deref()).map_err(CliError::Io);
    }
    let text = || {
        let mut text = String::new();
        let _ = writeln!(text, "{:>3}  {:<22}  {}", "e", "win_prob_incumbent", "condition_holds");
        for row in &rows {
            let condition = match row.condition_holds {
                None => "-".to_string(),
                Some(flag) => flag.to_string(),
            };
            let _ = writeln!(
                text,
                "{:>3}  {:<22}  {}",
                row.e,
                row.win_prob_incumbent.to_string(),
                condition
            );
        }
        let _ = writeln!(text, "shape: {shape}");
        text
    };
    emit_rows(format, &rows, text, output.as_deref())
}

// ---------------------------------------------------------------------------
// simulate
// ---------------------------------------------------------------------------

/// Simulation estimate next to the analytic values under both variance
/// accountings. Analytic columns are empty for uncontested races; the
/// selection-effect delta is filled only in full_pipeline runs.
#[derive(Serialize)]
struct SimulateRow {
    win_prob_hat: f64,
    std_error: f64,
    n_trials: u64,
    primary_wins_first: u64,
    primary_wins_second: u64,
    analytic_independent: Option<f64>,
    z_independent: Option<f64>,
    analytic_corrected: Option<f64>,
    z_corrected: Option<f64>,
    selection_effect_delta: Option<f64>,
}

fn analytic_win_prob(
    params: &ModelParams,
    scenario: Scenario,
    mode: VarianceMode,
) -> Result<Option<f64>, CliError> {
    if scenario == Scenario::Uncontested {
        return Ok(None);
    }
    solve_threshold_with_quad(
        params,
        scenario,
        mode,
        &SolverSpec::default(),
        &QuadratureSpec::default(),
    )
    .map(|result| Some(result.win_prob_incumbent))
    .map_err(lift)
}

fn z_score(estimate: &ElectionEstimate, analytic: Option<f64>) -> Option<f64> {
    match analytic {
        Some(value) if estimate.std_error > 0.0 => {
            Some((estimate.win_prob_hat - value) / estimate.std_error)
        }
        _ => None,
    }
}

fn cmd_simulate(
    challengers: Option<u8>,
    model: &ModelFlags,
    sim: &SimFlags,
    out: &OutputFlags,
    s: &Settings,
) -> Result<(), CliError> {
    let params = build_params(model, s);
    let scenario = build_scenario(challengers, s.challengers)?;
    let selection = merged(sim.selection, s.selection, SelectionMode::default());
    let spec = SimulationSpec {
        n_voters: merged(sim.n_voters, s.n_voters, 2000),
        n_trials: merged(sim.n_trials, s.n_trials, 20000),
        seed: merged(sim.seed, s.seed, 1),
        scenario,
        selection,
        eps: EpsMode::Random,
    };
    let estimate = estimate_win_prob(&params, &spec).map_err(lift)?;
    let analytic_independent =
        analytic_win_prob(&params, scenario, VarianceMode::IndependentSignals)?;
    let analytic_corrected =
        analytic_win_prob(&params, scenario, VarianceMode::CovarianceCorrected)?;
    let selection_effect_delta = if selection == SelectionMode::FullPipeline {
        let baseline = estimate_win_prob(
            &params,
            &SimulationSpec { selection: SelectionMode::UnconditionalWinner, ..spec },
        )
        .map_err(lift)?;
        Some(estimate.win_prob_hat - baseline.win_prob_hat)
    } else {
        None
    };
    let row = SimulateRow {
        win_prob_hat: estimate.win_prob_hat,
        std_error: estimate.std_error,
        n_trials: estimate.n_trials,
        primary_wins_first: estimate.primary_wins[0],
        primary_wins_second: estimate.primary_wins[1],
        analytic_independent,
        z_independent: z_score(&estimate, analytic_independent),
        analytic_corrected,
        z_corrected: z_score(&estimate, analytic_corrected),
        selection_effect_delta,
    };
    let text = || {
        let mut text = String::new();
        let _ = writeln!(text, "win_prob_hat = {}", row.win_prob_hat);
        let _ = writeln!(text, "std_error    = {}", row.std_error);
        let _ = writeln!(text, "n_trials     = {}", row.n_trials);
        let _ = writeln!(
            text,
            "primary_wins = [{}, {}]",
            row.primary_wins_first, row.primary_wins_second
        );
        for (mode, analytic, z) in [
            ("independent_signals", row.analytic_independent, row.z_independent),
            ("covariance_corrected", row.analytic_corrected, row.z_corrected),
        ] {
            match (analytic, z) {
                (Some(analytic), Some(z)) => {
                    let _ = writeln!(text, "analytic ({mode}) = {analytic}   z = {z}");
                }
                (Some(analytic), None) => {
                    let _ = writeln!(text, "analytic ({mode}) = {analytic}   z = n/a");
                }
                _ => {}
            }
        }
        if let Some(delta) = row.selection_effect_delta {
            let _ = writeln!(text, "selection_effect_delta = {delta}");
        }
        text
    };
    emit_one(
        merged(out.format, s.format, Format::Text),
        &row,
        text,
        resolve_output(out, s).as_deref(),
    )
}

// ---------------------------------------------------------------------------
// equilibrium
// ---------------------------------------------------------------------------

fn cmd_equilibrium(model: &ModelFlags, out: &OutputFlags, s: &Settings) -> Result<(), CliError> {
    let params = build_params(model, s);
    let outcome = equilibrium_entry(&params, build_mode(model, s)).map_err(lift)?;
    let text = || {
        let mut text = String::new();
        let _ = writeln!(text, "n_entrants              = {}", outcome.n_entrants);
        let _ = writeln!(text, "win_prob_incumbent      = {}", outcome.win_prob_incumbent);
        let _ = writeln!(text, "win_prob_per_challenger = {}", outcome.win_prob_per_challenger);
        let _ = writeln!(text, "t_duo                   = {}", outcome.t_duo);
        let _ = writeln!(text, "t_solo                  = {}", outcome.t_solo);
        let _ = writeln!(text, "eps_star_solo           = {}", outcome.eps_star_solo);
        let _ = writeln!(text, "eps_star_duo            = {}", outcome.eps_star_duo);
        text
    };
    emit_one(
        merged(out.format, s.format, Format::Text),
        &outcome,
        text,
        resolve_output(out, s).as_deref(),
    )
}

// ---------------------------------------------------------------------------
// tullock
// ---------------------------------------------------------------------------

/// Equilibrium effort at one field size.
#[derive(Serialize)]
struct TullockRow {
    n: u32,
    q_star: f64,
    foc_residual: f64,
}

fn cmd_tullock(
    n: Option<u32>,
    r: Option<f64>,
    a: Option<f64>,
    out: &OutputFlags,
    s: &Settings,
) -> Result<(), CliError> {
    let n = n.or(s.n).ok_or_else(|| CliError::Usage("--n is required".into()))?;
    let r = r.or(s.r).ok_or_else(|| CliError::Usage("--r is required".into()))?;
    let a = a.or(s.a).ok_or_else(|| CliError::Usage("--a is required".into()))?;
    let mut rows = Vec::with_capacity(6);
    for field in n..=n + 5 {
        let params = TullockParams::new(field, r, a).map_err(lift)?;
        let q_star = tullock_equilibrium(&params).map_err(lift)?;
        rows.push(TullockRow {
            n: field,
            q_star,
            foc_residual: tullock_foc_residual(&params, q_star, q_star),
        });
    }
    let text = || {
        let mut text = String::new();
        let _ = writeln!(text, "q_star       = {}", rows[0].q_star);
        let _ = writeln!(text, "foc_residual = {}", rows[0].foc_residual);
        let _ = writeln!(text);
        let _ = writeln!(text, "{:>3}  q_star", "n");
        for row in &rows {
            let _ = writeln!(text, "{:>3}  {}", row.n, row.q_star);
        }
        text
    };
    emit_rows(
        merged(out.format, s.format, Format::Text),
        &rows,
        text,
        resolve_output(out, s).as_deref(),
    )
}
