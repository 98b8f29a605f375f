//! Flat key–value settings file support.
//!
//! A settings file supplies the same knobs as the command-line flags, one
//! `key = value` pair per line, with `#` starting a full-line comment and
//! hyphens in keys treated as underscores. Precedence is strict: flags
//! override file values, and file values override built-in defaults. Unknown
//! keys are rejected so a typo cannot silently fall back to a default.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use incumbency::{SelectionMode, SweepAxis, VarianceMode};

// ---------------------------------------------------------------------------
// settings
// ---------------------------------------------------------------------------

/// Output rendering selected with `--format`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "text" => Ok(Format::Text),
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(format!("unknown format {other:?} (expected text, csv, or json)")),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Text => "text",
            Format::Csv => "csv",
            Format::Json => "json",
        })
    }
}

/// Every knob a settings file may supply; `None` means "not set here".
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Settings {
    // model parameters
    pub t: Option<f64>,
    pub q: Option<f64>,
    pub sigma_q2: Option<f64>,
    pub sigma_s2: Option<f64>,
    pub beta: Option<f64>,
    pub lambda: Option<f64>,
    pub sigma_eps: Option<f64>,
    pub entry_cost: Option<f64>,
    // race configuration
    pub challengers: Option<u8>,
    pub mode: Option<VarianceMode>,
    // threshold solver
    pub solver_tolerance: Option<f64>,
    pub max_iterations: Option<u32>,
    pub initial_halfwidth: Option<f64>,
    pub expansion_factor: Option<f64>,
    // quadrature
    pub nodes: Option<usize>,
    pub quad_tolerance: Option<f64>,
    // simulation
    pub n_voters: Option<u32>,
    pub n_trials: Option<u64>,
    pub seed: Option<u64>,
    pub selection: Option<SelectionMode>,
    // sweep
    pub axis: Option<SweepAxis>,
    pub from: Option<f64>,
    pub to: Option<f64>,
    pub points: Option<u32>,
    // challenger schedules
    pub e_max: Option<u32>,
    // contest
    pub n: Option<u32>,
    pub r: Option<f64>,
    pub a: Option<f64>,
    // rendering
    pub format: Option<Format>,
    pub output: Option<String>,
}

impl Settings {
    /// Parses a settings file, rejecting unknown keys and unparseable values.
    pub fn from_file(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path)
            .map_err(|err| format!("cannot read settings file {}: {err}", path.display()))?;
        Self::from_str_checked(&text)
            .map_err(|err| format!("settings file {}: {err}", path.display()))
    }

    /// Parses settings text; later assignments to the same key win.
    pub fn from_str_checked(text: &str) -> Result<Self, String> {
        let mut settings = Settings::default();
        for (index, raw_line) in text.lines().enumerate() {
            let line = raw_line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| format!("line {}: expected `key = value`", index + 1))?;
            let key = key.trim().replace('-', "_");
            let value = value.trim();
            settings
                .set(&key, value)
                .map_err(|err| format!("line {}: {err}", index + 1))?;
        }
        Ok(settings)
    }

    /// Assigns one key, parsing the value with the key's type.
    fn set(&mut self, key: &str, value: &str) -> Result<(), String> {
        match key {
            "t" => self.t = Some(parse(key, value)?),
            "q" => self.q = Some(parse(key, value)?),
            "sigma_q2" => self.sigma_q2 = Some(parse(key, value)?),
            "sigma_s2" => self.sigma_s2 = Some(parse(key, value)?),
            "beta" => self.beta = Some(parse(key, value)?),
            "lambda" => self.lambda = Some(parse(key, value)?),
            "sigma_eps" => self.sigma_eps = Some(parse(key, value)?),
            "entry_cost" => self.entry_cost = Some(parse(key, value)?),
            "challengers" => self.challengers = Some(parse(key, value)?),
            "mode" => self.mode = Some(parse_mode(value)?),
            "solver_tolerance" => self.solver_tolerance = Some(parse(key, value)?),
            "max_iterations" => self.max_iterations = Some(parse(key, value)?),
            "initial_halfwidth" => self.initial_halfwidth = Some(parse(key, value)?),
            "expansion_factor" => self.expansion_factor = Some(parse(key, value)?),
            "nodes" => self.nodes = Some(parse(key, value)?),
            "quad_tolerance" => self.quad_tolerance = Some(parse(key, value)?),
            "n_voters" => self.n_voters = Some(parse(key, value)?),
            "n_trials" => self.n_trials = Some(parse(key, value)?),
            "seed" => self.seed = Some(parse(key, value)?),
            "selection" => self.selection = Some(parse_selection(value)?),
            "axis" => self.axis = Some(parse_axis(value)?),
            "from" => self.from = Some(parse(key, value)?),
            "to" => self.to = Some(parse(key, value)?),
            "points" => self.points = Some(parse(key, value)?),
            "e_max" => self.e_max = Some(parse(key, value)?),
            "n" => self.n = Some(parse(key, value)?),
            "r" => self.r = Some(parse(key, value)?),
            "a" => self.a = Some(parse(key, value)?),
            "format" => self.format = Some(value.parse()?),
            "output" => self.output = Some(value.to_string()),
            other => return Err(format!("unknown key {other:?}")),
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// value parsers shared by flags and settings files
// ---------------------------------------------------------------------------

fn parse<T: FromStr>(key: &str, value: &str) -> Result<T, String>
where
    T::Err: fmt::Display,
{
    value
        .parse()
        .map_err(|err| format!("key {key:?}: cannot parse {value:?}: {err}"))
}

/// Parses a variance-mode name, accepting hyphens for underscores.
pub fn parse_mode(value: &str) -> Result<VarianceMode, String> {
    match value.replace('-', "_").as_str() {
        "independent_signals" => Ok(VarianceMode::IndependentSignals),
        "covariance_corrected" => Ok(VarianceMode::CovarianceCorrected),
        other => Err(format!(
            "unknown variance mode {other:?} (expected independent_signals or covariance_corrected)"
        )),
    }
}

/// Parses a primary-selection name, accepting hyphens for underscores.
pub fn parse_selection(value: &str) -> Result<SelectionMode, String> {
    match value.replace('-', "_").as_str() {
        "unconditional_winner" => Ok(SelectionMode::UnconditionalWinner),
        "full_pipeline" => Ok(SelectionMode::FullPipeline),
        other => Err(format!(
            "unknown selection {other:?} (expected unconditional_winner or full_pipeline)"
        )),
    }
}

/// Parses a sweep-axis name, accepting hyphens for underscores.
pub fn parse_axis(value: &str) -> Result<SweepAxis, String> {
    value.replace('-', "_").parse().map_err(|err| format!("{err}"))
}

// ---------------------------------------------------------------------------
