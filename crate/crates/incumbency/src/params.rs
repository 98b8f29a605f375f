//! Model primitives: parameters, candidates, and voter ideology.
//!
//! The model has three candidates on a unit ideological line — two challengers
//! at position 0 and an incumbent at position 1 — and a continuum of voters
//! with ideal points on [0, 1]. A voter's payoff from a candidate is the
//! candidate's perceived quality minus a quadratic ideological distance cost,
//! plus an incumbency valence shock. [`ModelParams`] collects everything the
//! analytic pipeline needs: the distance-cost slope, the incumbent's mean
//! quality advantage, the prior and signal variances, the two general-election
//! attention multipliers, the valence-shock scale, and the challengers' entry
//! cost.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// All primitive parameters of the electoral model.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    /// Ideological distance cost slope (t >= 0).
    pub t: f64,
    /// Prior mean of the incumbent's quality (challengers are centered at 0).
    pub q: f64,
    /// Prior variance of every candidate's quality (> 0).
    pub sigma_q2: f64,
    /// Primary-stage signal noise variance (> 0).
    pub sigma_s2: f64,
    /// General-election attention multiplier on signal noise for a voter's
    /// own-side candidate and the incumbent (> 0).
    pub beta: f64,
    /// Extra noise multiplier for reading the opposite side's candidate
    /// (>= 1; 1 means crossover coverage is as clear as aligned coverage).
    pub lambda: f64,
    /// Scale of the incumbency valence shock (> 0).
    pub sigma_eps: f64,
    /// Cost a challenger pays to enter the race (>= 0).
    pub entry_cost: f64,
}

impl ModelParams {
    /// Builds a parameter set and validates it in one step.
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        t: f64,
        q: f64,
        sigma_q2: f64,
        sigma_s2: f64,
        beta: f64,
        lambda: f64,
        sigma_eps: f64,
        entry_cost: f64,
    ) -> Result<Self> {
        let params = Self { t, q, sigma_q2, sigma_s2, beta, lambda, sigma_eps, entry_cost };
        params.validate()?;
        Ok(params)
    }

    /// A sensible default configuration used by the CLI and examples.
    pub fn baseline() -> Self {
        Self {
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

    /// Returns a copy with the signal environment replaced, revalidated.
    pub fn with_signal(&self, sigma_s2: f64, beta: f64) -> Result<Self> {
        let mut params = *self;
        params.sigma_s2 = sigma_s2;
        params.beta = beta;
        params.validate()?;
        Ok(params)
    }

    /// Checks every field against its admissible range.
    pub fn validate(&self) -> Result<()> {
        let checks: [(&'static str, f64, &'static str, bool); 8] = [
            ("t", self.t, "finite and >= 0", self.t.is_finite() && self.t >= 0.0),
            ("q", self.q, "finite", self.q.is_finite()),
            (
                "sigma_q2",
                self.sigma_q2,
                "finite and > 0",
                self.sigma_q2.is_finite() && self.sigma_q2 > 0.0,
            ),
            (
                "sigma_s2",
                self.sigma_s2,
                "finite and > 0",
                self.sigma_s2.is_finite() && self.sigma_s2 > 0.0,
            ),
            ("beta", self.beta, "finite and > 0", self.beta.is_finite() && self.beta > 0.0),
            ("lambda", self.lambda, "finite and >= 1", self.lambda.is_finite() && self.lambda >= 1.0),
            (
                "sigma_eps",
                self.sigma_eps,
                "finite and > 0",
                self.sigma_eps.is_finite() && self.sigma_eps > 0.0,
            ),
            (
                "entry_cost",
                self.entry_cost,
                "finite and >= 0",
                self.entry_cost.is_finite() && self.entry_cost >= 0.0,
            ),
        ];
        for (name, value, constraint, ok) in checks {
            if !ok {
                return Err(Error::InvalidParameter { name, value, constraint });
            }
        }
        Ok(())
    }
}

/// The three candidates. Challengers sit at ideological position 0, the
/// incumbent at 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Candidate {
    Challenger1,
    Challenger2,
    Incumbent,
}

impl Candidate {
    /// Ideological position on the unit line.
    pub fn position(&self) -> f64 {
        match self {
            Candidate::Challenger1 | Candidate::Challenger2 => 0.0,
            Candidate::Incumbent => 1.0,
        }
    }
}

/// A voter's ideal point on [0, 1].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VoterIdeology(f64);

impl VoterIdeology {
    /// Wraps an ideal point, rejecting anything outside [0, 1].
    pub fn new(x: f64) -> Result<Self> {
        if !x.is_finite() || !(0.0..=1.0).contains(&x) {
            return Err(Error::Domain(format!(
                "voter ideology must lie in [0, 1], got {x}"
            )));
        }
        Ok(Self(x))
    }

    /// The raw ideal point.
    pub fn value(&self) -> f64 {
        self.0
    }

    /// Left-side voters (x < 1/2) participate in the challengers' primary.
    pub fn is_left(&self) -> bool {
        self.0 < 0.5
    }
}

// ----------------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn baseline_validates() {
        assert!(ModelParams::baseline().validate().is_ok());
    }

    #[test]
    fn new_rejects_bad_fields() {
        let ok = ModelParams::baseline();
        let cases = [
            ModelParams { t: -0.1, ..ok },
            ModelParams { q: f64::NAN, ..ok },
            ModelParams { sigma_q2: 0.0, ..ok },
            ModelParams { sigma_s2: -1.0, ..ok },
            ModelParams { beta: 0.0, ..ok },
            ModelParams { lambda: 0.99, ..ok },
            ModelParams { sigma_eps: 0.0, ..ok },
            ModelParams { entry_cost: -0.01, ..ok },
            ModelParams { t: f64::INFINITY, ..ok },
        ];
        for bad in cases {
            assert!(bad.validate().is_err(), "accepted {bad:?}");
        }
    }

    #[test]
    fn new_reports_offending_field() {
        let err = ModelParams::new(1.0, 0.0, 1.0, 1.0, 1.0, 0.5, 1.0, 0.0).unwrap_err();
        match err {
            Error::InvalidParameter { name, value, .. } => {
                assert_eq!(name, "lambda");
                assert_eq!(value, 0.5);
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn with_signal_swaps_and_revalidates() {
        let base = ModelParams::baseline();
        let swapped = base.with_signal(0.5, 2.0).unwrap();
        assert_eq!(swapped.sigma_s2, 0.5);
        assert_eq!(swapped.beta, 2.0);
        assert_eq!(swapped.t, base.t);
        assert!(base.with_signal(-1.0, 2.0).is_err());
        assert!(base.with_signal(0.5, 0.0).is_err());
    }

    #[test]
    fn candidate_positions() {
        assert_eq!(Candidate::Challenger1.position(), 0.0);
        assert_eq!(Candidate::Challenger2.position(), 0.0);
        assert_eq!(Candidate::Incumbent.position(), 1.0);
    }

    #[test]
    fn voter_ideology_bounds() {
        assert!(VoterIdeology::new(0.0).is_ok());
        assert!(VoterIdeology::new(1.0).is_ok());
        assert!(VoterIdeology::new(-0.001).is_err());
        assert!(VoterIdeology::new(1.001).is_err());
        assert!(VoterIdeology::new(f64::NAN).is_err());
    }

    #[test]
    fn left_side_is_strict_half() {
        assert!(VoterIdeology::new(0.0).unwrap().is_left());
        assert!(VoterIdeology::new(0.4999).unwrap().is_left());
        assert!(!VoterIdeology::new(0.5).unwrap().is_left());
        assert!(!VoterIdeology::new(1.0).unwrap().is_left());
    }

    #[test]
    fn serde_round_trip() {
        let p = ModelParams::baseline();
        let json = serde_json::to_string(&p).unwrap();
        let back: ModelParams = serde_json::from_str(&json).unwrap();
        assert_eq!(p, back);
    }
}
