//! The cohort learning loop.
//!
//! One learning attempt:
//!
//! 1. compute follow probabilities from the current behaviors,
//! 2. every candidate picks a candidate to follow by roulette wheel,
//! 3. every candidate centres its sampling box on the followed candidate's
//!    qualities with the box width contracted by `r`,
//! 4. every candidate draws `t` samples from its box and moves to the best,
//! 5. if the cohort is saturated, every box is reset to the original bounds.
//!
//! The run stops after `max_attempts` attempts, or once `max_saturations`
//! consecutive saturations leave the best point unchanged (within `epsilon`).
//!
//! The best point is archived across *every* evaluation of the run, not just
//! the final cohort: the lowest feasible objective wins, and when nothing
//! feasible was seen the lowest total violation is reported instead.

mod sampling;
mod saturation;
mod selection;

use alloc::vec::Vec;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{config_err, Result};
use crate::interval::Interval;
use crate::penalty::{make_penalized, Evaluate, Evaluation, PenaltyScheme, ViolationReport};
use crate::problem::ProblemSpec;

pub use sampling::{init_cohort, resample_and_select, sample_point, shrink_intervals};
pub use saturation::{check_saturation, SaturationState};
pub use selection::{follow_roulette, roulette_index, selection_probabilities};

/// Engine parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EngineConfig {
    /// Cohort size `C` (>= 2).
    pub candidates: usize,
    /// Sampling interval reduction factor `r` in `[0, 1]`.
    pub reduction: f64,
    /// Samples per candidate per attempt `t` (>= 1).
    pub samples: usize,
    /// Saturation tolerance `epsilon` (> 0).
    pub epsilon: f64,
    /// Cap on learning attempts.
    pub max_attempts: u64,
    /// Consecutive saturations with an unchanged best before stopping.
    pub max_saturations: u32,
    /// Seed of the run's random stream.
    pub seed: u64,
}

impl Default for EngineConfig {
    fn default() -> Self {
        Self {
            candidates: 5,
            reduction: 0.9,
            samples: 10,
            epsilon: 1e-11,
            max_attempts: 1000,
            max_saturations: 10,
            seed: 0,
        }
    }
}

impl EngineConfig {
    /// Checks every parameter range.
    pub fn validate(&self) -> Result<()> {
        if self.candidates < 2 {
            return Err(config_err("candidate count C must be >= 2"));
        }
        if !(0.0..=1.0).contains(&self.reduction) {
            return Err(config_err("reduction factor r must lie in [0, 1]"));
        }
        if self.samples < 1 {
            return Err(config_err("samples per candidate t must be >= 1"));
        }
        if !(self.epsilon.is_finite() && self.epsilon > 0.0) {
            return Err(config_err("epsilon must be finite and > 0"));
        }
        if self.max_attempts < 1 {
            return Err(config_err("max_attempts must be >= 1"));
        }
        if self.max_saturations < 1 {
            return Err(config_err("max_saturations must be >= 1"));
        }
        Ok(())
    }
}

/// One member of the cohort.
#[derive(Debug, Clone, PartialEq)]
pub struct Candidate {
    /// Decision variables.
    pub qualities: Vec<f64>,
    /// Current sampling box, one interval per variable.
    pub intervals: Vec<Interval>,
    /// Pseudo-objective at `qualities` (as evaluated, i.e. at the attempt it was sampled in).
    pub behavior: f64,
    /// Raw objective at `qualities`.
    pub raw_objective: f64,
    /// Total constraint violation at `qualities`.
    pub violation: f64,
    /// Whether `qualities` is feasible.
    pub feasible: bool,
    /// Per-constraint violations at `qualities`.
    pub violations: ViolationReport,
}

impl Candidate {
    pub(crate) fn from_evaluation(
        qualities: Vec<f64>,
        intervals: Vec<Interval>,
        e: &Evaluation,
    ) -> Self {
        Self {
            qualities,
            intervals,
            behavior: e.penalized,
            raw_objective: e.raw,
            violation: e.violation.total(),
            feasible: e.violation.feasible(),
            violations: e.violation.clone(),
        }
    }

    /// The evaluation this candidate was built from.
    pub fn evaluation(&self) -> Evaluation {
        Evaluation {
            penalized: self.behavior,
            raw: self.raw_objective,
            violation: self.violations.clone(),
        }
    }
}

/// The candidates plus the nominal (unclipped) box widths they share.
#[derive(Debug, Clone, PartialEq)]
pub struct Cohort {
    /// Members.
    pub candidates: Vec<Candidate>,
    /// Nominal box width per variable: the original width times `r^k`, `k`
    /// being the number of attempts since the last expansion.
    pub spans: Vec<f64>,
}

impl Cohort {
    /// Behaviors in candidate order.
    pub fn behaviors(&self) -> Vec<f64> {
        self.candidates.iter().map(|c| c.behavior).collect()
    }

    /// Resets every sampling box (and the nominal widths) to `bounds`.
    pub fn expand(&mut self, bounds: &[Interval]) {
        for c in &mut self.candidates {
            c.intervals.clear();
            c.intervals.extend_from_slice(bounds);
        }
        self.spans = bounds.iter().map(Interval::width).collect();
    }
}

/// One trace row: a candidate's state at the end of an attempt.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceRow {
    /// Learning attempt (1-based).
    pub attempt: u64,
    /// Candidate index (0-based).
    pub candidate: usize,
    /// Pseudo-objective `f_q`.
    pub penalized: f64,
    /// Raw objective.
    pub raw: f64,
    /// Total constraint violation.
    pub violation: f64,
}

/// Per-attempt bookkeeping.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AttemptSummary {
    /// Learning attempt; 0 stands for the initial cohort.
    pub attempt: u64,
    /// Evaluations spent in this attempt.
    pub fe: u64,
    /// Best feasible raw objective seen so far in the run.
    pub best_feasible: Option<f64>,
    /// Whether the attempt ended in saturation.
    pub saturated: bool,
}

/// State handed to the observer of [`run_with`] after every attempt.
#[derive(Debug)]
pub struct AttemptView<'a> {
    /// Learning attempt (1-based).
    pub attempt: u64,
    /// Cohort at the end of the attempt, after any expansion.
    pub cohort: &'a Cohort,
    /// Candidate followed by each candidate in this attempt.
    pub followed: &'a [usize],
    /// Nominal widths used to contract the boxes in this attempt.
    pub shrink_spans: &'a [f64],
    /// Whether the attempt ended in saturation.
    pub saturated: bool,
}

/// Outcome of one seeded run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunRecord {
    /// Best archived point.
    pub best_point: Vec<f64>,
    /// Raw objective at `best_point`.
    pub best_raw: f64,
    /// Pseudo-objective at `best_point` when it was evaluated.
    pub best_penalized: f64,
    /// Total constraint violation at `best_point`.
    pub violation: f64,
    /// Sum of `|h_j|` at `best_point`.
    pub equality_violation: f64,
    /// Whether `best_point` is feasible.
    pub feasible: bool,
    /// Function evaluations, `C + attempts * C * t`.
    pub fe: u64,
    /// Learning attempts performed.
    pub attempts: u64,
    /// Saturation events.
    pub saturations: u32,
    /// `false` when the attempt cap was hit without a single saturation.
    pub converged: bool,
    /// Seed of the run.
    pub seed: u64,
    /// `attempts * C` rows, attempt-major.
    pub trace: Vec<TraceRow>,
    /// `attempts + 1` entries; entry 0 is the initial cohort.
    pub history: Vec<AttemptSummary>,
}

#[derive(Debug, Clone)]
struct Archived {
    point: Vec<f64>,
    raw: f64,
    penalized: f64,
    violation: f64,
    equality_violation: f64,
    feasible: bool,
}

impl Archived {
    fn improves_on(&self, other: &Archived) -> bool {
        match (self.feasible, other.feasible) {
            (true, false) => true,
            (false, true) => false,
            (true, true) => self.raw < other.raw,
            (false, false) => {
                self.violation < other.violation
                    || (self.violation == other.violation && self.raw < other.raw)
            }
        }
    }
}

/// Forwards evaluations and archives the best point seen.
struct Tracked<'a, E: ?Sized> {
    inner: &'a mut E,
    best: Option<Archived>,
    fe: u64,
}

impl<E: Evaluate + ?Sized> Evaluate for Tracked<'_, E> {
    fn evaluate(&mut self, x: &[f64]) -> Result<Evaluation> {
        self.fe += 1;
        let e = self.inner.evaluate(x)?;
        let entry = Archived {
            point: Vec::new(),
            raw: e.raw,
            penalized: e.penalized,
            violation: e.violation.total(),
            equality_violation: e.violation.equality_total(),
            feasible: e.violation.feasible(),
        };
        if self.best.as_ref().is_none_or(|b| entry.improves_on(b)) {
            self.best = Some(Archived {
                point: x.to_vec(),
                ..entry
            });
        }
        Ok(e)
    }

    fn begin_attempt(&mut self, attempt: u64) {
        self.inner.begin_attempt(attempt)
    }

    fn rescore(&self, e: &Evaluation) -> Result<f64> {
        self.inner.rescore(e)
    }
}

impl<E: ?Sized> Tracked<'_, E> {
    fn best_feasible(&self) -> Option<f64> {
        self.best.as_ref().filter(|b| b.feasible).map(|b| b.raw)
    }

    /// Whether the archived best moved by more than `epsilon` since `prev`.
    fn best_changed(&self, prev: &Option<Archived>, epsilon: f64) -> bool {
        match (&self.best, prev) {
            (Some(a), Some(b)) => {
                a.feasible != b.feasible
                    || (a.raw - b.raw).abs() > epsilon
                    || (a.violation - b.violation).abs() > epsilon
            }
            _ => true,
        }
    }
}

/// Minimizes `spec` under `scheme` with the default evaluator.
pub fn run(spec: &ProblemSpec, scheme: &PenaltyScheme, cfg: &EngineConfig) -> Result<RunRecord> {
    let mut eval = make_penalized(spec, *scheme)?;
    run_with(spec.bounds(), &mut eval, cfg, |_| {})
}

/// Runs the learning loop over `bounds` with a caller-supplied evaluator,
/// calling `observer` at the end of every attempt.
pub fn run_with<E, F>(
    bounds: &[Interval],
    eval: &mut E,
    cfg: &EngineConfig,
    mut observer: F,
) -> Result<RunRecord>
where
    E: Evaluate + ?Sized,
    F: FnMut(&AttemptView<'_>),
{
    cfg.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut tracked = Tracked {
        inner: eval,
        best: None,
        fe: 0,
    };

    tracked.begin_attempt(1);
    let mut cohort = init_cohort(bounds, cfg, &mut tracked, &mut rng)?;
    let c = cfg.candidates;
    let mut history = Vec::with_capacity(64);
    history.push(AttemptSummary {
        attempt: 0,
        fe: tracked.fe,
        best_feasible: tracked.best_feasible(),
        saturated: false,
    });
    let mut trace = Vec::with_capacity(c * 64);
    let mut saturation = SaturationState::new();
    let mut followed = alloc::vec![0usize; c];
    let mut stable_saturations = 0u32;
    let mut best_at_last_saturation: Option<Archived> = None;
    let mut attempts = 0u64;

    while attempts < cfg.max_attempts {
        attempts += 1;
        let fe_before = tracked.fe;
        tracked.begin_attempt(attempts);

        let previous: Vec<Evaluation> = cohort
            .candidates
            .iter()
            .map(Candidate::evaluation)
            .collect();
        let p = selection_probabilities(&cohort.behaviors())?;
        for slot in followed.iter_mut() {
            *slot = follow_roulette(&p, &mut rng)?;
        }
        let shrink_spans = cohort.spans.clone();
        let boxes: Vec<Vec<Interval>> = followed
            .iter()
            .map(|&k| {
                shrink_intervals(
                    &cohort.candidates[k].qualities,
                    &shrink_spans,
                    cfg.reduction,
                    bounds,
                )
            })
            .collect();
        for (cand, b) in cohort.candidates.iter_mut().zip(boxes) {
            cand.intervals = b;
        }
        for s in cohort.spans.iter_mut() {
            *s *= cfg.reduction;
        }
        for i in 0..c {
            let next = resample_and_select(
                &cohort.candidates[i],
                i,
                cfg.samples,
                &mut tracked,
                &mut rng,
            )?;
            cohort.candidates[i] = next;
        }

        for (i, cand) in cohort.candidates.iter().enumerate() {
            trace.push(TraceRow {
                attempt: attempts,
                candidate: i,
                penalized: cand.behavior,
                raw: cand.raw_objective,
                violation: cand.violation,
            });
        }

        // Compare against the previous cohort at this attempt's penalty, so a
        // cohort that has stopped moving saturates under a growing penalty.
        let previous = previous
            .iter()
            .map(|e| tracked.rescore(e))
            .collect::<Result<Vec<f64>>>()?;
        saturation.restate_last(&previous);
        let saturated = check_saturation(&mut saturation, &cohort.behaviors(), cfg.epsilon);
        if saturated {
            cohort.expand(bounds);
            if tracked.best_changed(&best_at_last_saturation, cfg.epsilon) {
                stable_saturations = 1;
            } else {
                stable_saturations += 1;
            }
            best_at_last_saturation = tracked.best.clone();
        }
        history.push(AttemptSummary {
            attempt: attempts,
            fe: tracked.fe - fe_before,
            best_feasible: tracked.best_feasible(),
            saturated,
        });
        observer(&AttemptView {
            attempt: attempts,
            cohort: &cohort,
            followed: &followed,
            shrink_spans: &shrink_spans,
            saturated,
        });
        if saturated && stable_saturations >= cfg.max_saturations {
            break;
        }
    }

    let fe = tracked.fe;
    let best = tracked
        .best
        .expect("initial cohort evaluated at least two points");
    let saturations = saturation.saturation_count();
    Ok(RunRecord {
        best_point: best.point,
        best_raw: best.raw,
        best_penalized: best.penalized,
        violation: best.violation,
        equality_violation: best.equality_violation,
        feasible: best.feasible,
        fe,
        attempts,
        saturations,
        converged: saturations > 0,
        seed: cfg.seed,
        trace,
        history,
    })
}
