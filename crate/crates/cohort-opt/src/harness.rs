//! Seeded multi-replicate experiments and their summary statistics.

use std::time::Instant;

use cohort_core::{run, EngineConfig, RunRecord};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::{ConfigErrors, ExperimentConfig, ResolvedProblem};

/// Failure of an experiment. Configuration errors are raised before any run.
#[derive(Debug, thiserror::Error)]
pub enum HarnessError {
    /// The config failed validation.
    #[error(transparent)]
    Config(#[from] ConfigErrors),
    /// A problem could not be set up.
    #[error("problem {problem}: {source}")]
    Problem {
        /// Problem name.
        problem: String,
        /// Underlying error.
        source: cohort_core::Error,
    },
    /// A run aborted.
    #[error("problem {problem}, replicate {replicate}: {source}")]
    Run {
        /// Problem name.
        problem: String,
        /// Replicate index.
        replicate: usize,
        /// Underlying error.
        source: cohort_core::Error,
    },
    /// The worker pool could not be built.
    #[error("building worker pool: {0}")]
    Pool(#[from] rayon::ThreadPoolBuildError),
}

/// One replicate of one problem.
#[derive(Debug, Clone, PartialEq)]
pub struct RunOutcome {
    /// Replicate index; the seed is `base_seed + replicate`.
    pub replicate: usize,
    /// The engine's record.
    pub record: RunRecord,
    /// Wall time of the run in milliseconds.
    pub time_ms: f64,
}

/// Every replicate of one problem.
#[derive(Debug, Clone, PartialEq)]
pub struct ProblemResult {
    /// Catalog name.
    pub problem: String,
    /// `"static"` or `"dynamic"`.
    pub scheme: String,
    /// Replicates in index order.
    pub runs: Vec<RunOutcome>,
}

/// Objective statistics over the runs that converged to a feasible point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Stats {
    /// Lowest run-best objective.
    pub best: f64,
    /// Mean run-best objective.
    pub mean: f64,
    /// Population standard deviation of the run-best objectives.
    pub sd: f64,
    /// Highest run-best objective.
    pub worst: f64,
}

/// Summary of one problem.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    /// Catalog name.
    pub problem: String,
    /// `"static"` or `"dynamic"`.
    pub scheme: String,
    /// Absent when no run converged to a feasible point.
    pub stats: Option<Stats>,
    /// Fraction of runs whose best point is feasible.
    pub feas_rate: f64,
    /// Mean function evaluations per run.
    pub mean_fe: f64,
    /// Mean wall time per run in milliseconds.
    pub mean_time_ms: f64,
    /// Runs that hit the attempt cap without saturating.
    pub dnc: usize,
    /// Number of runs.
    pub runs: usize,
}

/// Summary of a whole experiment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    /// Config label, if any.
    pub name: Option<String>,
    /// One row per problem, in config order.
    pub rows: Vec<ReportRow>,
}

/// Mean, population SD and extremes of `values`; `None` when empty.
pub fn summarize(values: &[f64]) -> Option<Stats> {
    if values.is_empty() {
        return None;
    }
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n;
    Some(Stats {
        best: values.iter().copied().fold(f64::INFINITY, f64::min),
        mean,
        sd: var.sqrt(),
        worst: values.iter().copied().fold(f64::NEG_INFINITY, f64::max),
    })
}

/// Builds the summary row of one problem. DNC and infeasible runs are
/// counted but left out of the objective statistics.
pub fn aggregate(problem: &str, scheme: &str, runs: &[RunOutcome]) -> ReportRow {
    let n = runs.len().max(1) as f64;
    let bests: Vec<f64> = runs
        .iter()
        .filter(|r| r.record.converged && r.record.feasible)
        .map(|r| r.record.best_raw)
        .collect();
    ReportRow {
        problem: problem.to_string(),
        scheme: scheme.to_string(),
        stats: summarize(&bests),
        feas_rate: runs.iter().filter(|r| r.record.feasible).count() as f64 / n,
        mean_fe: runs.iter().map(|r| r.record.fe as f64).sum::<f64>() / n,
        mean_time_ms: runs.iter().map(|r| r.time_ms).sum::<f64>() / n,
        dnc: runs.iter().filter(|r| !r.record.converged).count(),
        runs: runs.len(),
    }
}

fn run_one(rp: &ResolvedProblem, replicate: usize) -> Result<RunOutcome, HarnessError> {
    let engine = EngineConfig {
        seed: rp.engine.seed.wrapping_add(replicate as u64),
        ..rp.engine
    };
    let start = Instant::now();
    let record = run(&rp.spec, &rp.scheme, &engine).map_err(|source| HarnessError::Run {
        problem: rp.spec.name().to_string(),
        replicate,
        source,
    })?;
    let time_ms = start.elapsed().as_secs_f64() * 1e3;
    log::debug!(
        "{} #{replicate}: best {} feasible {} fe {}",
        rp.spec.name(),
        record.best_raw,
        record.feasible,
        record.fe
    );
    Ok(RunOutcome {
        replicate,
        record,
        time_ms,
    })
}

/// Runs `runs` replicates of one problem on the current rayon pool.
/// Replicate `i` uses seed `rp.engine.seed + i`.
pub fn run_replicates(rp: &ResolvedProblem, runs: usize) -> Result<ProblemResult, HarnessError> {
    let runs = (0..runs)
        .into_par_iter()
        .map(|i| run_one(rp, i))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(ProblemResult {
        problem: rp.spec.name().to_string(),
        scheme: rp.scheme.label().to_string(),
        runs,
    })
}

/// Runs every replicate of every problem in `cfg` on `jobs` worker threads
/// (`None` for one per core). Results are merged in (problem, replicate)
/// order, so the output does not depend on the thread count.
pub fn run_experiment(
    cfg: &ExperimentConfig,
    jobs: Option<usize>,
) -> Result<(ExperimentReport, Vec<ProblemResult>), HarnessError> {
    cfg.validate()?;
    let problems = cfg
        .problem_names()
        .into_iter()
        .map(|name| {
            cfg.resolve(&name).map_err(|source| HarnessError::Problem {
                problem: name,
                source,
            })
        })
        .collect::<Result<Vec<ResolvedProblem>, _>>()?;

    let tasks: Vec<(usize, usize)> = (0..problems.len())
        .flat_map(|p| (0..cfg.runs).map(move |r| (p, r)))
        .collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.unwrap_or(0))
        .build()?;
    let outcomes = pool.install(|| {
        tasks
            .par_iter()
            .map(|&(p, replicate)| run_one(&problems[p], replicate).map(|o| (p, o)))
            .collect::<Result<Vec<_>, HarnessError>>()
    })?;

    let mut results: Vec<ProblemResult> = problems
        .iter()
        .map(|rp| ProblemResult {
            problem: rp.spec.name().to_string(),
            scheme: rp.scheme.label().to_string(),
            runs: Vec::with_capacity(cfg.runs),
        })
        .collect();
    for (p, outcome) in outcomes {
        results[p].runs.push(outcome);
    }
    let rows = results
        .iter()
        .map(|r| aggregate(&r.problem, &r.scheme, &r.runs))
        .collect();
    Ok((
        ExperimentReport {
            name: cfg.name.clone(),
            rows,
        },
        results,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn outcome(best: f64, feasible: bool, converged: bool, fe: u64, time_ms: f64) -> RunOutcome {
        RunOutcome {
            replicate: 0,
            record: RunRecord {
                best_point: vec![],
                best_raw: best,
                best_penalized: best,
                violation: if feasible { 0.0 } else { 1.0 },
                equality_violation: 0.0,
                feasible,
                fe,
                attempts: 1,
                saturations: u32::from(converged),
                converged,
                seed: 0,
                trace: vec![],
                history: vec![],
            },
            time_ms,
        }
    }

    #[test]
    fn one_two_three() {
        let runs: Vec<_> = [1.0, 2.0, 3.0]
            .iter()
            .map(|&b| outcome(b, true, true, 10, 1.0))
            .collect();
        let s = aggregate("X", "static", &runs).stats.unwrap();
        assert_eq!((s.best, s.mean, s.worst), (1.0, 2.0, 3.0));
        assert!((s.sd - (2.0f64 / 3.0).sqrt()).abs() < 1e-12);
        assert!((s.sd - 0.8165).abs() < 1e-4);
    }

    #[test]
    fn identical_bests_have_zero_sd() {
        let runs: Vec<_> = (0..4).map(|_| outcome(-5.5, true, true, 10, 1.0)).collect();
        assert_eq!(aggregate("X", "static", &runs).stats.unwrap().sd, 0.0);
    }

    #[test]
    fn two_close_values() {
        let runs = [
            outcome(-15.0, true, true, 1, 0.0),
            outcome(-14.99, true, true, 1, 0.0),
        ];
        let s = aggregate("X", "static", &runs).stats.unwrap();
        assert!((s.mean + 14.995).abs() < 1e-12);
    }

    #[test]
    fn single_run_mean_is_best() {
        let s = aggregate("X", "static", &[outcome(4.0, true, true, 1, 0.0)])
            .stats
            .unwrap();
        assert_eq!((s.mean, s.best, s.sd), (4.0, 4.0, 0.0));
    }

    #[test]
    fn dnc_and_infeasible_runs_are_counted_not_averaged() {
        let runs = [
            outcome(1.0, true, true, 100, 2.0),
            outcome(-50.0, true, false, 300, 4.0),
            outcome(-90.0, false, true, 200, 6.0),
        ];
        let row = aggregate("X", "dynamic", &runs);
        assert_eq!(row.stats.unwrap().mean, 1.0);
        assert_eq!(row.dnc, 1);
        assert!((row.feas_rate - 2.0 / 3.0).abs() < 1e-15);
        assert_eq!(row.mean_fe, 200.0);
        assert_eq!(row.mean_time_ms, 4.0);
    }

    #[test]
    fn all_dnc_leaves_stats_absent() {
        let runs: Vec<_> = (0..3).map(|_| outcome(1.0, true, false, 5, 0.0)).collect();
        let row = aggregate("G17", "static", &runs);
        assert!(row.stats.is_none());
        assert_eq!(row.dnc, 3);
    }
}
