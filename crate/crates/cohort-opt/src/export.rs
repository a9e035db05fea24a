//! Report and trace files.
//!
//! * `report.csv`: one row per problem with columns `problem, scheme, best,
//!   mean, sd, worst, feas_rate, mean_fe, mean_time_ms, dnc`; statistics are
//!   empty when absent.
//! * `report.json`: the same report, nested.
//! * `runs.csv`: one row per replicate.
//! * `trace_<problem>_<run>.csv`: `attempt, candidate, f_q, f_raw, violation`.
//!
//! Floats are written in shortest round-trip form.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use cohort_core::TraceRow;
use serde::{Deserialize, Serialize};

use crate::harness::{ExperimentReport, ProblemResult, ReportRow};

/// File output failure, always carrying the path involved.
#[derive(Debug, thiserror::Error)]
pub enum ExportError {
    /// Filesystem failure.
    #[error("{}: {source}", path.display())]
    Io {
        /// File or directory path.
        path: PathBuf,
        /// Underlying error.
        source: std::io::Error,
    },
    /// CSV encoding or decoding failure.
    #[error("{}: {source}", path.display())]
    Csv {
        /// File path.
        path: PathBuf,
        /// Underlying error.
        source: csv::Error,
    },
    /// JSON encoding or decoding failure.
    #[error("{}: {source}", path.display())]
    Json {
        /// File path.
        path: PathBuf,
        /// Underlying error.
        source: serde_json::Error,
    },
}

/// Flat `report.csv` row.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportCsvRow {
    /// Catalog name.
    pub problem: String,
    /// Penalty scheme.
    pub scheme: String,
    /// Lowest run-best objective.
    pub best: Option<f64>,
    /// Mean run-best objective.
    pub mean: Option<f64>,
    /// Population SD of run-best objectives.
    pub sd: Option<f64>,
    /// Highest run-best objective.
    pub worst: Option<f64>,
    /// Feasible fraction of runs.
    pub feas_rate: f64,
    /// Mean function evaluations.
    pub mean_fe: f64,
    /// Mean wall time in milliseconds.
    pub mean_time_ms: f64,
    /// Runs that did not converge.
    pub dnc: usize,
}

impl From<&ReportRow> for ReportCsvRow {
    fn from(r: &ReportRow) -> Self {
        Self {
            problem: r.problem.clone(),
            scheme: r.scheme.clone(),
            best: r.stats.map(|s| s.best),
            mean: r.stats.map(|s| s.mean),
            sd: r.stats.map(|s| s.sd),
            worst: r.stats.map(|s| s.worst),
            feas_rate: r.feas_rate,
            mean_fe: r.mean_fe,
            mean_time_ms: r.mean_time_ms,
            dnc: r.dnc,
        }
    }
}

/// Flat `runs.csv` row.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunCsvRow {
    /// Catalog name.
    pub problem: String,
    /// Penalty scheme.
    pub scheme: String,
    /// Replicate index.
    pub run: usize,
    /// Seed used.
    pub seed: u64,
    /// Raw objective of the best point.
    pub best: f64,
    /// Total violation of the best point.
    pub violation: f64,
    /// Equality violation of the best point.
    pub equality_violation: f64,
    /// Whether the best point is feasible.
    pub feasible: bool,
    /// Whether the run saturated at least once.
    pub converged: bool,
    /// Function evaluations.
    pub fe: u64,
    /// Learning attempts.
    pub attempts: u64,
    /// Saturation events.
    pub saturations: u32,
    /// Wall time in milliseconds.
    pub time_ms: f64,
    /// Best point, space separated.
    pub point: String,
}

/// `trace_*.csv` row.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TraceCsvRow {
    /// Learning attempt.
    pub attempt: u64,
    /// Candidate index.
    pub candidate: usize,
    /// Pseudo-objective.
    pub f_q: f64,
    /// Raw objective.
    pub f_raw: f64,
    /// Total violation.
    pub violation: f64,
}

impl From<&TraceRow> for TraceCsvRow {
    fn from(t: &TraceRow) -> Self {
        Self {
            attempt: t.attempt,
            candidate: t.candidate,
            f_q: t.penalized,
            f_raw: t.raw,
            violation: t.violation,
        }
    }
}

fn create(path: &Path) -> Result<BufWriter<File>, ExportError> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|source| ExportError::Io {
            path: path.to_path_buf(),
            source,
        })
}

fn write_csv<T: Serialize>(
    path: &Path,
    rows: impl IntoIterator<Item = T>,
    header: &[&str],
) -> Result<(), ExportError> {
    let csv_err = |source| ExportError::Csv {
        path: path.to_path_buf(),
        source,
    };
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(create(path)?);
    w.write_record(header).map_err(csv_err)?;
    for row in rows {
        w.serialize(row).map_err(csv_err)?;
    }
    w.flush().map_err(|source| ExportError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Column names of `report.csv`.
pub const REPORT_COLUMNS: [&str; 10] = [
    "problem",
    "scheme",
    "best",
    "mean",
    "sd",
    "worst",
    "feas_rate",
    "mean_fe",
    "mean_time_ms",
    "dnc",
];

/// Column names of `runs.csv`.
pub const RUN_COLUMNS: [&str; 14] = [
    "problem",
    "scheme",
    "run",
    "seed",
    "best",
    "violation",
    "equality_violation",
    "feasible",
    "converged",
    "fe",
    "attempts",
    "saturations",
    "time_ms",
    "point",
];

/// Column names of a trace file.
pub const TRACE_COLUMNS: [&str; 5] = ["attempt", "candidate", "f_q", "f_raw", "violation"];

/// Writes `report.csv`. An empty report gives a header-only file.
pub fn write_report_csv(path: &Path, rows: &[ReportRow]) -> Result<(), ExportError> {
    write_csv(path, rows.iter().map(ReportCsvRow::from), &REPORT_COLUMNS)
}

/// Reads a `report.csv`.
pub fn read_report_csv(path: &Path) -> Result<Vec<ReportCsvRow>, ExportError> {
    let csv_err = |source| ExportError::Csv {
        path: path.to_path_buf(),
        source,
    };
    let mut r = csv::Reader::from_path(path).map_err(csv_err)?;
    r.deserialize().collect::<Result<_, _>>().map_err(csv_err)
}

/// Writes `report.json`.
pub fn write_report_json(path: &Path, report: &ExperimentReport) -> Result<(), ExportError> {
    let mut w = create(path)?;
    serde_json::to_writer_pretty(&mut w, report).map_err(|source| ExportError::Json {
        path: path.to_path_buf(),
        source,
    })?;
    writeln!(w)
        .and_then(|_| w.flush())
        .map_err(|source| ExportError::Io {
            path: path.to_path_buf(),
            source,
        })
}

/// Reads a `report.json`.
pub fn read_report_json(path: &Path) -> Result<ExperimentReport, ExportError> {
    let file = File::open(path).map_err(|source| ExportError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    serde_json::from_reader(std::io::BufReader::new(file)).map_err(|source| ExportError::Json {
        path: path.to_path_buf(),
        source,
    })
}

/// Writes one run's trace.
pub fn write_trace(path: &Path, trace: &[TraceRow]) -> Result<(), ExportError> {
    write_csv(path, trace.iter().map(TraceCsvRow::from), &TRACE_COLUMNS)
}

/// Name of the trace file of one replicate.
pub fn trace_file_name(problem: &str, run: usize) -> String {
    format!("trace_{problem}_{run}.csv")
}

/// Writes `runs.csv`.
pub fn write_runs_csv(path: &Path, results: &[ProblemResult]) -> Result<(), ExportError> {
    let rows = results.iter().flat_map(|p| {
        p.runs.iter().map(move |o| RunCsvRow {
            problem: p.problem.clone(),
            scheme: p.scheme.clone(),
            run: o.replicate,
            seed: o.record.seed,
            best: o.record.best_raw,
            violation: o.record.violation,
            equality_violation: o.record.equality_violation,
            feasible: o.record.feasible,
            converged: o.record.converged,
            fe: o.record.fe,
            attempts: o.record.attempts,
            saturations: o.record.saturations,
            time_ms: o.time_ms,
            point: o
                .record
                .best_point
                .iter()
                .map(f64::to_string)
                .collect::<Vec<_>>()
                .join(" "),
        })
    });
    write_csv(path, rows, &RUN_COLUMNS)
}

/// Writes the report, the run table and, when `traces` is set, every trace
/// into `dir`, creating it if needed. Returns the paths written.
pub fn export(
    dir: &Path,
    report: &ExperimentReport,
    results: &[ProblemResult],
    traces: bool,
) -> Result<Vec<PathBuf>, ExportError> {
    std::fs::create_dir_all(dir).map_err(|source| ExportError::Io {
        path: dir.to_path_buf(),
        source,
    })?;
    let mut written = Vec::new();
    let path = dir.join("report.csv");
    write_report_csv(&path, &report.rows)?;
    written.push(path);
    let path = dir.join("report.json");
    write_report_json(&path, report)?;
    written.push(path);
    let path = dir.join("runs.csv");
    write_runs_csv(&path, results)?;
    written.push(path);
    if traces {
        for p in results {
            for o in &p.runs {
                let path = dir.join(trace_file_name(&p.problem, o.replicate));
                write_trace(&path, &o.record.trace)?;
                written.push(path);
            }
        }
    }
    Ok(written)
}
