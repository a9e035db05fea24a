//! Cohort Intelligence (CI) for constrained continuous minimization.
//!
//! A cohort of candidates repeatedly picks a peer to follow by roulette
//! wheel, contracts its sampling box around that peer, and keeps the best of
//! `t` fresh samples. When the cohort's behaviors agree to within `epsilon`
//! for two successive learning attempts the cohort is *saturated* and every
//! sampling box is reset to the original bounds.
//!
//! Constraints are folded into a pseudo-objective by a static or dynamic
//! penalty ([`PenaltyScheme`]). The [`catalog`] ships the G-suite benchmark
//! problems, three mechanical design problems and three deep-drawing
//! response-surface problems.
//!
//! ```
//! use cohort_core::{catalog, run, EngineConfig, PenaltyScheme};
//!
//! let spec = catalog::lookup("G24").unwrap();
//! let cfg = EngineConfig { seed: 7, ..EngineConfig::default() };
//! let record = run(&spec, &PenaltyScheme::default(), &cfg).unwrap();
//! assert!(record.feasible);
//! assert!(record.best_raw < -5.3);
//! ```
//!
//! The crate is `no_std` (it needs `alloc`). IO, reporting and the command
//! line tool live in the `cohort-opt` crate.
#![cfg_attr(not(test), no_std)]
#![warn(missing_docs)]

extern crate alloc;

pub mod catalog;
pub mod engine;
mod error;
mod interval;
pub mod penalty;
mod problem;

pub use engine::{
    run, run_with, AttemptSummary, AttemptView, Candidate, Cohort, EngineConfig, RunRecord,
    TraceRow,
};
pub use error::{Error, Result};
pub use interval::Interval;
pub use penalty::{
    make_penalized, Evaluate, Evaluation, PenalizedObjective, PenaltyScheme, ViolationReport,
};
pub use problem::{
    ConstraintFn, ConstraintSet, Features, ObjectiveFn, ProblemKind, ProblemSpec,
    ProblemSpecBuilder, DEFAULT_EQUALITY_TOLERANCE,
};
