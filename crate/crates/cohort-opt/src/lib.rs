//! Experiment harness, report files and convergence plots for
//! [`cohort_core`].
//!
//! ```no_run
//! use cohort_opt::{config::ExperimentConfig, export, harness};
//! use std::path::Path;
//!
//! let cfg = ExperimentConfig::load(Path::new("configs/paper_sci.json")).unwrap();
//! let (report, results) = harness::run_experiment(&cfg, None).unwrap();
//! export::export(Path::new("out"), &report, &results, true).unwrap();
//! ```
#![warn(missing_docs)]

pub mod config;
pub mod export;
pub mod harness;
pub mod plot;
