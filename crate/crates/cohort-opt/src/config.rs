//! Experiment configuration files.
//!
//! A config names the problems to solve, the penalty scheme, engine settings
//! and the replicate count. Per-problem overrides let the penalty constant
//! and the attempt budget differ between problems.
//!
//! ```json
//! {
//!   "problems": ["G24", "G08"],
//!   "scheme": { "kind": "static", "S": 1000.0 },
//!   "engine": { "samples_t": 10, "max_attempts": 1000 },
//!   "runs": 20,
//!   "base_seed": 0,
//!   "overrides": { "G24": { "S": 1e7 } }
//! }
//! ```

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};

use cohort_core::catalog::{self, design};
use cohort_core::penalty::{DEFAULT_ALPHA, DEFAULT_BETA, DEFAULT_DYNAMIC_S, DEFAULT_STATIC_S};
use cohort_core::{EngineConfig, PenaltyScheme, ProblemSpec};
use serde::{Deserialize, Serialize};
use serde_json::Value;

/// Static or dynamic penalty.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum SchemeKind {
    /// Constant penalty factor.
    #[default]
    Static,
    /// Penalty factor growing with the attempt counter.
    Dynamic,
}

impl SchemeKind {
    /// Short label used in reports.
    pub fn label(self) -> &'static str {
        match self {
            SchemeKind::Static => "static",
            SchemeKind::Dynamic => "dynamic",
        }
    }
}

impl fmt::Display for SchemeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Penalty settings. Unset parameters take the scheme defaults.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct SchemeConfig {
    /// Static or dynamic.
    #[serde(default)]
    pub kind: SchemeKind,
    /// Penalty constant.
    #[serde(rename = "S", default, skip_serializing_if = "Option::is_none")]
    pub s: Option<f64>,
    /// Exponent of the attempt counter (dynamic only).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<u32>,
    /// Exponent of the violation (dynamic only).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<u32>,
    #[serde(flatten, skip_serializing)]
    unknown: BTreeMap<String, Value>,
}

/// Engine settings. Unset fields take the engine defaults.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct EngineSettings {
    /// Cohort size `C`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub candidates: Option<usize>,
    /// Reduction factor `r`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reduction: Option<f64>,
    /// Samples per candidate per attempt `t`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples_t: Option<usize>,
    /// Saturation tolerance.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<f64>,
    /// Attempt budget.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_attempts: Option<u64>,
    /// Stable saturations needed to stop.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_saturations: Option<u32>,
    #[serde(flatten, skip_serializing)]
    unknown: BTreeMap<String, Value>,
}

impl EngineSettings {
    fn layered(&self, top: &EngineSettings) -> EngineSettings {
        EngineSettings {
            candidates: top.candidates.or(self.candidates),
            reduction: top.reduction.or(self.reduction),
            samples_t: top.samples_t.or(self.samples_t),
            epsilon: top.epsilon.or(self.epsilon),
            max_attempts: top.max_attempts.or(self.max_attempts),
            max_saturations: top.max_saturations.or(self.max_saturations),
            unknown: BTreeMap::new(),
        }
    }

    fn apply(&self, seed: u64) -> EngineConfig {
        let d = EngineConfig::default();
        EngineConfig {
            candidates: self.candidates.unwrap_or(d.candidates),
            reduction: self.reduction.unwrap_or(d.reduction),
            samples: self.samples_t.unwrap_or(d.samples),
            epsilon: self.epsilon.unwrap_or(d.epsilon),
            max_attempts: self.max_attempts.unwrap_or(d.max_attempts),
            max_saturations: self.max_saturations.unwrap_or(d.max_saturations),
            seed,
        }
    }
}

/// Settings that replace the experiment-wide ones for a single problem.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ProblemOverride {
    /// Penalty constant.
    #[serde(rename = "S", default, skip_serializing_if = "Option::is_none")]
    pub s: Option<f64>,
    /// Dynamic-penalty attempt exponent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<u32>,
    /// Dynamic-penalty violation exponent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<u32>,
    /// Equality tolerance.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<f64>,
    /// Engine settings.
    #[serde(flatten)]
    pub engine: EngineSettings,
}

/// A complete experiment description.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    /// Label written into reports.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    /// Catalog names; empty means every catalog entry.
    #[serde(default)]
    pub problems: Vec<String>,
    /// Penalty scheme.
    #[serde(default)]
    pub scheme: SchemeConfig,
    /// Equality tolerance for every problem.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<f64>,
    /// Engine settings for every problem.
    #[serde(default)]
    pub engine: EngineSettings,
    /// Replicates per problem.
    #[serde(default = "default_runs")]
    pub runs: usize,
    /// Seed of replicate 0; replicate `i` uses `base_seed + i`.
    #[serde(default)]
    pub base_seed: u64,
    /// Output directory.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
    /// Round pressure-vessel plate thicknesses up to 1/16 inch.
    #[serde(default)]
    pub pv_discrete: bool,
    /// Per-problem settings, keyed by catalog name.
    #[serde(default)]
    pub overrides: BTreeMap<String, ProblemOverride>,
    #[serde(flatten, skip_serializing)]
    unknown: BTreeMap<String, Value>,
}

fn default_runs() -> usize {
    20
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            name: None,
            problems: Vec::new(),
            scheme: SchemeConfig::default(),
            delta: None,
            engine: EngineSettings::default(),
            runs: default_runs(),
            base_seed: 0,
            out: None,
            pv_discrete: false,
            overrides: BTreeMap::new(),
            unknown: BTreeMap::new(),
        }
    }
}

/// Every problem found while validating a config.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("invalid experiment config:\n  - {}", .0.join("\n  - "))]
pub struct ConfigErrors(pub Vec<String>);

/// Failure to load a config file.
#[derive(Debug, thiserror::Error)]
pub enum LoadError {
    /// The file could not be read.
    #[error("reading {path}: {source}")]
    Io {
        /// File path.
        path: PathBuf,
        /// Underlying error.
        source: std::io::Error,
    },
    /// The file is not valid JSON for the schema.
    #[error("parsing {path}: {source}")]
    Parse {
        /// File path.
        path: PathBuf,
        /// Underlying error.
        source: serde_json::Error,
    },
    /// The file parsed but violates the schema rules.
    #[error("{path}: {source}")]
    Invalid {
        /// File path.
        path: PathBuf,
        /// Every violation.
        source: ConfigErrors,
    },
}

/// Everything needed to run one problem.
#[derive(Debug, Clone)]
pub struct ResolvedProblem {
    /// The problem.
    pub spec: ProblemSpec,
    /// Penalty scheme.
    pub scheme: PenaltyScheme,
    /// Engine settings with the seed of replicate 0.
    pub engine: EngineConfig,
}

impl ExperimentConfig {
    /// Parses JSON text and validates it.
    pub fn from_json(text: &str) -> Result<Self, LoadErrorKind> {
        let cfg: ExperimentConfig = serde_json::from_str(text).map_err(LoadErrorKind::Parse)?;
        cfg.validate().map_err(LoadErrorKind::Invalid)?;
        Ok(cfg)
    }

    /// Reads, parses and validates a config file.
    pub fn load(path: &Path) -> Result<Self, LoadError> {
        let text = std::fs::read_to_string(path).map_err(|source| LoadError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::from_json(&text).map_err(|e| match e {
            LoadErrorKind::Parse(source) => LoadError::Parse {
                path: path.to_path_buf(),
                source,
            },
            LoadErrorKind::Invalid(source) => LoadError::Invalid {
                path: path.to_path_buf(),
                source,
            },
        })
    }

    /// Problem names to run, in order.
    pub fn problem_names(&self) -> Vec<String> {
        if self.problems.is_empty() {
            catalog::NAMES.iter().map(|s| s.to_string()).collect()
        } else {
            self.problems.clone()
        }
    }

    /// Checks every field and reports all violations at once.
    pub fn validate(&self) -> Result<(), ConfigErrors> {
        let mut errs = Vec::new();
        for key in self.unknown.keys() {
            errs.push(format!("unknown field `{key}`"));
        }
        for key in self.scheme.unknown.keys() {
            errs.push(format!("scheme: unknown field `{key}`"));
        }
        for key in self.engine.unknown.keys() {
            errs.push(format!("engine: unknown field `{key}`"));
        }
        if self.runs == 0 {
            errs.push("runs must be >= 1".into());
        }
        if self.scheme.kind == SchemeKind::Static
            && (self.scheme.alpha.is_some() || self.scheme.beta.is_some())
        {
            errs.push("scheme: alpha and beta apply to the dynamic scheme only".into());
        }
        check_delta("delta", self.delta, &mut errs);
        for name in &self.problems {
            if catalog::lookup(name).is_err() {
                errs.push(format!("problems: unknown problem `{name}`"));
            }
        }
        for (name, o) in &self.overrides {
            if catalog::lookup(name).is_err() {
                errs.push(format!("overrides: unknown problem `{name}`"));
            }
            for key in o.engine.unknown.keys() {
                errs.push(format!("overrides.{name}: unknown field `{key}`"));
            }
            if self.scheme.kind == SchemeKind::Static && (o.alpha.is_some() || o.beta.is_some()) {
                errs.push(format!(
                    "overrides.{name}: alpha and beta apply to the dynamic scheme only"
                ));
            }
            check_delta(&format!("overrides.{name}.delta"), o.delta, &mut errs);
        }
        // Parameter ranges are checked on the fully resolved values, so a bad
        // experiment-wide value is reported once and each bad override once.
        let base = self.scheme_for(None);
        if let Err(e) = base.validate() {
            errs.push(format!("scheme: {e}"));
        }
        if let Err(e) = self.engine.apply(self.base_seed).validate() {
            errs.push(format!("engine: {e}"));
        }
        for (name, o) in &self.overrides {
            if let Err(e) = self.scheme_for(Some(o)).validate() {
                if base.validate().is_ok() {
                    errs.push(format!("overrides.{name}: {e}"));
                }
            }
            if let Err(e) = self
                .engine
                .layered(&o.engine)
                .apply(self.base_seed)
                .validate()
            {
                if self.engine.apply(self.base_seed).validate().is_ok() {
                    errs.push(format!("overrides.{name}: {e}"));
                }
            }
        }
        if errs.is_empty() {
            Ok(())
        } else {
            Err(ConfigErrors(errs))
        }
    }

    fn scheme_for(&self, o: Option<&ProblemOverride>) -> PenaltyScheme {
        let s = o.and_then(|o| o.s).or(self.scheme.s);
        match self.scheme.kind {
            SchemeKind::Static => PenaltyScheme::Static {
                s: s.unwrap_or(DEFAULT_STATIC_S),
            },
            SchemeKind::Dynamic => PenaltyScheme::Dynamic {
                s: s.unwrap_or(DEFAULT_DYNAMIC_S),
                alpha: o
                    .and_then(|o| o.alpha)
                    .or(self.scheme.alpha)
                    .unwrap_or(DEFAULT_ALPHA),
                beta: o
                    .and_then(|o| o.beta)
                    .or(self.scheme.beta)
                    .unwrap_or(DEFAULT_BETA),
            },
        }
    }

    /// Spec, scheme and engine settings for `name` after applying overrides.
    pub fn resolve(&self, name: &str) -> cohort_core::Result<ResolvedProblem> {
        let mut spec = if self.pv_discrete && name.eq_ignore_ascii_case("PV") {
            design::pressure_vessel(true)
        } else {
            catalog::lookup(name)?
        };
        let o = self.override_for(spec.name());
        if let Some(delta) = o.and_then(|o| o.delta).or(self.delta) {
            spec = spec.with_equality_tolerance(delta)?;
        }
        let engine = match o {
            Some(o) => self.engine.layered(&o.engine),
            None => self.engine.clone(),
        };
        let scheme = self.scheme_for(o);
        scheme.validate()?;
        let engine = engine.apply(self.base_seed);
        engine.validate()?;
        Ok(ResolvedProblem {
            spec,
            scheme,
            engine,
        })
    }

    fn override_for(&self, name: &str) -> Option<&ProblemOverride> {
        self.overrides
            .iter()
            .find(|(k, _)| k.eq_ignore_ascii_case(name))
            .map(|(_, v)| v)
    }
}

fn check_delta(field: &str, delta: Option<f64>, errs: &mut Vec<String>) {
    if let Some(d) = delta {
        if !(d.is_finite() && d > 0.0) {
            errs.push(format!("{field} must be a positive number, got {d}"));
        }
    }
}

/// Parse or validation failure without file context.
#[derive(Debug, thiserror::Error)]
pub enum LoadErrorKind {
    /// Malformed JSON or wrong field types.
    #[error(transparent)]
    Parse(serde_json::Error),
    /// Semantic violations.
    #[error(transparent)]
    Invalid(ConfigErrors),
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults() {
        let cfg = ExperimentConfig::from_json("{}").unwrap();
        assert_eq!(cfg.runs, 20);
        assert_eq!(cfg.problem_names().len(), 23);
        let r = cfg.resolve("G24").unwrap();
        assert_eq!(r.scheme, PenaltyScheme::static_default());
        assert_eq!(r.engine, EngineConfig::default());
    }

    #[test]
    fn overrides_layer_on_top() {
        let cfg = ExperimentConfig::from_json(
            r#"{"scheme": {"kind": "dynamic", "S": 2.0},
                "engine": {"samples_t": 4, "max_attempts": 50},
                "base_seed": 9,
                "overrides": {"g24": {"S": 7.0, "max_attempts": 70, "delta": 0.001}}}"#,
        )
        .unwrap();
        let r = cfg.resolve("G24").unwrap();
        assert_eq!(
            r.scheme,
            PenaltyScheme::Dynamic {
                s: 7.0,
                alpha: 2,
                beta: 2
            }
        );
        assert_eq!(
            (r.engine.samples, r.engine.max_attempts, r.engine.seed),
            (4, 70, 9)
        );
        assert_eq!(r.spec.constraints().delta(), 0.001);
        let other = cfg.resolve("G08").unwrap();
        assert_eq!(
            other.scheme,
            PenaltyScheme::Dynamic {
                s: 2.0,
                alpha: 2,
                beta: 2
            }
        );
        assert_eq!(other.engine.max_attempts, 50);
    }

    #[test]
    fn every_violation_is_listed() {
        let err = ExperimentConfig::from_json(
            r#"{"problems": ["G13", "G24"],
                "runs": 0,
                "colour": "red",
                "delta": -1,
                "scheme": {"kind": "static", "S": -5, "alpha": 3},
                "engine": {"candidates": 1, "speed": 2},
                "overrides": {"Nope": {"S": 1}, "G01": {"reduction": 2.0}}}"#,
        )
        .unwrap_err();
        let LoadErrorKind::Invalid(ConfigErrors(errs)) = err else {
            panic!("expected validation errors, got {err}");
        };
        let all = errs.join("\n");
        for needle in [
            "unknown field `colour`",
            "engine: unknown field `speed`",
            "runs must be >= 1",
            "alpha and beta apply to the dynamic scheme only",
            "delta must be a positive number",
            "unknown problem `G13`",
            "overrides: unknown problem `Nope`",
            "scheme:",
            "engine:",
        ] {
            assert!(all.contains(needle), "missing `{needle}` in\n{all}");
        }
        assert!(errs.len() >= 9, "{all}");
    }

    #[test]
    fn bad_json_is_a_parse_error() {
        assert!(matches!(
            ExperimentConfig::from_json(r#"{"runs": "many"}"#),
            Err(LoadErrorKind::Parse(_))
        ));
    }

    #[test]
    fn discrete_pressure_vessel_toggle() {
        let cfg = ExperimentConfig::from_json(r#"{"pv_discrete": true}"#).unwrap();
        let spec = cfg.resolve("PV").unwrap().spec;
        assert!(spec.known_best_point().is_none());
        assert!((spec.known_best().unwrap() - 6059.714335).abs() < 1e-9);
    }

    #[test]
    fn round_trips_through_json() {
        let cfg = ExperimentConfig::from_json(
            r#"{"name": "x", "problems": ["G24"], "scheme": {"kind": "dynamic", "alpha": 1},
                "overrides": {"G24": {"S": 3.0, "samples_t": 2}}}"#,
        )
        .unwrap();
        let text = serde_json::to_string(&cfg).unwrap();
        assert_eq!(ExperimentConfig::from_json(&text).unwrap(), cfg);
    }
}
