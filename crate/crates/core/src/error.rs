use alloc::string::String;
use core::fmt;

/// Convenience alias used throughout the crate.
pub type Result<T, E = Error> = core::result::Result<T, E>;

/// Which evaluator produced a non-finite value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvaluatorKind {
    /// The objective `f(x)`.
    Objective,
    /// Inequality constraint `g_i`.
    Inequality(usize),
    /// Equality constraint `h_j`.
    Equality(usize),
}

impl fmt::Display for EvaluatorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvaluatorKind::Objective => f.write_str("objective"),
            EvaluatorKind::Inequality(i) => write!(f, "inequality constraint g{}", i + 1),
            EvaluatorKind::Equality(j) => write!(f, "equality constraint h{}", j + 1),
        }
    }
}

/// Errors raised by problem construction, penalty evaluation and the engine.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A problem or engine parameter is out of its admissible range.
    Config(String),
    /// An evaluator returned NaN or an infinity.
    NonFinite {
        /// The offending evaluator.
        source: EvaluatorKind,
    },
    /// A candidate's behavior is not finite, so selection probabilities are undefined.
    NonFiniteBehavior {
        /// Index of the candidate in the cohort.
        candidate: usize,
    },
    /// Every one of the `t` samples drawn for a candidate was non-finite.
    AllSamplesNonFinite {
        /// Index of the candidate in the cohort.
        candidate: usize,
        /// Number of samples drawn.
        samples: usize,
    },
    /// The dynamic penalty factor `q_k^alpha * S` exceeded [`crate::penalty::MAX_PENALTY_FACTOR`].
    PenaltyOverflow {
        /// Learning attempt counter `q_k`.
        attempt: u64,
        /// Exponent `alpha`.
        alpha: u32,
    },
    /// The catalog has no problem with this name.
    UnknownProblem(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Config(msg) => write!(f, "invalid configuration: {msg}"),
            Error::NonFinite { source } => write!(f, "{source} returned a non-finite value"),
            Error::NonFiniteBehavior { candidate } => {
                write!(f, "candidate {candidate} has a non-finite behavior")
            }
            Error::AllSamplesNonFinite { candidate, samples } => write!(
                f,
                "all {samples} samples drawn for candidate {candidate} evaluated to non-finite values"
            ),
            Error::PenaltyOverflow { attempt, alpha } => write!(
                f,
                "dynamic penalty factor overflowed at attempt {attempt} with alpha = {alpha}"
            ),
            Error::UnknownProblem(name) => {
                write!(f, "unknown problem `{name}`; valid names are: ")?;
                for (i, n) in crate::catalog::NAMES.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    f.write_str(n)?;
                }
                Ok(())
            }
        }
    }
}

impl core::error::Error for Error {}

pub(crate) fn config_err(msg: impl Into<String>) -> Error {
    Error::Config(msg.into())
}
