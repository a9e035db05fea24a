//! Penalty transforms turning a constrained objective into the pseudo-objective
//! `f_q`.
//!
//! * Static: `f_q = f + sum_i S * g_i^2 + sum_j S * |h_j|` over violated constraints.
//! * Dynamic: `f_q = f + sum_i (q^a * S) * g_i^b + sum_j (q^a * S) * |h_j|^b`,
//!   where `q` is the learning-attempt counter.
//!
//! An inequality is violated when `g_i > 0`, an equality when `|h_j| > delta`.
//! Equality terms use `|h_j|` so that a negative `h_j` is never rewarded; the
//! dynamic equality term is an extension of the inequality-only formula.

use alloc::vec::Vec;

use crate::error::{config_err, Error, EvaluatorKind, Result};
use crate::problem::{ConstraintSet, ProblemSpec};

/// Upper limit on the dynamic penalty factor `q_k^alpha * S`. Larger factors
/// are reported as [`Error::PenaltyOverflow`] rather than silently producing
/// infinities.
pub const MAX_PENALTY_FACTOR: f64 = 1e150;

/// Default static penalty constant.
pub const DEFAULT_STATIC_S: f64 = 1e3;
/// Default dynamic penalty constant.
pub const DEFAULT_DYNAMIC_S: f64 = 0.5;
/// Default dynamic exponent on the attempt counter.
pub const DEFAULT_ALPHA: u32 = 2;
/// Default dynamic exponent on the violation.
pub const DEFAULT_BETA: u32 = 2;

/// Per-constraint violation magnitudes at one point.
#[derive(Debug, Clone, PartialEq)]
pub struct ViolationReport {
    inequality: Vec<f64>,
    equality: Vec<f64>,
    delta: f64,
}

impl ViolationReport {
    /// Builds a report from raw constraint values `g` and `h`.
    pub fn from_values(g: &[f64], h: &[f64], delta: f64) -> Self {
        Self {
            inequality: g.iter().map(|v| v.max(0.0)).collect(),
            equality: h.iter().map(|v| v.abs()).collect(),
            delta,
        }
    }

    /// `max(0, g_i)` for each inequality.
    pub fn inequality(&self) -> &[f64] {
        &self.inequality
    }

    /// `|h_j|` for each equality.
    pub fn equality(&self) -> &[f64] {
        &self.equality
    }

    /// Equality tolerance the report was made with.
    pub fn delta(&self) -> f64 {
        self.delta
    }

    /// Whether equality `j` counts as violated (`|h_j| > delta`).
    pub fn equality_violated(&self, j: usize) -> bool {
        self.equality[j] > self.delta
    }

    /// Sum of all magnitudes, including equality residuals inside the tolerance.
    pub fn total(&self) -> f64 {
        self.inequality.iter().fold(0.0, |a, v| a + v) + self.equality_total()
    }

    /// Sum of `|h_j|`.
    pub fn equality_total(&self) -> f64 {
        self.equality.iter().fold(0.0, |a, v| a + v)
    }

    /// No inequality is positive and every `|h_j| <= delta`.
    pub fn feasible(&self) -> bool {
        self.inequality.iter().all(|v| *v == 0.0) && self.equality.iter().all(|v| *v <= self.delta)
    }

    fn violated_terms(&self) -> impl Iterator<Item = (f64, bool)> + '_ {
        let ineq = self
            .inequality
            .iter()
            .filter(|v| **v > 0.0)
            .map(|v| (*v, true));
        let eq = self
            .equality
            .iter()
            .filter(move |v| **v > self.delta)
            .map(|v| (*v, false));
        ineq.chain(eq)
    }
}

/// Evaluates every constraint of `cs` at `x`.
pub fn evaluate_violations(cs: &ConstraintSet, x: &[f64]) -> Result<ViolationReport> {
    let mut g = Vec::with_capacity(cs.inequalities.len());
    for (i, gi) in cs.inequalities.iter().enumerate() {
        let v = gi(x);
        if !v.is_finite() {
            return Err(Error::NonFinite {
                source: EvaluatorKind::Inequality(i),
            });
        }
        g.push(v);
    }
    let mut h = Vec::with_capacity(cs.equalities.len());
    for (j, hj) in cs.equalities.iter().enumerate() {
        let v = hj(x);
        if !v.is_finite() {
            return Err(Error::NonFinite {
                source: EvaluatorKind::Equality(j),
            });
        }
        h.push(v);
    }
    Ok(ViolationReport::from_values(&g, &h, cs.delta))
}

/// Static pseudo-objective: `S * g^2` per violated inequality, `S * |h|` per
/// violated equality. Equals `f` exactly on feasible points.
pub fn static_pseudo_objective(f: f64, report: &ViolationReport, s: f64) -> f64 {
    report.violated_terms().fold(f, |acc, (v, is_ineq)| {
        if is_ineq {
            acc + s * (v * v)
        } else {
            acc + s * v
        }
    })
}

/// Dynamic pseudo-objective with factor `q_k^alpha * S` and exponent `beta`
/// on every violated magnitude.
pub fn dynamic_pseudo_objective(
    f: f64,
    report: &ViolationReport,
    s: f64,
    alpha: u32,
    beta: u32,
    q_k: u64,
) -> Result<f64> {
    let factor = dynamic_factor(s, alpha, q_k)?;
    Ok(report
        .violated_terms()
        .fold(f, |acc, (v, _)| acc + factor * powu(v, beta)))
}

fn dynamic_factor(s: f64, alpha: u32, q_k: u64) -> Result<f64> {
    let q = q_k.max(1) as f64;
    let factor = libm::pow(q, alpha as f64) * s;
    if factor.is_finite() && factor <= MAX_PENALTY_FACTOR {
        Ok(factor)
    } else {
        Err(Error::PenaltyOverflow {
            attempt: q_k,
            alpha,
        })
    }
}

fn powu(v: f64, e: u32) -> f64 {
    match e {
        1 => v,
        2 => v * v,
        _ => libm::pow(v, e as f64),
    }
}

/// Static or dynamic penalty parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PenaltyScheme {
    /// Constant weight `s`.
    Static {
        /// Penalty constant `S`.
        s: f64,
    },
    /// Weight `q_k^alpha * s`, growing with the learning attempt `q_k`.
    Dynamic {
        /// Penalty constant `S`.
        s: f64,
        /// Exponent on the attempt counter.
        alpha: u32,
        /// Exponent on the violation magnitude.
        beta: u32,
    },
}

impl Default for PenaltyScheme {
    fn default() -> Self {
        Self::static_default()
    }
}

impl PenaltyScheme {
    /// `Static { s: 1e3 }`.
    pub const fn static_default() -> Self {
        PenaltyScheme::Static {
            s: DEFAULT_STATIC_S,
        }
    }

    /// `Dynamic { s: 0.5, alpha: 2, beta: 2 }`.
    pub const fn dynamic_default() -> Self {
        PenaltyScheme::Dynamic {
            s: DEFAULT_DYNAMIC_S,
            alpha: DEFAULT_ALPHA,
            beta: DEFAULT_BETA,
        }
    }

    /// `"static"` or `"dynamic"`.
    pub fn label(&self) -> &'static str {
        match self {
            PenaltyScheme::Static { .. } => "static",
            PenaltyScheme::Dynamic { .. } => "dynamic",
        }
    }

    /// Checks `S > 0` and `alpha, beta >= 1`.
    pub fn validate(&self) -> Result<()> {
        let s = match *self {
            PenaltyScheme::Static { s } => s,
            PenaltyScheme::Dynamic { s, alpha, beta } => {
                if alpha < 1 || beta < 1 {
                    return Err(config_err(
                        "dynamic penalty requires alpha >= 1 and beta >= 1",
                    ));
                }
                s
            }
        };
        if !(s.is_finite() && s > 0.0) {
            return Err(config_err("penalty constant S must be finite and > 0"));
        }
        Ok(())
    }

    /// Pseudo-objective at learning attempt `q_k` (ignored by the static scheme).
    pub fn pseudo_objective(&self, f: f64, report: &ViolationReport, q_k: u64) -> Result<f64> {
        match *self {
            PenaltyScheme::Static { s } => Ok(static_pseudo_objective(f, report, s)),
            PenaltyScheme::Dynamic { s, alpha, beta } => {
                dynamic_pseudo_objective(f, report, s, alpha, beta, q_k)
            }
        }
    }
}

/// Everything produced by one function evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct Evaluation {
    /// Pseudo-objective `f_q(x)`.
    pub penalized: f64,
    /// Raw objective `f(x)`.
    pub raw: f64,
    /// Constraint violations at `x`.
    pub violation: ViolationReport,
}

/// Something the engine can evaluate points with.
///
/// Every call to [`Evaluate::evaluate`] is one function evaluation (FE),
/// whether it succeeds or not.
pub trait Evaluate {
    /// Evaluates `x`.
    fn evaluate(&mut self, x: &[f64]) -> Result<Evaluation>;

    /// Called by the engine before learning attempt `attempt` (1-based).
    fn begin_attempt(&mut self, _attempt: u64) {}

    /// Pseudo-objective of an earlier evaluation under the current
    /// attempt's penalty. Not a function evaluation.
    fn rescore(&self, e: &Evaluation) -> Result<f64> {
        Ok(e.penalized)
    }
}

impl<E: Evaluate + ?Sized> Evaluate for &mut E {
    fn evaluate(&mut self, x: &[f64]) -> Result<Evaluation> {
        (**self).evaluate(x)
    }

    fn begin_attempt(&mut self, attempt: u64) {
        (**self).begin_attempt(attempt)
    }

    fn rescore(&self, e: &Evaluation) -> Result<f64> {
        (**self).rescore(e)
    }
}

/// A problem wrapped with a penalty scheme and an FE counter.
#[derive(Debug, Clone)]
pub struct PenalizedObjective<'a> {
    spec: &'a ProblemSpec,
    scheme: PenaltyScheme,
    attempt: u64,
    evaluations: u64,
}

/// Wraps `spec` with `scheme`, validating the scheme parameters.
pub fn make_penalized(spec: &ProblemSpec, scheme: PenaltyScheme) -> Result<PenalizedObjective<'_>> {
    scheme.validate()?;
    Ok(PenalizedObjective {
        spec,
        scheme,
        attempt: 1,
        evaluations: 0,
    })
}

impl<'a> PenalizedObjective<'a> {
    /// Number of evaluations performed so far.
    pub fn evaluations(&self) -> u64 {
        self.evaluations
    }

    /// Current value of the attempt counter `q_k`.
    pub fn attempt(&self) -> u64 {
        self.attempt
    }

    /// The wrapped problem.
    pub fn spec(&self) -> &'a ProblemSpec {
        self.spec
    }

    /// The penalty scheme.
    pub fn scheme(&self) -> PenaltyScheme {
        self.scheme
    }
}

impl Evaluate for PenalizedObjective<'_> {
    fn evaluate(&mut self, x: &[f64]) -> Result<Evaluation> {
        self.evaluations += 1;
        let raw = self.spec.objective(x);
        if !raw.is_finite() {
            return Err(Error::NonFinite {
                source: EvaluatorKind::Objective,
            });
        }
        let violation = evaluate_violations(self.spec.constraints(), x)?;
        let penalized = self
            .scheme
            .pseudo_objective(raw, &violation, self.attempt)?;
        if !penalized.is_finite() {
            return Err(Error::NonFinite {
                source: EvaluatorKind::Objective,
            });
        }
        Ok(Evaluation {
            penalized,
            raw,
            violation,
        })
    }

    fn begin_attempt(&mut self, attempt: u64) {
        self.attempt = attempt.max(1);
    }

    fn rescore(&self, e: &Evaluation) -> Result<f64> {
        self.scheme
            .pseudo_objective(e.raw, &e.violation, self.attempt)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::Interval;
    use alloc::vec;

    /// Minimize -x1*x2 subject to x1 + x2 - 4 <= 0.
    fn toy() -> ProblemSpec {
        ProblemSpec::builder(
            "toy",
            vec![Interval::new(0.0, 5.0), Interval::new(0.0, 5.0)],
        )
        .objective(|x| -x[0] * x[1])
        .inequality(|x| x[0] + x[1] - 4.0)
        .build()
        .unwrap()
    }

    #[test]
    fn interior_point_is_feasible() {
        let r = evaluate_violations(toy().constraints(), &[1.0, 1.0]).unwrap();
        assert_eq!(r.inequality(), &[0.0]);
        assert!(r.feasible());
        assert_eq!(r.total(), 0.0);
    }

    #[test]
    fn violated_point_reports_magnitude() {
        let r = evaluate_violations(toy().constraints(), &[3.0, 3.0]).unwrap();
        assert_eq!(r.inequality(), &[2.0]);
        assert!(!r.feasible());
        assert_eq!(r.total(), 2.0);
    }

    #[test]
    fn equality_inside_tolerance_is_feasible() {
        let delta = 1e-4;
        let r = ViolationReport::from_values(&[], &[(1.0 + delta / 2.0) - 1.0], delta);
        assert!((r.equality()[0] - delta / 2.0).abs() < 1e-15);
        assert!(r.feasible());
        assert!(!r.equality_violated(0));
    }

    #[test]
    fn non_finite_constraint_names_index() {
        let spec = ProblemSpec::builder("nan", vec![Interval::new(0.0, 1.0)])
            .objective(|x| x[0])
            .inequality(|x| x[0] - 2.0)
            .inequality(|_| f64::NAN)
            .build()
            .unwrap();
        let err = evaluate_violations(spec.constraints(), &[0.5]).unwrap_err();
        assert_eq!(
            err,
            Error::NonFinite {
                source: EvaluatorKind::Inequality(1)
            }
        );
    }

    #[test]
    fn static_toy_example() {
        let r = evaluate_violations(toy().constraints(), &[3.0, 3.0]).unwrap();
        assert_eq!(static_pseudo_objective(-9.0, &r, 100.0), 391.0);
    }

    #[test]
    fn static_feasible_identity() {
        let r = ViolationReport::from_values(&[-2.0, 0.0], &[5e-5], 1e-4);
        for s in [1e-3, 1.0, 1e3, 1e9] {
            assert_eq!(static_pseudo_objective(-7.25, &r, s), -7.25);
        }
    }

    #[test]
    fn static_sums_squares() {
        let r = ViolationReport::from_values(&[1.0, 2.0], &[], 1e-4);
        assert_eq!(static_pseudo_objective(0.0, &r, 10.0), 50.0);
    }

    #[test]
    fn static_equality_uses_absolute_value() {
        let r = ViolationReport::from_values(&[], &[-0.5], 1e-4);
        assert_eq!(static_pseudo_objective(1.0, &r, 10.0), 6.0);
    }

    #[test]
    fn dynamic_examples() {
        let r = ViolationReport::from_values(&[2.0], &[], 1e-4);
        assert_eq!(
            dynamic_pseudo_objective(0.0, &r, 0.5, 2, 2, 1).unwrap(),
            2.0
        );
        assert_eq!(
            dynamic_pseudo_objective(0.0, &r, 0.5, 2, 2, 10).unwrap(),
            200.0
        );
        let feasible = ViolationReport::from_values(&[-1.0], &[], 1e-4);
        assert_eq!(
            dynamic_pseudo_objective(3.0, &feasible, 0.5, 2, 2, 500).unwrap(),
            3.0
        );
    }

    #[test]
    fn dynamic_overflow_is_an_error() {
        let r = ViolationReport::from_values(&[2.0], &[], 1e-4);
        let err = dynamic_pseudo_objective(0.0, &r, 0.5, 200, 2, 1_000_000).unwrap_err();
        assert!(matches!(err, Error::PenaltyOverflow { alpha: 200, .. }));
        // alpha = 2 stays far below the ceiling for any realistic attempt count
        assert!(dynamic_pseudo_objective(0.0, &r, 0.5, 2, 2, 10_000_000).is_ok());
    }

    #[test]
    fn scheme_validation() {
        assert!(PenaltyScheme::Static { s: 0.0 }.validate().is_err());
        assert!(PenaltyScheme::Static { s: f64::NAN }.validate().is_err());
        assert!(PenaltyScheme::Dynamic {
            s: 1.0,
            alpha: 0,
            beta: 2
        }
        .validate()
        .is_err());
        assert!(PenaltyScheme::dynamic_default().validate().is_ok());
    }

    #[test]
    fn penalized_unconstrained_is_identity() {
        let spec = ProblemSpec::builder("sphere", vec![Interval::new(-2.0, 2.0); 2])
            .objective(|x| x[0] * x[0] + x[1] * x[1])
            .build()
            .unwrap();
        let mut p = make_penalized(&spec, PenaltyScheme::static_default()).unwrap();
        for x in [[0.0, 0.0], [1.5, -0.3], [-2.0, 2.0]] {
            let e = p.evaluate(&x).unwrap();
            assert_eq!(e.penalized, e.raw);
        }
        assert_eq!(p.evaluations(), 3);
    }

    #[test]
    fn penalized_triple_on_toy() {
        let spec = toy();
        let mut p = make_penalized(&spec, PenaltyScheme::Static { s: 100.0 }).unwrap();
        let e = p.evaluate(&[3.0, 3.0]).unwrap();
        assert_eq!(
            (e.penalized, e.raw, e.violation.total()),
            (391.0, -9.0, 2.0)
        );
        assert_eq!(p.evaluations(), 1);
    }

    #[test]
    fn dynamic_penalized_reads_attempt_counter() {
        let spec = toy();
        let mut p = make_penalized(
            &spec,
            PenaltyScheme::Dynamic {
                s: 0.5,
                alpha: 2,
                beta: 2,
            },
        )
        .unwrap();
        let first = p.evaluate(&[3.0, 3.0]).unwrap().penalized;
        p.begin_attempt(10);
        let later = p.evaluate(&[3.0, 3.0]).unwrap().penalized;
        assert_eq!(first, -9.0 + 2.0);
        assert_eq!(later, -9.0 + 200.0);
    }

    #[test]
    fn failed_evaluations_still_count() {
        let spec = ProblemSpec::builder("nan", vec![Interval::new(0.0, 1.0)])
            .objective(|_| f64::NAN)
            .build()
            .unwrap();
        let mut p = make_penalized(&spec, PenaltyScheme::default()).unwrap();
        assert!(p.evaluate(&[0.5]).is_err());
        assert_eq!(p.evaluations(), 1);
    }
}
