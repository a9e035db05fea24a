use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{config_err, Result};
use crate::interval::Interval;

/// Objective evaluator `x -> f(x)`.
pub type ObjectiveFn = Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>;
/// Constraint evaluator `x -> g(x)` or `x -> h(x)`.
pub type ConstraintFn = Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>;

/// Equality constraints count as satisfied when `|h(x)| <= 1e-4`.
pub const DEFAULT_EQUALITY_TOLERANCE: f64 = 1e-4;

/// Inequalities `g_i(x) <= 0` and equalities `h_j(x) = 0` (to within `delta`).
#[derive(Clone)]
pub struct ConstraintSet {
    pub(crate) inequalities: Vec<ConstraintFn>,
    pub(crate) equalities: Vec<ConstraintFn>,
    pub(crate) delta: f64,
}

impl ConstraintSet {
    /// An empty set with the default equality tolerance.
    pub fn new() -> Self {
        Self {
            inequalities: Vec::new(),
            equalities: Vec::new(),
            delta: DEFAULT_EQUALITY_TOLERANCE,
        }
    }

    /// Number of inequality constraints `n`.
    pub fn inequality_count(&self) -> usize {
        self.inequalities.len()
    }

    /// Number of equality constraints `m`.
    pub fn equality_count(&self) -> usize {
        self.equalities.len()
    }

    /// Equality tolerance `delta`.
    pub fn delta(&self) -> f64 {
        self.delta
    }

    /// Whether there are no constraints at all.
    pub fn is_empty(&self) -> bool {
        self.inequalities.is_empty() && self.equalities.is_empty()
    }
}

impl Default for ConstraintSet {
    fn default() -> Self {
        Self::new()
    }
}

impl fmt::Debug for ConstraintSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ConstraintSet")
            .field("inequalities", &self.inequalities.len())
            .field("equalities", &self.equalities.len())
            .field("delta", &self.delta)
            .finish()
    }
}

/// Objective type as classified in the benchmark literature.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProblemKind {
    /// Linear objective.
    Linear,
    /// Quadratic objective.
    Quadratic,
    /// Cubic objective.
    Cubic,
    /// Higher-order polynomial objective.
    Polynomial,
    /// Anything else.
    NonLinear,
}

impl ProblemKind {
    /// Human readable name.
    pub fn as_str(&self) -> &'static str {
        match self {
            ProblemKind::Linear => "Linear",
            ProblemKind::Quadratic => "Quadratic",
            ProblemKind::Cubic => "Cubic",
            ProblemKind::Polynomial => "Polynomial",
            ProblemKind::NonLinear => "Non-linear",
        }
    }
}

impl fmt::Display for ProblemKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Objective type plus the linear/nonlinear split of the constraints.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Features {
    /// Objective type.
    pub kind: ProblemKind,
    /// Linear inequalities.
    pub li: usize,
    /// Nonlinear inequalities.
    pub ni: usize,
    /// Linear equalities.
    pub le: usize,
    /// Nonlinear equalities.
    pub ne: usize,
}

impl Features {
    /// Shorthand constructor.
    pub const fn new(kind: ProblemKind, li: usize, ni: usize, le: usize, ne: usize) -> Self {
        Self {
            kind,
            li,
            ni,
            le,
            ne,
        }
    }

    /// `li + ni`.
    pub fn inequalities(&self) -> usize {
        self.li + self.ni
    }

    /// `le + ne`.
    pub fn equalities(&self) -> usize {
        self.le + self.ne
    }
}

/// A bound-constrained minimization problem with optional inequality and
/// equality constraints.
///
/// Immutable once built and cheap to clone, so one spec can be shared by
/// concurrent runs.
#[derive(Clone)]
pub struct ProblemSpec {
    name: String,
    bounds: Vec<Interval>,
    objective: ObjectiveFn,
    constraints: ConstraintSet,
    features: Features,
    known_best: Option<f64>,
    known_best_point: Option<Vec<f64>>,
}

impl ProblemSpec {
    /// Starts a builder for a problem over the box `bounds`.
    pub fn builder(name: impl Into<String>, bounds: Vec<Interval>) -> ProblemSpecBuilder {
        ProblemSpecBuilder {
            name: name.into(),
            bounds,
            objective: None,
            constraints: ConstraintSet::new(),
            features: None,
            known_best: None,
            known_best_point: None,
        }
    }

    /// Problem identifier.
    pub fn name(&self) -> &str {
        &self.name
    }

    /// Number of decision variables `N`.
    pub fn dimension(&self) -> usize {
        self.bounds.len()
    }

    /// Original variable bounds.
    pub fn bounds(&self) -> &[Interval] {
        &self.bounds
    }

    /// Constraint set.
    pub fn constraints(&self) -> &ConstraintSet {
        &self.constraints
    }

    /// Feature record.
    pub fn features(&self) -> Features {
        self.features
    }

    /// Best known objective value, if recorded.
    pub fn known_best(&self) -> Option<f64> {
        self.known_best
    }

    /// A feasible point attaining (approximately) [`Self::known_best`].
    pub fn known_best_point(&self) -> Option<&[f64]> {
        self.known_best_point.as_deref()
    }

    /// Evaluates `f(x)`.
    pub fn objective(&self, x: &[f64]) -> f64 {
        (self.objective)(x)
    }

    /// Evaluates `g_i(x)`.
    pub fn inequality(&self, i: usize, x: &[f64]) -> f64 {
        (self.constraints.inequalities[i])(x)
    }

    /// Evaluates `h_j(x)`.
    pub fn equality(&self, j: usize, x: &[f64]) -> f64 {
        (self.constraints.equalities[j])(x)
    }

    /// Whether `x` has the right length and lies inside the bounds.
    pub fn in_bounds(&self, x: &[f64]) -> bool {
        x.len() == self.dimension() && x.iter().zip(&self.bounds).all(|(v, b)| b.contains(*v))
    }

    /// Returns a copy using equality tolerance `delta`.
    pub fn with_equality_tolerance(&self, delta: f64) -> Result<ProblemSpec> {
        if !(delta.is_finite() && delta > 0.0) {
            return Err(config_err("equality tolerance must be finite and > 0"));
        }
        let mut spec = self.clone();
        spec.constraints.delta = delta;
        Ok(spec)
    }
}

impl fmt::Debug for ProblemSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ProblemSpec")
            .field("name", &self.name)
            .field("bounds", &self.bounds)
            .field("constraints", &self.constraints)
            .field("features", &self.features)
            .field("known_best", &self.known_best)
            .finish()
    }
}

/// Builder for [`ProblemSpec`]; `build` checks every invariant.
pub struct ProblemSpecBuilder {
    name: String,
    bounds: Vec<Interval>,
    objective: Option<ObjectiveFn>,
    constraints: ConstraintSet,
    features: Option<Features>,
    known_best: Option<f64>,
    known_best_point: Option<Vec<f64>>,
}

impl ProblemSpecBuilder {
    /// Sets the objective.
    pub fn objective<F>(mut self, f: F) -> Self
    where
        F: Fn(&[f64]) -> f64 + Send + Sync + 'static,
    {
        self.objective = Some(Arc::new(f));
        self
    }

    /// Adds an inequality constraint `g(x) <= 0`.
    pub fn inequality<F>(mut self, g: F) -> Self
    where
        F: Fn(&[f64]) -> f64 + Send + Sync + 'static,
    {
        self.constraints.inequalities.push(Arc::new(g));
        self
    }

    /// Adds an equality constraint `h(x) = 0`.
    pub fn equality<F>(mut self, h: F) -> Self
    where
        F: Fn(&[f64]) -> f64 + Send + Sync + 'static,
    {
        self.constraints.equalities.push(Arc::new(h));
        self
    }

    /// Overrides the equality tolerance.
    pub fn equality_tolerance(mut self, delta: f64) -> Self {
        self.constraints.delta = delta;
        self
    }

    /// Declares the feature record. Without one, the features default to a
    /// non-linear problem whose constraints are all counted as nonlinear.
    pub fn features(mut self, features: Features) -> Self {
        self.features = Some(features);
        self
    }

    /// Records the best known value and a feasible point attaining it.
    pub fn known_best(mut self, value: f64, point: Vec<f64>) -> Self {
        self.known_best = Some(value);
        self.known_best_point = Some(point);
        self
    }

    /// Records a best known value without a witness point.
    pub fn known_best_value(mut self, value: f64) -> Self {
        self.known_best = Some(value);
        self
    }

    /// Validates and assembles the spec.
    pub fn build(self) -> Result<ProblemSpec> {
        let name = self.name;
        if self.bounds.is_empty() {
            return Err(config_err(alloc::format!("{name}: dimension must be >= 1")));
        }
        for (i, b) in self.bounds.iter().enumerate() {
            if !b.is_valid() {
                return Err(config_err(alloc::format!(
                    "{name}: bound {} of variable x{} is not a finite interval with lo <= hi",
                    b,
                    i + 1
                )));
            }
        }
        let objective = self
            .objective
            .ok_or_else(|| config_err(alloc::format!("{name}: objective not set")))?;
        let delta = self.constraints.delta;
        if !(delta.is_finite() && delta > 0.0) {
            return Err(config_err(alloc::format!(
                "{name}: equality tolerance must be finite and > 0"
            )));
        }
        let n = self.constraints.inequalities.len();
        let m = self.constraints.equalities.len();
        let features = self
            .features
            .unwrap_or(Features::new(ProblemKind::NonLinear, 0, n, 0, m));
        if features.inequalities() != n || features.equalities() != m {
            return Err(config_err(alloc::format!(
                "{name}: features declare {} inequalities and {} equalities but {n} and {m} were supplied",
                features.inequalities(),
                features.equalities()
            )));
        }
        if let Some(p) = &self.known_best_point {
            if p.len() != self.bounds.len() {
                return Err(config_err(alloc::format!(
                    "{name}: known best point has {} coordinates, expected {}",
                    p.len(),
                    self.bounds.len()
                )));
            }
        }
        Ok(ProblemSpec {
            name: name.to_string(),
            bounds: self.bounds,
            objective,
            constraints: self.constraints,
            features,
            known_best: self.known_best,
            known_best_point: self.known_best_point,
        })
    }
}
