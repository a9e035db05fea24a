//! Deep-drawing process design problems built on linear response surfaces.
//!
//! Decision variables are `(BHF, mu, R_D, R_P)`: blank holder force in kN,
//! friction coefficient, die corner radius and punch corner radius in mm.
//! The punch radius is tied to the die radius by `3 R_D <= R_P <= 6 R_D`.
//!
//! **Units:** the response surfaces take BHF in kilonewtons.

use core::f64::consts::PI;

use libm::sqrt;

use super::IntPow;
use crate::error::{config_err, Result};
use crate::interval::Interval;
use crate::problem::{Features, ProblemKind::Linear, ProblemSpec};

/// Blank holding pressure used by the force estimate (N/mm²).
pub const HOLDING_PRESSURE: f64 = 2.5;

/// Friction coefficient range searched by the shipped problems.
pub const FRICTION_RANGE: Interval = Interval {
    lo: 0.005,
    hi: 0.15,
};

/// Springback displacement magnitude (mm).
pub fn springback_sdm(bhf: f64, mu: f64, r_d: f64, r_p: f64) -> f64 {
    0.0488 - 0.000133 * bhf - 0.0167 * mu + 0.00150 * r_d + 0.00217 * r_p
}

/// Remaining wall thickness after thinning (mm).
pub fn thinning_value(bhf: f64, mu: f64, r_d: f64, r_p: f64) -> f64 {
    1.35 - 0.0400 * bhf - 0.733 * mu - 0.0300 * r_d - 0.0183 * r_p
}

/// Wall thickness after thickening (mm). The punch radius has no effect.
pub fn thickening_value(bhf: f64, mu: f64, r_d: f64, r_p: f64) -> f64 {
    1.278 + 0.00180 * bhf + 0.043 * mu - 0.0167 * r_d - 0.0 * r_p
}

/// Component geometry and process constants.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeepDrawParams {
    /// Blank diameter (mm).
    pub d0: f64,
    /// Finished component diameter (mm).
    pub d1: f64,
    /// Corner radius (mm).
    pub z: f64,
    /// Coefficient of friction.
    pub mu: f64,
    /// Sheet thickness (mm).
    pub s0: f64,
    /// Holding pressure (N/mm²).
    pub p: f64,
}

impl DeepDrawParams {
    /// Geometry with the standard holding pressure.
    pub fn new(d0: f64, d1: f64, z: f64, mu: f64, s0: f64) -> Self {
        Self {
            d0,
            d1,
            z,
            mu,
            s0,
            p: HOLDING_PRESSURE,
        }
    }

    /// Lengths must be positive, `0 < mu < 1` and the pressure positive.
    pub fn validate(&self) -> Result<()> {
        let lengths = [
            ("d0", self.d0),
            ("d1", self.d1),
            ("z", self.z),
            ("S0", self.s0),
        ];
        for (name, v) in lengths {
            if !(v.is_finite() && v > 0.0) {
                return Err(config_err(alloc::format!(
                    "{name} must be a positive length, got {v}"
                )));
            }
        }
        if !(self.mu > 0.0 && self.mu < 1.0) {
            return Err(config_err(alloc::format!(
                "mu must lie in (0, 1), got {}",
                self.mu
            )));
        }
        if !(self.p.is_finite() && self.p > 0.0) {
            return Err(config_err(alloc::format!(
                "pressure must be positive, got {}",
                self.p
            )));
        }
        Ok(())
    }
}

/// Blank holder force in kN: `pi/4 (d0^2 + 2z)^2 P`, converted from N.
pub fn blank_holder_force_kn(d0: f64, z: f64, p: f64) -> f64 {
    PI / 4.0 * (d0 * d0 + 2.0 * z).ipow(2) * p / 1000.0
}

/// Die corner radius in mm: `0.035 (50 + (d0 - d1) sqrt(S0))`.
pub fn die_radius(d0: f64, d1: f64, s0: f64) -> f64 {
    0.035 * (50.0 + (d0 - d1) * sqrt(s0))
}

/// Process variables implied by a component geometry.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoupledVars {
    /// Blank holder force (kN).
    pub bhf: f64,
    /// Die corner radius (mm).
    pub r_d: f64,
    /// Admissible punch corner radii, `[3 R_D, 6 R_D]`.
    pub r_p: Interval,
}

impl CoupledVars {
    /// Distance of `R_D` outside `bracket`; zero when inside.
    pub fn die_radius_violation(&self, bracket: Interval) -> f64 {
        (bracket.lo - self.r_d).max(0.0) + (self.r_d - bracket.hi).max(0.0)
    }
}

/// Maps geometry to `(BHF, R_D, R_P range)`.
pub fn coupled_process_vars(p: &DeepDrawParams) -> Result<CoupledVars> {
    p.validate()?;
    let r_d = die_radius(p.d0, p.d1, p.s0);
    Ok(CoupledVars {
        bhf: blank_holder_force_kn(p.d0, p.z, p.p),
        r_d,
        r_p: Interval::new(3.0 * r_d, 6.0 * r_d),
    })
}

/// Bounds and reference design of one deep-drawing problem.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeepDrawCase {
    /// Blank holder force of the original component (kN).
    pub original_bhf: f64,
    /// Allowed die radius.
    pub die_bracket: Interval,
}

impl DeepDrawCase {
    /// Box bounds: BHF within +-20% of the original, friction over
    /// [`FRICTION_RANGE`], `R_D` over its bracket and `R_P` over
    /// `[3 lo, 6 hi]` of that bracket.
    pub fn bounds(&self) -> [Interval; 4] {
        [
            Interval::new(0.8 * self.original_bhf, 1.2 * self.original_bhf),
            FRICTION_RANGE,
            self.die_bracket,
            Interval::new(3.0 * self.die_bracket.lo, 6.0 * self.die_bracket.hi),
        ]
    }
}

/// Original tail-cap design of the springback study.
pub const SPRINGBACK: DeepDrawCase = DeepDrawCase {
    original_bhf: 16.931,
    die_bracket: Interval { lo: 2.5, hi: 8.0 },
};

/// Original design of the thinning study.
pub const THINNING: DeepDrawCase = DeepDrawCase {
    original_bhf: 3.89,
    die_bracket: Interval { lo: 2.0, hi: 4.0 },
};

/// Original design of the thickening study.
pub const THICKENING: DeepDrawCase = DeepDrawCase {
    original_bhf: 21.99,
    die_bracket: Interval { lo: 2.0, hi: 4.0 },
};

fn deep_draw_spec(
    name: &str,
    case: &DeepDrawCase,
    objective: impl Fn(&[f64]) -> f64 + Send + Sync + 'static,
    best: [f64; 4],
) -> ProblemSpec {
    let value = objective(&best);
    ProblemSpec::builder(name, case.bounds().to_vec())
        .objective(objective)
        .inequality(|x| 3.0 * x[2] - x[3])
        .inequality(|x| x[3] - 6.0 * x[2])
        .features(Features::new(Linear, 2, 0, 0, 0))
        .known_best(value, best.to_vec())
        .build()
        .expect("deep-drawing problem is well formed")
}

/// Minimize springback displacement.
pub fn springback() -> ProblemSpec {
    let b = SPRINGBACK.bounds();
    // largest force and friction, smallest radii
    let best = [b[0].hi, b[1].hi, b[2].lo, 3.0 * b[2].lo];
    deep_draw_spec(
        "springback",
        &SPRINGBACK,
        |x| springback_sdm(x[0], x[1], x[2], x[3]),
        best,
    )
}

/// Maximize remaining thickness, posed as minimizing its negation.
pub fn thinning() -> ProblemSpec {
    let b = THINNING.bounds();
    let best = [b[0].lo, b[1].lo, b[2].lo, 3.0 * b[2].lo];
    deep_draw_spec(
        "thinning",
        &THINNING,
        |x| -thinning_value(x[0], x[1], x[2], x[3]),
        best,
    )
}

/// Minimize thickening. `R_P` is free within its band; the reference takes
/// its lowest admissible value.
pub fn thickening() -> ProblemSpec {
    let b = THICKENING.bounds();
    let best = [b[0].lo, b[1].lo, b[2].hi, 3.0 * b[2].hi];
    deep_draw_spec(
        "thickening",
        &THICKENING,
        |x| thickening_value(x[0], x[1], x[2], x[3]),
        best,
    )
}
