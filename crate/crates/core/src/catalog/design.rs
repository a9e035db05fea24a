//! Engineering design problems: pressure vessel, tension/compression spring
//! and welded beam.

use alloc::vec;
use core::f64::consts::PI;

use libm::{ceil, sqrt};

use super::IntPow;
use crate::interval::Interval;
use crate::problem::{Features, ProblemKind::*, ProblemSpec};

/// Thickness increment of rolled steel plate (inches).
pub const PLATE_GAUGE: f64 = 0.0625;

fn plate(v: f64) -> f64 {
    ceil(v / PLATE_GAUGE) * PLATE_GAUGE
}

/// Pressure vessel: shell thickness, head thickness, inner radius, length.
///
/// The continuous variant treats the thicknesses as real numbers. With
/// `discrete` set they are rounded up to the next multiple of
/// [`PLATE_GAUGE`] before evaluation, which gives the classic 6059.714 optimum.
pub fn pressure_vessel(discrete: bool) -> ProblemSpec {
    let map = move |x: &[f64]| -> [f64; 4] {
        if discrete {
            [plate(x[0]), plate(x[1]), x[2], x[3]]
        } else {
            [x[0], x[1], x[2], x[3]]
        }
    };
    let builder = ProblemSpec::builder(
        "PV",
        vec![
            Interval::new(0.0625, 6.1875),
            Interval::new(0.0625, 6.1875),
            Interval::new(10.0, 200.0),
            Interval::new(10.0, 200.0),
        ],
    )
    .objective(move |x| {
        let [ts, th, r, l] = map(x);
        0.6224 * ts * r * l + 1.7781 * th * r * r + 3.1661 * ts * ts * l + 19.84 * ts * ts * r
    })
    .inequality(move |x| {
        let [ts, _, r, _] = map(x);
        -ts + 0.0193 * r
    })
    .inequality(move |x| {
        let [_, th, r, _] = map(x);
        -th + 0.00954 * r
    })
    .inequality(|x| -PI * x[2] * x[2] * x[3] - 4.0 / 3.0 * PI * x[2].ipow(3) + 1_296_000.0)
    .inequality(|x| x[3] - 240.0)
    .features(Features::new(Polynomial, 3, 1, 0, 0));
    let builder = if discrete {
        builder.known_best_value(6059.714335)
    } else {
        builder.known_best(
            5885.3328,
            vec![
                0.7781686666499613,
                0.3846491860614381,
                40.3196190840082,
                200.0,
            ],
        )
    };
    builder.build().expect("PV is well formed")
}

/// Tension/compression spring: wire diameter, coil diameter, active coils.
pub fn tension_spring() -> ProblemSpec {
    ProblemSpec::builder(
        "TC",
        vec![
            Interval::new(0.05, 2.0),
            Interval::new(0.25, 1.3),
            Interval::new(2.0, 15.0),
        ],
    )
    .objective(|x| (x[2] + 2.0) * x[1] * x[0] * x[0])
    .inequality(|x| 1.0 - x[1].ipow(3) * x[2] / (71785.0 * x[0].ipow(4)))
    .inequality(|x| {
        (4.0 * x[1] * x[1] - x[0] * x[1]) / (12566.0 * (x[1] * x[0].ipow(3) - x[0].ipow(4)))
            + 1.0 / (5108.0 * x[0] * x[0])
            - 1.0
    })
    .inequality(|x| 1.0 - 140.45 * x[0] / (x[1] * x[1] * x[2]))
    .inequality(|x| (x[0] + x[1]) / 1.5 - 1.0)
    .features(Features::new(Polynomial, 1, 3, 0, 0))
    .known_best(
        0.012665233,
        vec![0.05168906098535013, 0.35671773656915057, 11.288965995775277],
    )
    .build()
    .expect("TC is well formed")
}

const WBD_P: f64 = 6000.0;
const WBD_L: f64 = 14.0;
const WBD_E: f64 = 30e6;
const WBD_G: f64 = 12e6;

fn wbd_shear(x: &[f64]) -> f64 {
    let (h, l, t) = (x[0], x[1], x[2]);
    let primary = WBD_P / (sqrt(2.0) * h * l);
    let moment = WBD_P * (WBD_L + l / 2.0);
    let radius = sqrt(l * l / 4.0 + ((h + t) / 2.0).ipow(2));
    let polar = 2.0 * (sqrt(2.0) * h * l * (l * l / 12.0 + ((h + t) / 2.0).ipow(2)));
    let secondary = moment * radius / polar;
    sqrt(primary * primary + 2.0 * primary * secondary * l / (2.0 * radius) + secondary * secondary)
}

fn wbd_buckling_load(x: &[f64]) -> f64 {
    let (t, b) = (x[2], x[3]);
    4.013 * WBD_E * sqrt(t * t * b.ipow(6) / 36.0) / (WBD_L * WBD_L)
        * (1.0 - t / (2.0 * WBD_L) * sqrt(WBD_E / (4.0 * WBD_G)))
}

/// Welded beam: weld thickness h, weld length l, bar height t, bar thickness b.
///
/// The stored reference is the widely reported 1.748309 design. It is
/// feasible but not optimal for this formulation.
pub fn welded_beam() -> ProblemSpec {
    ProblemSpec::builder(
        "WBD",
        vec![
            Interval::new(0.1, 2.0),
            Interval::new(0.1, 10.0),
            Interval::new(0.1, 10.0),
            Interval::new(0.1, 2.0),
        ],
    )
    .objective(|x| 1.10471 * x[0] * x[0] * x[1] + 0.04811 * x[2] * x[3] * (14.0 + x[1]))
    .inequality(|x| wbd_shear(x) - 13600.0)
    .inequality(|x| 6.0 * WBD_P * WBD_L / (x[3] * x[2] * x[2]) - 30000.0)
    .inequality(|x| x[0] - x[3])
    .inequality(|x| 0.10471 * x[0] * x[0] + 0.04811 * x[2] * x[3] * (14.0 + x[1]) - 5.0)
    .inequality(|x| 0.125 - x[0])
    .inequality(|x| 4.0 * WBD_P * WBD_L.ipow(3) / (WBD_E * x[2].ipow(3) * x[3]) - 0.25)
    .inequality(|x| WBD_P - wbd_buckling_load(x))
    .features(Features::new(NonLinear, 2, 5, 0, 0))
    .known_best(1.748309, vec![0.2088, 3.4205, 8.9975, 0.21])
    .build()
    .expect("WBD is well formed")
}
