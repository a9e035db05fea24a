//! Engine invariants checked from the outside: selection probabilities,
//! interval contraction and expansion, FE accounting, determinism and the
//! monotone best-so-far.

use cohort_core::engine::selection_probabilities;
use cohort_core::{
    catalog, make_penalized, run, run_with, EngineConfig, Evaluate, Evaluation, Interval,
    PenaltyScheme, ProblemSpec, Result,
};
use proptest::prelude::*;

/// Counts calls independently of the engine's own tally.
struct Counting<E> {
    inner: E,
    calls: u64,
}

impl<E: Evaluate> Evaluate for Counting<E> {
    fn evaluate(&mut self, x: &[f64]) -> Result<Evaluation> {
        self.calls += 1;
        self.inner.evaluate(x)
    }

    fn begin_attempt(&mut self, attempt: u64) {
        self.inner.begin_attempt(attempt)
    }

    fn rescore(&self, e: &Evaluation) -> Result<f64> {
        self.inner.rescore(e)
    }
}

fn sphere(n: usize) -> ProblemSpec {
    ProblemSpec::builder("sphere", vec![Interval::new(-5.0, 5.0); n])
        .objective(|x| x.iter().map(|v| v * v).sum())
        .build()
        .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 2_000, ..ProptestConfig::default() })]

    #[test]
    fn probabilities_sum_to_one(behaviors in prop::collection::vec(-1e6f64..1e6, 2..20)) {
        let p = selection_probabilities(&behaviors).unwrap();
        let sum: f64 = p.iter().sum();
        prop_assert!((sum - 1.0).abs() <= 1e-12, "sum = {sum}");
        prop_assert!(p.iter().all(|v| *v > 0.0));
    }

    #[test]
    fn lower_behavior_is_followed_more_often(behaviors in prop::collection::vec(-1e6f64..1e6, 2..20)) {
        let p = selection_probabilities(&behaviors).unwrap();
        for i in 0..behaviors.len() {
            for j in 0..behaviors.len() {
                if behaviors[i] < behaviors[j] {
                    prop_assert!(p[i] >= p[j], "b{i}={} b{j}={} p{i}={} p{j}={}", behaviors[i], behaviors[j], p[i], p[j]);
                }
                if behaviors[i] == behaviors[j] {
                    prop_assert_eq!(p[i], p[j]);
                }
            }
        }
    }
}

/// Checks contraction and expansion after every attempt of a run.
fn check_boxes(spec: &ProblemSpec, scheme: PenaltyScheme, cfg: &EngineConfig) -> (u64, u64) {
    let bounds = spec.bounds().to_vec();
    let widths: Vec<f64> = bounds.iter().map(Interval::width).collect();
    let mut eval = make_penalized(spec, scheme).unwrap();
    let mut attempts = 0;
    let mut saturations = 0;
    run_with(&bounds, &mut eval, cfg, |view| {
        attempts += 1;
        if view.saturated {
            saturations += 1;
            assert_eq!(view.cohort.spans, widths, "attempt {}", view.attempt);
            for c in &view.cohort.candidates {
                assert_eq!(c.intervals, bounds, "attempt {}", view.attempt);
            }
            return;
        }
        for (d, span) in view.shrink_spans.iter().enumerate() {
            assert!(view.cohort.spans[d] <= cfg.reduction * span * (1.0 + 1e-12));
            for c in &view.cohort.candidates {
                let w = c.intervals[d].width();
                // Endpoints are rounded at the scale of the coordinates.
                let ulp = 4.0 * f64::EPSILON * bounds[d].lo.abs().max(bounds[d].hi.abs());
                assert!(
                    w <= cfg.reduction * span * (1.0 + 1e-12) + ulp,
                    "attempt {} dim {d}: width {w} > r * {span}",
                    view.attempt
                );
                assert!(c.intervals[d].lo >= bounds[d].lo && c.intervals[d].hi <= bounds[d].hi);
            }
        }
        for (c, &k) in view.cohort.candidates.iter().zip(view.followed) {
            assert!(k < view.cohort.candidates.len());
            assert!(spec.in_bounds(&c.qualities));
        }
    })
    .unwrap();
    (attempts, saturations)
}

#[test]
fn boxes_contract_by_r_and_expand_on_saturation() {
    let cfg = EngineConfig {
        max_attempts: 600,
        ..EngineConfig::default()
    };
    let (attempts, saturations) = check_boxes(&sphere(2), PenaltyScheme::default(), &cfg);
    assert!(attempts > 0);
    assert!(saturations > 0, "sphere run never saturated");
    for name in ["G24", "G08", "TC"] {
        let spec = catalog::lookup(name).unwrap();
        for scheme in [
            PenaltyScheme::static_default(),
            PenaltyScheme::dynamic_default(),
        ] {
            check_boxes(
                &spec,
                scheme,
                &EngineConfig {
                    max_attempts: 300,
                    seed: 11,
                    ..EngineConfig::default()
                },
            );
        }
    }
}

#[test]
fn contraction_holds_for_other_r() {
    for r in [0.0, 0.5, 0.75, 1.0] {
        let cfg = EngineConfig {
            reduction: r,
            max_attempts: 50,
            seed: 3,
            ..EngineConfig::default()
        };
        check_boxes(&sphere(3), PenaltyScheme::default(), &cfg);
    }
}

#[test]
fn fe_equals_independent_count() {
    for (name, c, t, max_attempts) in [
        ("G24", 5, 10, 1000),
        ("G08", 3, 1, 77),
        ("G05", 7, 4, 250),
        ("PV", 2, 2, 40),
    ] {
        let spec = catalog::lookup(name).unwrap();
        for scheme in [
            PenaltyScheme::static_default(),
            PenaltyScheme::dynamic_default(),
        ] {
            let cfg = EngineConfig {
                candidates: c,
                samples: t,
                max_attempts,
                seed: 5,
                ..EngineConfig::default()
            };
            let mut eval = Counting {
                inner: make_penalized(&spec, scheme).unwrap(),
                calls: 0,
            };
            let rec = run_with(spec.bounds(), &mut eval, &cfg, |_| {}).unwrap();
            let c = c as u64;
            let t = t as u64;
            assert_eq!(rec.fe, c + rec.attempts * c * t, "{name}");
            assert_eq!(rec.fe, eval.calls, "{name}");
            assert_eq!(rec.trace.len() as u64, rec.attempts * c, "{name}");
            assert_eq!(rec.history.len() as u64, rec.attempts + 1, "{name}");
            assert_eq!(
                rec.history.iter().map(|h| h.fe).sum::<u64>(),
                rec.fe,
                "{name}"
            );
        }
    }
}

#[test]
fn same_seed_same_bits() {
    for name in ["G24", "G01", "springback"] {
        let spec = catalog::lookup(name).unwrap();
        for scheme in [
            PenaltyScheme::static_default(),
            PenaltyScheme::dynamic_default(),
        ] {
            let cfg = EngineConfig {
                seed: 2024,
                max_attempts: 200,
                ..EngineConfig::default()
            };
            let a = run(&spec, &scheme, &cfg).unwrap();
            let b = run(&spec, &scheme, &cfg).unwrap();
            assert_eq!(a.best_raw.to_bits(), b.best_raw.to_bits());
            assert_eq!(
                a.best_point.iter().map(|v| v.to_bits()).collect::<Vec<_>>(),
                b.best_point.iter().map(|v| v.to_bits()).collect::<Vec<_>>()
            );
            let bits = |r: &cohort_core::RunRecord| {
                r.trace
                    .iter()
                    .map(|t| {
                        (
                            t.penalized.to_bits(),
                            t.raw.to_bits(),
                            t.violation.to_bits(),
                        )
                    })
                    .collect::<Vec<_>>()
            };
            assert_eq!(bits(&a), bits(&b));
            assert_eq!(a, b);
            let other = run(&spec, &scheme, &EngineConfig { seed: 2025, ..cfg }).unwrap();
            assert_ne!(bits(&a), bits(&other));
        }
    }
}

#[test]
fn best_feasible_never_gets_worse() {
    for name in ["G24", "G06", "G09", "WBD"] {
        let spec = catalog::lookup(name).unwrap();
        for scheme in [
            PenaltyScheme::static_default(),
            PenaltyScheme::dynamic_default(),
        ] {
            let rec = run(
                &spec,
                &scheme,
                &EngineConfig {
                    seed: 9,
                    max_attempts: 300,
                    ..EngineConfig::default()
                },
            )
            .unwrap();
            let mut last: Option<f64> = None;
            for h in &rec.history {
                match (last, h.best_feasible) {
                    (Some(prev), Some(now)) => assert!(now <= prev, "{name}: {prev} -> {now}"),
                    (Some(_), None) => {
                        panic!("{name}: feasible best lost at attempt {}", h.attempt)
                    }
                    _ => {}
                }
                last = h.best_feasible.or(last);
            }
            if rec.feasible {
                assert_eq!(last, Some(rec.best_raw));
            }
        }
    }
}

#[test]
fn sphere_reaches_origin() {
    let rec = run(
        &sphere(2),
        &PenaltyScheme::default(),
        &EngineConfig::default(),
    )
    .unwrap();
    assert!(rec.best_raw < 1e-6, "{}", rec.best_raw);
    assert!(rec.converged);
}
