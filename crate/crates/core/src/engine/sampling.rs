use alloc::vec::Vec;

use rand::Rng;

use super::{Candidate, Cohort, EngineConfig};
use crate::error::{config_err, Error, Result};
use crate::interval::Interval;
use crate::penalty::Evaluate;

/// Contracts the sampling box around the followed candidate's qualities.
///
/// Dimension `i` becomes `x_i +- widths[i] / 2 * r`, clipped to the original
/// bounds. Clipping only ever narrows the result, so its width never exceeds
/// `r * widths[i]`.
pub fn shrink_intervals(
    followed: &[f64],
    widths: &[f64],
    r: f64,
    bounds: &[Interval],
) -> Vec<Interval> {
    followed
        .iter()
        .zip(widths)
        .zip(bounds)
        .map(|((&x, &w), b)| {
            let half = w / 2.0 * r;
            Interval::new(x - half, x + half).clip_to(b)
        })
        .collect()
}

/// Uniform point inside the box.
pub fn sample_point<R: Rng + ?Sized>(intervals: &[Interval], rng: &mut R) -> Vec<f64> {
    intervals
        .iter()
        .map(|iv| iv.lerp(rng.gen::<f64>()))
        .collect()
}

/// Draws `cfg.candidates` points uniformly from `bounds` and evaluates each
/// once. Every sampling box starts as the original bounds.
pub fn init_cohort<E, R>(
    bounds: &[Interval],
    cfg: &EngineConfig,
    eval: &mut E,
    rng: &mut R,
) -> Result<Cohort>
where
    E: Evaluate + ?Sized,
    R: Rng + ?Sized,
{
    cfg.validate()?;
    if bounds.is_empty() {
        return Err(config_err("problem has no variables"));
    }
    if let Some((i, b)) = bounds.iter().enumerate().find(|(_, b)| !b.is_valid()) {
        return Err(config_err(alloc::format!(
            "bound {b} of variable x{} is not a finite interval with lo <= hi",
            i + 1
        )));
    }
    let mut candidates = Vec::with_capacity(cfg.candidates);
    for _ in 0..cfg.candidates {
        let x = sample_point(bounds, rng);
        let e = eval.evaluate(&x)?;
        candidates.push(Candidate::from_evaluation(x, bounds.to_vec(), &e));
    }
    Ok(Cohort {
        candidates,
        spans: bounds.iter().map(Interval::width).collect(),
    })
}

/// Samples `t` points from the candidate's boxes and moves the candidate to
/// the one with the lowest behavior. Samples whose evaluation is non-finite
/// are dropped with a warning; if all of them are, the candidate index is
/// reported in [`Error::AllSamplesNonFinite`].
pub fn resample_and_select<E, R>(
    candidate: &Candidate,
    index: usize,
    t: usize,
    eval: &mut E,
    rng: &mut R,
) -> Result<Candidate>
where
    E: Evaluate + ?Sized,
    R: Rng + ?Sized,
{
    if t == 0 {
        return Err(config_err("samples per candidate must be >= 1"));
    }
    let mut best: Option<Candidate> = None;
    for _ in 0..t {
        let x = sample_point(&candidate.intervals, rng);
        let e = match eval.evaluate(&x) {
            Ok(e) => e,
            Err(Error::NonFinite { source }) => {
                log::warn!("candidate {index}: discarding sample, {source} is not finite");
                continue;
            }
            Err(e) => return Err(e),
        };
        if best.as_ref().is_none_or(|b| e.penalized < b.behavior) {
            best = Some(Candidate::from_evaluation(
                x,
                candidate.intervals.clone(),
                &e,
            ));
        }
    }
    best.ok_or(Error::AllSamplesNonFinite {
        candidate: index,
        samples: t,
    })
}
