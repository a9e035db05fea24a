//! Follow probabilities and roulette-wheel choice of the candidate to follow.

use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;

use crate::error::{config_err, Error, Result};

/// Probability of each candidate being followed.
///
/// `p_c = (1 / f_c) / sum(1 / f_c)`. When the smallest behavior is `<= 0`
/// the behaviors are first shifted to `f - min + 1`, which keeps lower
/// behaviors strictly more likely and bounds the odds. Identical behaviors
/// give a uniform distribution.
pub fn selection_probabilities(behaviors: &[f64]) -> Result<Vec<f64>> {
    if behaviors.is_empty() {
        return Err(config_err(
            "cannot compute probabilities for an empty cohort",
        ));
    }
    if let Some(candidate) = behaviors.iter().position(|b| !b.is_finite()) {
        return Err(Error::NonFiniteBehavior { candidate });
    }
    let n = behaviors.len();
    let min = behaviors.iter().copied().fold(f64::INFINITY, f64::min);
    let max = behaviors.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if min == max {
        return Ok(vec![1.0 / n as f64; n]);
    }
    let shift = if min <= 0.0 { 1.0 - min } else { 0.0 };
    let inv: Vec<f64> = behaviors.iter().map(|b| 1.0 / (b + shift)).collect();
    let total: f64 = inv.iter().sum();
    Ok(inv.into_iter().map(|v| v / total).collect())
}

/// Index selected by the uniform draw `u` in `[0, 1)` against the cumulative
/// distribution of `p`: the first `k` with `u < p_0 + ... + p_k`.
pub fn roulette_index(p: &[f64], u: f64) -> Result<usize> {
    if p.is_empty() {
        return Err(config_err("roulette wheel needs at least one slot"));
    }
    let mut cumulative = 0.0;
    for (k, pk) in p.iter().enumerate() {
        cumulative += pk;
        if u < cumulative {
            return Ok(k);
        }
    }
    // Rounding left the cumulative sum just below 1; take the last slot with mass.
    Ok(p.iter().rposition(|pk| *pk > 0.0).unwrap_or(p.len() - 1))
}

/// Draws one uniform number and spins the roulette wheel over `p`.
pub fn follow_roulette<R: Rng + ?Sized>(p: &[f64], rng: &mut R) -> Result<usize> {
    if p.is_empty() {
        return Err(config_err("roulette wheel needs at least one slot"));
    }
    let u: f64 = rng.gen();
    roulette_index(p, u)
}
