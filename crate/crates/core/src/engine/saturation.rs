use alloc::vec::Vec;

/// Per-attempt `(max, min)` of the cohort behaviors and the number of
/// saturation events seen so far.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct SaturationState {
    history: Vec<(f64, f64)>,
    saturation_count: u32,
}

impl SaturationState {
    /// Empty state.
    pub fn new() -> Self {
        Self::default()
    }

    /// Recorded `(max, min)` pairs, one per attempt.
    pub fn history(&self) -> &[(f64, f64)] {
        &self.history
    }

    /// Number of saturation events.
    pub fn saturation_count(&self) -> u32 {
        self.saturation_count
    }

    /// Replaces the latest `(max, min)` with that of `behaviors`, so the next
    /// comparison is made on a common scale. No-op before the first record.
    pub fn restate_last(&mut self, behaviors: &[f64]) {
        if let Some(last) = self.history.last_mut() {
            *last = extremes(behaviors);
        }
    }
}

fn extremes(behaviors: &[f64]) -> (f64, f64) {
    let max = behaviors.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let min = behaviors.iter().copied().fold(f64::INFINITY, f64::min);
    (max, min)
}

/// Records the behaviors of the latest attempt and reports whether the cohort
/// is saturated:
///
/// 1. `|max_n - max_{n-1}| <= epsilon`
/// 2. `|min_n - min_{n-1}| <= epsilon`
/// 3. `|max_n - min_n| <= epsilon`
///
/// The saturation count is incremented when all three hold. Always `false`
/// until two attempts have been recorded.
pub fn check_saturation(state: &mut SaturationState, behaviors: &[f64], epsilon: f64) -> bool {
    let (max, min) = extremes(behaviors);
    let saturated = match state.history.last() {
        Some(&(prev_max, prev_min)) => {
            (max - prev_max).abs() <= epsilon
                && (min - prev_min).abs() <= epsilon
                && (max - min).abs() <= epsilon
        }
        None => false,
    };
    state.history.push((max, min));
    if saturated {
        state.saturation_count += 1;
    }
    saturated
}
