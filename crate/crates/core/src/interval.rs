use core::fmt;

/// A closed interval `[lo, hi]` on the real line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    /// Lower end.
    pub lo: f64,
    /// Upper end.
    pub hi: f64,
}

impl Interval {
    /// Creates `[lo, hi]`. No validation; see [`Interval::is_valid`].
    pub const fn new(lo: f64, hi: f64) -> Self {
        Self { lo, hi }
    }

    /// Finite ends with `lo <= hi`.
    pub fn is_valid(&self) -> bool {
        self.lo.is_finite() && self.hi.is_finite() && self.lo <= self.hi
    }

    /// `hi - lo`.
    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    /// Whether `x` lies in the interval.
    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    /// Intersection with `outer`. Collapses to the nearest end of `outer`
    /// when the two do not overlap.
    pub fn clip_to(&self, outer: &Interval) -> Interval {
        let lo = self.lo.max(outer.lo).min(outer.hi);
        let hi = self.hi.min(outer.hi).max(lo);
        Interval { lo, hi }
    }

    /// Maps `u` in `[0, 1)` to a point of the interval, never leaving it
    /// through rounding.
    pub fn lerp(&self, u: f64) -> f64 {
        if self.lo == self.hi {
            return self.lo;
        }
        (self.lo + u * (self.hi - self.lo)).clamp(self.lo, self.hi)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clip_inside_and_outside() {
        let outer = Interval::new(0.0, 10.0);
        assert_eq!(
            Interval::new(-1.0, 2.0).clip_to(&outer),
            Interval::new(0.0, 2.0)
        );
        assert_eq!(
            Interval::new(9.0, 12.0).clip_to(&outer),
            Interval::new(9.0, 10.0)
        );
        assert_eq!(
            Interval::new(11.0, 12.0).clip_to(&outer),
            Interval::new(10.0, 10.0)
        );
        assert_eq!(
            Interval::new(-3.0, -2.0).clip_to(&outer),
            Interval::new(0.0, 0.0)
        );
    }

    #[test]
    fn lerp_stays_inside() {
        let iv = Interval::new(0.1, 0.3);
        for u in [0.0, 0.5, 0.999_999_999_999_999_9] {
            assert!(iv.contains(iv.lerp(u)));
        }
        assert_eq!(Interval::new(1.5, 1.5).lerp(0.7), 1.5);
    }
}
