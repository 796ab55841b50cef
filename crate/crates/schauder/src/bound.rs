//! Certified scalar intervals.

use crate::math;

/// A nonnegative quantity known to lie in `[lower, upper]`.
///
/// Exact values (available for `p ∈ {1, 2, ∞}`) are represented as
/// degenerate intervals with `exact = true`. Downstream consumers that
/// must stay conservative (criteria, validity gates, certificates)
/// always read [`upper`](Self::upper); `lower` exists so that interval
/// quality is visible and testable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstantBound {
    /// Certified lower bound.
    pub lower: f64,
    /// Certified upper bound (may be `f64::INFINITY`).
    pub upper: f64,
    /// Whether `lower == upper` holds by construction rather than luck.
    pub exact: bool,
}

impl ConstantBound {
    /// A value known exactly (up to f64 rounding of the computation).
    pub fn exact(value: f64) -> Self {
        ConstantBound {
            lower: value,
            upper: value,
            exact: true,
        }
    }

    /// An interval `[lower, upper]`. A tiny inversion from rounding is
    /// repaired by shrinking `lower`; a gross inversion is a caller bug.
    pub fn interval(lower: f64, upper: f64) -> Self {
        debug_assert!(
            lower <= upper + 1e-9 * math::abs(upper).max(1.0),
            "interval inverted: [{lower}, {upper}]"
        );
        ConstantBound {
            lower: lower.min(upper),
            upper,
            exact: false,
        }
    }

    /// Interval width; `0` for exact values.
    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }

    /// Does the interval contain `x`?
    pub fn contains(&self, x: f64) -> bool {
        self.lower <= x && x <= self.upper
    }

    /// Pointwise maximum; exact only when both inputs are exact.
    pub fn max(self, other: ConstantBound) -> ConstantBound {
        ConstantBound {
            lower: self.lower.max(other.lower),
            upper: self.upper.max(other.upper),
            exact: self.exact && other.exact,
        }
    }

    /// Scale by a nonnegative factor.
    pub fn scale(self, factor: f64) -> ConstantBound {
        debug_assert!(factor >= 0.0);
        ConstantBound {
            lower: self.lower * factor,
            upper: self.upper * factor,
            exact: self.exact,
        }
    }
}

impl core::ops::Add for ConstantBound {
    type Output = ConstantBound;

    /// Interval sum: ends add, exactness survives only if both sides are
    /// exact.
    fn add(self, other: ConstantBound) -> ConstantBound {
        ConstantBound {
            lower: self.lower + other.lower,
            upper: self.upper + other.upper,
            exact: self.exact && other.exact,
        }
    }
}

impl core::fmt::Display for ConstantBound {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        if self.exact {
            write!(f, "{}", self.upper)
        } else {
            write!(f, "[{}, {}]", self.lower, self.upper)
        }
    }
}
