use std::fmt;

/// Tropical-semiring weight: a non-negative cost, or `+∞` for "no path".
///
/// `plus` is `min`, `times` is addition.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Weight(f64);

impl Weight {
    /// Semiring zero, the identity of `plus`.
    pub const ZERO: Weight = Weight(f64::INFINITY);
    /// Semiring one, the identity of `times`.
    pub const ONE: Weight = Weight(0.0);

    /// Panics on negative or NaN costs.
    pub fn new(cost: f64) -> Self {
        assert!(
            cost >= 0.0,
            "tropical weights must be non-negative, got {cost}"
        );
        Weight(cost)
    }

    /// Like [`Weight::new`] but returns `None` instead of panicking.
    pub fn try_new(cost: f64) -> Option<Self> {
        (cost >= 0.0).then_some(Weight(cost))
    }

    pub fn cost(self) -> f64 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == f64::INFINITY
    }

    pub fn plus(self, other: Weight) -> Weight {
        if other.0 < self.0 {
            other
        } else {
            self
        }
    }

    pub fn times(self, other: Weight) -> Weight {
        Weight(self.0 + other.0)
    }

    /// Equality up to a relative tolerance, treating the two infinities as equal.
    pub fn approx_eq(self, other: Weight, tol: f64) -> bool {
        if self.is_zero() || other.is_zero() {
            return self.is_zero() && other.is_zero();
        }
        (self.0 - other.0).abs() <= tol * self.0.abs().max(other.0.abs()).max(1.0)
    }
}

impl Default for Weight {
    fn default() -> Self {
        Weight::ONE
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            f.write_str("Infinity")
        } else {
            write!(f, "{}", self.0)
        }
    }
}
