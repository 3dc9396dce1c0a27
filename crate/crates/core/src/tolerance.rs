//! Shared floating-point slack for inequality checks.

/// Additive slack factor: `lhs ≤ rhs` is accepted when
/// `lhs ≤ rhs + SLACK · (1 + |rhs|)`.
pub const SLACK: f64 = 1e-12;

pub fn holds(lhs: f64, rhs: f64) -> bool {
    lhs <= rhs + SLACK * (1.0 + rhs.abs())
}

/// `lhs / rhs`, or `None` when `rhs` is zero or either side is not finite.
pub fn ratio(lhs: f64, rhs: f64) -> Option<f64> {
    let r = lhs / rhs;
    (rhs != 0.0 && r.is_finite()).then_some(r)
}
