//! Exact perfect-square tests on big integers and rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

/// Floor of the square root of a non-negative integer. Returns `None` for
/// negative input.
pub fn integer_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    Some(n.sqrt())
}

/// Exact perfect-square test for integers. Zero counts as a square.
pub fn is_perfect_square(n: &BigInt) -> bool {
    match integer_sqrt(n) {
        Some(r) => &r * &r == *n,
        None => false,
    }
}

/// Exact squareness of a rational number. Zero counts as a square; a negative
/// value never does. A reduced fraction p/q with q > 0 is a square in Q
/// exactly when p*q is a perfect square in Z.
pub fn is_square_rational(q: &BigRational) -> bool {
    if q.is_zero() {
        return true;
    }
    if q.is_negative() {
        return false;
    }
    is_perfect_square(&(q.numer() * q.denom()))
}
