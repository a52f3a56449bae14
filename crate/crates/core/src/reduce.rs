//! Fixed-order reductions.
//!
//! Sums are formed by a pairwise tree over the input order, so the result
//! depends only on the input sequence and never on thread scheduling.

use num_complex::Complex64;

const LEAF: usize = 8;

/// Pairwise (cascade) summation in the order given.
pub fn pairwise_sum(values: &[Complex64]) -> Complex64 {
    if values.len() <= LEAF {
        return values.iter().fold(Complex64::new(0.0, 0.0), |acc, v| acc + v);
    }
    let mid = values.len() / 2;
    pairwise_sum(&values[..mid]) + pairwise_sum(&values[mid..])
}

/// Residual used by every identity check:
/// `|lhs - rhs| / max(|lhs| + |rhs|, 1e-30)`.
pub fn relative_residual(lhs: Complex64, rhs: Complex64) -> f64 {
    (lhs - rhs).norm() / (lhs.norm() + rhs.norm()).max(1e-30)
}

/// Cancellation ratio `sum |t| / |sum t|` of a list of terms. Values near 1
/// mean no cancellation; the attainable relative accuracy of the sum is
/// roughly machine epsilon times this ratio. An exactly vanishing sum gives
/// infinity.
pub fn cancellation_ratio(terms: &[Complex64]) -> f64 {
    let total = pairwise_sum(terms).norm();
    let mass: f64 = terms.iter().map(|t| t.norm()).sum();
    if mass == 0.0 {
        1.0
    } else {
        mass / total
    }
}
