//! Dense complex determinants, the Andreief / Cauchy–Binet expansion of a
//! moment-matrix determinant, and Warnaar's theta-factorial determinant.

mod andreief;
mod matrix;
mod warnaar;

pub use andreief::{
    andreief_lhs, andreief_rhs, cauchy_binet, moment_matrix, DiscreteMeasure, Handle,
};
pub use matrix::{det, ComplexMatrix};
pub use warnaar::{cross_factor, warnaar_det_closed, warnaar_det_direct, warnaar_matrix};

/// Binomial coefficient `C(n, k)` as an integer.
pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}

#[cfg(test)]
mod tests {
    use super::binomial;

    #[test]
    fn binomials() {
        assert_eq!(binomial(8, 3), 56);
        assert_eq!(binomial(2, 3), 0);
        assert_eq!(binomial(5, 0), 1);
        assert_eq!(binomial(3, 3), 1);
        assert_eq!(binomial(20, 10), 184_756);
    }
}
