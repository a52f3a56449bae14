//! Discrete elliptic Selberg sums at `t = q`: both sides of the
//! multivariable transformation and summation, and the moment-matrix
//! (`S_jk`) replay of their determinantal proof.
//!
//! All sums run over increasing tuples `0 <= x_1 < ... < x_n <= N` of the
//! very-well-poised weight
//!
//! ```text
//! prod_{j<k} (q^{x_j} theta(q^{x_k - x_j}) theta(a q^{x_j + x_k}))^2
//!   * prod_j theta(a q^{2x_j})/theta(a) * (u_1..u_m)_{x_j}/(l_1..l_m)_{x_j} * q^{x_j}
//! ```
//!
//! Parameters, terms and determinants are carried in double-double (see
//! [`crate::xprec`]) because these sums can cancel by many orders of
//! magnitude; public results are rounded at the end.

mod identities;
mod params;
mod proof;
mod series;

pub use identities::{lhs_terms, mbs_lhs, mbs_rhs, mbt_lhs, mbt_rhs, mbt_rhs_single_term, mbt_rhs_terms};
pub use params::{sample_degenerate_params, sample_discrete_params, DiscreteKind, DiscreteParams};
pub use proof::{
    cauchy_binet_det, prefactor_pf, sjk_alt_det, sjk_det, sjk_factors, sjk_matrix, sjk_matrix_alt, SjkFactors,
};

use crate::tuples::IncreasingTuples;

/// All summation tuples for `n` variables and upper bound `N`, in
/// lexicographic order; empty when `n > N + 1`.
pub fn enumerate_tuples(n: usize, big_n: usize) -> IncreasingTuples {
    IncreasingTuples::new(n, big_n)
}

/// Denominator theta factors smaller than this reject an instance.
pub const POLE_GUARD: f64 = 1e-10;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tuple_enumeration_examples() {
        let ones: Vec<_> = enumerate_tuples(1, 2).collect();
        assert_eq!(ones, [vec![0], vec![1], vec![2]]);
        let full: Vec<_> = enumerate_tuples(3, 2).collect();
        assert_eq!(full, [vec![0, 1, 2]]);
        assert_eq!(enumerate_tuples(3, 7).count(), 56);
        assert_eq!(enumerate_tuples(4, 2).count(), 0);
    }
}
