//! Integrals over the unit torus `|z_1| = ... = |z_n| = 1`: the elliptic
//! beta integral, the elliptic Selberg integral, Rains' transformation and
//! the `I_jk` moment-matrix replay of the `t = q` Selberg evaluation.
//!
//! Integrals are evaluated with the trapezoid rule on half-offset nodes,
//! doubling the node count until two estimates agree. Integrands are
//! analytic in an annulus around the torus whose width is set by the
//! parameter moduli, so convergence is geometric.

mod integrals;
mod integrand;
mod params;
mod proof;
mod quad;

pub use integrals::{beta_integral_lhs, beta_integral_rhs, rains_lhs, rains_rhs, selberg_lhs, selberg_rhs};
pub use integrand::{cross_factor, integrand, tabulated_integral, torus_selberg_integral, weight};
pub use params::{modulus_cap, sample_continuous_params, ContinuousParams, TMode, Variant};
pub use proof::{di_check, di_prefactor, ijk_matrices, ijk_params, DiCheck, IjkMatrices};
pub use quad::{adaptive, torus_integrate, Estimate, QuadGrid, QuadOptions, Sample, MIN_NODES, ROUNDOFF};
