//! Theta functions, the elliptic gamma function and elliptic shifted
//! factorials over the complex field.
//!
//! With `p`, `q` the bases of a [`Nome`](crate::Nome):
//!
//! ```text
//! theta(z)      = prod_{j>=0} (1 - p^j z)(1 - p^{j+1}/z)
//! Gamma(z)      = prod_{j,k>=0} (1 - p^{j+1} q^{k+1}/z) / (1 - p^j q^k z)
//! (z)_k         = theta(z) theta(zq) ... theta(zq^{k-1})
//! C             = prod_{j>=1} (1 - p^j)(1 - q^j)
//! ```
//!
//! The gamma function satisfies `Gamma(qz) = theta(z) Gamma(z)` and hence
//! `Gamma(q^k z) = (z)_k Gamma(z)`.

mod gamma;
mod shorthand;
mod theta;

pub use gamma::{elliptic_gamma, gamma_factors, reciprocal_gamma, GammaFactors, NEAR_POLE_RADIUS};
pub use shorthand::{pm_product, pm_pm_product, PmKind};
pub use theta::{dedekind_constant, shifted_factorial, shifted_factorial_product, theta};
