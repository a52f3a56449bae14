//! The multivariable discrete summation over `0 <= x_1 < ... < x_n <= N`.

use elliptic_selberg::discrete::{lhs_terms, mbs_lhs, mbs_rhs, sample_discrete_params, DiscreteKind};
use elliptic_selberg::reduce::{cancellation_ratio, relative_residual};
use elliptic_selberg::{Nome, Result};

fn main() -> Result<()> {
    let nome = Nome::from_polar(0.2, 0.3, 0.45, 1.1)?;
    for n in 1..=3 {
        for big_n in 2..=6 {
            let p = sample_discrete_params(17, n, big_n, DiscreteKind::Summation, &nome)?;
            let lhs = mbs_lhs(&p, &nome)?;
            let rhs = mbs_rhs(&p, &nome)?;
            let kappa = cancellation_ratio(&lhs_terms(&p, &nome)?);
            println!(
                "n = {n}, N = {big_n}: residual {:.2e}  (terms {}, cancellation {kappa:.1})",
                relative_residual(lhs, rhs),
                lhs_terms(&p, &nome)?.len()
            );
        }
    }
    Ok(())
}
