//! The elliptic beta integral by adaptive trapezoid quadrature.

use elliptic_selberg::continuous::{
    beta_integral_lhs, beta_integral_rhs, sample_continuous_params, QuadOptions, TMode, Variant,
};
use elliptic_selberg::reduce::relative_residual;
use elliptic_selberg::{Nome, Result};

fn main() -> Result<()> {
    let nome = Nome::from_polar(0.2, 0.3, 0.45, 1.1)?;
    let opts = QuadOptions::for_dims(1);
    for seed in 0..5 {
        let p = sample_continuous_params(seed, Variant::Selberg, 1, TMode::General, &nome)?;
        let est = beta_integral_lhs(&p, &nome, &opts)?;
        let rhs = beta_integral_rhs(&p, &nome)?;
        println!(
            "seed {seed}: M = {:4}  estimated error {:.1e}  residual {:.2e}",
            est.nodes,
            est.error,
            relative_residual(est.value, rhs)
        );
    }
    Ok(())
}
