//! Rains' transformation of the eight-parameter integral, and its
//! invariance under `v -> -v`.

use elliptic_selberg::continuous::{rains_lhs, rains_rhs, sample_continuous_params, QuadOptions, TMode, Variant};
use elliptic_selberg::reduce::relative_residual;
use elliptic_selberg::{Nome, Result};

fn main() -> Result<()> {
    let nome = Nome::from_polar(0.2, 0.3, 0.45, 1.1)?;
    for n in [1, 2] {
        let opts = QuadOptions::for_dims(n);
        let p = sample_continuous_params(9, Variant::Rains, n, TMode::Q, &nome)?;
        let lhs = rains_lhs(&p, &nome, &opts)?.value;
        let rhs = rains_rhs(&p, &nome, &opts)?.value;
        let flipped = rains_rhs(&p.negate_v(), &nome, &opts)?.value;
        println!("n = {n}: lhs {lhs:.10e}");
        println!("       rhs {rhs:.10e}  residual {:.2e}", relative_residual(lhs, rhs));
        println!("       v -> -v residual {:.2e}", relative_residual(rhs, flipped));
    }
    Ok(())
}
