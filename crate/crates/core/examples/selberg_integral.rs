//! The two-variable elliptic Selberg integral at `t = q` and at a generic `t`.

use elliptic_selberg::continuous::{sample_continuous_params, selberg_lhs, selberg_rhs, QuadOptions, TMode, Variant};
use elliptic_selberg::reduce::relative_residual;
use elliptic_selberg::{Nome, Result};

fn main() -> Result<()> {
    let nome = Nome::from_polar(0.2, 0.3, 0.45, 1.1)?;
    let opts = QuadOptions::for_dims(2);
    for mode in [TMode::Q, TMode::General] {
        for seed in 0..3 {
            let p = sample_continuous_params(seed, Variant::Selberg, 2, mode, &nome)?;
            let est = selberg_lhs(&p, &nome, &opts)?;
            let rhs = selberg_rhs(&p, &nome)?;
            println!(
                "{mode:?} seed {seed}: t = {:.4}  M = {}  residual {:.2e}",
                p.t(),
                est.nodes,
                relative_residual(est.value, rhs)
            );
        }
    }
    Ok(())
}
