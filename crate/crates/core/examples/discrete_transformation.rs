//! The multivariable discrete transformation, including the degenerate
//! case `cd = aq` where the right side is a single product.

use elliptic_selberg::discrete::{
    mbt_lhs, mbt_rhs, mbt_rhs_single_term, sample_degenerate_params, sample_discrete_params, DiscreteKind,
};
use elliptic_selberg::reduce::relative_residual;
use elliptic_selberg::{Nome, Result};

fn main() -> Result<()> {
    let nome = Nome::from_polar(0.2, 0.3, 0.45, 1.1)?;
    let p = sample_discrete_params(3, 2, 5, DiscreteKind::Transformation, &nome)?;
    for (name, value) in p.named() {
        println!("{name:>7} = {value:.6}");
    }
    let (lhs, rhs) = (mbt_lhs(&p, &nome)?, mbt_rhs(&p, &nome)?);
    println!("lhs {lhs:.12e}\nrhs {rhs:.12e}\nresidual {:.2e}", relative_residual(lhs, rhs));

    let d = sample_degenerate_params(3, 3, 6, &nome)?;
    let single = mbt_rhs_single_term(&d, &nome)?;
    println!("degenerate: lhs vs single term {:.2e}", relative_residual(mbt_lhs(&d, &nome)?, single));
    println!("degenerate: rhs vs single term {:.2e}", relative_residual(mbt_rhs(&d, &nome)?, single));
    Ok(())
}
