//! Replays the determinantal proof of the discrete transformation: the
//! moment matrix `S_jk` of one-variable sums has determinant equal to a
//! prefactor times either side.

use elliptic_selberg::discrete::{
    cauchy_binet_det, mbt_lhs, mbt_rhs, prefactor_pf, sample_discrete_params, sjk_alt_det, sjk_det, sjk_matrix,
    DiscreteKind,
};
use elliptic_selberg::reduce::relative_residual;
use elliptic_selberg::{Nome, Result};

fn main() -> Result<()> {
    let nome = Nome::from_polar(0.2, 0.3, 0.45, 1.1)?;
    for n in 1..=3 {
        let p = sample_discrete_params(11, n, 5, DiscreteKind::Transformation, &nome)?;
        let d = sjk_det(&p, &nome)?;
        let pf = prefactor_pf(&p, &nome)?;
        println!("n = {n}");
        println!("  det S vs pf * lhs       {:.2e}", relative_residual(d, pf * mbt_lhs(&p, &nome)?));
        println!("  det S vs pf * rhs       {:.2e}", relative_residual(d, pf * mbt_rhs(&p, &nome)?));
        println!("  transformed det S       {:.2e}", relative_residual(sjk_alt_det(&p, &nome)?, d));
        println!("  Cauchy-Binet expansion  {:.2e}", relative_residual(cauchy_binet_det(&p, &nome)?, d));
        if n == 2 {
            println!("{:?}", sjk_matrix(&p, &nome)?);
        }
    }
    Ok(())
}
