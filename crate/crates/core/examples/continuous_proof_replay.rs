//! Determinant of one-variable integrals `I_jk` against a prefactor times
//! the two-variable integral at `t = q`.

use elliptic_selberg::continuous::{di_check, di_prefactor, sample_continuous_params, QuadOptions, TMode, Variant};
use elliptic_selberg::reduce::relative_residual;
use elliptic_selberg::{Nome, Result};

fn main() -> Result<()> {
    let nome = Nome::from_polar(0.2, 0.3, 0.45, 1.1)?;
    let p = sample_continuous_params(5, Variant::Selberg, 2, TMode::Q, &nome)?;
    let check = di_check(&p, &nome, &QuadOptions::for_dims(1), &QuadOptions::for_dims(2))?;
    println!("I_jk by quadrature:{:?}", check.matrices.quadrature);
    println!("worst entry vs closed form  {:.2e}", check.matrices.max_entry_residual());
    println!("prefactor                   {:.10e}", di_prefactor(&p, &nome)?);
    println!("det I                       {:.10e}", check.determinant);
    println!("prefactor * integral        {:.10e}", check.prefactor_times_integral);
    println!("residual                    {:.2e}", relative_residual(check.determinant, check.prefactor_times_integral));
    Ok(())
}
