//! Theta function and elliptic gamma function, with their functional
//! equations checked at one point.

use elliptic_selberg::elliptic::{elliptic_gamma, gamma_factors, reciprocal_gamma, shifted_factorial, theta};
use elliptic_selberg::reduce::relative_residual;
use elliptic_selberg::{Complex64, Nome, Result};

fn main() -> Result<()> {
    let nome = Nome::from_polar(0.2, 0.3, 0.45, 1.1)?;
    let z = Complex64::new(0.4, 0.1);

    println!("theta(z)      = {:.15}", theta(z, &nome)?);
    println!("Gamma(z)      = {:.15}", elliptic_gamma(z, &nome)?);

    let quasi = relative_residual(theta(nome.p() * z, &nome)?, -theta(z, &nome)? / z);
    let shift = relative_residual(elliptic_gamma(nome.q() * z, &nome)?, theta(z, &nome)? * elliptic_gamma(z, &nome)?);
    let k = 4;
    let factorial = relative_residual(
        elliptic_gamma(nome.q_pow(k) * z, &nome)?,
        shifted_factorial(z, k as usize, &nome)? * elliptic_gamma(z, &nome)?,
    );
    let reflection = relative_residual(elliptic_gamma(z, &nome)? * elliptic_gamma(nome.pq() / z, &nome)?, 1.0.into());
    println!("theta(pz) = -theta(z)/z          residual {quasi:.2e}");
    println!("Gamma(qz) = theta(z) Gamma(z)    residual {shift:.2e}");
    println!("Gamma(q^4 z) = (z)_4 Gamma(z)    residual {factorial:.2e}");
    println!("Gamma(z) Gamma(pq/z) = 1         residual {reflection:.2e}");

    // 1/Gamma has a zero at z = 1 where Gamma itself has a pole
    let one = Complex64::new(1.0, 0.0);
    println!("1/Gamma(1)    = {}", reciprocal_gamma(one, &nome)?);
    println!("Gamma(1)      -> {}", elliptic_gamma(one, &nome).unwrap_err());
    println!("lattice factors of Gamma(z): {}", gamma_factors(z, false, &nome)?.numerator_factors.len());
    Ok(())
}
