use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::nome::Nome;

fn check_arg(z: Complex64, what: &str) -> Result<()> {
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::Domain(format!("{what}: non-finite argument {z}")));
    }
    if z == Complex64::new(0.0, 0.0) {
        return Err(Error::Domain(format!("{what}: argument must be nonzero")));
    }
    Ok(())
}

/// Modified Jacobi theta function `prod_{j>=0} (1 - p^j z)(1 - p^{j+1}/z)`.
///
/// Factors are taken until `|p|^{j+1} max(|z|, 1/|z|)` drops below the
/// nome's cutoff.
pub fn theta(z: Complex64, nome: &Nome) -> Result<Complex64> {
    check_arg(z, "theta")?;
    let p = nome.p();
    let p_abs = p.norm();
    let inv_z = z.inv();
    let scale = z.norm().max(inv_z.norm());

    let mut acc = Complex64::new(1.0, 0.0);
    // p^j and p^{j+1}
    let mut pj = Complex64::new(1.0, 0.0);
    let mut pj1 = p;
    let mut pj1_abs = p_abs;
    let mut count = 0usize;
    loop {
        if count >= nome.max_terms() {
            return Err(Error::Truncation { arg: z, max_terms: nome.max_terms() });
        }
        acc *= (1.0 - pj * z) * (1.0 - pj1 * inv_z);
        count += 1;
        if pj1_abs * scale < nome.cutoff() {
            return Ok(acc);
        }
        pj = pj1;
        pj1 *= p;
        pj1_abs *= p_abs;
    }
}

/// Elliptic shifted factorial `(z)_k = prod_{j<k} theta(z q^j)`, with
/// `(z)_0 = 1`.
pub fn shifted_factorial(z: Complex64, k: usize, nome: &Nome) -> Result<Complex64> {
    let mut acc = Complex64::new(1.0, 0.0);
    let mut w = z;
    for _ in 0..k {
        acc *= theta(w, nome)?;
        w *= nome.q();
    }
    Ok(acc)
}

/// `(z_1, ..., z_m)_k`, the product of the individual factorials.
pub fn shifted_factorial_product(zs: &[Complex64], k: usize, nome: &Nome) -> Result<Complex64> {
    zs.iter()
        .try_fold(Complex64::new(1.0, 0.0), |acc, &z| Ok(acc * shifted_factorial(z, k, nome)?))
}

fn euler_product(x: Complex64, nome: &Nome) -> Result<Complex64> {
    let x_abs = x.norm();
    let mut acc = Complex64::new(1.0, 0.0);
    let mut xj = x;
    let mut xj_abs = x_abs;
    let mut count = 0usize;
    while xj_abs >= nome.cutoff() {
        if count >= nome.max_terms() {
            return Err(Error::Truncation { arg: x, max_terms: nome.max_terms() });
        }
        acc *= 1.0 - xj;
        xj *= x;
        xj_abs *= x_abs;
        count += 1;
    }
    Ok(acc)
}

/// The constant `C = prod_{j>=1} (1 - p^j)(1 - q^j)` normalising the
/// elliptic beta and Selberg integrals.
pub fn dedekind_constant(nome: &Nome) -> Result<Complex64> {
    Ok(euler_product(nome.p(), nome)? * euler_product(nome.q(), nome)?)
}
