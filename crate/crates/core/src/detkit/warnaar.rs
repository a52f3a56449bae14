use num_complex::Complex64;

use super::binomial;
use super::matrix::{det, ComplexMatrix};
use crate::elliptic::{pm_product, shifted_factorial, theta, PmKind};
use crate::error::{Error, Result};
use crate::nome::Nome;

/// The matrix with entries `(a z_k^±)_{j-1} (b z_k^±)_{n-j}`, rows `j`,
/// columns `k`, both counted from 1.
pub fn warnaar_matrix(a: Complex64, b: Complex64, zs: &[Complex64], nome: &Nome) -> Result<ComplexMatrix> {
    let n = zs.len();
    if n == 0 {
        return Err(Error::Domain("need at least one variable".into()));
    }
    ComplexMatrix::from_fn(n, |row, col| {
        let j = row + 1;
        let z = zs[col];
        Ok(pm_product(PmKind::Factorial(j - 1), a, z, nome)? * pm_product(PmKind::Factorial(n - j), b, z, nome)?)
    })
}

/// Determinant of [`warnaar_matrix`], by elimination.
pub fn warnaar_det_direct(a: Complex64, b: Complex64, zs: &[Complex64], nome: &Nome) -> Result<Complex64> {
    det(&warnaar_matrix(a, b, zs, nome)?)
}

/// `prod_{j<k} z_k^{-1} theta(z_k z_j) theta(z_k / z_j)`.
pub fn cross_factor(zs: &[Complex64], nome: &Nome) -> Result<Complex64> {
    let mut acc = Complex64::new(1.0, 0.0);
    for (k, &zk) in zs.iter().enumerate() {
        for &zj in &zs[..k] {
            acc *= theta(zk * zj, nome)? * theta(zk / zj, nome)? / zk;
        }
    }
    Ok(acc)
}

/// Closed-form evaluation
/// `b^{C(n,2)} q^{C(n,3)} prod_j (q^{j-n} a/b, q^{n-j} ab)_{j-1} prod_{j<k} z_k^{-1} theta(z_k z_j^±)`.
pub fn warnaar_det_closed(a: Complex64, b: Complex64, zs: &[Complex64], nome: &Nome) -> Result<Complex64> {
    let n = zs.len();
    if n == 0 {
        return Err(Error::Domain("need at least one variable".into()));
    }
    let mut acc = crate::nome::int_pow(b, binomial(n, 2) as i64) * nome.q_pow(binomial(n, 3) as i64);
    for j in 1..=n {
        let shift = j as i64 - n as i64;
        acc *= shifted_factorial(nome.q_pow(shift) * a / b, j - 1, nome)?;
        acc *= shifted_factorial(nome.q_pow(-shift) * a * b, j - 1, nome)?;
    }
    Ok(acc * cross_factor(zs, nome)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::elliptic::{pm_pm_product, reciprocal_gamma};
    use crate::reduce::relative_residual;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn polar(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> Complex64 {
        Complex64::from_polar(rng.gen_range(lo..hi), rng.gen_range(0.0..std::f64::consts::TAU))
    }

    #[test]
    fn one_variable_is_one() {
        let nome = Nome::new(c(0.2, 0.1), c(0.3, 0.0)).unwrap();
        let (a, b, z) = (c(0.4, 0.2), c(0.5, -0.3), c(0.7, 0.1));
        assert_eq!(warnaar_det_direct(a, b, &[z], &nome).unwrap(), c(1.0, 0.0));
        assert_eq!(warnaar_det_closed(a, b, &[z], &nome).unwrap(), c(1.0, 0.0));
    }

    #[test]
    fn equal_variables_give_zero() {
        let nome = Nome::new(c(0.2, 0.1), c(0.3, 0.0)).unwrap();
        let z = c(0.6, 0.3);
        let v = warnaar_det_direct(c(0.4, 0.2), c(0.5, -0.3), &[z, z], &nome).unwrap();
        assert!(v.norm() < 1e-15);
    }

    #[test]
    fn closed_form_matches_elimination() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in 2..=4 {
            for _ in 0..5 {
                let nome = Nome::new(polar(&mut rng, 0.0, 0.5), polar(&mut rng, 0.0, 0.5)).unwrap();
                let a = polar(&mut rng, 0.3, 0.9);
                let b = polar(&mut rng, 0.3, 0.9);
                let zs: Vec<_> = (0..n).map(|_| polar(&mut rng, 0.3, 0.9)).collect();
                let direct = warnaar_det_direct(a, b, &zs, &nome).unwrap();
                let closed = warnaar_det_closed(a, b, &zs, &nome).unwrap();
                assert!(relative_residual(direct, closed) < 1e-10, "n={n}: {direct} vs {closed}");
            }
        }
    }

    #[test]
    fn squared_cross_factor_is_gamma_quotient() {
        let nome = Nome::new(c(0.25, 0.1), c(0.35, -0.2)).unwrap();
        let zs = [c(0.8, 0.3), c(-0.4, 0.9), c(0.5, -0.6)];
        let lhs = cross_factor(&zs, &nome).unwrap().powu(2);
        let mut rhs = c(1.0, 0.0);
        for k in 0..zs.len() {
            for j in 0..k {
                rhs *= pm_pm_product(PmKind::Gamma, nome.q(), zs[j], zs[k], &nome).unwrap();
                let (zj, zk) = (zs[j], zs[k]);
                for w in [zj * zk, zj / zk, zk / zj, (zj * zk).inv()] {
                    rhs *= reciprocal_gamma(w, &nome).unwrap();
                }
            }
        }
        assert!(relative_residual(lhs, rhs) < 1e-12);
    }
}
