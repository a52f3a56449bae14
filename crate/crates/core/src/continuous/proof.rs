//! Determinantal replay of the `t = q` Selberg integral.
//!
//! `I_jk` is the one-variable integral with `(t_1, t_2, t_3, t_4)` replaced
//! by `(t_1 q^{j-1}, t_2 q^{n-j}, t_3 q^{k-1}, t_4 q^{n-k})`. Its determinant
//! equals a product of elliptic shifted factorials times the `n`-variable
//! integral at `t = q`.

use num_complex::Complex64;

use crate::detkit::{binomial, det, ComplexMatrix};
use crate::elliptic::shifted_factorial;
use crate::error::{Error, Result};
use crate::nome::Nome;

use super::integrals::{beta_integral_lhs, beta_integral_rhs, selberg_lhs};
use super::params::{ContinuousParams, Variant};
use super::quad::QuadOptions;

fn require_t_equal_q(params: &ContinuousParams, nome: &Nome) -> Result<()> {
    params.require(Variant::Selberg)?;
    if (params.t() - nome.q()).norm() > 1e-14 * nome.q().norm() {
        return Err(Error::Domain(format!("the determinantal replay needs t = q (got t = {})", params.t())));
    }
    Ok(())
}

/// One-variable parameters of entry `(j, k)`, 1-based.
pub fn ijk_params(params: &ContinuousParams, j: usize, k: usize, nome: &Nome) -> Result<ContinuousParams> {
    require_t_equal_q(params, nome)?;
    let n = params.n();
    if !(1..=n).contains(&j) || !(1..=n).contains(&k) {
        return Err(Error::Domain(format!("entry ({j}, {k}) outside 1..={n}")));
    }
    let ts = params.ts();
    let q = |e: usize| nome.q_pow(e as i64);
    let shifted = [ts[0] * q(j - 1), ts[1] * q(n - j), ts[2] * q(k - 1), ts[3] * q(n - k), ts[4], ts[5]];
    ContinuousParams::selberg(nome.q(), shifted, 1, nome)
}

/// The `I_jk` matrix evaluated twice: by quadrature and by the closed
/// beta-integral product.
#[derive(Clone, Debug, PartialEq)]
pub struct IjkMatrices {
    pub quadrature: ComplexMatrix,
    pub closed: ComplexMatrix,
}

impl IjkMatrices {
    /// Largest entrywise relative difference between the two evaluations.
    pub fn max_entry_residual(&self) -> f64 {
        self.quadrature
            .entries()
            .iter()
            .zip(self.closed.entries())
            .map(|(&a, &b)| crate::reduce::relative_residual(a, b))
            .fold(0.0, f64::max)
    }
}

pub fn ijk_matrices(params: &ContinuousParams, nome: &Nome, opts: &QuadOptions) -> Result<IjkMatrices> {
    let n = params.n();
    let mut quad = Vec::with_capacity(n * n);
    let mut closed = Vec::with_capacity(n * n);
    for j in 1..=n {
        for k in 1..=n {
            let p = ijk_params(params, j, k, nome)?;
            quad.push(beta_integral_lhs(&p, nome, opts)?.value);
            closed.push(beta_integral_rhs(&p, nome)?);
        }
    }
    Ok(IjkMatrices {
        quadrature: ComplexMatrix::from_row_major(n, quad)?,
        closed: ComplexMatrix::from_row_major(n, closed)?,
    })
}

/// `(t_2 t_4)^{C(n,2)} q^{2 C(n,3)} prod_j (q^{j-n} t_1/t_2, q^{n-j} t_1 t_2, q^{j-n} t_3/t_4, q^{n-j} t_3 t_4)_{j-1}`.
pub fn di_prefactor(params: &ContinuousParams, nome: &Nome) -> Result<Complex64> {
    require_t_equal_q(params, nome)?;
    let n = params.n();
    let ts = params.ts();
    let (t1, t2, t3, t4) = (ts[0], ts[1], ts[2], ts[3]);
    let mut acc = (t2 * t4).powi(binomial(n, 2) as i32) * nome.q_pow(2 * binomial(n, 3) as i64);
    for j in 1..=n {
        let down = nome.q_pow(j as i64 - n as i64);
        let up = nome.q_pow((n - j) as i64);
        for z in [down * t1 / t2, up * t1 * t2, down * t3 / t4, up * t3 * t4] {
            acc *= shifted_factorial(z, j - 1, nome)?;
        }
    }
    Ok(acc)
}

/// Both sides of the determinant identity.
#[derive(Clone, Debug, PartialEq)]
pub struct DiCheck {
    /// `det(I_jk)` with entries from quadrature.
    pub determinant: Complex64,
    /// `det(I_jk)` with entries from the closed product.
    pub closed_determinant: Complex64,
    /// Prefactor times the normalised `n`-variable integral.
    pub prefactor_times_integral: Complex64,
    pub matrices: IjkMatrices,
}

pub fn di_check(params: &ContinuousParams, nome: &Nome, opts_1d: &QuadOptions, opts_nd: &QuadOptions) -> Result<DiCheck> {
    let matrices = ijk_matrices(params, nome, opts_1d)?;
    let integral = selberg_lhs(params, nome, opts_nd)?.value;
    Ok(DiCheck {
        determinant: det(&matrices.quadrature)?,
        closed_determinant: det(&matrices.closed)?,
        prefactor_times_integral: di_prefactor(params, nome)? * integral,
        matrices,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::continuous::params::{sample_continuous_params, TMode};
    use crate::reduce::relative_residual;

    fn nome() -> Nome {
        Nome::from_polar(0.2, 0.3, 0.45, 1.1).unwrap()
    }

    #[test]
    fn one_variable_case_is_the_beta_integral() {
        let nome = nome();
        let p = sample_continuous_params(4, Variant::Selberg, 1, TMode::Q, &nome).unwrap();
        let o = QuadOptions::for_dims(1);
        let check = di_check(&p, &nome, &o, &o).unwrap();
        assert_eq!(di_prefactor(&p, &nome).unwrap(), Complex64::new(1.0, 0.0));
        assert!(relative_residual(check.determinant, check.prefactor_times_integral) < 1e-12);
        assert!(relative_residual(check.closed_determinant, beta_integral_rhs(&p, &nome).unwrap()) < 1e-14);
    }

    #[test]
    fn entries_satisfy_the_shifted_balancing() {
        let nome = nome();
        let p = sample_continuous_params(0, Variant::Selberg, 2, TMode::Q, &nome).unwrap();
        for j in 1..=2 {
            for k in 1..=2 {
                let e = ijk_params(&p, j, k, &nome).unwrap();
                let prod: Complex64 = e.ts().iter().product();
                assert!((prod - nome.pq()).norm() < 1e-14);
            }
        }
        assert!(ijk_params(&p, 3, 1, &nome).is_err());
    }

    #[test]
    fn general_t_is_rejected() {
        let nome = nome();
        let p = sample_continuous_params(0, Variant::Selberg, 2, TMode::General, &nome).unwrap();
        assert!(di_prefactor(&p, &nome).is_err());
    }

    #[test]
    fn two_variable_determinant_identity() {
        let nome = nome();
        let p = sample_continuous_params(3, Variant::Selberg, 2, TMode::Q, &nome).unwrap();
        let check = di_check(&p, &nome, &QuadOptions::for_dims(1), &QuadOptions::for_dims(2)).unwrap();
        assert!(check.matrices.max_entry_residual() <= 1e-8);
        assert!(relative_residual(check.determinant, check.prefactor_times_integral) <= 1e-6);
    }
}
