use num_complex::Complex64;

use crate::elliptic::{dedekind_constant, elliptic_gamma, reciprocal_gamma};
use crate::error::{Error, Result};
use crate::nome::Nome;

use super::integrand::torus_selberg_integral;
use super::params::{ContinuousParams, Variant};
use super::quad::{Estimate, QuadOptions};

fn scaled(est: Estimate, factor: Complex64) -> Estimate {
    Estimate { value: est.value * factor, previous: est.previous * factor, ..est }
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

/// `prod_{j<k} Gamma(s t_j t_k)` over all pairs of `ts`.
fn pair_gammas(s: Complex64, ts: &[Complex64], nome: &Nome) -> Result<Complex64> {
    let mut acc = Complex64::new(1.0, 0.0);
    for j in 0..ts.len() {
        for k in j + 1..ts.len() {
            acc *= elliptic_gamma(s * ts[j] * ts[k], nome)?;
        }
    }
    Ok(acc)
}

fn require_beta(params: &ContinuousParams) -> Result<()> {
    params.require(Variant::Selberg)?;
    if params.n() != 1 {
        return Err(Error::Domain(format!("beta integral needs n = 1 (got {})", params.n())));
    }
    Ok(())
}

/// `(C/2) oint prod_k Gamma(t_k z^+-) / Gamma(z^{+-2}) dz / (2 pi i z)`.
pub fn beta_integral_lhs(params: &ContinuousParams, nome: &Nome, opts: &QuadOptions) -> Result<Estimate> {
    require_beta(params)?;
    selberg_lhs(params, nome, opts)
}

/// `prod_{j<k} Gamma(t_j t_k)`.
pub fn beta_integral_rhs(params: &ContinuousParams, nome: &Nome) -> Result<Complex64> {
    require_beta(params)?;
    pair_gammas(Complex64::new(1.0, 0.0), params.ts(), nome)
}

/// `C^n / (2^n n!)` times the `n`-dimensional Selberg integral.
pub fn selberg_lhs(params: &ContinuousParams, nome: &Nome, opts: &QuadOptions) -> Result<Estimate> {
    params.require(Variant::Selberg)?;
    let n = params.n();
    let norm = dedekind_constant(nome)?.powi(n as i32) / (2f64.powi(n as i32) * factorial(n));
    let est = torus_selberg_integral(params.ts(), params.t(), n, nome, opts)?;
    Ok(scaled(est, norm))
}

/// `prod_{m=1}^n Gamma(t^m) / Gamma(t) prod_{j<k} Gamma(t^{m-1} t_j t_k)`.
pub fn selberg_rhs(params: &ContinuousParams, nome: &Nome) -> Result<Complex64> {
    params.require(Variant::Selberg)?;
    let t = params.t();
    let inv_gamma_t = reciprocal_gamma(t, nome)?;
    let mut acc = Complex64::new(1.0, 0.0);
    let mut tm = Complex64::new(1.0, 0.0);
    for _ in 0..params.n() {
        acc *= pair_gammas(tm, params.ts(), nome)?;
        tm *= t;
        acc *= elliptic_gamma(tm, nome)? * inv_gamma_t;
    }
    Ok(acc)
}

fn rains_weights(ts: &[Complex64], us: &[Complex64], v: Complex64) -> Vec<Complex64> {
    ts.iter().map(|&t| t * v).chain(us.iter().map(|&u| u / v)).collect()
}

/// The unnormalised integral with the eight parameters `t_1..t_4, u_1..u_4`.
pub fn rains_lhs(params: &ContinuousParams, nome: &Nome, opts: &QuadOptions) -> Result<Estimate> {
    params.require(Variant::Rains)?;
    let ws = rains_weights(params.ts(), params.us(), Complex64::new(1.0, 0.0));
    torus_selberg_integral(&ws, params.t(), params.n(), nome, opts)
}

/// `prod_{m=1}^n prod_{j<k} Gamma(t^{m-1} t_j t_k, t^{m-1} u_j u_k)` times the
/// same integral with parameters `t_k v`, `u_k / v`.
pub fn rains_rhs(params: &ContinuousParams, nome: &Nome, opts: &QuadOptions) -> Result<Estimate> {
    params.require(Variant::Rains)?;
    let t = params.t();
    let mut pre = Complex64::new(1.0, 0.0);
    let mut tm = Complex64::new(1.0, 0.0);
    for _ in 0..params.n() {
        pre *= pair_gammas(tm, params.ts(), nome)? * pair_gammas(tm, params.us(), nome)?;
        tm *= t;
    }
    let ws = rains_weights(params.ts(), params.us(), params.v());
    let est = torus_selberg_integral(&ws, t, params.n(), nome, opts)?;
    Ok(scaled(est, pre))
}
