//! Moment-matrix replay of the determinantal proof of the transformation.
//!
//! `S_jk` is the one-variable transformation with
//! `(b, c, e, f) -> (b q^{j-1}, c q^{n-j}, e q^{k-1}, f q^{n-k})`, written as
//! `sum_x w(x) A_j(x) B_k(x)`. Its determinant expands by Cauchy–Binet into
//! the `n`-variable sum times [`prefactor_pf`], using Warnaar's determinant
//! on each of the two factors `det A`, `det B`.

use num_complex::Complex64;
use rayon::prelude::*;

use super::identities::{lhs_series, rhs_series, FactorialRatio};
use super::params::{DiscreteKind, DiscreteParams};
use super::series::{round, sum};
use crate::detkit::{binomial, ComplexMatrix};
use crate::error::Result;
use crate::nome::Nome;
use crate::tuples::IncreasingTuples;
use crate::xprec::{det, q_pow, Xc};

/// Tabulated weights and the two families of ratio factors whose moment
/// matrix is `S_jk`.
#[derive(Clone, Debug)]
pub struct SjkFactors {
    /// `w(x)` for `x = 0..=N`.
    pub weights: Vec<Complex64>,
    /// `rows[j][x] = A_{j+1}(x)`.
    pub rows: Vec<Vec<Complex64>>,
    /// `cols[k][x] = B_{k+1}(x)`.
    pub cols: Vec<Vec<Complex64>>,
}

/// Working-precision counterpart of [`SjkFactors`], with a per-column scale
/// (all ones for the direct expansion).
struct Factors {
    weights: Vec<Xc>,
    rows: Vec<Vec<Xc>>,
    cols: Vec<Vec<Xc>>,
    col_scale: Vec<Xc>,
}

impl Factors {
    fn moments(&self) -> Vec<Xc> {
        let n = self.rows.len();
        let mut out = Vec::with_capacity(n * n);
        for row in &self.rows {
            for (col, scale) in self.cols.iter().zip(&self.col_scale) {
                let terms: Vec<Xc> = (0..self.weights.len()).map(|x| self.weights[x] * row[x] * col[x]).collect();
                out.push(sum(&terms) * *scale);
            }
        }
        out
    }

    fn matrix(&self) -> Result<ComplexMatrix> {
        ComplexMatrix::from_row_major(self.rows.len(), round(&self.moments()))
    }

    fn det(&self) -> Result<Xc> {
        det(&self.moments(), self.rows.len())
    }
}

/// `(u q^x, u q^{-x}/base)_{m} / (u, u/base)_{m}` evaluated for every x.
fn paired_ratio(u: Xc, base: Xc, m: usize, big_n: usize, nome: &Nome) -> Result<Vec<Xc>> {
    (0..=big_n)
        .map(|x| {
            let qx = q_pow(nome, x as i64);
            Ok(FactorialRatio::new(nome)
                .ratio(u * qx, u, m)?
                .ratio(u / (qx * base), u / base, m)?
                .value())
        })
        .collect()
}

/// Products `P_1(x)_{j-1} P_2(x)_{n-j}` of two paired ratios, one row per `j`.
fn family(first: (Xc, Xc), second: (Xc, Xc), n: usize, big_n: usize, nome: &Nome) -> Result<Vec<Vec<Xc>>> {
    (1..=n)
        .map(|j| {
            let a = paired_ratio(first.0, first.1, j - 1, big_n, nome)?;
            let b = paired_ratio(second.0, second.1, n - j, big_n, nome)?;
            Ok(a.iter().zip(&b).map(|(x, y)| *x * *y).collect())
        })
        .collect()
}

fn direct_factors(p: &DiscreteParams, nome: &Nome) -> Result<Factors> {
    p.require(DiscreteKind::Transformation)?;
    let (n, big_n) = (p.n(), p.big_n());
    let (a, b, c, _, e, f, _, _) = p.x();
    Ok(Factors {
        weights: lhs_series(p, nome, 2 * n as i64 - 1).weights(nome)?,
        rows: family((b, a), (c, a), n, big_n, nome)?,
        cols: family((e, a), (f, a), n, big_n, nome)?,
        col_scale: vec![Xc::ONE; n],
    })
}

/// The same matrix built from the transformed one-variable sums (base
/// `lambda`). Row factors `(lambda b q^x/a, b q^{-x}/a)_{j-1}` are paired
/// ratios with `u = lambda b/a` and base `lambda`.
fn alt_factors(p: &DiscreteParams, nome: &Nome) -> Result<Factors> {
    p.require(DiscreteKind::Transformation)?;
    let q = Xc::from(nome.q());
    let (n, big_n) = (p.n(), p.big_n());
    let (a, b, c, _, e, f, g, lam) = p.x();
    let mut col_scale = Vec::with_capacity(n);
    for k in 1..=n as i64 {
        let r = FactorialRatio::new(nome)
            .times((a / lam).powi(big_n as i64))
            .ratio(a * q, lam * q, big_n)?
            .ratio(lam * q_pow(nome, 2 - k) / e, a * q_pow(nome, 2 - k) / e, big_n)?
            .ratio(lam * q_pow(nome, 1 - n as i64 + k) / f, a * q_pow(nome, 1 - n as i64 + k) / f, big_n)?
            .ratio(lam * q / g, a * q / g, big_n)?;
        col_scale.push(r.value());
    }
    Ok(Factors {
        weights: rhs_series(p, nome, 2 * n as i64 - 1).weights(nome)?,
        rows: family((lam * b / a, lam), (lam * c / a, lam), n, big_n, nome)?,
        cols: family((e, lam), (f, lam), n, big_n, nome)?,
        col_scale,
    })
}

/// Weights and ratio factors of the `S_jk` matrix.
pub fn sjk_factors(p: &DiscreteParams, nome: &Nome) -> Result<SjkFactors> {
    let f = direct_factors(p, nome)?;
    Ok(SjkFactors {
        weights: round(&f.weights),
        rows: f.rows.iter().map(|r| round(r)).collect(),
        cols: f.cols.iter().map(|c| round(c)).collect(),
    })
}

/// The `n x n` matrix `S_jk = sum_x w(x) A_j(x) B_k(x)`.
pub fn sjk_matrix(p: &DiscreteParams, nome: &Nome) -> Result<ComplexMatrix> {
    direct_factors(p, nome)?.matrix()
}

/// `det S`, eliminated at working precision before rounding.
pub fn sjk_det(p: &DiscreteParams, nome: &Nome) -> Result<Complex64> {
    Ok(direct_factors(p, nome)?.det()?.to_c64())
}

/// `S_jk` assembled from the transformed one-variable sums (base `lambda`).
/// Entry by entry it agrees with [`sjk_matrix`] by the one-variable
/// transformation; its determinant expands into the right side of the
/// multivariable transformation.
pub fn sjk_matrix_alt(p: &DiscreteParams, nome: &Nome) -> Result<ComplexMatrix> {
    alt_factors(p, nome)?.matrix()
}

/// Determinant of [`sjk_matrix_alt`], eliminated at working precision.
pub fn sjk_alt_det(p: &DiscreteParams, nome: &Nome) -> Result<Complex64> {
    Ok(alt_factors(p, nome)?.det()?.to_c64())
}

/// `det S` expanded by Cauchy–Binet over increasing tuples of the grid
/// `0..=N`: `sum_xs det(A_j(x_l)) det(B_k(x_l)) prod_l w(x_l)`.
pub fn cauchy_binet_det(p: &DiscreteParams, nome: &Nome) -> Result<Complex64> {
    let f = direct_factors(p, nome)?;
    let n = p.n();
    let tuples: Vec<Vec<usize>> = IncreasingTuples::new(n, p.big_n()).collect();
    let terms = tuples
        .par_iter()
        .map(|xs| {
            let minor = |fam: &[Vec<Xc>]| -> Vec<Xc> { fam.iter().flat_map(|r| xs.iter().map(|&x| r[x])).collect() };
            let w: Xc = xs.iter().map(|&x| f.weights[x]).product();
            Ok(det(&minor(&f.rows), n)? * det(&minor(&f.cols), n)? * w)
        })
        .collect::<Result<Vec<Xc>>>()?;
    Ok(sum(&terms).to_c64())
}

/// `(cf/a^2)^{C(n,2)} q^{2C(n,3)} prod_j (q^{j-n} b/c, q^{n-j} bc/a, q^{j-n} e/f, q^{n-j} ef/a)_{j-1}
///  / (b, b/a, c, c/a, e, e/a, f, f/a)_{j-1}`, the factor relating `det S` to
/// either side of the transformation.
pub fn prefactor_pf(p: &DiscreteParams, nome: &Nome) -> Result<Complex64> {
    p.require(DiscreteKind::Transformation)?;
    let n = p.n();
    let (a, b, c, _, e, f, _, _) = p.x();
    let mut r = FactorialRatio::new(nome)
        .times((c * f / (a * a)).powi(binomial(n, 2) as i64))
        .times(q_pow(nome, 2 * binomial(n, 3) as i64));
    for j in 1..=n as i64 {
        let m = (j - 1) as usize;
        let down = q_pow(nome, j - n as i64);
        let up = q_pow(nome, n as i64 - j);
        r = r
            .ratio(down * b / c, b, m)?
            .ratio(up * b * c / a, b / a, m)?
            .ratio(down * e / f, c, m)?
            .ratio(up * e * f / a, c / a, m)?
            .div(e, m)?
            .div(e / a, m)?
            .div(f, m)?
            .div(f / a, m)?;
    }
    Ok(r.value().to_c64())
}
