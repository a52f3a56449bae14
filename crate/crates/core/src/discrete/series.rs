use num_complex::Complex64;
use rayon::prelude::*;

use super::POLE_GUARD;
use crate::error::{Error, Result};
use crate::nome::Nome;
use crate::tuples::IncreasingTuples;
use crate::xprec::{q_pow, theta, Xc};

/// A very-well-poised multiple sum with base `base`, numerator parameters
/// `upper` and denominator parameters `lower` (the shifted factorials
/// `(u)_x / (l)_x`), an extra `q^{x * x_power}` per variable, over
/// `n`-tuples in `0..=big_n`. Evaluated in double-double.
#[derive(Clone, Debug)]
pub(crate) struct WellPoisedSeries {
    pub base: Xc,
    pub upper: Vec<Xc>,
    pub lower: Vec<Xc>,
    pub big_n: usize,
    pub n: usize,
    pub x_power: i64,
}

pub(crate) fn guarded_theta(z: Xc, nome: &Nome) -> Result<Xc> {
    let v = theta(z, nome)?;
    if v.norm() < POLE_GUARD {
        return Err(Error::Instance(format!(
            "denominator theta({}) = {:e} is below the pole guard",
            z.to_c64(),
            v.norm()
        )));
    }
    Ok(v)
}

/// Ordered left-to-right sum; double-double addition keeps the result
/// accurate to well below double precision for the short sums used here.
pub(crate) fn sum(terms: &[Xc]) -> Xc {
    terms.iter().copied().sum()
}

pub(crate) fn round(terms: &[Xc]) -> Vec<Complex64> {
    terms.iter().map(|t| t.to_c64()).collect()
}

impl WellPoisedSeries {
    /// One-variable weights `W(x)` for `x = 0..=N`.
    ///
    /// The factorial ratio is advanced one step at a time,
    /// `W(x+1)/W(x) = prod_m theta(u_m q^x)/theta(l_m q^x)` times the change
    /// of the well-poised factor.
    pub fn weights(&self, nome: &Nome) -> Result<Vec<Xc>> {
        let q = Xc::from(nome.q());
        let theta_base = guarded_theta(self.base, nome)?;
        let q_step = q_pow(nome, self.x_power);
        let mut out = Vec::with_capacity(self.big_n + 1);
        let (mut ratio, mut extra) = (Xc::ONE, Xc::ONE);
        let mut qx = Xc::ONE;
        let mut shift = Xc::ONE; // q^{x-1}
        for x in 0..=self.big_n {
            if x > 0 {
                for (u, l) in self.upper.iter().zip(&self.lower) {
                    ratio *= theta(*u * shift, nome)? / guarded_theta(*l * shift, nome)?;
                }
                for u in self.upper.iter().skip(self.lower.len()) {
                    ratio *= theta(*u * shift, nome)?;
                }
                for l in self.lower.iter().skip(self.upper.len()) {
                    ratio /= guarded_theta(*l * shift, nome)?;
                }
                shift *= q;
            }
            let wp = theta(self.base * qx * qx, nome)? / theta_base;
            out.push(wp * ratio * extra);
            qx *= q;
            extra *= q_step;
        }
        Ok(out)
    }

    /// `cross[x][y] = (q^x theta(q^{y-x}) theta(base q^{x+y}))^2` for `x < y`.
    fn cross_table(&self, nome: &Nome) -> Result<Vec<Vec<Xc>>> {
        let size = self.big_n + 1;
        let mut table = vec![vec![Xc::ZERO; size]; size];
        for x in 0..size {
            for y in x + 1..size {
                let v = q_pow(nome, x as i64)
                    * theta(q_pow(nome, (y - x) as i64), nome)?
                    * theta(self.base * q_pow(nome, (x + y) as i64), nome)?;
                table[x][y] = v * v;
            }
        }
        Ok(table)
    }

    fn assemble(xs: &[usize], weights: &[Xc], cross: &[Vec<Xc>]) -> Xc {
        let mut t = Xc::ONE;
        for (k, &xk) in xs.iter().enumerate() {
            t *= weights[xk];
            for &xj in &xs[..k] {
                t *= cross[xj][xk];
            }
        }
        t
    }

    /// Every tuple term, in lexicographic tuple order.
    pub fn terms(&self, nome: &Nome) -> Result<Vec<Xc>> {
        let weights = self.weights(nome)?;
        let cross = self.cross_table(nome)?;
        let tuples: Vec<Vec<usize>> = IncreasingTuples::new(self.n, self.big_n).collect();
        Ok(tuples.par_iter().map(|xs| Self::assemble(xs, &weights, &cross)).collect())
    }

    /// The term for one specific tuple.
    pub fn term(&self, xs: &[usize], nome: &Nome) -> Result<Xc> {
        if xs.len() != self.n || xs.windows(2).any(|w| w[0] >= w[1]) || xs.iter().any(|&x| x > self.big_n) {
            return Err(Error::Domain(format!("{xs:?} is not an increasing {}-tuple in 0..={}", self.n, self.big_n)));
        }
        Ok(Self::assemble(xs, &self.weights(nome)?, &self.cross_table(nome)?))
    }

    pub fn sum(&self, nome: &Nome) -> Result<Xc> {
        Ok(sum(&self.terms(nome)?))
    }
}
