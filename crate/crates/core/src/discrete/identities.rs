use num_complex::Complex64;

use super::params::{DiscreteKind, DiscreteParams};
use super::series::{guarded_theta, round, WellPoisedSeries};
use crate::error::{Error, Result};
use crate::nome::Nome;
use crate::xprec::{q_pow, theta, Xc};

/// Running product of shifted factorials, multiplied and divided one theta
/// at a time. Divisors are pole-guarded.
pub(crate) struct FactorialRatio<'a> {
    nome: &'a Nome,
    q: Xc,
    acc: Xc,
}

impl<'a> FactorialRatio<'a> {
    pub(crate) fn new(nome: &'a Nome) -> Self {
        FactorialRatio { nome, q: nome.q().into(), acc: Xc::ONE }
    }

    pub(crate) fn times(mut self, z: Xc) -> Self {
        self.acc *= z;
        self
    }

    /// Multiply by `(num)_len / (den)_len`, factor by factor.
    pub(crate) fn ratio(mut self, num: Xc, den: Xc, len: usize) -> Result<Self> {
        let (mut u, mut l) = (num, den);
        for _ in 0..len {
            self.acc *= theta(u, self.nome)? / guarded_theta(l, self.nome)?;
            u *= self.q;
            l *= self.q;
        }
        Ok(self)
    }

    pub(crate) fn mul(mut self, z: Xc, len: usize) -> Result<Self> {
        let mut u = z;
        for _ in 0..len {
            self.acc *= theta(u, self.nome)?;
            u *= self.q;
        }
        Ok(self)
    }

    pub(crate) fn div(mut self, z: Xc, len: usize) -> Result<Self> {
        let mut l = z;
        for _ in 0..len {
            self.acc /= guarded_theta(l, self.nome)?;
            l *= self.q;
        }
        Ok(self)
    }

    pub(crate) fn value(&self) -> Xc {
        self.acc
    }
}

pub(crate) fn lhs_series(p: &DiscreteParams, nome: &Nome, x_power: i64) -> WellPoisedSeries {
    let q = Xc::from(nome.q());
    let (a, b, c, d, e, f, g, _) = p.x();
    let big_n = p.big_n();
    let q_neg_n = q_pow(nome, -(big_n as i64));
    let qn1 = q_pow(nome, big_n as i64 + 1);
    let (upper, lower) = match p.kind() {
        DiscreteKind::Transformation => (
            vec![a, b, c, d, e, f, g, q_neg_n],
            vec![q, a * q / b, a * q / c, a * q / d, a * q / e, a * q / f, a * q / g, a * qn1],
        ),
        DiscreteKind::Summation => {
            (vec![a, b, c, d, e, q_neg_n], vec![q, a * q / b, a * q / c, a * q / d, a * q / e, a * qn1])
        }
    };
    WellPoisedSeries { base: a, upper, lower, big_n, n: p.n(), x_power }
}

pub(crate) fn rhs_series(p: &DiscreteParams, nome: &Nome, x_power: i64) -> WellPoisedSeries {
    let q = Xc::from(nome.q());
    let (a, b, c, d, e, f, g, lam) = p.x();
    let big_n = p.big_n();
    WellPoisedSeries {
        base: lam,
        upper: vec![lam, lam * b / a, lam * c / a, lam * d / a, e, f, g, q_pow(nome, -(big_n as i64))],
        lower: vec![
            q,
            a * q / b,
            a * q / c,
            a * q / d,
            lam * q / e,
            lam * q / f,
            lam * q / g,
            lam * q_pow(nome, big_n as i64 + 1),
        ],
        big_n,
        n: p.n(),
        x_power,
    }
}

/// Constant in front of the right-hand sum of the transformation:
/// `(a/lambda)^{(N+1-n)n} (aq)_N^n / (lambda q)_N^n` times
/// `prod_j (b,c,d)_{j-1} (lambda q/e, lambda q/f, lambda q/g)_{N+1-j}
///  / ((lambda b/a, lambda c/a, lambda d/a)_{j-1} (aq/e, aq/f, aq/g)_{N+1-j})`.
pub(crate) fn mbt_rhs_prefactor(p: &DiscreteParams, nome: &Nome) -> Result<Xc> {
    let q = Xc::from(nome.q());
    let (a, b, c, d, e, f, g, lam) = p.x();
    let (big_n, n) = (p.big_n(), p.n());
    let power = ((big_n + 1 - n) * n) as i64;
    let mut r = FactorialRatio::new(nome).times((a / lam).powi(power));
    for _ in 0..n {
        r = r.ratio(a * q, lam * q, big_n)?;
    }
    for j in 1..=n {
        r = r
            .ratio(b, lam * b / a, j - 1)?
            .ratio(c, lam * c / a, j - 1)?
            .ratio(d, lam * d / a, j - 1)?
            .ratio(lam * q / e, a * q / e, big_n + 1 - j)?
            .ratio(lam * q / f, a * q / f, big_n + 1 - j)?
            .ratio(lam * q / g, a * q / g, big_n + 1 - j)?;
    }
    Ok(r.value())
}

pub(crate) fn mbt_lhs_x(p: &DiscreteParams, nome: &Nome) -> Result<Xc> {
    p.require(DiscreteKind::Transformation)?;
    lhs_series(p, nome, 1).sum(nome)
}

pub(crate) fn mbt_rhs_x(p: &DiscreteParams, nome: &Nome) -> Result<Xc> {
    p.require(DiscreteKind::Transformation)?;
    Ok(mbt_rhs_prefactor(p, nome)? * rhs_series(p, nome, 1).sum(nome)?)
}

/// Left side of the multivariable transformation.
pub fn mbt_lhs(p: &DiscreteParams, nome: &Nome) -> Result<Complex64> {
    Ok(mbt_lhs_x(p, nome)?.to_c64())
}

/// The individual left-side tuple terms of the transformation or the
/// summation (by parameter kind), in lexicographic tuple order.
pub fn lhs_terms(p: &DiscreteParams, nome: &Nome) -> Result<Vec<Complex64>> {
    Ok(round(&lhs_series(p, nome, 1).terms(nome)?))
}

/// Right side of the multivariable transformation: the prefactor times the
/// sum with `a -> lambda` and `(b, c, d) -> (lambda b/a, lambda c/a, lambda d/a)`.
pub fn mbt_rhs(p: &DiscreteParams, nome: &Nome) -> Result<Complex64> {
    Ok(mbt_rhs_x(p, nome)?.to_c64())
}

/// The individual right-side tuple terms (prefactor included), in
/// lexicographic tuple order.
pub fn mbt_rhs_terms(p: &DiscreteParams, nome: &Nome) -> Result<Vec<Complex64>> {
    p.require(DiscreteKind::Transformation)?;
    let pre = mbt_rhs_prefactor(p, nome)?;
    let terms: Vec<Xc> = rhs_series(p, nome, 1).terms(nome)?.into_iter().map(|t| t * pre).collect();
    Ok(round(&terms))
}

/// The right-side term of the tuple `(0, 1, ..., n-1)` alone. On the locus
/// `cd = aq` every other term vanishes.
pub fn mbt_rhs_single_term(p: &DiscreteParams, nome: &Nome) -> Result<Complex64> {
    p.require(DiscreteKind::Transformation)?;
    let xs: Vec<usize> = (0..p.n()).collect();
    Ok((mbt_rhs_prefactor(p, nome)? * rhs_series(p, nome, 1).term(&xs, nome)?).to_c64())
}

/// Left side of the multivariable summation.
pub fn mbs_lhs(p: &DiscreteParams, nome: &Nome) -> Result<Complex64> {
    p.require(DiscreteKind::Summation)?;
    Ok(lhs_series(p, nome, 1).sum(nome)?.to_c64())
}

/// Closed-form right side of the summation,
/// `b^{n(N+1-n)} q^{n(n-1)(3N+1-2n)/3 + n(n-1)/2} (aq)_N^n prod_j (q,b,c,d,e,q^{-N})_{j-1}
///  (aq^{2-j}/bc, aq^{2-j}/bd, aq^{2-j}/be)_{N+1-n} / (aq/b,aq/c,aq/d,aq/e)_{N+1-j}`.
///
/// The `q^{n(n-1)/2}` is needed for the left side as written here; without
/// it the two sides differ by exactly that power for every `n >= 2`.
pub fn mbs_rhs(p: &DiscreteParams, nome: &Nome) -> Result<Complex64> {
    p.require(DiscreteKind::Summation)?;
    let q = Xc::from(nome.q());
    let (a, b, c, d, e, _, _, _) = p.x();
    let (big_n, n) = (p.big_n() as i64, p.n() as i64);
    let sextic = n * (n - 1) * (6 * big_n + 5 - 4 * n);
    if sextic % 6 != 0 {
        return Err(Error::Domain(format!("q-exponent {sextic}/6 is not an integer")));
    }
    let mut r = FactorialRatio::new(nome).times(b.powi(n * (big_n + 1 - n))).times(q_pow(nome, sextic / 6));
    for _ in 0..n {
        r = r.mul(a * q, big_n as usize)?;
    }
    let q_neg_n = q_pow(nome, -big_n);
    let tail = (big_n + 1 - n) as usize;
    for j in 1..=n {
        let head = (j - 1) as usize;
        let den_len = (big_n + 1 - j) as usize;
        let shifted = a * q_pow(nome, 2 - j) / b;
        for z in [q, b, c, d, e, q_neg_n] {
            r = r.mul(z, head)?;
        }
        for z in [shifted / c, shifted / d, shifted / e] {
            r = r.mul(z, tail)?;
        }
        for z in [a * q / b, a * q / c, a * q / d, a * q / e] {
            r = r.div(z, den_len)?;
        }
    }
    Ok(r.value().to_c64())
}
