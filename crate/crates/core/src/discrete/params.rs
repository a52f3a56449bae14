use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::series::guarded_theta;
use crate::error::{Error, Result};
use crate::nome::Nome;
use crate::xprec::{q_pow, Xc};

/// Which identity a parameter set is balanced for.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DiscreteKind {
    /// Seven parameters with `bcdefg = q^{4+N-2n} a^3`.
    Transformation,
    /// Five parameters with `bcde = q^{N+3-2n} a^2`; `f` and `g` unused.
    Summation,
}

/// Balanced parameters `(a, b, c, d, e, f, g; N; n)` of the discrete sums,
/// together with the derived `lambda = a^2 q^{2-n} / (bcd)`.
///
/// Only constructible through the balancing-aware constructors, which also
/// reject instances where a denominator theta factor falls below
/// [`POLE_GUARD`](super::POLE_GUARD). Values are held in double-double so that
/// a solved parameter and `lambda` satisfy their defining relations far
/// beyond double precision; the accessors round.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DiscreteParams {
    kind: DiscreteKind,
    a: Xc,
    b: Xc,
    c: Xc,
    d: Xc,
    e: Xc,
    f: Xc,
    g: Xc,
    big_n: usize,
    n: usize,
    lambda: Xc,
}

const BALANCE_TOL: f64 = 1e-12;

impl DiscreteParams {
    /// Validated transformation parameters.
    #[allow(clippy::too_many_arguments)]
    pub fn transformation(
        a: Complex64,
        b: Complex64,
        c: Complex64,
        d: Complex64,
        e: Complex64,
        f: Complex64,
        g: Complex64,
        big_n: usize,
        n: usize,
        nome: &Nome,
    ) -> Result<Self> {
        let x = [a, b, c, d, e, f, g].map(Xc::from);
        Self::build_transformation(x, big_n, n, nome)
    }

    fn build_transformation(x: [Xc; 7], big_n: usize, n: usize, nome: &Nome) -> Result<Self> {
        check_sizes(n, big_n)?;
        let [a, b, c, d, e, f, g] = x;
        let lhs = b * c * d * e * f * g;
        let rhs = q_pow(nome, 4 + big_n as i64 - 2 * n as i64) * a * a * a;
        check_balance(lhs, rhs, "bcdefg = q^{4+N-2n} a^3")?;
        let params = DiscreteParams {
            kind: DiscreteKind::Transformation,
            a,
            b,
            c,
            d,
            e,
            f,
            g,
            big_n,
            n,
            lambda: lambda_of(a, b, c, d, n, nome),
        };
        params.check_poles(nome)?;
        Ok(params)
    }

    /// Transformation parameters with `g` solved from the balancing condition.
    #[allow(clippy::too_many_arguments)]
    pub fn solve_transformation(
        a: Complex64,
        b: Complex64,
        c: Complex64,
        d: Complex64,
        e: Complex64,
        f: Complex64,
        big_n: usize,
        n: usize,
        nome: &Nome,
    ) -> Result<Self> {
        Self::solve_transformation_x([a, b, c, d, e, f].map(Xc::from), big_n, n, nome)
    }

    fn solve_transformation_x(x: [Xc; 6], big_n: usize, n: usize, nome: &Nome) -> Result<Self> {
        check_sizes(n, big_n)?;
        let [a, b, c, d, e, f] = x;
        let g = q_pow(nome, 4 + big_n as i64 - 2 * n as i64) * a * a * a / (b * c * d * e * f);
        Self::build_transformation([a, b, c, d, e, f, g], big_n, n, nome)
    }

    /// Validated summation parameters.
    #[allow(clippy::too_many_arguments)]
    pub fn summation(
        a: Complex64,
        b: Complex64,
        c: Complex64,
        d: Complex64,
        e: Complex64,
        big_n: usize,
        n: usize,
        nome: &Nome,
    ) -> Result<Self> {
        let x = [a, b, c, d, e].map(Xc::from);
        Self::build_summation(x, big_n, n, nome)
    }

    fn build_summation(x: [Xc; 5], big_n: usize, n: usize, nome: &Nome) -> Result<Self> {
        check_sizes(n, big_n)?;
        let [a, b, c, d, e] = x;
        let lhs = b * c * d * e;
        let rhs = q_pow(nome, big_n as i64 + 3 - 2 * n as i64) * a * a;
        check_balance(lhs, rhs, "bcde = q^{N+3-2n} a^2")?;
        let params = DiscreteParams {
            kind: DiscreteKind::Summation,
            a,
            b,
            c,
            d,
            e,
            f: Xc::ZERO,
            g: Xc::ZERO,
            big_n,
            n,
            lambda: lambda_of(a, b, c, d, n, nome),
        };
        params.check_poles(nome)?;
        Ok(params)
    }

    /// Summation parameters with `e` solved from the balancing condition.
    pub fn solve_summation(
        a: Complex64,
        b: Complex64,
        c: Complex64,
        d: Complex64,
        big_n: usize,
        n: usize,
        nome: &Nome,
    ) -> Result<Self> {
        check_sizes(n, big_n)?;
        let [a, b, c, d] = [a, b, c, d].map(Xc::from);
        let e = q_pow(nome, big_n as i64 + 3 - 2 * n as i64) * a * a / (b * c * d);
        Self::build_summation([a, b, c, d, e], big_n, n, nome)
    }

    /// The same parameters with `(b, c, e, f)` multiplied by
    /// `(q^{db}, q^{dc}, q^{de}, q^{df})` and `n` replaced, rebalanced
    /// through `g`. Used to form the entries of the proof-replay matrix.
    pub fn shifted(&self, shifts: [i64; 4], n: usize, nome: &Nome) -> Result<Self> {
        self.require(DiscreteKind::Transformation)?;
        let [sb, sc, se, sf] = shifts.map(|k| q_pow(nome, k));
        let (a, b, c, d, e, f) = (self.a, self.b * sb, self.c * sc, self.d, self.e * se, self.f * sf);
        let g = q_pow(nome, 4 + self.big_n as i64 - 2 * n as i64) * a * a * a / (b * c * d * e * f);
        Self::build_transformation([a, b, c, d, e, f, g], self.big_n, n, nome)
    }

    pub fn kind(&self) -> DiscreteKind {
        self.kind
    }
    pub fn a(&self) -> Complex64 {
        self.a.to_c64()
    }
    pub fn b(&self) -> Complex64 {
        self.b.to_c64()
    }
    pub fn c(&self) -> Complex64 {
        self.c.to_c64()
    }
    pub fn d(&self) -> Complex64 {
        self.d.to_c64()
    }
    pub fn e(&self) -> Complex64 {
        self.e.to_c64()
    }
    pub fn f(&self) -> Complex64 {
        self.f.to_c64()
    }
    pub fn g(&self) -> Complex64 {
        self.g.to_c64()
    }
    /// Upper summation bound `N`.
    pub fn big_n(&self) -> usize {
        self.big_n
    }
    /// Number of summation variables.
    pub fn n(&self) -> usize {
        self.n
    }
    pub fn lambda(&self) -> Complex64 {
        self.lambda.to_c64()
    }

    /// `(a, b, c, d, e, f, g, lambda)` at full working precision.
    pub(crate) fn x(&self) -> (Xc, Xc, Xc, Xc, Xc, Xc, Xc, Xc) {
        (self.a, self.b, self.c, self.d, self.e, self.f, self.g, self.lambda)
    }

    /// Named parameter values, in a fixed order, for reports.
    pub fn named(&self) -> Vec<(String, Complex64)> {
        let mut out = vec![
            ("a".to_string(), self.a()),
            ("b".to_string(), self.b()),
            ("c".to_string(), self.c()),
            ("d".to_string(), self.d()),
            ("e".to_string(), self.e()),
        ];
        if self.kind == DiscreteKind::Transformation {
            out.push(("f".to_string(), self.f()));
            out.push(("g".to_string(), self.g()));
            out.push(("lambda".to_string(), self.lambda()));
        }
        out.push(("N".to_string(), Complex64::new(self.big_n as f64, 0.0)));
        out.push(("n".to_string(), Complex64::new(self.n as f64, 0.0)));
        out
    }

    pub(crate) fn require(&self, kind: DiscreteKind) -> Result<()> {
        if self.kind != kind {
            return Err(Error::Domain(format!("parameters are balanced for {:?}, not {kind:?}", self.kind)));
        }
        Ok(())
    }

    /// Every `(argument, length)` pair whose shifted factorial appears in a
    /// denominator somewhere in the identities or the proof replay.
    fn denominator_factorials(&self, nome: &Nome) -> Vec<(Xc, usize)> {
        let q = Xc::from(nome.q());
        let (a, b, c, d, e, f, g, lam) = self.x();
        let (big_n, n) = (self.big_n, self.n);
        let qn1 = q_pow(nome, big_n as i64 + 1);
        let mut out = vec![(a, 1)];
        match self.kind {
            DiscreteKind::Summation => {
                for l in [q, a * q / b, a * q / c, a * q / d, a * q / e, a * qn1] {
                    out.push((l, big_n));
                }
            }
            DiscreteKind::Transformation => {
                out.push((lam, 1));
                for l in [q, a * q / b, a * q / c, a * q / d, a * q / e, a * q / f, a * q / g, a * qn1] {
                    out.push((l, big_n));
                }
                for l in [lam * q / e, lam * q / f, lam * q / g, lam * qn1, lam * q] {
                    out.push((l, big_n));
                }
                for l in [lam * b / a, lam * c / a, lam * d / a, b, b / a, c, c / a, e, e / a, f, f / a, e / lam, f / lam]
                {
                    out.push((l, n.saturating_sub(1)));
                }
                for k in 1..=n as i64 {
                    out.push((a * q_pow(nome, 2 - k) / e, big_n));
                    out.push((a * q_pow(nome, 1 - n as i64 + k) / f, big_n));
                }
            }
        }
        out
    }

    fn check_poles(&self, nome: &Nome) -> Result<()> {
        let q = Xc::from(nome.q());
        for (arg, len) in self.denominator_factorials(nome) {
            let mut w = arg;
            for _ in 0..len {
                guarded_theta(w, nome)?;
                w *= q;
            }
        }
        Ok(())
    }
}

fn lambda_of(a: Xc, b: Xc, c: Xc, d: Xc, n: usize, nome: &Nome) -> Xc {
    a * a * q_pow(nome, 2 - n as i64) / (b * c * d)
}

fn check_sizes(n: usize, big_n: usize) -> Result<()> {
    if n == 0 || n > big_n + 1 {
        return Err(Error::Domain(format!("need 1 <= n <= N + 1 (got n = {n}, N = {big_n})")));
    }
    Ok(())
}

fn check_balance(lhs: Xc, rhs: Xc, what: &str) -> Result<()> {
    if !((lhs - rhs).norm() <= BALANCE_TOL * rhs.norm()) {
        return Err(Error::Domain(format!(
            "balancing condition {what} violated: {} vs {}",
            lhs.to_c64(),
            rhs.to_c64()
        )));
    }
    Ok(())
}

const RETRY_BUDGET: usize = 1000;
const MAX_SOLVED_MODULUS: f64 = 3.0;

fn draw(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::from_polar(rng.gen_range(0.3..=0.8), rng.gen_range(0.0..std::f64::consts::TAU))
}

fn sample_with<F>(seed: u64, mut build: F) -> Result<DiscreteParams>
where
    F: FnMut(&mut ChaCha8Rng) -> Result<DiscreteParams>,
{
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut last = String::new();
    for _ in 0..RETRY_BUDGET {
        match build(&mut rng) {
            Ok(p) => return Ok(p),
            Err(e @ (Error::Instance(_) | Error::Domain(_))) => last = e.to_string(),
            Err(e) => return Err(e),
        }
    }
    Err(Error::Sampling { attempts: RETRY_BUDGET, reason: last })
}

fn screen(p: DiscreteParams, solved: Complex64) -> Result<DiscreteParams> {
    if solved.norm() > MAX_SOLVED_MODULUS {
        return Err(Error::Instance(format!("solved parameter {solved} exceeds modulus {MAX_SOLVED_MODULUS}")));
    }
    if p.kind == DiscreteKind::Transformation {
        let lam = p.lambda().norm();
        if !(1e-3..=1e3).contains(&lam) {
            return Err(Error::Instance(format!("|lambda| = {lam:e} outside [1e-3, 1e3]")));
        }
    }
    Ok(p)
}

/// Random balanced parameters, deterministic in `seed`.
///
/// Free parameters get moduli uniform in `[0.3, 0.8]` and uniform phases;
/// `g` (transformation) or `e` (summation) is solved from the balancing
/// condition. Draws with a solved modulus above 3, a guarded denominator
/// or (transformation only) `|lambda|` outside `[1e-3, 1e3]` are redrawn.
pub fn sample_discrete_params(seed: u64, n: usize, big_n: usize, kind: DiscreteKind, nome: &Nome) -> Result<DiscreteParams> {
    check_sizes(n, big_n)?;
    sample_with(seed, |rng| {
        let (a, b, c, d) = (draw(rng), draw(rng), draw(rng), draw(rng));
        match kind {
            DiscreteKind::Transformation => {
                let (e, f) = (draw(rng), draw(rng));
                let p = DiscreteParams::solve_transformation(a, b, c, d, e, f, big_n, n, nome)?;
                screen(p, p.g())
            }
            DiscreteKind::Summation => {
                let p = DiscreteParams::solve_summation(a, b, c, d, big_n, n, nome)?;
                screen(p, p.e())
            }
        }
    })
}

/// Transformation parameters on the degenerate locus `cd = aq`, where the
/// right-hand sum collapses to the single tuple `(0, 1, ..., n-1)`.
pub fn sample_degenerate_params(seed: u64, n: usize, big_n: usize, nome: &Nome) -> Result<DiscreteParams> {
    check_sizes(n, big_n)?;
    sample_with(seed, |rng| {
        let (a, b, c, e, f) = (draw(rng), draw(rng), draw(rng), draw(rng), draw(rng));
        let [a, b, c, e, f] = [a, b, c, e, f].map(Xc::from);
        let d = a * Xc::from(nome.q()) / c;
        let p = DiscreteParams::solve_transformation_x([a, b, c, d, e, f], big_n, n, nome)?;
        screen(p, p.g())
    })
}
