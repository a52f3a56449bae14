//! The checks behind each suite.
//!
//! A group samples one parameter instance per index and evaluates one or
//! more `(lhs, rhs)` pairs on it; each pair is reported under its own
//! check id.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::config::{Suite, SuiteConfig};
use crate::continuous::{
    beta_integral_lhs, beta_integral_rhs, di_check, rains_lhs, rains_rhs, sample_continuous_params, selberg_lhs,
    selberg_rhs, ContinuousParams, TMode, Variant,
};
use crate::detkit::{andreief_lhs, andreief_rhs, warnaar_det_closed, warnaar_det_direct, DiscreteMeasure, Handle};
use crate::discrete::{
    cauchy_binet_det, mbs_lhs, mbs_rhs, mbt_lhs, mbt_rhs, mbt_rhs_single_term, prefactor_pf, sample_degenerate_params,
    sample_discrete_params, sjk_alt_det, sjk_det, DiscreteKind, DiscreteParams,
};
use crate::elliptic::{elliptic_gamma, gamma_factors, shifted_factorial, theta};
use crate::error::{Error, Result};
use crate::nome::Nome;

pub(super) struct Ctx<'a> {
    pub config: &'a SuiteConfig,
    pub nome: Nome,
}

/// One evaluated check id of a group.
pub(super) struct CheckSpec {
    pub id: &'static str,
    pub tol: f64,
    /// Near-zero policy: when `|lhs| + |rhs| < near` the check passes iff
    /// `|lhs - rhs| <= abs_tol` (`near = 0` disables).
    pub near: f64,
    pub abs_tol: f64,
}

const fn spec(id: &'static str, tol: f64) -> CheckSpec {
    CheckSpec { id, tol, near: 0.0, abs_tol: 0.0 }
}

impl CheckSpec {
    pub fn passes(&self, lhs: Complex64, rhs: Complex64, tol: f64) -> bool {
        if lhs.norm() + rhs.norm() < self.near {
            (lhs - rhs).norm() <= self.abs_tol
        } else {
            crate::reduce::relative_residual(lhs, rhs) <= tol
        }
    }
}

pub(super) type Pairs = Result<Vec<(Complex64, Complex64)>>;

pub(super) struct Outcome {
    pub params: Vec<(String, Complex64)>,
    pub pairs: Pairs,
}

impl Outcome {
    fn new(params: Vec<(String, Complex64)>, pairs: Pairs) -> Result<Self> {
        Ok(Outcome { params, pairs })
    }
}

/// Position of an instance within its group.
#[derive(Clone, Copy)]
pub(super) struct Slot {
    pub seed: u64,
    pub index: usize,
    pub per_cell: usize,
}

impl Slot {
    pub fn cell(&self) -> usize {
        self.index / self.per_cell
    }
}

pub(super) struct Group {
    pub name: &'static str,
    pub checks: Vec<CheckSpec>,
    /// Default instances per cell.
    pub count: usize,
    pub cells: usize,
    pub run: fn(&Ctx, Slot) -> Result<Outcome>,
}

fn group(name: &'static str, checks: Vec<CheckSpec>, count: usize, run: fn(&Ctx, Slot) -> Result<Outcome>) -> Group {
    Group { name, checks, count, cells: 1, run }
}

/// `(n, N)` cells of the discrete grid.
const DISCRETE_CELLS: usize = 15;

fn discrete_cell(cell: usize) -> (usize, usize) {
    (1 + cell / 5, 2 + cell % 5)
}

pub(super) fn groups(suite: Suite) -> Vec<Group> {
    use Suite::*;
    match suite {
        Core => vec![
            group("theta_quasi_periodicity", vec![spec("core.theta_quasi_periodicity", 1e-12)], 1000, theta_quasi_periodicity),
            group("gamma_shift", vec![spec("core.gamma_shift", 1e-12)], 1000, gamma_shift),
            group("gamma_factorial", vec![spec("core.gamma_factorial", 1e-12)], 1000, gamma_factorial),
            group("gamma_reflection", vec![spec("core.gamma_reflection", 1e-12)], 1000, gamma_reflection),
        ],
        Det => vec![
            group("warnaar", vec![spec("det.warnaar", 1e-9)], 100, warnaar),
            group("andreief", vec![CheckSpec { id: "det.andreief", tol: 1e-10, near: 1e-10, abs_tol: 1e-12 }], 200, andreief),
        ],
        Discrete => vec![
            Group { cells: DISCRETE_CELLS, ..group("mbs", vec![spec("discrete.mbs", 1e-9)], 50, mbs) },
            Group { cells: DISCRETE_CELLS, ..group("mbt", vec![spec("discrete.mbt", 1e-9)], 50, mbt) },
            Group {
                cells: DISCRETE_CELLS,
                ..group("mbt_degenerate",
                    vec![spec("discrete.mbt_degenerate", 1e-9), spec("discrete.mbt_degenerate_collapse", 1e-10)],
                    5,
                    mbt_degenerate,
                )
            },
        ],
        Continuous => vec![
            group("beta", vec![spec("continuous.beta", 1e-8)], 50, beta),
            group("esi_tq", vec![spec("continuous.esi_tq", 1e-6)], 10, esi_tq),
            group("esi_general", vec![spec("continuous.esi_general", 1e-6)], 10, esi_general),
            group("eit_n1",
                vec![spec("continuous.eit_n1", 1e-8), spec("continuous.eit_sign", 1e-10)],
                20,
                eit_n1,
            ),
            group("eit_n2", vec![spec("continuous.eit_n2", 1e-5)], 5, eit_n2),
        ],
        ProofReplay => vec![
            group("sjk",
                vec![
                    spec("proof.sjk_lhs", 1e-9),
                    spec("proof.sjk_rhs", 1e-9),
                    spec("proof.sjk_alt", 1e-9),
                    spec("proof.cauchy_binet", 1e-10),
                ],
                20,
                sjk,
            ),
            group("di", vec![spec("proof.di", 1e-6), spec("proof.ijk_entries", 1e-8)], 5, di),
        ],
    }
}

// ---- sampling helpers ----

fn rng(slot: Slot) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(slot.seed)
}

fn phase(rng: &mut ChaCha8Rng) -> f64 {
    rng.gen_range(0.0..TAU)
}

/// Log-uniform modulus in `[lo, hi]`, uniform phase.
fn polar(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> Complex64 {
    let m = rng.gen_range(lo.ln()..=hi.ln()).exp();
    Complex64::from_polar(m, phase(rng))
}

fn nome_entries(nome: &Nome) -> Vec<(String, Complex64)> {
    vec![("p".into(), nome.p()), ("q".into(), nome.q())]
}

const GUARD_DRAWS: usize = 100;
/// Smallest `|1 - x|` tolerated among the factors of a core check; below it
/// the factor itself loses relative accuracy.
const FACTOR_MARGIN: f64 = 1e-3;

/// Redraw until `accept` holds.
fn draw_until<T>(rng: &mut ChaCha8Rng, mut draw: impl FnMut(&mut ChaCha8Rng) -> Result<T>, accept: impl Fn(&T) -> Result<bool>) -> Result<T> {
    for _ in 0..GUARD_DRAWS {
        let x = draw(rng)?;
        if accept(&x)? {
            return Ok(x);
        }
    }
    Err(Error::Sampling { attempts: GUARD_DRAWS, reason: "every draw had a factor within the pole margin".into() })
}

fn core_nome(rng: &mut ChaCha8Rng) -> Result<Nome> {
    Nome::from_polar(rng.gen_range(0.05..=0.6), phase(rng), rng.gen_range(0.05..=0.6), phase(rng))
}

fn gamma_margin(z: Complex64, nome: &Nome) -> Result<f64> {
    let f = gamma_factors(z, false, nome)?;
    Ok(f.numerator_factors.iter().chain(&f.denominator_factors).map(|x| x.norm()).fold(f64::INFINITY, f64::min))
}

fn theta_margin(z: Complex64, nome: &Nome) -> f64 {
    let p = nome.p();
    let mut margin = f64::INFINITY;
    let mut pj = Complex64::new(1.0, 0.0);
    while pj.norm() * z.norm().max(z.norm().recip()) > nome.cutoff() {
        margin = margin.min((1.0 - pj * z).norm()).min((1.0 - pj * p / z).norm());
        pj *= p;
    }
    margin
}

/// A random nome and a random `z` in `[1/4, 4]` away from the lattice.
fn core_draw(slot: Slot, margin: impl Fn(Complex64, &Nome) -> Result<f64>) -> Result<(Nome, Complex64)> {
    let mut rng = rng(slot);
    let nome = core_nome(&mut rng)?;
    let z = draw_until(&mut rng, |r| Ok(polar(r, 0.25, 4.0)), |&z| Ok(margin(z, &nome)? >= FACTOR_MARGIN))?;
    Ok((nome, z))
}

// ---- core ----

fn theta_quasi_periodicity(_: &Ctx, slot: Slot) -> Result<Outcome> {
    let (nome, z) = core_draw(slot, |z, n| Ok(theta_margin(z, n)))?;
    let mut params = nome_entries(&nome);
    params.push(("z".into(), z));
    Outcome::new(params, (|| Ok(vec![(theta(nome.p() * z, &nome)?, -theta(z, &nome)? / z)]))())
}

fn gamma_shift(_: &Ctx, slot: Slot) -> Result<Outcome> {
    let (nome, z) = core_draw(slot, |z, n| Ok(gamma_margin(z, n)?.min(gamma_margin(n.q() * z, n)?).min(theta_margin(z, n))))?;
    let mut params = nome_entries(&nome);
    params.push(("z".into(), z));
    Outcome::new(params, (|| Ok(vec![(elliptic_gamma(nome.q() * z, &nome)?, theta(z, &nome)? * elliptic_gamma(z, &nome)?)]))())
}

fn gamma_factorial(_: &Ctx, slot: Slot) -> Result<Outcome> {
    let k = 1 + ChaCha8Rng::seed_from_u64(slot.seed ^ 0x9e37_79b9_7f4a_7c15).gen_range(0..6usize);
    let (nome, z) = core_draw(slot, |z, n| {
        let mut m = gamma_margin(z, n)?.min(gamma_margin(n.q_pow(k as i64) * z, n)?);
        for j in 0..k {
            m = m.min(theta_margin(n.q_pow(j as i64) * z, n));
        }
        Ok(m)
    })?;
    let mut params = nome_entries(&nome);
    params.push(("z".into(), z));
    params.push(("k".into(), Complex64::new(k as f64, 0.0)));
    Outcome::new(
        params,
        (|| {
            let lhs = elliptic_gamma(nome.q_pow(k as i64) * z, &nome)?;
            Ok(vec![(lhs, shifted_factorial(z, k, &nome)? * elliptic_gamma(z, &nome)?)])
        })(),
    )
}

fn gamma_reflection(_: &Ctx, slot: Slot) -> Result<Outcome> {
    let (nome, z) = core_draw(slot, gamma_margin)?;
    let mut params = nome_entries(&nome);
    params.push(("z".into(), z));
    Outcome::new(
        params,
        (|| Ok(vec![(elliptic_gamma(z, &nome)? * elliptic_gamma(nome.pq() / z, &nome)?, Complex64::new(1.0, 0.0))]))(),
    )
}

// ---- det ----

/// Smallest `|theta(z_j z_k^+-)|` admitted in a Warnaar instance. Close
/// pairs make the determinant small through cancellation, and elimination
/// then loses the digits the closed form keeps.
const PAIR_MARGIN: f64 = 0.05;

fn warnaar(ctx: &Ctx, slot: Slot) -> Result<Outcome> {
    let mut rng = rng(slot);
    let n = 1 + slot.index % 5;
    let nome = &ctx.nome;
    let a = polar(&mut rng, 0.3, 0.9);
    let b = polar(&mut rng, 0.3, 0.9);
    let draw = |rng: &mut ChaCha8Rng| -> Result<Vec<Complex64>> {
        // one phase per arc of the circle, randomly rotated
        let offset = phase(rng);
        Ok((0..n)
            .map(|k| {
                let m = rng.gen_range(0.3f64.ln()..=0.9f64.ln()).exp();
                Complex64::from_polar(m, offset + TAU * (k as f64 + rng.gen_range(0.0..1.0)) / n as f64)
            })
            .collect())
    };
    let separated = |zs: &Vec<Complex64>| -> Result<bool> {
        for (k, &zk) in zs.iter().enumerate() {
            for &zj in &zs[..k] {
                if theta(zk * zj, nome)?.norm().min(theta(zk / zj, nome)?.norm()) < PAIR_MARGIN {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    };
    let zs = draw_until(&mut rng, draw, separated)?;
    let mut params = vec![("a".into(), a), ("b".into(), b)];
    params.extend(zs.iter().enumerate().map(|(k, &z)| (format!("z{}", k + 1), z)));
    Outcome::new(params, (|| Ok(vec![(warnaar_det_direct(a, b, &zs, nome)?, warnaar_det_closed(a, b, &zs, nome)?)]))())
}

const MAX_POINTS: usize = 8;

fn andreief(ctx: &Ctx, slot: Slot) -> Result<Outcome> {
    let mut rng = rng(slot);
    let n = 1 + slot.index % 4;
    // fewer points than functions makes both sides vanish
    let size = rng.gen_range(1..=MAX_POINTS);
    let points: Vec<Complex64> = (0..size).map(|_| polar(&mut rng, 0.5, 2.0)).collect();
    let weights: Vec<Complex64> = (0..size).map(|_| polar(&mut rng, 0.2, 1.0)).collect();
    let shifts: Vec<Complex64> = (0..n).map(|_| polar(&mut rng, 0.1, 1.0)).collect();
    let alphas: Vec<Complex64> = (0..n).map(|_| polar(&mut rng, 0.3, 0.9)).collect();
    let mut params: Vec<(String, Complex64)> = vec![("n".into(), Complex64::new(n as f64, 0.0))];
    params.extend(points.iter().enumerate().map(|(k, &x)| (format!("x{}", k + 1), x)));
    params.extend(weights.iter().enumerate().map(|(k, &w)| (format!("w{}", k + 1), w)));
    params.extend(shifts.iter().enumerate().map(|(k, &c)| (format!("c{}", k + 1), c)));
    params.extend(alphas.iter().enumerate().map(|(k, &a)| (format!("alpha{}", k + 1), a)));
    let nome = ctx.nome;
    // f_j(x) = x^j + c_j, g_k(x) = theta(alpha_k x)
    let fs: Vec<Handle<'static>> = shifts
        .iter()
        .enumerate()
        .map(|(j, &c)| Box::new(move |x: Complex64| Ok(x.powi(j as i32) + c)) as Handle)
        .collect();
    let gs: Vec<Handle<'static>> =
        alphas.iter().map(|&alpha| Box::new(move |x: Complex64| theta(alpha * x, &nome)) as Handle).collect();
    let pairs = (|| {
        let mu = DiscreteMeasure::new(points, weights)?;
        Ok(vec![(andreief_lhs(&fs, &gs, &mu)?, andreief_rhs(&fs, &gs, &mu)?)])
    })();
    Outcome::new(params, pairs)
}

// ---- discrete ----

fn discrete_sample(ctx: &Ctx, slot: Slot, kind: DiscreteKind) -> Result<DiscreteParams> {
    let (n, big_n) = discrete_cell(slot.cell());
    sample_discrete_params(slot.seed, n, big_n, kind, &ctx.nome)
}

fn mbs(ctx: &Ctx, slot: Slot) -> Result<Outcome> {
    let p = discrete_sample(ctx, slot, DiscreteKind::Summation)?;
    Outcome::new(p.named(), (|| Ok(vec![(mbs_lhs(&p, &ctx.nome)?, mbs_rhs(&p, &ctx.nome)?)]))())
}

fn mbt(ctx: &Ctx, slot: Slot) -> Result<Outcome> {
    let p = discrete_sample(ctx, slot, DiscreteKind::Transformation)?;
    Outcome::new(p.named(), (|| Ok(vec![(mbt_lhs(&p, &ctx.nome)?, mbt_rhs(&p, &ctx.nome)?)]))())
}

fn mbt_degenerate(ctx: &Ctx, slot: Slot) -> Result<Outcome> {
    let (n, big_n) = discrete_cell(slot.cell());
    let p = sample_degenerate_params(slot.seed, n, big_n, &ctx.nome)?;
    let pairs = (|| {
        let single = mbt_rhs_single_term(&p, &ctx.nome)?;
        Ok(vec![(mbt_lhs(&p, &ctx.nome)?, single), (mbt_rhs(&p, &ctx.nome)?, single)])
    })();
    Outcome::new(p.named(), pairs)
}

// ---- proof replay ----

fn sjk(ctx: &Ctx, slot: Slot) -> Result<Outcome> {
    let n = 1 + slot.index % 3;
    let big_n = ChaCha8Rng::seed_from_u64(slot.seed ^ 0x9e37_79b9_7f4a_7c15).gen_range(n.max(2)..=6);
    let nome = &ctx.nome;
    let p = sample_discrete_params(slot.seed, n, big_n, DiscreteKind::Transformation, nome)?;
    let pairs = (|| {
        let d = sjk_det(&p, nome)?;
        let pf = prefactor_pf(&p, nome)?;
        let rhs = pf * mbt_rhs(&p, nome)?;
        Ok(vec![
            (d, pf * mbt_lhs(&p, nome)?),
            (d, rhs),
            (sjk_alt_det(&p, nome)?, rhs),
            (cauchy_binet_det(&p, nome)?, d),
        ])
    })();
    Outcome::new(p.named(), pairs)
}

fn di(ctx: &Ctx, slot: Slot) -> Result<Outcome> {
    let p = sample_continuous_params(slot.seed, Variant::Selberg, 2, TMode::Q, &ctx.nome)?;
    let pairs = (|| {
        let check = di_check(&p, &ctx.nome, &ctx.config.quad_options(1), &ctx.config.quad_options(2))?;
        let m = &check.matrices;
        let worst = m
            .quadrature
            .entries()
            .iter()
            .zip(m.closed.entries())
            .map(|(&a, &b)| (a, b))
            .max_by(|x, y| crate::reduce::relative_residual(x.0, x.1).total_cmp(&crate::reduce::relative_residual(y.0, y.1)))
            .expect("matrix is not empty");
        Ok(vec![(check.determinant, check.prefactor_times_integral), worst])
    })();
    Outcome::new(p.named(), pairs)
}

// ---- continuous ----

fn continuous_sample(ctx: &Ctx, slot: Slot, variant: Variant, n: usize, mode: TMode) -> Result<ContinuousParams> {
    sample_continuous_params(slot.seed, variant, n, mode, &ctx.nome)
}

fn beta(ctx: &Ctx, slot: Slot) -> Result<Outcome> {
    let p = continuous_sample(ctx, slot, Variant::Selberg, 1, TMode::General)?;
    let pairs = (|| Ok(vec![(beta_integral_lhs(&p, &ctx.nome, &ctx.config.quad_options(1))?.value, beta_integral_rhs(&p, &ctx.nome)?)]))();
    Outcome::new(p.named(), pairs)
}

fn esi(ctx: &Ctx, slot: Slot, mode: TMode) -> Result<Outcome> {
    let p = continuous_sample(ctx, slot, Variant::Selberg, 2, mode)?;
    let pairs = (|| Ok(vec![(selberg_lhs(&p, &ctx.nome, &ctx.config.quad_options(2))?.value, selberg_rhs(&p, &ctx.nome)?)]))();
    Outcome::new(p.named(), pairs)
}

fn esi_tq(ctx: &Ctx, slot: Slot) -> Result<Outcome> {
    esi(ctx, slot, TMode::Q)
}

fn esi_general(ctx: &Ctx, slot: Slot) -> Result<Outcome> {
    esi(ctx, slot, TMode::General)
}

fn eit_n1(ctx: &Ctx, slot: Slot) -> Result<Outcome> {
    let p = continuous_sample(ctx, slot, Variant::Rains, 1, TMode::Q)?;
    let pairs = (|| {
        let opts = ctx.config.quad_options(1);
        let rhs = rains_rhs(&p, &ctx.nome, &opts)?.value;
        let flipped = rains_rhs(&p.negate_v(), &ctx.nome, &opts)?.value;
        Ok(vec![(rains_lhs(&p, &ctx.nome, &opts)?.value, rhs), (rhs, flipped)])
    })();
    Outcome::new(p.named(), pairs)
}

fn eit_n2(ctx: &Ctx, slot: Slot) -> Result<Outcome> {
    let p = continuous_sample(ctx, slot, Variant::Rains, 2, TMode::Q)?;
    let pairs = (|| {
        let opts = ctx.config.quad_options(2);
        Ok(vec![(rains_lhs(&p, &ctx.nome, &opts)?.value, rains_rhs(&p, &ctx.nome, &opts)?.value)])
    })();
    Outcome::new(p.named(), pairs)
}
