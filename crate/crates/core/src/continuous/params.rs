use num_complex::Complex64;
use std::f64::consts::TAU;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::nome::Nome;

/// Which integral identity a parameter set belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    /// Selberg integral: `t` and six `t_k` with `t^{2n-2} t_1..t_6 = pq`.
    Selberg,
    /// Rains' transformation: `t`, four `t_k`, four `u_k` and `v` with
    /// `v^2 = pq / (t^{n-1} t_1..t_4) = t^{n-1} u_1..u_4 / pq`.
    Rains,
}

/// How the sampler chooses `t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TMode {
    /// `t = q`, the determinantal case.
    Q,
    /// `|t|` uniform in `[0.55, 0.6]` with a uniform phase.
    General,
}

/// Validated parameters of the continuous identities.
#[derive(Clone, Debug, PartialEq)]
pub struct ContinuousParams {
    variant: Variant,
    t: Complex64,
    ts: Vec<Complex64>,
    us: Vec<Complex64>,
    v: Complex64,
    n: usize,
}

const BALANCE_TOL: f64 = 1e-12;

fn check_balance(lhs: Complex64, rhs: Complex64, what: &str) -> Result<()> {
    if !((lhs - rhs).norm() <= BALANCE_TOL * rhs.norm()) {
        return Err(Error::Domain(format!("balancing condition {what} violated: {lhs} vs {rhs}")));
    }
    Ok(())
}

fn check_inside(name: &str, z: Complex64) -> Result<()> {
    if !(z.norm() < 1.0) {
        return Err(Error::Domain(format!("contour condition |{name}| < 1 violated (|{name}| = {})", z.norm())));
    }
    Ok(())
}

impl ContinuousParams {
    /// Selberg-integral parameters; checks `t^{2n-2} t_1..t_6 = pq` and the
    /// unit-torus contour conditions `|t|, |t_k| < 1`.
    pub fn selberg(t: Complex64, ts: [Complex64; 6], n: usize, nome: &Nome) -> Result<Self> {
        check_n(n)?;
        let prod: Complex64 = ts.iter().product();
        check_balance(t.powi(2 * n as i32 - 2) * prod, nome.pq(), "t^{2n-2} t_1...t_6 = pq")?;
        check_inside("t", t)?;
        for (k, tk) in ts.iter().enumerate() {
            check_inside(&format!("t_{}", k + 1), *tk)?;
        }
        Ok(ContinuousParams { variant: Variant::Selberg, t, ts: ts.to_vec(), us: vec![], v: Complex64::new(0.0, 0.0), n })
    }

    /// Selberg parameters with `t_6` solved from the balancing condition.
    pub fn solve_selberg(t: Complex64, ts: [Complex64; 5], n: usize, nome: &Nome) -> Result<Self> {
        check_n(n)?;
        let prod: Complex64 = ts.iter().product();
        let t6 = nome.pq() / (t.powi(2 * n as i32 - 2) * prod);
        Self::selberg(t, [ts[0], ts[1], ts[2], ts[3], ts[4], t6], n, nome)
    }

    /// Rains-transformation parameters; checks both expressions for `v^2`
    /// and the contour conditions `|t|, |t_k|, |u_k|, |t_k v|, |u_k / v| < 1`.
    pub fn rains(
        t: Complex64,
        ts: [Complex64; 4],
        us: [Complex64; 4],
        v: Complex64,
        n: usize,
        nome: &Nome,
    ) -> Result<Self> {
        check_n(n)?;
        let tn = t.powi(n as i32 - 1);
        let tprod: Complex64 = ts.iter().product();
        let uprod: Complex64 = us.iter().product();
        check_balance(v * v, nome.pq() / (tn * tprod), "v^2 = pq / (t^{n-1} t_1...t_4)")?;
        check_balance(v * v, tn * uprod / nome.pq(), "v^2 = t^{n-1} u_1...u_4 / pq")?;
        check_inside("t", t)?;
        for k in 0..4 {
            check_inside(&format!("t_{}", k + 1), ts[k])?;
            check_inside(&format!("u_{}", k + 1), us[k])?;
            check_inside(&format!("t_{} v", k + 1), ts[k] * v)?;
            check_inside(&format!("u_{} / v", k + 1), us[k] / v)?;
        }
        Ok(ContinuousParams { variant: Variant::Rains, t, ts: ts.to_vec(), us: us.to_vec(), v, n })
    }

    /// Rains parameters with `v` the principal root of
    /// `pq / (t^{n-1} t_1..t_4)` and `u_4` solved from the second equality.
    pub fn solve_rains(t: Complex64, ts: [Complex64; 4], us: [Complex64; 3], n: usize, nome: &Nome) -> Result<Self> {
        check_n(n)?;
        let tn = t.powi(n as i32 - 1);
        let tprod: Complex64 = ts.iter().product();
        let v = (nome.pq() / (tn * tprod)).sqrt();
        let u4 = v * v * nome.pq() / (tn * us[0] * us[1] * us[2]);
        Self::rains(t, ts, [us[0], us[1], us[2], u4], v, n, nome)
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }
    pub fn t(&self) -> Complex64 {
        self.t
    }
    /// `t_1..t_6` (Selberg) or `t_1..t_4` (Rains).
    pub fn ts(&self) -> &[Complex64] {
        &self.ts
    }
    /// `u_1..u_4` (Rains only; empty otherwise).
    pub fn us(&self) -> &[Complex64] {
        &self.us
    }
    /// `v` (Rains only; zero otherwise).
    pub fn v(&self) -> Complex64 {
        self.v
    }
    pub fn n(&self) -> usize {
        self.n
    }

    /// Same parameters with `v` replaced by `-v`.
    pub fn negate_v(&self) -> Self {
        ContinuousParams { v: -self.v, ..self.clone() }
    }

    pub(crate) fn require(&self, variant: Variant) -> Result<()> {
        if self.variant != variant {
            return Err(Error::Domain(format!("parameters belong to {:?}, not {variant:?}", self.variant)));
        }
        Ok(())
    }

    /// Named parameter values, in a fixed order, for reports.
    pub fn named(&self) -> Vec<(String, Complex64)> {
        let mut out = vec![("t".to_string(), self.t)];
        for (k, tk) in self.ts.iter().enumerate() {
            out.push((format!("t{}", k + 1), *tk));
        }
        if self.variant == Variant::Rains {
            for (k, uk) in self.us.iter().enumerate() {
                out.push((format!("u{}", k + 1), *uk));
            }
            out.push(("v".to_string(), self.v));
        }
        out.push(("n".to_string(), Complex64::new(self.n as f64, 0.0)));
        out
    }
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::Domain("need at least one integration variable".into()));
    }
    Ok(())
}

const RETRY_BUDGET: usize = 1000;
/// Half-width of the log-modulus window around the balanced centre.
const SPREAD: f64 = 0.25;

/// Largest modulus the sampler admits for any parameter that sets the
/// width of the integrand's annulus of analyticity; it fixes the
/// quadrature convergence rate `r^M`.
pub fn modulus_cap(n: usize) -> f64 {
    if n <= 1 {
        0.9
    } else {
        0.88
    }
}

fn draw_modulus(rng: &mut ChaCha8Rng, log_centre: f64, half_width: f64) -> f64 {
    let log_mod = if half_width > 0.0 { log_centre + rng.gen_range(-half_width..=half_width) } else { log_centre };
    log_mod.exp()
}

/// `K` phases, one uniform in each of `K` equal arcs after a uniform
/// rotation, in shuffled order.
fn draw_phases<const K: usize>(rng: &mut ChaCha8Rng) -> [f64; K] {
    let offset = rng.gen_range(0.0..TAU);
    let mut out = [0.0; K];
    for (k, slot) in out.iter_mut().enumerate() {
        *slot = offset + TAU * (k as f64 + rng.gen_range(0.0..1.0)) / K as f64;
    }
    out.shuffle(rng);
    out
}

fn draw_around<const K: usize>(rng: &mut ChaCha8Rng, log_centre: f64, half_width: f64) -> [Complex64; K] {
    let phases = draw_phases::<K>(rng);
    phases.map(|phase| Complex64::from_polar(draw_modulus(rng, log_centre, half_width), phase))
}

fn draw_t(rng: &mut ChaCha8Rng, mode: TMode, nome: &Nome) -> Complex64 {
    match mode {
        TMode::Q => nome.q(),
        TMode::General => Complex64::from_polar(rng.gen_range(0.55..=0.6), rng.gen_range(0.0..TAU)),
    }
}

fn window(log_centre: f64, cap: f64, what: &str) -> Result<f64> {
    let room = cap.ln() - log_centre;
    if room <= 0.0 {
        return Err(Error::Instance(format!(
            "{what}: balanced centre modulus {:.3} is not below the cap {cap}",
            log_centre.exp()
        )));
    }
    Ok(SPREAD.min(room))
}

fn sample_selberg(rng: &mut ChaCha8Rng, n: usize, mode: TMode, nome: &Nome) -> Result<ContinuousParams> {
    let cap = modulus_cap(n);
    let t = draw_t(rng, mode, nome);
    // all six moduli equal would give this common value
    let centre = (nome.pq() / t.powi(2 * n as i32 - 2)).norm().ln() / 6.0;
    let h = window(centre, cap, "selberg")?;
    let free = draw_around::<5>(rng, centre, h);
    let p = ContinuousParams::solve_selberg(t, free, n, nome)?;
    if p.ts[5].norm() > cap {
        return Err(Error::Instance(format!("|t_6| = {:.4} exceeds the cap {cap}", p.ts[5].norm())));
    }
    Ok(p)
}

fn sample_rains(rng: &mut ChaCha8Rng, n: usize, mode: TMode, nome: &Nome) -> Result<ContinuousParams> {
    let cap = modulus_cap(n);
    let t = draw_t(rng, mode, nome);
    let tn = t.powi(n as i32 - 1);
    // with |t_k| = s for all k, |v| = 1 and |u_k| = s as well
    let centre = (nome.pq() / tn).norm().ln() / 4.0;
    let h = window(centre, cap, "rains")?;
    let ts = draw_around::<4>(rng, centre, h);
    let v2 = nome.pq() / (tn * ts.iter().product::<Complex64>());
    let u_centre = (v2 * nome.pq() / tn).norm().ln() / 4.0;
    let us = draw_around::<3>(rng, u_centre, h);
    let p = ContinuousParams::solve_rains(t, ts, us, n, nome)?;
    let v = p.v;
    for k in 0..4 {
        for (what, z) in [("t_k", p.ts[k]), ("u_k", p.us[k]), ("t_k v", p.ts[k] * v), ("u_k / v", p.us[k] / v)] {
            if z.norm() > cap {
                return Err(Error::Instance(format!("|{what}| = {:.4} exceeds the cap {cap} (k = {})", z.norm(), k + 1)));
            }
        }
    }
    Ok(p)
}

/// Random valid parameters, deterministic in `seed`.
///
/// Free moduli are drawn log-uniformly in a window of half-width 0.25 (in
/// `ln |.|`) around the value that would make all balanced moduli equal,
/// narrowed so that the window stays below [`modulus_cap`]. Phases are
/// stratified (one per equal arc of the circle, randomly rotated and
/// shuffled): independent phases occasionally cluster, which makes the
/// torus integrand sharply peaked while the integral itself is tiny. The
/// last parameter (`t_6`, or `u_4` and `v`) is solved from the balancing
/// condition and the draw is repeated while any modulus that bounds the
/// integrand's annulus exceeds the cap.
pub fn sample_continuous_params(
    seed: u64,
    variant: Variant,
    n: usize,
    mode: TMode,
    nome: &Nome,
) -> Result<ContinuousParams> {
    check_n(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut last = String::new();
    for _ in 0..RETRY_BUDGET {
        let draw = match variant {
            Variant::Selberg => sample_selberg(&mut rng, n, mode, nome),
            Variant::Rains => sample_rains(&mut rng, n, mode, nome),
        };
        match draw {
            Ok(p) => return Ok(p),
            Err(e @ (Error::Instance(_) | Error::Domain(_))) => last = e.to_string(),
            Err(e) => return Err(e),
        }
    }
    Err(Error::Sampling { attempts: RETRY_BUDGET, reason: last })
}
