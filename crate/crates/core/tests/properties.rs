//! Randomised invariants across the modules.

use elliptic_selberg::continuous::{
    integrand, sample_continuous_params, tabulated_integral, weight, TMode, Variant,
};
use elliptic_selberg::detkit::{cauchy_binet, det, warnaar_det_closed, warnaar_det_direct, ComplexMatrix};
use elliptic_selberg::discrete::{
    cauchy_binet_det, mbs_lhs, mbs_rhs, sample_discrete_params, sjk_det, sjk_factors, DiscreteKind,
};
use elliptic_selberg::elliptic::{elliptic_gamma, shifted_factorial, theta};
use elliptic_selberg::reduce::{pairwise_sum, relative_residual};
use elliptic_selberg::tuples::IncreasingTuples;
use elliptic_selberg::{Complex64, Nome};
use proptest::prelude::*;

fn c(m: f64, a: f64) -> Complex64 {
    Complex64::from_polar(m, a)
}

fn arg() -> impl Strategy<Value = f64> {
    -std::f64::consts::PI..std::f64::consts::PI
}

/// `(|p|, arg p, |q|, arg q)` with moduli up to 0.6.
fn nome() -> impl Strategy<Value = Nome> {
    (0.05..0.6f64, arg(), 0.05..0.6f64, arg()).prop_map(|(pm, pa, qm, qa)| Nome::from_polar(pm, pa, qm, qa).unwrap())
}

fn point() -> impl Strategy<Value = Complex64> {
    ((0.25f64).ln()..(4.0f64).ln(), arg()).prop_map(|(lm, a)| c(lm.exp(), a))
}

/// Smallest `|1 - x|` over the factors of `Gamma(z)`: a proxy for how close
/// `z` is to the pole and zero lattices.
fn lattice_margin(z: Complex64, nome: &Nome) -> f64 {
    let mut m = f64::INFINITY;
    let (p, q) = (nome.p(), nome.q());
    let mut pj = Complex64::new(1.0, 0.0);
    for _ in 0..80 {
        let mut pq = pj;
        for _ in 0..80 {
            m = m.min((1.0 - pq * z).norm()).min((1.0 - pq * p * q / z).norm()).min((1.0 - pq * p / z).norm());
            pq *= q;
        }
        pj *= p;
    }
    m
}

/// Smallest `|1 - x|` over the factors of `theta(z)`.
fn theta_margin(z: Complex64, nome: &Nome) -> f64 {
    let p = nome.p();
    let mut m = f64::INFINITY;
    let mut pj = Complex64::new(1.0, 0.0);
    for _ in 0..80 {
        m = m.min((1.0 - pj * z).norm()).min((1.0 - pj * p / z).norm());
        pj *= p;
    }
    m
}

fn matrix(entries: &[(f64, f64)], n: usize) -> ComplexMatrix {
    ComplexMatrix::from_row_major(n, entries.iter().map(|&(re, im)| Complex64::new(re, im)).collect()).unwrap()
}

proptest! {
    #[test]
    fn theta_quasi_periodicity(nome in nome(), z in point()) {
        prop_assume!(lattice_margin(z, &nome) > 1e-3);
        let lhs = theta(nome.p() * z, &nome).unwrap();
        let rhs = -theta(z, &nome).unwrap() / z;
        prop_assert!(relative_residual(lhs, rhs) <= 1e-12);
    }

    #[test]
    fn theta_inversion(nome in nome(), z in point()) {
        prop_assume!(lattice_margin(z, &nome) > 1e-3);
        let lhs = theta(z.inv(), &nome).unwrap();
        prop_assert!(relative_residual(lhs, -theta(z, &nome).unwrap() / z) <= 1e-12);
    }

    #[test]
    fn gamma_shift_in_both_bases(nome in nome(), z in point()) {
        prop_assume!(lattice_margin(z, &nome) > 1e-3 && lattice_margin(z, &nome.swapped()) > 1e-3);
        for nm in [nome, nome.swapped()] {
            let lhs = elliptic_gamma(nm.q() * z, &nm).unwrap();
            let rhs = theta(z, &nm).unwrap() * elliptic_gamma(z, &nm).unwrap();
            prop_assert!(relative_residual(lhs, rhs) <= 1e-12, "{lhs} vs {rhs}");
        }
    }

    #[test]
    fn gamma_reflection(nome in nome(), z in point()) {
        prop_assume!(lattice_margin(z, &nome) > 1e-3);
        let prod = elliptic_gamma(z, &nome).unwrap() * elliptic_gamma(nome.pq() / z, &nome).unwrap();
        prop_assert!((prod - 1.0).norm() <= 1e-12);
    }

    #[test]
    fn factorial_splice(nome in nome(), z in point(), m in 0usize..=8, k in 0usize..=8) {
        prop_assume!((0..m + k).all(|j| theta_margin(z * nome.q_pow(j as i64), &nome) > 1e-3));
        let whole = shifted_factorial(z, m + k, &nome).unwrap();
        let split = shifted_factorial(z, m, &nome).unwrap() * shifted_factorial(z * nome.q_pow(m as i64), k, &nome).unwrap();
        // small |q| with long products leaves the double range
        prop_assume!(whole.is_finite() && split.is_finite());
        prop_assert!(relative_residual(whole, split) <= 1e-12);
    }

    #[test]
    fn halving_the_cutoff_changes_nothing(nome in nome(), z in point()) {
        prop_assume!(lattice_margin(z, &nome) > 1e-3);
        let finer = nome.with_cutoff(nome.cutoff() / 2.0).unwrap();
        prop_assert!(relative_residual(theta(z, &nome).unwrap(), theta(z, &finer).unwrap()) <= 1e-13);
        prop_assert!(relative_residual(elliptic_gamma(z, &nome).unwrap(), elliptic_gamma(z, &finer).unwrap()) <= 1e-13);
    }

    #[test]
    fn determinant_is_multiplicative(
        a in prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), 25),
        b in prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), 25),
    ) {
        let (a, b) = (matrix(&a, 5), matrix(&b, 5));
        let prod = det(&a.mul(&b).unwrap()).unwrap();
        let (da, db) = (det(&a).unwrap(), det(&b).unwrap());
        // random 5x5 matrices are well conditioned enough for this bound
        prop_assume!(da.norm() > 1e-3 && db.norm() > 1e-3);
        prop_assert!(relative_residual(prod, da * db) <= 1e-10);
        prop_assert!(relative_residual(det(&a.transpose()).unwrap(), da) <= 1e-12);
    }

    #[test]
    fn warnaar_small_sizes(
        am in 0.3..0.9f64, aa in arg(), bm in 0.3..0.9f64, ba in arg(), offset in arg(),
        zs in prop::collection::vec((0.3..0.9f64, 0.0..1.0f64), 1..=3),
    ) {
        let nome = Nome::from_polar(0.2, 0.3, 0.45, 1.1).unwrap();
        // one point per arc of the circle: clustered points make elimination
        // cancel while the closed form stays accurate
        let n = zs.len() as f64;
        let zs: Vec<Complex64> = zs
            .iter()
            .enumerate()
            .map(|(k, &(m, u))| c(m, offset + std::f64::consts::TAU * (k as f64 + u) / n))
            .collect();
        for (k, &zk) in zs.iter().enumerate() {
            for &zj in &zs[..k] {
                prop_assume!(theta(zk * zj, &nome).unwrap().norm().min(theta(zk / zj, &nome).unwrap().norm()) >= 0.05);
            }
        }
        let closed = warnaar_det_closed(c(am, aa), c(bm, ba), &zs, &nome).unwrap();
        let direct = warnaar_det_direct(c(am, aa), c(bm, ba), &zs, &nome).unwrap();
        prop_assert!(relative_residual(direct, closed) <= 1e-9, "{direct} vs {closed}");
    }

    #[test]
    fn relative_residual_is_symmetric_and_bounded(a in (-1e3..1e3f64, -1e3..1e3f64), b in (-1e3..1e3f64, -1e3..1e3f64)) {
        let (x, y) = (Complex64::new(a.0, a.1), Complex64::new(b.0, b.1));
        let r = relative_residual(x, y);
        prop_assert_eq!(r, relative_residual(y, x));
        prop_assert!((0.0..=1.0).contains(&r));
    }

    #[test]
    fn pairwise_sum_is_reproducible(xs in prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), 0..200)) {
        let v: Vec<Complex64> = xs.iter().map(|&(re, im)| Complex64::new(re, im)).collect();
        let once = pairwise_sum(&v);
        prop_assert_eq!(once, pairwise_sum(&v.clone()));
        let naive: Complex64 = v.iter().sum();
        prop_assert!((once - naive).norm() <= 1e-12 * (1.0 + v.iter().map(|z| z.norm()).sum::<f64>()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn discrete_summation_holds(seed in any::<u64>(), n in 1usize..=3, big_n in 2usize..=6) {
        let nome = Nome::from_polar(0.2, 0.3, 0.45, 1.1).unwrap();
        let p = sample_discrete_params(seed, n, big_n, DiscreteKind::Summation, &nome).unwrap();
        prop_assert!(relative_residual(mbs_lhs(&p, &nome).unwrap(), mbs_rhs(&p, &nome).unwrap()) <= 1e-9);
    }

    #[test]
    fn moment_determinant_expands_by_cauchy_binet(seed in any::<u64>(), n in 1usize..=3, big_n in 2usize..=6) {
        let nome = Nome::from_polar(0.2, 0.3, 0.45, 1.1).unwrap();
        let p = sample_discrete_params(seed, n, big_n, DiscreteKind::Transformation, &nome).unwrap();
        let d = sjk_det(&p, &nome).unwrap();
        prop_assert!(relative_residual(cauchy_binet_det(&p, &nome).unwrap(), d) <= 1e-10);
        // the plain double expansion is accurate relative to the mass of its
        // terms, which can exceed the determinant by many orders
        let f = sjk_factors(&p, &nome).unwrap();
        let expanded = cauchy_binet(&f.rows, &f.cols, &f.weights).unwrap();
        let minor = |fam: &[Vec<Complex64>], xs: &[usize]| {
            det(&ComplexMatrix::from_fn(n, |j, k| Ok(fam[j][xs[k]])).unwrap()).unwrap()
        };
        let mass: f64 = IncreasingTuples::new(n, big_n)
            .map(|xs| (minor(&f.rows, &xs) * minor(&f.cols, &xs) * xs.iter().map(|&x| f.weights[x]).product::<Complex64>()).norm())
            .sum();
        prop_assert!((expanded - d).norm() <= 1e-10 * mass, "{expanded} vs {d}, mass {mass}");
    }

    #[test]
    fn integrand_symmetries(seed in any::<u64>(), a in arg(), b in arg()) {
        let nome = Nome::from_polar(0.2, 0.3, 0.45, 1.1).unwrap();
        let p = sample_continuous_params(seed, Variant::Selberg, 2, TMode::General, &nome).unwrap();
        let (z, w) = (c(1.0, a), c(1.0, b));
        let base = integrand(p.ts(), p.t(), &[z, w], &nome).unwrap();
        for zs in [[w, z], [z.inv(), w], [z, w.inv()]] {
            let v = integrand(p.ts(), p.t(), &zs, &nome).unwrap();
            prop_assert!((v - base).norm() <= 1e-12 * base.norm().max(1e-300));
        }
        prop_assert_eq!(weight(p.ts(), Complex64::new(1.0, 0.0), &nome).unwrap(), Complex64::new(0.0, 0.0));
    }
}

/// Successive trapezoid differences of the beta integrand shrink at least
/// geometrically, at the rate set by the largest parameter modulus.
#[test]
fn beta_quadrature_converges_geometrically() {
    let nome = Nome::from_polar(0.2, 0.3, 0.45, 1.1).unwrap();
    for seed in 0..20 {
        let p = sample_continuous_params(seed, Variant::Selberg, 1, TMode::General, &nome).unwrap();
        let rate = p.ts().iter().map(|t| t.norm()).fold(nome.p().norm().max(nome.q().norm()), f64::max) + 0.1;
        let values: Vec<Complex64> = (3..=10).map(|k| tabulated_integral(p.ts(), p.t(), 1, 1 << k, &nome).unwrap().value).collect();
        let scale = values.last().unwrap().norm();
        let diffs: Vec<f64> = values.windows(2).map(|w| (w[1] - w[0]).norm()).collect();
        for (k, d) in diffs.windows(2).enumerate() {
            // below the rounding floor the differences are noise
            if d[0] > 1e-12 * scale {
                assert!(d[1] <= rate * d[0], "seed {seed}, M = {}: {} then {} (rate {rate})", 8 << k, d[0], d[1]);
            }
        }
    }
}
