use num_complex::Complex64;

use rayon::prelude::*;

use crate::elliptic::{elliptic_gamma, reciprocal_gamma};
use crate::error::Result;
use crate::nome::Nome;

use super::quad::{adaptive, grid_sum, offset_node, root_of_unity, Estimate, QuadOptions, Sample};

/// One-variable weight `prod_k Gamma(w_k z^+-) / Gamma(z^{+-2})`.
///
/// The reciprocal gammas are evaluated as products, so the double zero at
/// `z = +-1` comes out as an exact zero.
pub fn weight(ws: &[Complex64], z: Complex64, nome: &Nome) -> Result<Complex64> {
    let zi = z.inv();
    let mut acc = reciprocal_gamma(z * z, nome)? * reciprocal_gamma(zi * zi, nome)?;
    for &w in ws {
        acc *= elliptic_gamma(w * z, nome)? * elliptic_gamma(w * zi, nome)?;
    }
    Ok(acc)
}

/// `Gamma(t w^+-) / Gamma(w^+-)`, zero at `w = 1`.
fn pair_factor(t: Complex64, w: Complex64, nome: &Nome) -> Result<Complex64> {
    let wi = w.inv();
    Ok(elliptic_gamma(t * w, nome)?
        * elliptic_gamma(t * wi, nome)?
        * reciprocal_gamma(w, nome)?
        * reciprocal_gamma(wi, nome)?)
}

/// Cross factor `Gamma(t z^+- w^+-) / Gamma(z^+- w^+-)` of two variables.
pub fn cross_factor(t: Complex64, z: Complex64, w: Complex64, nome: &Nome) -> Result<Complex64> {
    Ok(pair_factor(t, z * w, nome)? * pair_factor(t, z / w, nome)?)
}

/// The full integrand
/// `prod_{j<k} Gamma(t z_j^+- z_k^+-) / Gamma(z_j^+- z_k^+-) * prod_j weight(ws, z_j)`
/// at one point of the torus.
pub fn integrand(ws: &[Complex64], t: Complex64, zs: &[Complex64], nome: &Nome) -> Result<Complex64> {
    let mut acc = Complex64::new(1.0, 0.0);
    for (j, &zj) in zs.iter().enumerate() {
        acc *= weight(ws, zj, nome)?;
        for &zk in &zs[j + 1..] {
            acc *= cross_factor(t, zj, zk, nome)?;
        }
    }
    Ok(acc)
}

/// Trapezoid value of `oint integrand prod dz_j / (2 pi i z_j)` on the
/// `M^n` offset grid.
///
/// Every node product `z_a z_b` and quotient `z_a / z_b` is an `M`-th root of
/// unity, so the integrand factorises into `M` tabulated weights and `M`
/// tabulated pair factors; the diagonal `a = b` picks up the exact zero of
/// the pair factor at 1.
pub fn tabulated_integral(ws: &[Complex64], t: Complex64, n: usize, m: usize, nome: &Nome) -> Result<Sample> {
    let h = (0..m).into_par_iter().map(|a| weight(ws, offset_node(a, m), nome)).collect::<Result<Vec<_>>>()?;
    let g = if n >= 2 {
        (0..m).into_par_iter().map(|k| pair_factor(t, root_of_unity(k, m), nome)).collect::<Result<Vec<_>>>()?
    } else {
        Vec::new()
    };
    grid_sum(n, m, |idx| {
        let mut acc = Complex64::new(1.0, 0.0);
        for (j, &a) in idx.iter().enumerate() {
            acc *= h[a];
            for &b in &idx[j + 1..] {
                acc *= g[(a + b + 1) % m] * g[(a + m - b) % m];
            }
        }
        Ok(acc)
    })
}

/// Adaptive torus integral of [`integrand`] over `n` variables.
pub fn torus_selberg_integral(
    ws: &[Complex64],
    t: Complex64,
    n: usize,
    nome: &Nome,
    opts: &QuadOptions,
) -> Result<Estimate> {
    adaptive(|m| tabulated_integral(ws, t, n, m, nome), opts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::continuous::quad::{torus_integrate, QuadGrid};

    fn nome() -> Nome {
        Nome::from_polar(0.2, 0.3, 0.45, 1.1).unwrap()
    }

    fn c(r: f64, a: f64) -> Complex64 {
        Complex64::from_polar(r, a)
    }

    fn params() -> Vec<Complex64> {
        vec![c(0.5, 0.3), c(0.6, -1.0), c(0.4, 2.0), c(0.55, 0.7), c(0.45, -2.5), c(0.5, 1.4)]
    }

    #[test]
    fn weight_vanishes_at_plus_minus_one() {
        let nome = nome();
        for z in [1.0, -1.0] {
            assert_eq!(weight(&params(), Complex64::new(z, 0.0), &nome).unwrap(), Complex64::new(0.0, 0.0));
        }
    }

    #[test]
    fn integrand_is_symmetric() {
        let nome = nome();
        let t = c(0.5, 0.4);
        let z = [c(1.0, 0.7), c(1.0, -2.1)];
        let base = integrand(&params(), t, &z, &nome).unwrap();
        let variants = [[z[0].inv(), z[1]], [z[0], z[1].inv()], [z[1], z[0]]];
        for zs in variants {
            let v = integrand(&params(), t, &zs, &nome).unwrap();
            assert!((v - base).norm() <= 1e-12 * base.norm(), "{v} vs {base}");
        }
    }

    #[test]
    fn negating_variables_and_parameters_is_a_symmetry() {
        let nome = nome();
        let z = c(1.0, 0.9);
        let neg: Vec<Complex64> = params().iter().map(|w| -w).collect();
        let a = weight(&params(), z, &nome).unwrap();
        let b = weight(&neg, -z, &nome).unwrap();
        assert!((a - b).norm() <= 1e-12 * a.norm());
    }

    #[test]
    fn tabulated_sum_matches_pointwise_grid() {
        let nome = nome();
        let t = c(0.5, 0.4);
        let ws = params();
        let grid = QuadGrid::new(2, 16).unwrap();
        let direct = torus_integrate(|z| integrand(&ws, t, z, &nome), &grid).unwrap();
        let fast = tabulated_integral(&ws, t, 2, 16, &nome).unwrap().value;
        assert!((direct - fast).norm() <= 1e-12 * direct.norm(), "{direct} vs {fast}");
    }
}
