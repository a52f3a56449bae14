use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::reduce::pairwise_sum;

/// Tensor trapezoid grid on the unit torus with half-offset nodes
/// `exp(2 pi i (m + 1/2) / M)`, `m = 0..M`, in every dimension.
///
/// The offset keeps nodes away from `z = +-1` and, on the tensor grid,
/// puts every product `z_j z_k` and quotient `z_j / z_k` on an `M`-th root
/// of unity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuadGrid {
    dims: usize,
    nodes_per_dim: usize,
}

/// Smallest admissible node count per dimension.
pub const MIN_NODES: usize = 8;

impl QuadGrid {
    pub fn new(dims: usize, nodes_per_dim: usize) -> Result<Self> {
        if dims == 0 {
            return Err(Error::Domain("quadrature grid needs at least one dimension".into()));
        }
        if nodes_per_dim < MIN_NODES {
            return Err(Error::Domain(format!("need at least {MIN_NODES} nodes per dimension (got {nodes_per_dim})")));
        }
        Ok(QuadGrid { dims, nodes_per_dim })
    }

    pub fn dims(&self) -> usize {
        self.dims
    }

    pub fn nodes_per_dim(&self) -> usize {
        self.nodes_per_dim
    }

    /// Total number of grid points, `M^n`.
    pub fn len(&self) -> usize {
        self.nodes_per_dim.pow(self.dims as u32)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Node `m` of one dimension.
    pub fn node(&self, m: usize) -> Complex64 {
        offset_node(m, self.nodes_per_dim)
    }

    /// The `M` nodes of one dimension.
    pub fn nodes(&self) -> Vec<Complex64> {
        (0..self.nodes_per_dim).map(|m| self.node(m)).collect()
    }
}

pub(crate) fn offset_node(m: usize, count: usize) -> Complex64 {
    Complex64::from_polar(1.0, std::f64::consts::TAU * (m as f64 + 0.5) / count as f64)
}

/// `k`-th of the `M`-th roots of unity; `k = 0` is exactly 1.
pub(crate) fn root_of_unity(k: usize, count: usize) -> Complex64 {
    Complex64::from_polar(1.0, std::f64::consts::TAU * k as f64 / count as f64)
}

/// Decode a flat index into `n` per-dimension indices (first index slowest).
fn unflatten(mut flat: usize, m: usize, out: &mut [usize]) {
    for slot in out.iter_mut().rev() {
        *slot = flat % m;
        flat /= m;
    }
}

/// Evaluate `term` on all `M^n` grid indices, one slice of fixed first
/// index at a time (slices in parallel), and reduce each slice in order.
fn grid_rows<T, F, R>(dims: usize, m: usize, term: F, reduce: R) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(&[usize]) -> Result<T> + Sync,
    R: Fn(Vec<T>) -> T + Sync,
{
    let per_row = m.pow(dims as u32 - 1);
    (0..m)
        .into_par_iter()
        .map(|first| {
            let mut idx = vec![0usize; dims];
            let mut terms = Vec::with_capacity(per_row);
            for rest in 0..per_row {
                unflatten(first * per_row + rest, m, &mut idx);
                terms.push(term(&idx)?);
            }
            Ok(reduce(terms))
        })
        .collect()
}

/// One trapezoid estimate together with the grid average of the term
/// moduli.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Sample {
    pub value: Complex64,
    pub mass: f64,
}

impl Sample {
    /// `mass / |value|`, the factor by which term errors are amplified.
    pub fn condition(&self) -> f64 {
        let v = self.value.norm();
        if v > 0.0 {
            (self.mass / v).max(1.0)
        } else {
            f64::INFINITY
        }
    }
}

impl From<Complex64> for Sample {
    fn from(value: Complex64) -> Self {
        Sample { value, mass: value.norm() }
    }
}

/// Deterministic reduction of `M^n` grid terms: each slice with a fixed
/// first index is summed pairwise, then the slice sums are summed pairwise
/// in order. Returns `M^{-n}` times the sum and the mass.
pub(crate) fn grid_sum<F>(dims: usize, m: usize, term: F) -> Result<Sample>
where
    F: Fn(&[usize]) -> Result<Complex64> + Sync,
{
    let rows = grid_rows(dims, m, |idx| term(idx).map(|t| (t, t.norm())), |terms| {
        let values: Vec<Complex64> = terms.iter().map(|t| t.0).collect();
        (pairwise_sum(&values), terms.iter().map(|t| t.1).sum())
    })?;
    let values: Vec<Complex64> = rows.iter().map(|r| r.0).collect();
    let scale = (m as f64).powi(dims as i32);
    Ok(Sample { value: pairwise_sum(&values) / scale, mass: rows.iter().map(|r| r.1).sum::<f64>() / scale })
}

/// `M^{-n} sum_grid f(z)`, the trapezoid value of `oint f prod dz_j/(2 pi i z_j)`.
///
/// Exact for Laurent polynomials of degree below `M` in every variable.
pub fn torus_integrate<F>(f: F, grid: &QuadGrid) -> Result<Complex64>
where
    F: Fn(&[Complex64]) -> Result<Complex64> + Sync,
{
    let nodes = grid.nodes();
    let sum = grid_sum(grid.dims, grid.nodes_per_dim, |idx| {
        let zs: Vec<Complex64> = idx.iter().map(|&m| nodes[m]).collect();
        f(&zs)
    })?;
    Ok(sum.value)
}

/// Accuracy target and node budget of an adaptive quadrature.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadOptions {
    /// Required estimated relative error.
    pub tol: f64,
    /// Initial nodes per dimension.
    pub start: usize,
    /// Largest admissible nodes per dimension.
    pub cap: usize,
}

impl QuadOptions {
    /// Defaults by dimension: caps 1024 / 256 / 64 for `n = 1 / 2 / 3+`.
    pub fn for_dims(n: usize) -> Self {
        match n {
            0 | 1 => QuadOptions { tol: 1e-12, start: 16, cap: 1024 },
            2 => QuadOptions { tol: 1e-7, start: 16, cap: 256 },
            _ => QuadOptions { tol: 1e-4, start: 8, cap: 64 },
        }
    }

    pub fn with_cap(self, cap: usize) -> Self {
        QuadOptions { cap, ..self }
    }

    pub fn with_tol(self, tol: f64) -> Self {
        QuadOptions { tol, ..self }
    }
}

/// Result of an adaptive quadrature.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Estimate {
    /// The accepted (finest) estimate.
    pub value: Complex64,
    /// The estimate one doubling earlier.
    pub previous: Complex64,
    /// Nodes per dimension of the accepted estimate.
    pub nodes: usize,
    /// Estimated relative error of `value`, including rounding.
    pub error: f64,
    /// Mean modulus of the integrand over the grid divided by `|value|`;
    /// rounding errors in the integrand values are amplified by this factor.
    pub condition: f64,
}

/// A doubling must shrink the relative difference by at least this factor
/// before the squared difference is trusted as an error estimate.
const CONTRACTION: f64 = 0.1;

/// Relative rounding error assumed for a single integrand value.
pub const ROUNDOFF: f64 = 1e-15;

/// Double `M` from `opts.start` until the estimated relative error of the
/// finest estimate is at most `opts.tol`, or fail with
/// [`Error::Quadrature`] once `M` would exceed `opts.cap`.
///
/// With `d = |I_2M - I_M| / |I_2M|`, the error of `I_M` is about `d`. For an
/// integrand analytic in an annulus the error decays like `rho^-M`, so once
/// the differences contract the error of `I_2M` is about `d^2`; that value
/// is used when the last difference is at most a tenth of the one before.
/// The rounding error [`ROUNDOFF`] times the condition of the estimate is
/// added as a floor, so an integral that cancels too strongly for double
/// precision is reported as a failure rather than returned inaccurate.
pub fn adaptive<F, S>(mut estimate: F, opts: &QuadOptions) -> Result<Estimate>
where
    F: FnMut(usize) -> Result<S>,
    S: Into<Sample>,
{
    if !(opts.tol > 0.0) {
        return Err(Error::Domain(format!("quadrature tolerance must be positive (got {})", opts.tol)));
    }
    let mut m = opts.start.max(MIN_NODES);
    if m > opts.cap {
        return Err(Error::Domain(format!("quadrature cap {} is below the start {m}", opts.cap)));
    }
    let mut prev: Sample = estimate(m)?.into();
    let mut prev_diff = f64::INFINITY;
    loop {
        let next_m = 2 * m;
        if next_m > opts.cap {
            return Err(Error::Quadrature { nodes: m, previous: prev.value, last: prev.value });
        }
        let next: Sample = estimate(next_m)?.into();
        let diff = (next.value - prev.value).norm() / next.value.norm();
        let truncation = if diff <= CONTRACTION * prev_diff { diff * diff } else { diff };
        let condition = next.condition();
        let error = truncation.max(ROUNDOFF * condition);
        if error <= opts.tol {
            return Ok(Estimate { value: next.value, previous: prev.value, nodes: next_m, error, condition });
        }
        if next_m * 2 > opts.cap {
            return Err(Error::Quadrature { nodes: next_m, previous: prev.value, last: next.value });
        }
        prev = next;
        prev_diff = diff;
        m = next_m;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn constant_integrates_to_one() {
        let g = QuadGrid::new(1, 8).unwrap();
        let v = torus_integrate(|_| Ok(c(1.0, 0.0)), &g).unwrap();
        assert!((v - 1.0).norm() < 1e-15);
        let g2 = QuadGrid::new(2, 8).unwrap();
        assert!((torus_integrate(|_| Ok(c(1.0, 0.0)), &g2).unwrap() - 1.0).norm() < 1e-15);
    }

    #[test]
    fn monomials_vanish() {
        let g = QuadGrid::new(1, 16).unwrap();
        for k in [3, -3] {
            let v = torus_integrate(|z| Ok(z[0].powi(k)), &g).unwrap();
            assert!(v.norm() < 1e-15, "k={k}");
        }
        let g2 = QuadGrid::new(2, 16).unwrap();
        let v = torus_integrate(|z| Ok(z[0] * z[1].powi(-2)), &g2).unwrap();
        assert!(v.norm() < 1e-15);
    }

    #[test]
    fn geometric_series_keeps_constant_term() {
        let g = QuadGrid::new(1, 64).unwrap();
        let v = torus_integrate(|z| Ok(1.0 / (1.0 - 0.5 * z[0])), &g).unwrap();
        assert!((v - 1.0).norm() < 1e-15);
    }

    #[test]
    fn grid_rejects_bad_shapes() {
        assert!(QuadGrid::new(0, 16).is_err());
        assert!(QuadGrid::new(1, 4).is_err());
        assert_eq!(QuadGrid::new(2, 8).unwrap().len(), 64);
    }

    #[test]
    fn nodes_avoid_plus_minus_one_and_are_closed_under_negation() {
        let g = QuadGrid::new(1, 32).unwrap();
        let nodes = g.nodes();
        for z in &nodes {
            assert!((z - 1.0).norm() > 0.04 && (z + 1.0).norm() > 0.04);
            assert!(nodes.iter().any(|w| (w + z).norm() < 1e-14));
        }
        assert_eq!(root_of_unity(0, 32), c(1.0, 0.0));
    }

    #[test]
    fn adaptive_converges_geometrically_and_reports_failure() {
        let f = |m: usize| -> Result<Complex64> {
            let g = QuadGrid::new(1, m)?;
            torus_integrate(|z| Ok(1.0 / (1.0 - 0.7 * z[0]) + 1.0 / (1.0 - 0.7 / z[0])), &g)
        };
        let est = adaptive(f, &QuadOptions { tol: 1e-12, start: 8, cap: 1024 }).unwrap();
        assert!((est.value - 2.0).norm() < 1e-13);
        assert!(est.nodes <= 256);
        let err = adaptive(f, &QuadOptions { tol: 1e-12, start: 8, cap: 32 }).unwrap_err();
        assert!(matches!(err, Error::Quadrature { nodes: 32, .. }));
    }
}
