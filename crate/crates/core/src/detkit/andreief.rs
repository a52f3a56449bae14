use num_complex::Complex64;
use rayon::prelude::*;

use super::matrix::{det, ComplexMatrix};
use crate::error::{Error, Result};
use crate::reduce::pairwise_sum;
use crate::tuples::IncreasingTuples;

/// A function handle evaluated at the support points of a measure.
pub type Handle<'a> = Box<dyn Fn(Complex64) -> Result<Complex64> + Send + Sync + 'a>;

/// Finitely supported complex measure `sum_i w_i delta(x - x_i)`.
#[derive(Clone, Debug, PartialEq)]
pub struct DiscreteMeasure {
    points: Vec<Complex64>,
    weights: Vec<Complex64>,
}

impl DiscreteMeasure {
    pub fn new(points: Vec<Complex64>, weights: Vec<Complex64>) -> Result<Self> {
        if points.len() != weights.len() {
            return Err(Error::Domain(format!(
                "measure has {} points but {} weights",
                points.len(),
                weights.len()
            )));
        }
        for (i, a) in points.iter().enumerate() {
            if points[..i].contains(a) {
                return Err(Error::Domain(format!("repeated support point {a}")));
            }
        }
        Ok(DiscreteMeasure { points, weights })
    }

    /// Integer grid `{0, ..., len-1}` with the given weights.
    pub fn grid(weights: Vec<Complex64>) -> Self {
        let points = (0..weights.len()).map(|x| Complex64::new(x as f64, 0.0)).collect();
        DiscreteMeasure { points, weights }
    }

    pub fn points(&self) -> &[Complex64] {
        &self.points
    }

    pub fn weights(&self) -> &[Complex64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

fn evaluate(handles: &[Handle<'_>], mu: &DiscreteMeasure) -> Result<Vec<Vec<Complex64>>> {
    handles.iter().map(|h| mu.points.iter().map(|&x| h(x)).collect()).collect()
}

fn check_shapes(fs: &[Vec<Complex64>], gs: &[Vec<Complex64>], weights: &[Complex64]) -> Result<usize> {
    let n = fs.len();
    if n == 0 || gs.len() != n {
        return Err(Error::Domain(format!("need n >= 1 functions on each side (got {} and {})", n, gs.len())));
    }
    if fs.iter().chain(gs).any(|row| row.len() != weights.len()) {
        return Err(Error::Domain("function values do not match the measure support".into()));
    }
    Ok(n)
}

/// The moment matrix `[ sum_x f_j(x) g_k(x) w(x) ]` from tabulated values
/// `fs[j][x]`, `gs[k][x]`.
pub fn moment_matrix(fs: &[Vec<Complex64>], gs: &[Vec<Complex64>], weights: &[Complex64]) -> Result<ComplexMatrix> {
    let n = check_shapes(fs, gs, weights)?;
    ComplexMatrix::from_fn(n, |j, k| {
        let terms: Vec<Complex64> =
            weights.iter().enumerate().map(|(x, w)| fs[j][x] * gs[k][x] * w).collect();
        Ok(pairwise_sum(&terms))
    })
}

/// Cauchy–Binet expansion of the moment-matrix determinant:
/// the sum over increasing tuples `x_1 < ... < x_n` of
/// `det[f_j(x_k)] det[g_j(x_k)] prod_k w(x_k)`.
///
/// Terms are evaluated in parallel and reduced pairwise in lexicographic
/// tuple order, so the value does not depend on the thread count.
pub fn cauchy_binet(fs: &[Vec<Complex64>], gs: &[Vec<Complex64>], weights: &[Complex64]) -> Result<Complex64> {
    let n = check_shapes(fs, gs, weights)?;
    if weights.is_empty() {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let tuples: Vec<Vec<usize>> = IncreasingTuples::new(n, weights.len() - 1).collect();
    let terms = tuples
        .par_iter()
        .map(|xs| {
            let a = ComplexMatrix::from_fn(n, |j, k| Ok(fs[j][xs[k]]))?;
            let b = ComplexMatrix::from_fn(n, |j, k| Ok(gs[j][xs[k]]))?;
            let w: Complex64 = xs.iter().map(|&x| weights[x]).product();
            Ok(det(&a)? * det(&b)? * w)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(pairwise_sum(&terms))
}

/// Left side of the Andreief identity: `det[ integral f_j g_k dmu ]`.
pub fn andreief_lhs(fs: &[Handle<'_>], gs: &[Handle<'_>], mu: &DiscreteMeasure) -> Result<Complex64> {
    det(&moment_matrix(&evaluate(fs, mu)?, &evaluate(gs, mu)?, &mu.weights)?)
}

/// Right side of the Andreief identity, `(1/n!)` times the sum over all
/// `n`-tuples of points, computed over increasing tuples only.
pub fn andreief_rhs(fs: &[Handle<'_>], gs: &[Handle<'_>], mu: &DiscreteMeasure) -> Result<Complex64> {
    cauchy_binet(&evaluate(fs, mu)?, &evaluate(gs, mu)?, &mu.weights)
}
