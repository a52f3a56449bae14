use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Dense square complex matrix stored row-major.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    entries: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn from_row_major(dim: usize, entries: Vec<Complex64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Domain("matrix dimension must be at least 1".into()));
        }
        if entries.len() != dim * dim {
            return Err(Error::Domain(format!(
                "expected {} entries for a {dim}x{dim} matrix, got {}",
                dim * dim,
                entries.len()
            )));
        }
        Ok(ComplexMatrix { dim, entries })
    }

    /// Fill from `f(row, col)`, indices starting at 0.
    pub fn from_fn<F>(dim: usize, mut f: F) -> Result<Self>
    where
        F: FnMut(usize, usize) -> Result<Complex64>,
    {
        let mut entries = Vec::with_capacity(dim * dim);
        for j in 0..dim {
            for k in 0..dim {
                entries.push(f(j, k)?);
            }
        }
        Self::from_row_major(dim, entries)
    }

    pub fn identity(dim: usize) -> Self {
        let mut entries = vec![Complex64::new(0.0, 0.0); dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = Complex64::new(1.0, 0.0);
        }
        ComplexMatrix { dim, entries }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.dim + col]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: Complex64) {
        self.entries[row * self.dim + col] = value;
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn is_finite(&self) -> bool {
        self.entries.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn mul(&self, other: &ComplexMatrix) -> Result<ComplexMatrix> {
        if self.dim != other.dim {
            return Err(Error::Domain("dimension mismatch in matrix product".into()));
        }
        let n = self.dim;
        ComplexMatrix::from_fn(n, |j, k| Ok((0..n).map(|i| self.get(j, i) * other.get(i, k)).sum()))
    }

    pub fn transpose(&self) -> ComplexMatrix {
        let n = self.dim;
        let mut out = self.clone();
        for j in 0..n {
            for k in 0..n {
                out.set(k, j, self.get(j, k));
            }
        }
        out
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix({}x{})", self.dim, self.dim)?;
        for j in 0..self.dim {
            let row: Vec<String> = (0..self.dim).map(|k| format!("{:.6e}", self.get(j, k))).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Determinant by Gaussian elimination with partial pivoting.
pub fn det(m: &ComplexMatrix) -> Result<Complex64> {
    if !m.is_finite() {
        return Err(Error::Domain("determinant of a matrix with non-finite entries".into()));
    }
    let n = m.dim;
    let mut a = m.entries.clone();
    let mut result = Complex64::new(1.0, 0.0);
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&x, &y| a[x * n + col].norm().total_cmp(&a[y * n + col].norm()))
            .unwrap_or(col);
        let pv = a[pivot * n + col];
        if pv.re == 0.0 && pv.im == 0.0 {
            return Ok(Complex64::new(0.0, 0.0));
        }
        if pivot != col {
            for k in 0..n {
                a.swap(col * n + k, pivot * n + k);
            }
            result = -result;
        }
        result *= pv;
        for row in col + 1..n {
            let factor = a[row * n + col] / pv;
            if factor.re == 0.0 && factor.im == 0.0 {
                continue;
            }
            for k in col + 1..n {
                let v = a[col * n + k];
                a[row * n + k] -= factor * v;
            }
        }
    }
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// Laplace expansion along the first row.
    fn cofactor_det(m: &[Vec<Complex64>]) -> Complex64 {
        let n = m.len();
        if n == 1 {
            return m[0][0];
        }
        let mut acc = c(0.0, 0.0);
        for col in 0..n {
            let minor: Vec<Vec<Complex64>> = m[1..]
                .iter()
                .map(|row| row.iter().enumerate().filter(|(k, _)| *k != col).map(|(_, v)| *v).collect())
                .collect();
            let sign = if col % 2 == 0 { 1.0 } else { -1.0 };
            acc += sign * m[0][col] * cofactor_det(&minor);
        }
        acc
    }

    fn random_matrix(rng: &mut ChaCha8Rng, n: usize) -> ComplexMatrix {
        ComplexMatrix::from_fn(n, |_, _| Ok(c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))).unwrap()
    }

    #[test]
    fn identity_and_two_by_two() {
        assert_eq!(det(&ComplexMatrix::identity(4)).unwrap(), c(1.0, 0.0));
        let (a, b, cc, d) = (c(1.0, 1.0), c(2.0, 0.0), c(0.0, 0.0), c(3.0, -1.0));
        let m = ComplexMatrix::from_row_major(2, vec![a, b, cc, d]).unwrap();
        assert!((det(&m).unwrap() - (a * d - b * cc)).norm() < 1e-15);
    }

    #[test]
    fn permutation_matrices_have_exact_sign() {
        // cycle (0 1 2 3) is odd
        let mut m = ComplexMatrix::from_row_major(4, vec![c(0.0, 0.0); 16]).unwrap();
        for j in 0..4 {
            m.set(j, (j + 1) % 4, c(1.0, 0.0));
        }
        assert_eq!(det(&m).unwrap(), c(-1.0, 0.0));
        let mut m = ComplexMatrix::from_row_major(3, vec![c(0.0, 0.0); 9]).unwrap();
        for j in 0..3 {
            m.set(j, (j + 1) % 3, c(1.0, 0.0));
        }
        assert_eq!(det(&m).unwrap(), c(1.0, 0.0));
    }

    #[test]
    fn random_six_by_six_against_cofactor_expansion() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..5 {
            let m = random_matrix(&mut rng, 6);
            let rows: Vec<Vec<Complex64>> = (0..6).map(|j| (0..6).map(|k| m.get(j, k)).collect()).collect();
            let oracle = cofactor_det(&rows);
            let v = det(&m).unwrap();
            assert!((v - oracle).norm() <= 1e-11 * oracle.norm().max(1.0), "{v} vs {oracle}");
        }
    }

    #[test]
    fn multiplicative() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let a = random_matrix(&mut rng, 5);
            let b = random_matrix(&mut rng, 5);
            let lhs = det(&a.mul(&b).unwrap()).unwrap();
            let rhs = det(&a).unwrap() * det(&b).unwrap();
            assert!((lhs - rhs).norm() <= 1e-10 * (lhs.norm() + rhs.norm()));
        }
    }

    #[test]
    fn singular_and_invalid() {
        let m = ComplexMatrix::from_row_major(2, vec![c(1.0, 2.0), c(1.0, 2.0), c(3.0, 0.0), c(3.0, 0.0)]).unwrap();
        assert_eq!(det(&m).unwrap(), c(0.0, 0.0));
        let m = ComplexMatrix::from_row_major(2, vec![c(f64::NAN, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]).unwrap();
        assert!(det(&m).is_err());
        assert!(ComplexMatrix::from_row_major(2, vec![c(1.0, 0.0); 3]).is_err());
        assert!(ComplexMatrix::from_row_major(0, vec![]).is_err());
    }
}
