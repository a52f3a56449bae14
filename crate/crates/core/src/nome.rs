use num_complex::Complex64;

use crate::error::{Error, Result};

/// Default relative threshold below which product tails are dropped.
pub const DEFAULT_CUTOFF: f64 = 1e-17;
/// Default bound on the factor count of any one-dimensional product sweep.
pub const DEFAULT_MAX_TERMS: usize = 4096;

/// The pair of bases `(p, q)` together with the truncation policy used by
/// every infinite product in the crate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Nome {
    p: Complex64,
    q: Complex64,
    cutoff: f64,
    max_terms: usize,
}

impl Nome {
    pub fn new(p: Complex64, q: Complex64) -> Result<Self> {
        Self::with_truncation(p, q, DEFAULT_CUTOFF, DEFAULT_MAX_TERMS)
    }

    pub fn with_truncation(p: Complex64, q: Complex64, cutoff: f64, max_terms: usize) -> Result<Self> {
        if !(p.norm() < 1.0) || !(q.norm() < 1.0) {
            return Err(Error::Domain(format!("nome requires |p|, |q| < 1 (got p = {p}, q = {q})")));
        }
        if !(cutoff > 0.0) || !cutoff.is_finite() {
            return Err(Error::Domain(format!("cutoff must be positive (got {cutoff})")));
        }
        if max_terms == 0 {
            return Err(Error::Domain("max_terms must be at least 1".into()));
        }
        Ok(Nome { p, q, cutoff, max_terms })
    }

    /// Build from modulus/argument pairs.
    pub fn from_polar(p_mod: f64, p_arg: f64, q_mod: f64, q_arg: f64) -> Result<Self> {
        Self::new(Complex64::from_polar(p_mod, p_arg), Complex64::from_polar(q_mod, q_arg))
    }

    #[inline]
    pub fn p(&self) -> Complex64 {
        self.p
    }

    #[inline]
    pub fn q(&self) -> Complex64 {
        self.q
    }

    #[inline]
    pub fn pq(&self) -> Complex64 {
        self.p * self.q
    }

    #[inline]
    pub fn cutoff(&self) -> f64 {
        self.cutoff
    }

    #[inline]
    pub fn max_terms(&self) -> usize {
        self.max_terms
    }

    /// Same bases with a different tail threshold.
    pub fn with_cutoff(&self, cutoff: f64) -> Result<Self> {
        Self::with_truncation(self.p, self.q, cutoff, self.max_terms)
    }

    /// The nome with `p` and `q` exchanged.
    pub fn swapped(&self) -> Self {
        Nome { p: self.q, q: self.p, ..*self }
    }

    /// `q^k` for any integer `k`, by repeated squaring.
    #[inline]
    pub fn q_pow(&self, k: i64) -> Complex64 {
        int_pow(self.q, k)
    }
}

/// Integer power of a complex number with an exact integer exponent.
pub fn int_pow(z: Complex64, k: i64) -> Complex64 {
    if k == 0 {
        return Complex64::new(1.0, 0.0);
    }
    let base = if k < 0 { z.inv() } else { z };
    let mut e = k.unsigned_abs();
    let mut acc = Complex64::new(1.0, 0.0);
    let mut b = base;
    while e > 0 {
        if e & 1 == 1 {
            acc *= b;
        }
        b *= b;
        e >>= 1;
    }
    acc
}
