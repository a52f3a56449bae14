//! Double-double complex arithmetic.
//!
//! Finite elliptic hypergeometric sums routinely cancel by many orders of
//! magnitude, and perturbing a balanced parameter by one rounding error moves
//! such a sum by the same amplified amount. The discrete module therefore
//! keeps parameters and terms as unevaluated pairs `hi + lo` (about 32
//! significant digits) and rounds only the final values.

use std::fmt;
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::nome::Nome;

/// Tail threshold for products evaluated in double-double.
pub const XCUTOFF: f64 = 1e-33;

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn fast_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

/// A real double-double `hi + lo` with `|lo| <= ulp(hi)/2`.
#[derive(Clone, Copy, Default, PartialEq)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };

    #[inline]
    fn renorm(hi: f64, lo: f64) -> Dd {
        let (hi, lo) = fast_two_sum(hi, lo);
        Dd { hi, lo }
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn is_finite(self) -> bool {
        self.hi.is_finite() && self.lo.is_finite()
    }
}

impl From<f64> for Dd {
    fn from(x: f64) -> Self {
        Dd { hi: x, lo: 0.0 }
    }
}

impl fmt::Debug for Dd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:e}{:+e}", self.hi, self.lo)
    }
}

impl Neg for Dd {
    type Output = Dd;
    #[inline]
    fn neg(self) -> Dd {
        Dd { hi: -self.hi, lo: -self.lo }
    }
}

impl Add for Dd {
    type Output = Dd;
    #[inline]
    fn add(self, o: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, o.hi);
        let (t, f) = two_sum(self.lo, o.lo);
        let (s, e) = fast_two_sum(s, e + t);
        Dd::renorm(s, e + f)
    }
}

impl Sub for Dd {
    type Output = Dd;
    #[inline]
    fn sub(self, o: Dd) -> Dd {
        self + (-o)
    }
}

impl Mul for Dd {
    type Output = Dd;
    #[inline]
    fn mul(self, o: Dd) -> Dd {
        let p = self.hi * o.hi;
        let e = self.hi.mul_add(o.hi, -p) + (self.hi * o.lo + self.lo * o.hi);
        Dd::renorm(p, e)
    }
}

impl Div for Dd {
    type Output = Dd;
    #[inline]
    fn div(self, o: Dd) -> Dd {
        let q1 = self.hi / o.hi;
        let r = self - o * Dd::from(q1);
        let q2 = r.hi / o.hi;
        let r = r - o * Dd::from(q2);
        let q3 = r.hi / o.hi;
        let (s, e) = fast_two_sum(q1, q2);
        Dd { hi: s, lo: e } + Dd::from(q3)
    }
}

/// A complex number with double-double parts.
#[derive(Clone, Copy, Default, PartialEq)]
pub struct Xc {
    pub re: Dd,
    pub im: Dd,
}

impl Xc {
    pub const ZERO: Xc = Xc { re: Dd::ZERO, im: Dd::ZERO };
    pub const ONE: Xc = Xc { re: Dd::ONE, im: Dd::ZERO };

    /// Round to an ordinary complex number.
    #[inline]
    pub fn to_c64(self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }

    /// Modulus to double precision.
    #[inline]
    pub fn norm(self) -> f64 {
        self.to_c64().norm()
    }

    pub fn is_finite(self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    pub fn is_zero(self) -> bool {
        self.re.hi == 0.0 && self.im.hi == 0.0
    }

    #[inline]
    pub fn conj(self) -> Xc {
        Xc { re: self.re, im: -self.im }
    }

    pub fn inv(self) -> Xc {
        Xc::ONE / self
    }

    /// Integer power by repeated squaring.
    pub fn powi(self, k: i64) -> Xc {
        let base = if k < 0 { self.inv() } else { self };
        let mut e = k.unsigned_abs();
        let (mut acc, mut b) = (Xc::ONE, base);
        while e > 0 {
            if e & 1 == 1 {
                acc *= b;
            }
            b *= b;
            e >>= 1;
        }
        acc
    }
}

impl From<Complex64> for Xc {
    fn from(z: Complex64) -> Self {
        Xc { re: z.re.into(), im: z.im.into() }
    }
}

impl From<f64> for Xc {
    fn from(x: f64) -> Self {
        Xc { re: x.into(), im: Dd::ZERO }
    }
}

impl fmt::Debug for Xc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}, {:?})", self.re, self.im)
    }
}

impl Neg for Xc {
    type Output = Xc;
    fn neg(self) -> Xc {
        Xc { re: -self.re, im: -self.im }
    }
}

impl Add for Xc {
    type Output = Xc;
    #[inline]
    fn add(self, o: Xc) -> Xc {
        Xc { re: self.re + o.re, im: self.im + o.im }
    }
}

impl Sub for Xc {
    type Output = Xc;
    #[inline]
    fn sub(self, o: Xc) -> Xc {
        Xc { re: self.re - o.re, im: self.im - o.im }
    }
}

impl Mul for Xc {
    type Output = Xc;
    #[inline]
    fn mul(self, o: Xc) -> Xc {
        Xc { re: self.re * o.re - self.im * o.im, im: self.re * o.im + self.im * o.re }
    }
}

impl Div for Xc {
    type Output = Xc;
    #[inline]
    fn div(self, o: Xc) -> Xc {
        // scale by a power of two first so |o|^2 neither overflows nor underflows
        let m = o.re.hi.abs().max(o.im.hi.abs());
        let s = if m > 0.0 { 2f64.powi(-m.log2().round() as i32) } else { 1.0 };
        let os = Xc { re: o.re * Dd::from(s), im: o.im * Dd::from(s) };
        let den = os.re * os.re + os.im * os.im;
        let num = self * os.conj();
        Xc { re: num.re / den * Dd::from(s), im: num.im / den * Dd::from(s) }
    }
}

macro_rules! assign_ops {
    ($($tr:ident $m:ident $op:tt),*) => {$(
        impl $tr for Xc {
            #[inline]
            fn $m(&mut self, o: Xc) {
                *self = *self $op o;
            }
        }
    )*};
}
assign_ops!(AddAssign add_assign +, SubAssign sub_assign -, MulAssign mul_assign *, DivAssign div_assign /);

impl std::iter::Sum for Xc {
    fn sum<I: Iterator<Item = Xc>>(iter: I) -> Xc {
        iter.fold(Xc::ZERO, |a, b| a + b)
    }
}

impl std::iter::Product for Xc {
    fn product<I: Iterator<Item = Xc>>(iter: I) -> Xc {
        iter.fold(Xc::ONE, |a, b| a * b)
    }
}

/// `q^k` in double-double.
pub fn q_pow(nome: &Nome, k: i64) -> Xc {
    Xc::from(nome.q()).powi(k)
}

/// Theta function in double-double, truncated at [`XCUTOFF`] (the nome's
/// own cutoff applies if it is smaller).
pub fn theta(z: Xc, nome: &Nome) -> Result<Xc> {
    if !z.is_finite() || z.is_zero() {
        return Err(Error::Domain(format!("theta: argument must be finite and nonzero (got {})", z.to_c64())));
    }
    let cutoff = nome.cutoff().min(XCUTOFF);
    let p = Xc::from(nome.p());
    let p_abs = nome.p().norm();
    let inv_z = z.inv();
    let scale = z.norm().max(inv_z.norm());
    let mut acc = Xc::ONE;
    let (mut pj, mut pj1, mut pj1_abs) = (Xc::ONE, p, p_abs);
    for _ in 0..nome.max_terms() {
        acc *= (Xc::ONE - pj * z) * (Xc::ONE - pj1 * inv_z);
        if pj1_abs * scale < cutoff {
            return Ok(acc);
        }
        pj = pj1;
        pj1 *= p;
        pj1_abs *= p_abs;
    }
    Err(Error::Truncation { arg: z.to_c64(), max_terms: nome.max_terms() })
}

/// `(z)_k` in double-double.
pub fn shifted_factorial(z: Xc, k: usize, nome: &Nome) -> Result<Xc> {
    let q = Xc::from(nome.q());
    let (mut acc, mut w) = (Xc::ONE, z);
    for _ in 0..k {
        acc *= theta(w, nome)?;
        w *= q;
    }
    Ok(acc)
}

/// Determinant by Gaussian elimination with partial pivoting on a row-major
/// `dim x dim` array.
pub fn det(entries: &[Xc], dim: usize) -> Result<Xc> {
    if entries.len() != dim * dim {
        return Err(Error::Domain(format!("{} entries do not form a {dim}x{dim} matrix", entries.len())));
    }
    if entries.iter().any(|z| !z.is_finite()) {
        return Err(Error::Domain("determinant of a matrix with non-finite entries".into()));
    }
    let mut m = entries.to_vec();
    let mut acc = Xc::ONE;
    for col in 0..dim {
        let pivot = (col..dim)
            .max_by(|&i, &j| m[i * dim + col].norm().total_cmp(&m[j * dim + col].norm()))
            .unwrap_or(col);
        if m[pivot * dim + col].is_zero() {
            return Ok(Xc::ZERO);
        }
        if pivot != col {
            for k in 0..dim {
                m.swap(pivot * dim + k, col * dim + k);
            }
            acc = -acc;
        }
        let piv = m[col * dim + col];
        acc *= piv;
        for row in col + 1..dim {
            let factor = m[row * dim + col] / piv;
            for k in col + 1..dim {
                let v = m[col * dim + k];
                m[row * dim + k] -= factor * v;
            }
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn err(x: Dd, y: Dd) -> f64 {
        let d = x - y;
        (d.hi + d.lo).abs()
    }

    #[test]
    fn division_keeps_the_low_word() {
        let third = Dd::ONE / Dd::from(3.0);
        assert!(third.lo != 0.0);
        assert!(err(third * Dd::from(3.0), Dd::ONE) < 1e-31);
        let x = Dd::from(0.1) / Dd::from(7.3);
        assert!(err(x * Dd::from(7.3), Dd::from(0.1)) < 1e-32);
    }

    #[test]
    fn products_are_exact_beyond_double() {
        let x = Dd { hi: 1.0, lo: 1e-20 };
        let sq = x * x - Dd::ONE;
        // 1e-40 lies below the resolution relative to 1
        assert!(err(sq, Dd::from(2e-20)) < 1e-32);
        assert!(sq.hi == 2e-20);
    }

    #[test]
    fn complex_division_inverts_multiplication() {
        let a = Xc::from(Complex64::new(0.3, -1.7));
        let b = Xc::from(Complex64::new(-2.1e-5, 4.4e3));
        let back = a * b / b - a;
        assert!(back.norm() < 1e-30);
        let tiny = Xc::from(Complex64::new(1e-200, 1e-200));
        assert!(((tiny / tiny) - Xc::ONE).norm() < 1e-30);
    }

    #[test]
    fn powers_agree_with_products() {
        let z = Xc::from(Complex64::new(0.45, 0.2));
        let p5 = z * z * z * z * z;
        assert!((z.powi(5) - p5).norm() < 1e-31);
        assert!((z.powi(-3) * z * z * z - Xc::ONE).norm() < 1e-30);
    }

    #[test]
    fn theta_matches_double_precision_and_is_quasi_periodic() {
        let nome = Nome::from_polar(0.2, 0.3, 0.45, 1.1).unwrap();
        let z = Complex64::new(0.7, -0.35);
        let t = theta(z.into(), &nome).unwrap();
        let t64 = crate::elliptic::theta(z, &nome).unwrap();
        assert!((t.to_c64() - t64).norm() < 1e-15 * t64.norm());
        // theta(pz) = -theta(z)/z to double-double accuracy
        let zx = Xc::from(z);
        let lhs = theta(Xc::from(nome.p()) * zx, &nome).unwrap();
        let rhs = -t / zx;
        assert!((lhs - rhs).norm() < 1e-29 * rhs.norm());
    }

    #[test]
    fn determinant_of_triangular_and_permuted() {
        let c = |re: f64| Xc::from(re);
        let m = [c(2.0), c(5.0), c(0.0), c(3.0)];
        assert!((det(&m, 2).unwrap() - c(6.0)).norm() < 1e-30);
        let swapped = [c(0.0), c(3.0), c(2.0), c(5.0)];
        assert!((det(&swapped, 2).unwrap() + c(6.0)).norm() < 1e-30);
        assert!(det(&m, 3).is_err());
    }
}
