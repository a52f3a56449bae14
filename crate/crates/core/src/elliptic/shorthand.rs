//! Repeated-sign shorthands: `f(a z^±) = f(az) f(a/z)` and
//! `f(a z^± w^±) = f(azw) f(az/w) f(aw/z) f(a/(zw))`.

use num_complex::Complex64;

use super::{elliptic_gamma, shifted_factorial, theta};
use crate::error::Result;
use crate::nome::Nome;

/// Which function the shorthand expands.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PmKind {
    Theta,
    Gamma,
    /// Elliptic shifted factorial of the given length.
    Factorial(usize),
}

impl PmKind {
    fn eval(self, x: Complex64, nome: &Nome) -> Result<Complex64> {
        match self {
            PmKind::Theta => theta(x, nome),
            PmKind::Gamma => elliptic_gamma(x, nome),
            PmKind::Factorial(k) => shifted_factorial(x, k, nome),
        }
    }
}

/// `f(base z) f(base / z)`. `Gamma(z^{±2})` is `pm_product(Gamma, 1, z^2)`.
pub fn pm_product(kind: PmKind, base: Complex64, z: Complex64, nome: &Nome) -> Result<Complex64> {
    Ok(kind.eval(base * z, nome)? * kind.eval(base / z, nome)?)
}

/// `f(base z^± w^±)`, the four-fold product over both sign choices.
pub fn pm_pm_product(
    kind: PmKind,
    base: Complex64,
    z: Complex64,
    w: Complex64,
    nome: &Nome,
) -> Result<Complex64> {
    Ok(kind.eval(base * z * w, nome)?
        * kind.eval(base * z / w, nome)?
        * kind.eval(base * w / z, nome)?
        * kind.eval(base / (z * w), nome)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn expansions() {
        let n = Nome::new(c(0.2, 0.1), c(0.3, -0.2)).unwrap();
        let g = |x| elliptic_gamma(x, &n).unwrap();

        let (t, z) = (c(0.5, 0.0), c(0.0, 0.8));
        assert_eq!(pm_product(PmKind::Gamma, t, z, &n).unwrap(), g(t * z) * g(t / z));

        let z = c(0.9, 0.0);
        let v = pm_product(PmKind::Gamma, c(1.0, 0.0), z * z, &n).unwrap();
        assert!((v - g(z * z) * g(1.0 / (z * z))).norm() < 1e-14 * v.norm());

        let (t, z1, z2) = (c(0.4, 0.2), c(0.6, 0.8), c(0.8, -0.6));
        let v = pm_pm_product(PmKind::Gamma, t, z1, z2, &n).unwrap();
        let expect = g(t * z1 * z2) * g(t * z1 / z2) * g(t * z2 / z1) * g(t / (z1 * z2));
        assert!((v - expect).norm() < 1e-14 * v.norm());
    }

    #[test]
    fn factorial_and_theta_shorthand() {
        let n = Nome::new(c(0.2, 0.0), c(0.4, 0.0)).unwrap();
        let (a, z) = (c(0.3, 0.1), c(0.5, 0.5));
        let v = pm_product(PmKind::Factorial(3), a, z, &n).unwrap();
        let e = shifted_factorial(a * z, 3, &n).unwrap() * shifted_factorial(a / z, 3, &n).unwrap();
        assert!((v - e).norm() < 1e-14 * e.norm());
        let v = pm_product(PmKind::Theta, a, z, &n).unwrap();
        assert_eq!(v, theta(a * z, &n).unwrap() * theta(a / z, &n).unwrap());
    }
}
