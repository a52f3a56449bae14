use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::nome::Nome;

/// Factors of magnitude below this radius are treated as poles.
pub const NEAR_POLE_RADIUS: f64 = 1e-12;

/// Walk the truncated lattice of `Gamma(z)`, handing each pair
/// `(1 - p^{j+1} q^{k+1}/z, 1 - p^j q^k z)` to `visit`.
///
/// The lattice holds every `(j, k)` with `|p|^j |q|^k max(|z|, 1/|z|) >= cutoff`.
#[inline]
fn for_each_lattice_factor<F>(z: Complex64, nome: &Nome, mut visit: F) -> Result<()>
where
    F: FnMut(Complex64, Complex64) -> Result<()>,
{
    if !z.re.is_finite() || !z.im.is_finite() || z == Complex64::new(0.0, 0.0) {
        return Err(Error::Domain(format!("elliptic gamma: invalid argument {z}")));
    }
    let (p, q) = (nome.p(), nome.q());
    let (p_abs, q_abs) = (p.norm(), q.norm());
    let pq_over_z = p * q / z;
    let scale = z.norm().max(z.norm().recip());
    let cutoff = nome.cutoff();
    let max_terms = nome.max_terms();

    let mut row = Complex64::new(1.0, 0.0);
    let mut row_abs = 1.0;
    let mut rows = 0usize;
    while row_abs * scale >= cutoff {
        if rows >= max_terms {
            return Err(Error::Truncation { arg: z, max_terms });
        }
        let mut w = row;
        let mut w_abs = row_abs;
        let mut cols = 0usize;
        while w_abs * scale >= cutoff {
            if cols >= max_terms {
                return Err(Error::Truncation { arg: z, max_terms });
            }
            visit(1.0 - w * pq_over_z, 1.0 - w * z)?;
            w *= q;
            w_abs *= q_abs;
            cols += 1;
        }
        row *= p;
        row_abs *= p_abs;
        rows += 1;
    }
    Ok(())
}

fn near_pole(z: Complex64, factor: Complex64) -> Error {
    Error::NearPole { arg: z, factor: factor.norm(), radius: NEAR_POLE_RADIUS }
}

/// Ruijsenaars' elliptic gamma function
/// `prod_{j,k>=0} (1 - p^{j+1} q^{k+1}/z) / (1 - p^j q^k z)`.
///
/// Fails with [`Error::NearPole`] when a denominator factor is smaller than
/// [`NEAR_POLE_RADIUS`]; use [`reciprocal_gamma`] or [`gamma_factors`] when
/// the reciprocal is what is needed.
pub fn elliptic_gamma(z: Complex64, nome: &Nome) -> Result<Complex64> {
    let r2 = NEAR_POLE_RADIUS * NEAR_POLE_RADIUS;
    let mut num = Complex64::new(1.0, 0.0);
    let mut den = Complex64::new(1.0, 0.0);
    for_each_lattice_factor(z, nome, |n, d| {
        if d.norm_sqr() < r2 {
            return Err(near_pole(z, d));
        }
        num *= n;
        den *= d;
        Ok(())
    })?;
    Ok(num / den)
}

/// `1 / Gamma(z)`, evaluated as a product so that zeros come out as exact
/// zeros rather than `1 / inf`.
pub fn reciprocal_gamma(z: Complex64, nome: &Nome) -> Result<Complex64> {
    let r2 = NEAR_POLE_RADIUS * NEAR_POLE_RADIUS;
    let mut num = Complex64::new(1.0, 0.0);
    let mut den = Complex64::new(1.0, 0.0);
    for_each_lattice_factor(z, nome, |n, d| {
        if n.norm_sqr() < r2 {
            return Err(near_pole(z, n));
        }
        num *= d;
        den *= n;
        Ok(())
    })?;
    Ok(num / den)
}

/// The individual lattice factors of a product of gamma quotients, kept
/// apart so that poles of one factor can cancel zeros of another.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct GammaFactors {
    pub numerator_factors: Vec<Complex64>,
    pub denominator_factors: Vec<Complex64>,
}

impl GammaFactors {
    pub fn new() -> Self {
        Self::default()
    }

    /// Append all factors of `other`.
    pub fn extend(&mut self, other: GammaFactors) {
        self.numerator_factors.extend(other.numerator_factors);
        self.denominator_factors.extend(other.denominator_factors);
    }

    pub fn concat(mut self, other: GammaFactors) -> Self {
        self.extend(other);
        self
    }

    /// Multiply out, alternating one numerator and one denominator factor
    /// so that partial products stay near unit magnitude.
    pub fn assemble(&self) -> Result<Complex64> {
        let num = &self.numerator_factors;
        let den = &self.denominator_factors;
        if let Some(d) = den.iter().find(|d| d.re == 0.0 && d.im == 0.0) {
            return Err(Error::Domain(format!("division by an exactly zero factor {d}")));
        }
        let mut acc = Complex64::new(1.0, 0.0);
        for i in 0..num.len().max(den.len()) {
            if let Some(n) = num.get(i) {
                acc *= n;
            }
            if let Some(d) = den.get(i) {
                acc /= d;
            }
        }
        Ok(acc)
    }

    /// Smallest denominator factor magnitude, `inf` when there are none.
    pub fn min_denominator(&self) -> f64 {
        self.denominator_factors.iter().map(|d| d.norm()).fold(f64::INFINITY, f64::min)
    }
}

/// Lattice factors of `Gamma(z)`, or of `1/Gamma(z)` when `reciprocal` is set
/// (numerator and denominator lists swapped).
pub fn gamma_factors(z: Complex64, reciprocal: bool, nome: &Nome) -> Result<GammaFactors> {
    let mut out = GammaFactors::new();
    for_each_lattice_factor(z, nome, |n, d| {
        out.numerator_factors.push(n);
        out.denominator_factors.push(d);
        Ok(())
    })?;
    if reciprocal {
        std::mem::swap(&mut out.numerator_factors, &mut out.denominator_factors);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::elliptic::{shifted_factorial, theta};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn nome(p: f64, q: f64) -> Nome {
        Nome::new(c(p, 0.0), c(q, 0.0)).unwrap()
    }

    fn rel(a: Complex64, b: Complex64) -> f64 {
        (a - b).norm() / b.norm()
    }

    #[test]
    fn q_shift_gives_theta() {
        let n = nome(0.2, 0.35);
        let z = c(0.3, 0.2);
        let ratio = elliptic_gamma(n.q() * z, &n).unwrap() / elliptic_gamma(z, &n).unwrap();
        assert!(rel(ratio, theta(z, &n).unwrap()) < 1e-12);
    }

    #[test]
    fn reflection() {
        let n = nome(0.15, 0.25);
        let z = c(0.6, 0.0);
        let v = elliptic_gamma(n.pq() / z, &n).unwrap() * elliptic_gamma(z, &n).unwrap();
        assert!((v - 1.0).norm() < 1e-13);
    }

    #[test]
    fn repeated_q_shift_gives_factorial() {
        let n = nome(0.2, 0.3);
        let z = c(0.4, 0.0);
        let lhs = elliptic_gamma(n.q_pow(3) * z, &n).unwrap();
        let rhs = shifted_factorial(z, 3, &n).unwrap() * elliptic_gamma(z, &n).unwrap();
        assert!(rel(lhs, rhs) < 1e-12);

        let n = nome(0.2, 0.4);
        let z = c(0.25, 0.05);
        let ratio = elliptic_gamma(n.q_pow(4) * z, &n).unwrap() / elliptic_gamma(z, &n).unwrap();
        assert!(rel(ratio, shifted_factorial(z, 4, &n).unwrap()) < 1e-12);
    }

    #[test]
    fn pole_and_zero_handling() {
        let n = nome(0.2, 0.3);
        assert!(matches!(elliptic_gamma(c(1.0, 0.0), &n), Err(Error::NearPole { .. })));
        assert!(matches!(elliptic_gamma(c(0.0, 0.0), &n), Err(Error::Domain(_))));
        assert_eq!(reciprocal_gamma(c(1.0, 0.0), &n).unwrap(), c(0.0, 0.0));
        // zero of Gamma at z = pq is a pole of the reciprocal
        assert!(matches!(reciprocal_gamma(n.pq(), &n), Err(Error::NearPole { .. })));
    }

    #[test]
    fn factor_lists_round_trip() {
        let n = nome(0.2, 0.3);
        let z = c(0.6, 0.0);
        let assembled = gamma_factors(z, false, &n).unwrap().assemble().unwrap();
        assert!(rel(assembled, elliptic_gamma(z, &n).unwrap()) < 1e-14);

        let zero = gamma_factors(c(1.0, 0.0), true, &n).unwrap().assemble().unwrap();
        assert_eq!(zero, c(0.0, 0.0));
        assert!(gamma_factors(c(1.0, 0.0), false, &n).unwrap().assemble().is_err());
        assert!(gamma_factors(c(0.0, 0.0), false, &n).is_err());

        let z = c(0.3, 0.1);
        let both = gamma_factors(z, false, &n)
            .unwrap()
            .concat(gamma_factors(n.pq() / z, false, &n).unwrap())
            .assemble()
            .unwrap();
        assert!((both - 1.0).norm() < 1e-13);
    }

    #[test]
    fn reciprocal_matches_inverse_away_from_poles() {
        let n = Nome::new(c(0.1, 0.3), c(-0.2, 0.25)).unwrap();
        let z = c(0.7, -0.4);
        let g = elliptic_gamma(z, &n).unwrap();
        assert!(rel(reciprocal_gamma(z, &n).unwrap(), g.inv()) < 1e-14);
    }
}
