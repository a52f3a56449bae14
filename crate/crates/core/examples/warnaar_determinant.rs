//! Warnaar's determinant: elimination against the closed product.

use elliptic_selberg::detkit::{warnaar_det_closed, warnaar_det_direct, warnaar_matrix};
use elliptic_selberg::reduce::relative_residual;
use elliptic_selberg::{Complex64, Nome, Result};

fn main() -> Result<()> {
    let nome = Nome::from_polar(0.2, 0.3, 0.45, 1.1)?;
    let a = Complex64::from_polar(0.6, 0.4);
    let b = Complex64::from_polar(0.5, -1.3);
    for n in 1..=5 {
        let zs: Vec<Complex64> = (0..n).map(|k| Complex64::from_polar(0.8 + 0.1 * k as f64, 1.3 * k as f64 + 0.2)).collect();
        let direct = warnaar_det_direct(a, b, &zs, &nome)?;
        let closed = warnaar_det_closed(a, b, &zs, &nome)?;
        println!("n = {n}: det = {direct:.12e}  closed = {closed:.12e}  residual {:.2e}", relative_residual(direct, closed));
    }
    println!("{:?}", warnaar_matrix(a, b, &[Complex64::new(0.9, 0.1), Complex64::new(-0.3, 1.1)], &nome)?);
    Ok(())
}
