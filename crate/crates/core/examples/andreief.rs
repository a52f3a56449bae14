//! Andreief's identity for a discrete measure: the determinant of moments
//! equals the Cauchy-Binet sum over increasing point tuples.

use elliptic_selberg::detkit::{andreief_lhs, andreief_rhs, DiscreteMeasure, Handle};
use elliptic_selberg::elliptic::theta;
use elliptic_selberg::reduce::relative_residual;
use elliptic_selberg::{Complex64, Nome, Result};

fn main() -> Result<()> {
    let nome = Nome::from_polar(0.2, 0.3, 0.45, 1.1)?;
    let points: Vec<Complex64> = (0..7).map(|k| Complex64::from_polar(0.7 + 0.1 * k as f64, 0.9 * k as f64)).collect();
    let weights: Vec<Complex64> = (0..7).map(|k| Complex64::from_polar(1.0 / (1.0 + k as f64), -0.5 * k as f64)).collect();
    let mu = DiscreteMeasure::new(points, weights)?;

    for n in 1..=4 {
        let fs: Vec<Handle> = (0..n).map(|j| Box::new(move |x: Complex64| Ok(x.powi(j))) as Handle).collect();
        let gs: Vec<Handle> = (0..n)
            .map(|j| {
                let alpha = Complex64::from_polar(0.5, 0.7 * j as f64);
                Box::new(move |x: Complex64| theta(alpha * x, &nome)) as Handle
            })
            .collect();
        let lhs = andreief_lhs(&fs, &gs, &mu)?;
        let rhs = andreief_rhs(&fs, &gs, &mu)?;
        println!("n = {n}: {lhs:.12e} vs {rhs:.12e}  residual {:.2e}", relative_residual(lhs, rhs));
    }
    Ok(())
}
