//! Dense complex least squares via SVD.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

/// Minimize `‖A x - y‖₂` where `A` is given row-major (`rows × cols`).
pub fn solve(rows: &[Vec<Complex64>], y: &[Complex64]) -> Option<Vec<Complex64>> {
    let m = rows.len();
    let n = rows.first()?.len();
    if m < n {
        return None;
    }
    let a = DMatrix::from_fn(m, n, |i, j| rows[i][j]);
    let b = DVector::from_column_slice(y);
    let svd = a.svd(true, true);
    let x = svd.solve(&b, 1e-15).ok()?;
    Some(x.iter().copied().collect())
}

/// Real least squares fit `y ≈ Σ_j x_j φ_j(t)`.
pub fn solve_real(rows: &[Vec<f64>], y: &[f64]) -> Option<Vec<f64>> {
    let m = rows.len();
    let n = rows.first()?.len();
    if m < n {
        return None;
    }
    let a = DMatrix::from_fn(m, n, |i, j| rows[i][j]);
    let b = DVector::from_column_slice(y);
    let x = a.svd(true, true).solve(&b, 1e-15).ok()?;
    Some(x.iter().copied().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_exact_fit() {
        let ts: Vec<f64> = (0..10).map(|i| i as f64 * 0.1).collect();
        let rows: Vec<Vec<Complex64>> = ts
            .iter()
            .map(|&t| vec![Complex64::new(1.0, 0.0), Complex64::new(t, 0.0), Complex64::new(t * t, 0.0)])
            .collect();
        let y: Vec<Complex64> = ts
            .iter()
            .map(|&t| Complex64::new(1.0 - 2.0 * t, 3.0 * t * t))
            .collect();
        let x = solve(&rows, &y).unwrap();
        assert!((x[0] - Complex64::new(1.0, 0.0)).norm() < 1e-13);
        assert!((x[1] - Complex64::new(-2.0, 0.0)).norm() < 1e-13);
        assert!((x[2] - Complex64::new(0.0, 3.0)).norm() < 1e-13);
    }
}
