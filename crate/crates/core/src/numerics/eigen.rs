//! Largest-eigenvalue estimation for symmetric PSD matrices by power
//! iteration, plus the spectral-shift trick for the smallest eigenvalue.

use crate::error::{Error, Result};
use crate::numerics::matrix::vec_norm;
use crate::numerics::Matrix;

const MAX_ITER: usize = 10_000;
const REL_TOL: f64 = 1e-10;

/// Largest eigenvalue of a symmetric PSD matrix.
///
/// Power iteration from the normalized all-ones vector, with one
/// deterministic re-randomized restart if the start vector turns out to be
/// (numerically) orthogonal to the dominant eigenspace. Stops when the
/// Rayleigh quotient stabilizes to relative tolerance 1e-10; errors with
/// `NoConvergence` after 10 000 iterations.
pub fn max_eigenvalue(a: &Matrix) -> Result<f64> {
    let n = a.rows();
    if a.cols() != n {
        return Err(Error::DimensionMismatch(format!("max_eigenvalue: {}x{}", n, a.cols())));
    }
    if n == 0 || a.frobenius_norm() == 0.0 {
        return Ok(0.0);
    }
    let ones = vec![1.0 / (n as f64).sqrt(); n];
    match power_iterate(a, ones)? {
        Some(lambda) => Ok(lambda),
        None => {
            // Restart from a fixed pseudo-random direction. Deterministic by
            // construction so repeated runs agree bit for bit.
            let mut state = 0x9E3779B97F4A7C15u64;
            let v: Vec<f64> = (0..n)
                .map(|_| {
                    state =
                        state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                    (state >> 11) as f64 / (1u64 << 53) as f64 - 0.5
                })
                .collect();
            let norm = vec_norm(&v);
            let v = v.into_iter().map(|x| x / norm).collect();
            match power_iterate(a, v)? {
                Some(lambda) => Ok(lambda),
                // Av ≈ 0 from two independent directions: treat as the zero
                // end of the PSD spectrum.
                None => Ok(0.0),
            }
        }
    }
}

/// Runs power iteration from `v`; `Ok(None)` signals a stagnated start
/// vector (A v ≈ 0 while A ≠ 0).
fn power_iterate(a: &Matrix, mut v: Vec<f64>) -> Result<Option<f64>> {
    let scale = a.frobenius_norm();
    let mut lambda_prev = f64::NAN;
    for _ in 0..MAX_ITER {
        let w = a.mul_vec(&v)?;
        let norm = vec_norm(&w);
        if norm <= scale * 1e-300 || norm == 0.0 {
            return Ok(None);
        }
        // v is unit, so vᵀ(Av) is the Rayleigh quotient.
        let lambda: f64 = v.iter().zip(&w).map(|(x, y)| x * y).sum();
        for (vi, wi) in v.iter_mut().zip(&w) {
            *vi = wi / norm;
        }
        if lambda_prev.is_finite() && (lambda - lambda_prev).abs() <= REL_TOL * lambda.abs().max(1e-300) {
            return Ok(Some(lambda));
        }
        lambda_prev = lambda;
    }
    Err(Error::NoConvergence(MAX_ITER))
}

/// Smallest eigenvalue of a symmetric PSD matrix via the shift
/// `λ_min(A) = s − λ_max(sI − A)` with `s = λ_max(A)`. Reuses the λ_max
/// kernel; no general eigendecomposition is performed.
pub fn min_eigenvalue_spd(a: &Matrix) -> Result<f64> {
    let n = a.rows();
    let s = max_eigenvalue(a)?;
    if s == 0.0 {
        return Ok(0.0);
    }
    let mut shifted = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let v = if i == j { s - a.get(i, j) } else { -a.get(i, j) };
            shifted.set(i, j, v);
        }
    }
    let top = max_eigenvalue(&shifted)?;
    Ok((s - top).max(0.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_spectrum() {
        let a = Matrix::from_rows(&[
            vec![1.0, 0.0, 0.0],
            vec![0.0, 4.0, 0.0],
            vec![0.0, 0.0, 9.0],
        ])
        .unwrap();
        assert!((max_eigenvalue(&a).unwrap() - 9.0).abs() < 1e-6 * 9.0);
    }

    #[test]
    fn identity_has_unit_top_eigenvalue() {
        // Also exercises the restart: ones is an exact eigenvector here, so
        // the main path converges instantly; the degenerate spectrum must
        // still come out as 1.
        let a = Matrix::identity(7);
        assert!((max_eigenvalue(&a).unwrap() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn stagnating_start_vector_restarts() {
        // ones is in the null space of [[1,-1],[-1,1]]; the dominant
        // eigenvalue 2 is only reachable after the deterministic restart.
        let a = Matrix::from_rows(&[vec![1.0, -1.0], vec![-1.0, 1.0]]).unwrap();
        assert!((max_eigenvalue(&a).unwrap() - 2.0).abs() < 1e-6);
    }

    #[test]
    fn min_eigenvalue_of_diagonal() {
        let a = Matrix::from_rows(&[vec![2.0, 0.0], vec![0.0, 0.5]]).unwrap();
        assert!((min_eigenvalue_spd(&a).unwrap() - 0.5).abs() < 1e-6);
    }
}
