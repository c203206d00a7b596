//! Symmetric positive-definite solves via Cholesky factorization.
//!
//! Every linear system in this crate is SPD by construction (Gram matrices
//! plus a strictly positive ridge), so LLᵀ without pivoting is both the
//! fastest and the most honest factorization: a non-positive pivot is a
//! contract violation, not something to paper over.

use crate::error::{Error, Result};
use crate::numerics::Matrix;

/// Solves `A X = B` for SPD `A`.
///
/// The caller guarantees `A` is symmetric to ~1e-10 relative tolerance;
/// only the lower triangle is read. Fails with `NotPositiveDefinite` if a
/// Cholesky pivot is ≤ 0, which for the systems in scope means the input
/// violated its construction.
pub fn solve_spd(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    let n = a.rows();
    if a.cols() != n {
        return Err(Error::DimensionMismatch(format!("solve_spd: A is {}x{}", n, a.cols())));
    }
    if b.rows() != n {
        return Err(Error::DimensionMismatch(format!(
            "solve_spd: A is {n}x{n}, B has {} rows",
            b.rows()
        )));
    }
    let l = cholesky(a)?;
    // L y = B, then Lᵀ x = y, column by column.
    let mut x = b.clone();
    let m = b.cols();
    for c in 0..m {
        for i in 0..n {
            let mut s = x.get(i, c);
            for k in 0..i {
                s -= l.get(i, k) * x.get(k, c);
            }
            x.set(i, c, s / l.get(i, i));
        }
        for i in (0..n).rev() {
            let mut s = x.get(i, c);
            for k in i + 1..n {
                s -= l.get(k, i) * x.get(k, c);
            }
            x.set(i, c, s / l.get(i, i));
        }
    }
    Ok(x)
}

/// Convenience wrapper for a single right-hand side.
pub fn solve_spd_vec(a: &Matrix, b: &[f64]) -> Result<Vec<f64>> {
    let x = solve_spd(a, &Matrix::col_vector(b))?;
    Ok(x.data().to_vec())
}

/// Lower-triangular Cholesky factor of an SPD matrix.
pub fn cholesky(a: &Matrix) -> Result<Matrix> {
    let n = a.rows();
    let mut l = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..=i {
            let mut s = a.get(i, j);
            for k in 0..j {
                s -= l.get(i, k) * l.get(j, k);
            }
            if i == j {
                if s <= 0.0 || !s.is_finite() {
                    return Err(Error::NotPositiveDefinite { index: i, pivot: s });
                }
                l.set(i, j, s.sqrt());
            } else {
                l.set(i, j, s / l.get(j, j));
            }
        }
    }
    Ok(l)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_solve_returns_rhs() {
        // A = I₂, B = [[3],[4]] → X = [[3],[4]]
        let a = Matrix::identity(2);
        let b = Matrix::from_vec(2, 1, vec![3.0, 4.0]).unwrap();
        let x = solve_spd(&a, &b).unwrap();
        assert_eq!(x.data(), &[3.0, 4.0]);
    }

    #[test]
    fn diagonal_solve() {
        // A = diag(2,1), B = [[2],[3]] → X = [[1],[3]]
        let a = Matrix::from_rows(&[vec![2.0, 0.0], vec![0.0, 1.0]]).unwrap();
        let b = Matrix::from_vec(2, 1, vec![2.0, 3.0]).unwrap();
        let x = solve_spd(&a, &b).unwrap();
        assert!((x.get(0, 0) - 1.0).abs() < 1e-15);
        assert!((x.get(1, 0) - 3.0).abs() < 1e-15);
    }

    #[test]
    fn random_spd_residual_within_contract() {
        // A = MᵀM + I with deterministic pseudo-random M, residual ≤ 1e-8 (1 + ||B||_F).
        let mut state = 0x243F6A8885A308D3u64;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 11) as f64 / (1u64 << 53) as f64 - 0.5
        };
        let n = 5;
        let m = Matrix::from_vec(n, n, (0..n * n).map(|_| next()).collect()).unwrap();
        let a = m.tr_mul(&m).unwrap().add(&Matrix::identity(n)).unwrap();
        let b = Matrix::from_vec(n, 2, (0..n * 2).map(|_| next()).collect()).unwrap();
        let x = solve_spd(&a, &b).unwrap();
        let resid = a.mul(&x).unwrap().sub(&b).unwrap().frobenius_norm();
        assert!(resid <= 1e-8 * (1.0 + b.frobenius_norm()), "residual {resid}");
    }

    #[test]
    fn indefinite_matrix_reports_pivot() {
        let a = Matrix::from_rows(&[vec![1.0, 2.0], vec![2.0, 1.0]]).unwrap();
        match solve_spd(&a, &Matrix::identity(2)) {
            Err(Error::NotPositiveDefinite { index, pivot }) => {
                assert_eq!(index, 1);
                assert!(pivot <= 0.0);
            }
            other => panic!("expected NotPositiveDefinite, got {other:?}"),
        }
    }
}
