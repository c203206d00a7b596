//! Central finite differences, the independent oracle every analytic
//! gradient in this crate is tested against.

use crate::error::{Error, Result};

/// Default step for the gradient checks; the acceptance suite compares at
/// 1e-5 relative tolerance, and central differences at h = 1e-5 leave
/// roughly three orders of margin for smooth objectives at unit scale.
pub const DEFAULT_STEP: f64 = 1e-5;

/// Central-difference gradient of a scalar field:
/// component i is `(f(p + h eᵢ) − f(p − h eᵢ)) / (2h)`.
///
/// Errors with `NonFiniteValue` if any evaluation is NaN or infinite.
pub fn finite_diff_gradient<F>(f: F, point: &[f64], h: f64) -> Result<Vec<f64>>
where
    F: Fn(&[f64]) -> f64,
{
    if h <= 0.0 {
        return Err(Error::NonFiniteValue("finite_diff_gradient step"));
    }
    let mut p = point.to_vec();
    let mut grad = Vec::with_capacity(point.len());
    for i in 0..point.len() {
        let orig = p[i];
        p[i] = orig + h;
        let fp = f(&p);
        p[i] = orig - h;
        let fm = f(&p);
        p[i] = orig;
        if !fp.is_finite() || !fm.is_finite() {
            return Err(Error::NonFiniteValue("finite_diff_gradient evaluation"));
        }
        grad.push((fp - fm) / (2.0 * h));
    }
    Ok(grad)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::matrix::vec_norm;

    #[test]
    fn quadratic_norm_gradient() {
        // f(p) = ||p||²/2 at (1,2) → (1,2)
        let g = finite_diff_gradient(|p| 0.5 * p.iter().map(|x| x * x).sum::<f64>(), &[1.0, 2.0], 1e-5)
            .unwrap();
        assert!((g[0] - 1.0).abs() < 1e-8);
        assert!((g[1] - 2.0).abs() < 1e-8);
    }

    #[test]
    fn constant_field_has_zero_gradient() {
        let g = finite_diff_gradient(|_| 3.25, &[0.3, -0.7, 2.0], 1e-5).unwrap();
        assert!(vec_norm(&g) == 0.0);
    }

    #[test]
    fn non_finite_evaluation_is_reported() {
        // sqrt goes NaN on the negative side of the stencil
        let res = finite_diff_gradient(|p| p[0].sqrt(), &[0.0], 1e-5);
        assert!(res.is_err());
    }
}
