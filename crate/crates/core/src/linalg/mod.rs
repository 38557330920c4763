//! Banded and cyclic-banded direct solvers, and fixed-point iteration.

mod banded;

pub use banded::{banded_solve, BandedMatrix, Factorization};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LinalgError {
    #[error("singular matrix: zero pivot at row {row}")]
    Singular { row: usize },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("matrix is not strictly diagonally dominant at row {row}")]
    NotDominant { row: usize },
    #[error("fixed-point iteration did not converge after {iterations} iterations (last update {residual:e})")]
    NoConvergence { residual: f64, iterations: usize },
}

pub const FIXED_POINT_TOL: f64 = 1e-12;
pub const FIXED_POINT_MAX_ITER: usize = 100;

/// Iterate `x ← map(x)` until the max-norm update is at most `tol`.
/// Returns the last iterate and the number of map evaluations.
pub fn fixed_point<E, F>(
    mut map: F,
    x0: &[f64],
    tol: f64,
    max_iter: usize,
) -> Result<(Vec<f64>, usize), E>
where
    F: FnMut(&[f64]) -> Result<Vec<f64>, E>,
    E: From<LinalgError>,
{
    let mut x = x0.to_vec();
    let mut residual = f64::INFINITY;
    for k in 1..=max_iter {
        let next = map(&x)?;
        if next.len() != x.len() {
            return Err(LinalgError::Dimension(format!(
                "map returned length {} for input length {}",
                next.len(),
                x.len()
            ))
            .into());
        }
        residual = next
            .iter()
            .zip(&x)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        x = next;
        if residual <= tol {
            return Ok((x, k));
        }
        if !residual.is_finite() {
            break;
        }
    }
    Err(LinalgError::NoConvergence { residual, iterations: max_iter }.into())
}

/// Max-norm of a slice.
pub fn norm_inf(x: &[f64]) -> f64 {
    x.iter().fold(0.0, |m, v| m.max(v.abs()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_converges_at_once() {
        let (x, k) = fixed_point(|x: &[f64]| Ok::<_, LinalgError>(x.to_vec()), &[1.0, 2.0], 1e-12, 100).unwrap();
        assert_eq!(k, 1);
        assert_eq!(x, vec![1.0, 2.0]);
    }

    #[test]
    fn babylonian_sqrt2() {
        let (x, _) = fixed_point(
            |x: &[f64]| Ok::<_, LinalgError>(vec![(x[0] + 2.0 / x[0]) / 2.0]),
            &[1.0],
            FIXED_POINT_TOL,
            FIXED_POINT_MAX_ITER,
        )
        .unwrap();
        assert!((x[0] - 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn divergence_reports_residual() {
        let err = fixed_point(|x: &[f64]| Ok::<_, LinalgError>(vec![2.0 * x[0] + 1.0]), &[1.0], 1e-12, 10)
            .unwrap_err();
        assert!(matches!(err, LinalgError::NoConvergence { iterations: 10, residual } if residual > 1.0));
    }
}
