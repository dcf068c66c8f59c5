use serde::Serialize;

use crate::scalar::{Backend, Scalar};

/// Residual record of checking a claimed identity.
///
/// On exact backends `pass` means every residual is exactly zero; the float
/// magnitudes in `residuals` are then informational. In floating point
/// `pass` means `max_residual <= tolerance`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub max_residual: f64,
    pub residuals: Vec<f64>,
    pub pass: bool,
    pub tolerance: f64,
    pub backend: Backend,
}

impl VerificationReport {
    /// Builds a report from residual values of backend `S`.
    pub fn from_scalars<S: Scalar>(residuals: &[S], scale: f64, tolerance: f64) -> Self {
        let scale = if scale > 0.0 { scale } else { 1.0 };
        let mags: Vec<f64> = residuals.iter().map(|r| r.magnitude() / scale).collect();
        let max_residual = max_magnitude(&mags);
        let pass = if S::is_exact() {
            residuals.iter().all(|r| r.is_zero())
        } else {
            max_residual <= tolerance
        };
        Self {
            max_residual,
            residuals: mags,
            pass,
            tolerance,
            backend: S::BACKEND,
        }
    }

    /// Builds a float-style report from already normalized magnitudes.
    pub fn from_magnitudes(residuals: Vec<f64>, tolerance: f64, backend: Backend) -> Self {
        let max_residual = max_magnitude(&residuals);
        let pass = max_residual <= tolerance;
        Self {
            max_residual,
            residuals,
            pass,
            tolerance,
            backend,
        }
    }

    /// Merges several reports; passes only if all pass.
    pub fn combine(reports: &[VerificationReport]) -> Option<Self> {
        let first = reports.first()?;
        let residuals: Vec<f64> = reports.iter().map(|r| r.max_residual).collect();
        Some(Self {
            max_residual: max_magnitude(&residuals),
            residuals,
            pass: reports.iter().all(|r| r.pass),
            tolerance: first.tolerance,
            backend: first.backend,
        })
    }
}

/// Maximum, with any NaN/Inf entry mapped to `+∞`.
fn max_magnitude(values: &[f64]) -> f64 {
    values.iter().fold(0.0, |acc: f64, &v| {
        if v.is_finite() {
            acc.max(v)
        } else {
            f64::INFINITY
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn nan_never_passes() {
        let r = VerificationReport::from_scalars(&[Complex64::new(f64::NAN, 0.0)], 1.0, 1e-3);
        assert!(!r.pass);
        assert_eq!(r.max_residual, f64::INFINITY);
    }
}
