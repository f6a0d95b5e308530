//! Measurability ratio for the predicted faster-than-c shift between
//! Casimir mirrors.
//!
//! The velocity-measurement uncertainty is `dv = c lambda / L` while the
//! predicted shift is `dc = k c alpha^2 (lambda_c / L)^4`, so
//! `dv/dc = (1/(k alpha^2)) (L/lambda_c)^3 (lambda/lambda_c)`.
//! With `k = 1e-2` and `alpha = 1/137` the coefficient evaluates to
//! 1.8769e6; the literature quotes 1.5e6 (a rounding of k). Both are
//! reported rather than silently choosing one.

use crate::error::{Error, Result};

/// Compton wavelength `hbar / (m c)` in cm.
pub const COMPTON_WAVELENGTH: f64 = 3.9e-11;
/// Default numerical prefactor of the velocity shift.
pub const DEFAULT_K: f64 = 1e-2;
/// Default fine-structure constant.
pub const DEFAULT_ALPHA: f64 = 1.0 / 137.0;
/// Coefficient as printed in the literature.
pub const PRINTED_COEFFICIENT: f64 = 1.5e6;

#[derive(Debug, Clone, Copy)]
pub struct ScharnhorstResult {
    /// `dv/dc` with the exact-arithmetic coefficient.
    pub ratio: f64,
    /// `dv/dc` with the printed 1.5e6 coefficient instead.
    pub ratio_printed: f64,
    /// Predicted relative velocity shift `dc/c = k alpha^2 (lambda_c/L)^4`.
    pub delta_c_over_c: f64,
    /// `1/(k alpha^2)` as evaluated.
    pub coefficient_exact: f64,
    /// The 1.5e6 literature value, for side-by-side reporting.
    pub coefficient_printed: f64,
}

/// Evaluate the measurability ratio for mirror separation `l_cm`.
///
/// `wavelength_cm` defaults to the Compton wavelength when `None`, which is
/// the choice behind the cubic form of the ratio.
pub fn scharnhorst_ratio(
    l_cm: f64,
    wavelength_cm: Option<f64>,
    k: f64,
    alpha: f64,
) -> Result<ScharnhorstResult> {
    if !l_cm.is_finite() || l_cm <= 0.0 {
        return Err(Error::InvalidInput(format!(
            "mirror separation must be positive, got {l_cm}"
        )));
    }
    let lambda = wavelength_cm.unwrap_or(COMPTON_WAVELENGTH);
    if lambda.is_nan() || lambda <= 0.0 || k.is_nan() || k <= 0.0 || alpha.is_nan() || alpha <= 0.0
    {
        return Err(Error::InvalidInput(
            "wavelength, k, and alpha must all be positive".into(),
        ));
    }
    let coefficient_exact = 1.0 / (k * alpha * alpha);
    let cubic = (l_cm / COMPTON_WAVELENGTH).powi(3) * (lambda / COMPTON_WAVELENGTH);
    Ok(ScharnhorstResult {
        ratio: coefficient_exact * cubic,
        ratio_printed: PRINTED_COEFFICIENT * cubic,
        delta_c_over_c: k * alpha * alpha * (COMPTON_WAVELENGTH / l_cm).powi(4),
        coefficient_exact,
        coefficient_printed: PRINTED_COEFFICIENT,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coefficient_arithmetic() {
        let r = scharnhorst_ratio(COMPTON_WAVELENGTH, None, DEFAULT_K, DEFAULT_ALPHA).unwrap();
        // 137^2 * 100 = 1.8769e6 exactly
        assert!((r.coefficient_exact - 1.8769e6).abs() < 1.0);
        assert_eq!(r.coefficient_printed, 1.5e6);
        // at L = lambda_c the ratio reduces to the bare coefficients
        assert!((r.ratio - r.coefficient_exact).abs() < 1e-6 * r.coefficient_exact);
        assert!((r.ratio_printed - 1.5e6).abs() < 1e-6 * 1.5e6);
    }

    #[test]
    fn cubic_scaling() {
        let a = scharnhorst_ratio(1e-6, None, DEFAULT_K, DEFAULT_ALPHA).unwrap();
        let b = scharnhorst_ratio(2e-6, None, DEFAULT_K, DEFAULT_ALPHA).unwrap();
        assert!((b.ratio / a.ratio - 8.0).abs() < 1e-12);
    }

    #[test]
    fn quartic_shift_scaling() {
        let a = scharnhorst_ratio(1e-4, None, DEFAULT_K, DEFAULT_ALPHA).unwrap();
        let b = scharnhorst_ratio(2e-4, None, DEFAULT_K, DEFAULT_ALPHA).unwrap();
        assert!((a.delta_c_over_c / b.delta_c_over_c - 16.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_nonpositive_separation() {
        assert!(scharnhorst_ratio(0.0, None, DEFAULT_K, DEFAULT_ALPHA).is_err());
        assert!(scharnhorst_ratio(-1.0, None, DEFAULT_K, DEFAULT_ALPHA).is_err());
    }
}
