//! Hilbert transforms on a two-sided uniform grid.
//!
//! Two independent methods are computed and cross-validated on every call:
//! a principal-value quadrature that skips the singular bin and corrects it
//! with the local odd-symmetry (three-point derivative) term, and an FFT
//! method that projects onto the causal half-line and transforms back.
//! Both share a band-edge prefit against the causal reference kernel so
//! that slowly decaying inputs do not poison the truncated integrals.

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::error::{Error, Result};
use crate::grid::FrequencyGrid;
use crate::spectral::{forward_complex, inverse_complex};

use super::tail::{kernel, lstsq, HILBERT_A_FACTOR};

/// Which Plemelj relation to apply.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HilbertDirection {
    /// `G_r(w) = (P/pi) Int G_i(nu) / (nu - w) dnu`
    RealFromImag,
    /// `G_i(w) = -(P/pi) Int G_r(nu) / (nu - w) dnu`
    ImagFromReal,
}

/// Result of a cross-validated Hilbert transform.
#[derive(Debug, Clone)]
pub struct HilbertOutput {
    /// Principal-value quadrature result (the designated primary method).
    pub values: Vec<f64>,
    /// Relative L2 disagreement between the two methods over the interior
    /// half of the band.
    pub method_disagreement: f64,
    /// Set when the methods disagree beyond 1e-2; results are then suspect.
    pub inconclusive: bool,
}

/// Methods must agree to this level before the result is flagged.
pub const METHOD_DISAGREEMENT_LIMIT: f64 = 1e-2;

/// Plain operator `H[x](w) = (P/pi) Int x(nu)/(nu - w) dnu` by
/// singular-bin-skipping quadrature with the local derivative correction.
pub(crate) fn hilbert_core_pv(values: &[f64], domega: f64) -> Vec<f64> {
    let n = values.len();
    let sums = toeplitz_reciprocal_sum(values);
    let mut out = vec![0.0; n];
    for j in 0..n {
        let derivative = if j == 0 {
            (values[1] - values[0]) / domega
        } else if j == n - 1 {
            (values[n - 1] - values[n - 2]) / domega
        } else {
            (values[j + 1] - values[j - 1]) / (2.0 * domega)
        };
        out[j] = (sums[j] + derivative * domega) / std::f64::consts::PI;
    }
    out
}

/// `out_j = sum_{k != j} v_k / (k - j)` for all j, via FFT convolution.
pub(crate) fn toeplitz_reciprocal_sum(values: &[f64]) -> Vec<f64> {
    let n = values.len();
    let p = (2 * n).next_power_of_two();
    let mut planner = FftPlanner::new();
    let fft = planner.plan_fft_forward(p);
    let ifft = planner.plan_fft_inverse(p);

    let mut v = vec![Complex64::default(); p];
    for (i, &x) in values.iter().enumerate() {
        v[i] = Complex64::new(x, 0.0);
    }
    let mut ker = vec![Complex64::default(); p];
    for m in 1..n {
        ker[m] = Complex64::new(1.0 / m as f64, 0.0);
        ker[p - m] = Complex64::new(-1.0 / m as f64, 0.0);
    }
    fft.process(&mut v);
    fft.process(&mut ker);
    for (a, b) in v.iter_mut().zip(&ker) {
        *a *= b;
    }
    ifft.process(&mut v);
    // circular convolution gives sum_k v_k f(j - k); the kernel is odd,
    // so the wanted cross-correlation is its negative
    let scale = -1.0 / p as f64;
    (0..n).map(|j| v[j].re * scale).collect()
}

/// `out_j = sum_{k: k+j >= 1} v_k / (k + j)`, via FFT cross-correlation.
pub(crate) fn hankel_reciprocal_sum(values: &[f64]) -> Vec<f64> {
    let n = values.len();
    let p = (2 * n).next_power_of_two();
    let mut planner = FftPlanner::new();
    let fft = planner.plan_fft_forward(p);
    let ifft = planner.plan_fft_inverse(p);

    let mut v = vec![Complex64::default(); p];
    for (i, &x) in values.iter().enumerate() {
        v[i] = Complex64::new(x, 0.0);
    }
    let mut ker = vec![Complex64::default(); p];
    for (m, k) in ker.iter_mut().enumerate().take(2 * n - 1).skip(1) {
        *k = Complex64::new(1.0 / m as f64, 0.0);
    }
    fft.process(&mut v);
    fft.process(&mut ker);
    for (a, b) in v.iter_mut().zip(&ker) {
        *a = a.conj() * *b;
    }
    ifft.process(&mut v);
    let scale = 1.0 / p as f64;
    (0..n).map(|j| v[j].re * scale).collect()
}

/// Plain operator `H[x]` via causal projection: inverse transform, keep the
/// positive-time half (weights 2 / 1 / 0 around t = 0), transform forward,
/// and read off the conjugate part.
pub(crate) fn hilbert_core_fft(values: &[f64], domega: f64) -> Vec<f64> {
    let n = values.len();
    let half = n / 2;
    let span = 2.0 * std::f64::consts::PI / domega;
    let dt = span / n as f64;
    let t0 = -(half as f64) * dt;
    let complex: Vec<Complex64> = values.iter().map(|&x| Complex64::new(x, 0.0)).collect();
    let mut time = inverse_complex(&complex, t0, domega);
    for (j, v) in time.iter_mut().enumerate() {
        let weight = match j.cmp(&half) {
            std::cmp::Ordering::Less => 0.0,
            std::cmp::Ordering::Equal => 1.0,
            std::cmp::Ordering::Greater => 2.0,
        };
        *v *= weight;
    }
    let spec = forward_complex(&time, t0, dt);
    spec.iter().map(|c| -c.im).collect()
}

fn edge_mask(omegas: &[f64]) -> Vec<usize> {
    let edge = omegas.iter().fold(0.0_f64, |m, w| m.max(w.abs()));
    omegas
        .iter()
        .enumerate()
        .filter(|(_, w)| w.abs() >= 0.95 * edge)
        .map(|(i, _)| i)
        .collect()
}

/// Tail handling + core dispatch for one direction and one core.
fn transform_with_tail(
    omegas: &[f64],
    values: &[f64],
    domega: f64,
    direction: HilbertDirection,
    core: fn(&[f64], f64) -> Vec<f64>,
) -> Vec<f64> {
    let a = HILBERT_A_FACTOR * domega / (2.0 * std::f64::consts::PI);
    let edge = edge_mask(omegas);
    match direction {
        HilbertDirection::RealFromImag => {
            // imaginary parts of causal spectra fall off like 1/omega;
            // fit that tail to Im K1 and add back its exact conjugate
            let im_k1: Vec<f64> = omegas.iter().map(|&w| kernel(w, a, 1).im).collect();
            let num: f64 = edge.iter().map(|&i| im_k1[i] * values[i]).sum();
            let den: f64 = edge.iter().map(|&i| im_k1[i] * im_k1[i]).sum();
            let c1 = if den > 0.0 { num / den } else { 0.0 };
            let residual: Vec<f64> = values.iter().zip(&im_k1).map(|(v, k)| v - c1 * k).collect();
            let mut out = core(&residual, domega);
            for (o, &w) in out.iter_mut().zip(omegas) {
                *o += c1 * kernel(w, a, 1).re;
            }
            out
        }
        HilbertDirection::ImagFromReal => {
            // real parts approach a constant; the constant has a vanishing
            // principal-value integral over the whole line and is dropped
            let re_k1: Vec<f64> = omegas.iter().map(|&w| kernel(w, a, 1).re).collect();
            let ones = vec![1.0; edge.len()];
            let col1: Vec<f64> = edge.iter().map(|&i| re_k1[i]).collect();
            let rhs: Vec<f64> = edge.iter().map(|&i| values[i]).collect();
            let sol = lstsq(&[ones, col1], &rhs);
            let (c0, c1) = (sol[0], sol[1]);
            let residual: Vec<f64> = values
                .iter()
                .zip(&re_k1)
                .map(|(v, k)| v - c0 - c1 * k)
                .collect();
            let core_out = core(&residual, domega);
            core_out
                .iter()
                .zip(omegas)
                .map(|(o, &w)| -o + c1 * kernel(w, a, 1).im)
                .collect()
        }
    }
}

/// Cross-validated Hilbert transform of one part of a spectrum sampled on a
/// two-sided uniform grid.
pub fn hilbert_transform(
    grid: &FrequencyGrid,
    values: &[f64],
    direction: HilbertDirection,
) -> Result<HilbertOutput> {
    if !grid.is_two_sided() {
        return Err(Error::NotTwoSided(
            "hilbert_transform needs a two-sided grid".into(),
        ));
    }
    if values.len() != grid.count() {
        return Err(Error::GridMismatch(format!(
            "{} values on a {}-bin grid",
            values.len(),
            grid.count()
        )));
    }
    if let Some(index) = values.iter().position(|v| !v.is_finite()) {
        return Err(Error::NonFinite { index });
    }
    let omegas: Vec<f64> = grid.omegas().collect();
    let pv = transform_with_tail(&omegas, values, grid.domega(), direction, hilbert_core_pv);
    let fft = transform_with_tail(&omegas, values, grid.domega(), direction, hilbert_core_fft);

    let edge = grid.band_edge();
    let mut diff_sq = 0.0;
    let mut norm_sq = 0.0;
    for ((&w, &p), &f) in omegas.iter().zip(&pv).zip(&fft) {
        if w.abs() <= edge / 2.0 {
            diff_sq += (p - f) * (p - f);
            norm_sq += p * p;
        }
    }
    let method_disagreement = if norm_sq > 0.0 {
        (diff_sq / norm_sq).sqrt()
    } else {
        diff_sq.sqrt()
    };
    Ok(HilbertOutput {
        values: pv,
        method_disagreement,
        inconclusive: method_disagreement > METHOD_DISAGREEMENT_LIMIT,
    })
}
