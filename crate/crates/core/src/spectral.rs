//! Fourier transforms with continuum scaling.
//!
//! Conventions: forward kernel `e^{+i omega t}` with a factor `dt`, inverse
//! kernel `e^{-i omega t}` with a factor `domega / 2 pi`, so sampled values
//! approximate the continuum integrals
//! `G(omega) = Int g(t) e^{+i omega t} dt` and
//! `g(t) = (1/2 pi) Int G(omega) e^{-i omega t} domega`.

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::error::{Error, Result};
use crate::grid::{
    FrequencyGrid, SampledSignal, SampledSpectrum, Sidedness, TimeGrid, ZERO_BIN_IMAG_TOL,
};

/// Wrapped (FFT-order) frequency for bin `k` of an `n`-bin grid.
fn wrapped_omega(k: usize, n: usize, domega: f64) -> f64 {
    let half = n / 2;
    let m = (k + half) % n;
    (m as f64 - half as f64) * domega
}

/// Raw engine: continuum-scaled transform of complex time samples in natural
/// order, returning spectrum values in monotonic frequency order.
pub(crate) fn forward_complex(values: &[Complex64], t0: f64, dt: f64) -> Vec<Complex64> {
    let n = values.len();
    let half = n / 2;
    let domega = 2.0 * std::f64::consts::PI / (n as f64 * dt);
    let mut buf = values.to_vec();
    FftPlanner::new().plan_fft_inverse(n).process(&mut buf);
    let mut out = vec![Complex64::default(); n];
    for (k, b) in buf.iter().enumerate() {
        let w = wrapped_omega(k, n, domega);
        let m = (k + half) % n;
        out[m] = b * Complex64::from_polar(dt, w * t0);
    }
    out
}

/// Raw engine: inverse of [`forward_complex`], monotonic frequency order in,
/// complex time samples in natural order out.
pub(crate) fn inverse_complex(values: &[Complex64], t0: f64, domega: f64) -> Vec<Complex64> {
    let n = values.len();
    let half = n / 2;
    let mut buf = vec![Complex64::default(); n];
    for (k, b) in buf.iter_mut().enumerate() {
        let m = (k + half) % n;
        let w = wrapped_omega(k, n, domega);
        *b = values[m] * Complex64::from_polar(1.0, -w * t0);
    }
    FftPlanner::new().plan_fft_forward(n).process(&mut buf);
    let scale = domega / (2.0 * std::f64::consts::PI);
    for b in &mut buf {
        *b *= scale;
    }
    buf
}

/// Transform a real time-domain signal to its two-sided spectrum.
pub fn forward_transform(signal: &SampledSignal) -> Result<SampledSpectrum> {
    let grid = signal.grid();
    let complex: Vec<Complex64> = signal
        .values()
        .iter()
        .map(|&v| Complex64::new(v, 0.0))
        .collect();
    let out = forward_complex(&complex, grid.t0(), grid.dt());
    let spectrum = SampledSpectrum::new(grid.frequency_grid(), out)?;
    Ok(spectrum.with_time_origin(grid.t0()))
}

/// Transform a two-sided Hermitian spectrum back to a real signal.
///
/// Rejects non-Hermitian input, naming the worst-offending bin. On grids
/// with an even bin count the lowest (negative-Nyquist) bin has no positive
/// partner; its imaginary part is a band-truncation artifact of the sampled
/// function and is discarded rather than policed.
pub fn inverse_transform(spectrum: &SampledSpectrum) -> Result<SampledSignal> {
    let grid = spectrum.grid();
    if !grid.is_two_sided() {
        return Err(Error::NotTwoSided(
            "inverse transform needs a two-sided spectrum".into(),
        ));
    }
    spectrum.check_hermitian()?;
    let n = grid.count();
    let dt = grid.time_span() / n as f64;
    let t0 = spectrum.time_origin();
    let mut values = spectrum.values().to_vec();
    for (m, v) in values.iter_mut().enumerate() {
        if grid.mirror_index(m).is_none() {
            *v = Complex64::new(v.re, 0.0);
        }
    }
    let buf = inverse_complex(&values, t0, grid.domega());
    let values: Vec<f64> = buf.iter().map(|c| c.re).collect();
    SampledSignal::new(TimeGrid::new(t0, dt, n)?, values)
}

/// Extend a one-sided spectrum to a two-sided one via `G(-w) = conj(G(w))`.
///
/// The zero-frequency sample is forced real; a significant imaginary part
/// there is an error, since it would make the time response complex.
pub fn hermitian_extend(positive_half: &SampledSpectrum) -> Result<SampledSpectrum> {
    let grid = positive_half.grid();
    if grid.sidedness() != Sidedness::OneSidedPositive {
        return Err(Error::NotTwoSided(
            "hermitian_extend expects a one-sided-positive spectrum".into(),
        ));
    }
    if grid.omega0() != 0.0 {
        return Err(Error::InvalidGrid(format!(
            "one-sided grid must start at omega = 0, got {}",
            grid.omega0()
        )));
    }
    let m = grid.count();
    if m < 2 {
        return Err(Error::InvalidGrid(
            "need at least two positive-frequency bins to extend".into(),
        ));
    }
    let vals = positive_half.values();
    let peak = positive_half.peak_magnitude();
    let zero = vals[0];
    if peak > 0.0 && zero.im.abs() > ZERO_BIN_IMAG_TOL * peak {
        return Err(Error::ComplexAtZero(zero.im.abs() / peak));
    }
    let count = 2 * m - 1;
    let mut out = vec![Complex64::default(); count];
    out[m - 1] = Complex64::new(zero.re, 0.0);
    for k in 1..m {
        out[m - 1 + k] = vals[k];
        out[m - 1 - k] = vals[k].conj();
    }
    SampledSpectrum::new(FrequencyGrid::two_sided(grid.domega(), count), out)
}

/// Relative Parseval residual
/// `| Int |g|^2 dt - (1/2 pi) Int |G|^2 domega | / Int |g|^2 dt` (0/0 = 0).
pub fn parseval_residual(signal: &SampledSignal, spectrum: &SampledSpectrum) -> Result<f64> {
    let tg = signal.grid();
    let fg = spectrum.grid();
    if fg.count() != tg.count() {
        return Err(Error::GridMismatch(format!(
            "signal has {} samples, spectrum {} bins",
            tg.count(),
            fg.count()
        )));
    }
    let implied = tg.domega();
    if (fg.domega() - implied).abs() > 1e-9 * implied {
        return Err(Error::GridMismatch(format!(
            "spectrum spacing {} does not match the signal's implied {}",
            fg.domega(),
            implied
        )));
    }
    let time_norm = signal.values().iter().map(|v| v * v).sum::<f64>() * tg.dt();
    let freq_norm = spectrum.l2_norm_sq() / (2.0 * std::f64::consts::PI);
    if time_norm == 0.0 && freq_norm == 0.0 {
        return Ok(0.0);
    }
    if time_norm == 0.0 {
        return Ok(f64::INFINITY);
    }
    Ok((time_norm - freq_norm).abs() / time_norm)
}
