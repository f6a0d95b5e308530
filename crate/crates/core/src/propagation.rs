//! Pulse propagation through a thin dispersive slab, front detection, and
//! front / group velocity measurement.

use num_complex::Complex64;

use crate::causality::{causality_verdict, CausalityReport};
use crate::error::{Error, Result};
use crate::grid::{FrequencyGrid, SampledSignal, SampledSpectrum, TimeGrid};
use crate::media::{IndexModel, SPEED_OF_LIGHT};
use crate::spectral::{forward_transform, inverse_transform};

/// Fraction of the peak below which samples count as zero for the
/// wraparound guard and support detection.
pub const SUPPORT_FLOOR: f64 = 1e-9;

/// A plane slab of thickness `delta` (cm) filled with one medium. The
/// transmission coefficient is taken as unity; the full interface factor
/// has no bearing on causality and is out of scope.
pub struct SlabConfig<'a> {
    thickness: f64,
    medium: &'a dyn IndexModel,
}

impl<'a> SlabConfig<'a> {
    pub fn new(
        thickness_cm: f64,
        medium: &'a dyn IndexModel,
        transmission_unity: bool,
    ) -> Result<Self> {
        if !thickness_cm.is_finite() || thickness_cm <= 0.0 {
            return Err(Error::InvalidInput(format!(
                "slab thickness must be positive, got {thickness_cm}"
            )));
        }
        if !transmission_unity {
            return Err(Error::InvalidInput(
                "only unity transmission is modeled; the 2/(n+1) interface factor is out of scope"
                    .into(),
            ));
        }
        Ok(Self {
            thickness: thickness_cm,
            medium,
        })
    }

    pub fn thickness(&self) -> f64 {
        self.thickness
    }

    pub fn medium(&self) -> &dyn IndexModel {
        self.medium
    }

    /// Light transit time `delta / c` in seconds.
    pub fn vacuum_transit(&self) -> f64 {
        self.thickness / SPEED_OF_LIGHT
    }
}

/// Slab transfer function `G(w) = exp(i w n(w) delta / c)` on a two-sided
/// grid, with `n` extended to negative frequencies Hermitian-symmetrically.
pub fn slab_transfer(config: &SlabConfig, grid: &FrequencyGrid) -> Result<SampledSpectrum> {
    transfer_with_shift(config, grid, false)
}

/// The `delta/c`-shifted transfer function `exp(i w [n(w) - 1] delta / c)`,
/// whose impulse response must vanish for all negative times.
pub fn shifted_slab_transfer(config: &SlabConfig, grid: &FrequencyGrid) -> Result<SampledSpectrum> {
    transfer_with_shift(config, grid, true)
}

fn transfer_with_shift(
    config: &SlabConfig,
    grid: &FrequencyGrid,
    shifted: bool,
) -> Result<SampledSpectrum> {
    if !grid.is_two_sided() {
        return Err(Error::NotTwoSided(
            "slab transfer functions live on two-sided grids".into(),
        ));
    }
    let scale = config.thickness / SPEED_OF_LIGHT;
    let offset = if shifted { 1.0 } else { 0.0 };
    let values = grid
        .omegas()
        .map(|w| {
            let n = config.medium.index_hermitian(w)?;
            let exponent = Complex64::new(0.0, 1.0) * w * (n - offset) * scale;
            Ok(exponent.exp())
        })
        .collect::<Result<Vec<_>>>()?;
    SampledSpectrum::new(*grid, values)
}

/// Output of [`propagate_pulse`].
#[derive(Debug, Clone)]
pub struct PropagationResult {
    pub output: SampledSignal,
    pub transfer: SampledSpectrum,
    /// First time the output emerges from the noise floor (s).
    pub front_arrival: f64,
    /// Time of the output's largest |value| (s).
    pub peak_arrival: f64,
    /// Light transit time `delta / c` (s).
    pub vacuum_front_time: f64,
    /// Largest pre-front residual of the matched vacuum run.
    pub noise_floor: f64,
    /// Front and peak times of the input, for velocity measurements.
    pub input_front: f64,
    pub input_peak: f64,
}

/// Propagate a front-limited pulse through the slab.
///
/// The input must be padded: both grid ends below `1e-9` of the peak, and
/// the grid at least twice the signal support plus the slab delay, so that
/// circular convolution cannot fake precursors.
pub fn propagate_pulse(input: &SampledSignal, config: &SlabConfig) -> Result<PropagationResult> {
    let grid = input.grid();
    let n = grid.count();
    let peak = input.peak();
    if peak == 0.0 {
        return Err(Error::InvalidInput(
            "input signal is identically zero".into(),
        ));
    }
    let floor = SUPPORT_FLOOR * peak;
    let values = input.values();
    if values[0].abs() > floor || values[n - 1].abs() > floor {
        return Err(Error::Wraparound(format!(
            "input has not decayed at the grid ends ({:.2e} / {:.2e} of peak)",
            values[0].abs() / peak,
            values[n - 1].abs() / peak
        )));
    }
    let first = values.iter().position(|v| v.abs() > floor).unwrap();
    let last = values.iter().rposition(|v| v.abs() > floor).unwrap();
    let support = last - first + 1;
    let delay_bins = (config.vacuum_transit() / grid.dt()).ceil() as usize;
    if 2 * support + delay_bins > n {
        return Err(Error::Wraparound(format!(
            "signal support of {support} samples plus a delay of {delay_bins} needs \
             a grid of at least {} samples, have {n}",
            2 * support + delay_bins
        )));
    }

    let spectrum = forward_transform(input)?;
    let transfer = slab_transfer(config, spectrum.grid())?;

    let multiply = |a: &SampledSpectrum, b: &[Complex64]| -> Result<SampledSpectrum> {
        let vals = a.values().iter().zip(b).map(|(x, y)| x * y).collect();
        Ok(SampledSpectrum::new(*a.grid(), vals)?.with_time_origin(a.time_origin()))
    };

    let input_front = detect_front(input, 0.0);
    let input_peak_idx = argmax_abs(values);
    let input_peak = grid.time_at(input_peak_idx);

    // matched vacuum run calibrates the numerical noise floor
    let transit = config.vacuum_transit();
    let vacuum: Vec<Complex64> = spectrum
        .grid()
        .omegas()
        .map(|w| Complex64::from_polar(1.0, w * transit))
        .collect();
    let vacuum_out = inverse_transform(&multiply(&spectrum, &vacuum)?)?;
    let vacuum_front = input_front + transit;
    let noise_floor = vacuum_out
        .grid()
        .times()
        .zip(vacuum_out.values())
        .filter(|(t, _)| *t < vacuum_front)
        .map(|(_, v)| v.abs())
        .fold(0.0, f64::max);

    let output = inverse_transform(&multiply(&spectrum, transfer.values())?)?;
    let front_arrival = detect_front(&output, noise_floor);
    let peak_arrival = output.grid().time_at(argmax_abs(output.values()));

    Ok(PropagationResult {
        output,
        transfer,
        front_arrival,
        peak_arrival,
        vacuum_front_time: transit,
        noise_floor,
        input_front,
        input_peak,
    })
}

fn argmax_abs(values: &[f64]) -> usize {
    let mut best = 0;
    let mut best_val = 0.0;
    for (i, v) in values.iter().enumerate() {
        if v.abs() > best_val {
            best_val = v.abs();
            best = i;
        }
    }
    best
}

/// Earliest time at which the signal emerges from the noise floor:
/// the first sample with `|value| > max(10 * noise_floor, 1e-9 * peak)`.
/// Returns `+inf` for an all-zero signal.
pub fn detect_front(signal: &SampledSignal, noise_floor: f64) -> f64 {
    let peak = signal.peak();
    let threshold = (10.0 * noise_floor).max(SUPPORT_FLOOR * peak);
    for (t, v) in signal.grid().times().zip(signal.values()) {
        if v.abs() > threshold {
            return t;
        }
    }
    f64::INFINITY
}

/// Measured front and peak-transit velocities (cm/s). Values above c or
/// negative are reported as-is; only the front is constrained by causality.
#[derive(Debug, Clone, Copy)]
pub struct Velocities {
    pub front_velocity: f64,
    pub peak_transit_velocity: f64,
    /// Set when the front delay undercuts `delta/c` by more than the
    /// two-sample quantization slack, which a causal chain cannot do.
    pub causality_violation: bool,
}

pub fn measure_velocities(
    result: &PropagationResult,
    input_front: f64,
    input_peak: f64,
    config: &SlabConfig,
) -> Velocities {
    let dt = result.output.grid().dt();
    let front_delay = result.front_arrival - input_front;
    let peak_delay = result.peak_arrival - input_peak;
    Velocities {
        front_velocity: config.thickness / front_delay,
        peak_transit_velocity: config.thickness / peak_delay,
        causality_violation: front_delay < config.vacuum_transit() - 2.0 * dt,
    }
}

/// Group velocity `c / (Re n + w dRe n/dw)` in cm/s, by central finite
/// difference with step `1e-6 w` (one-sided at `w = 0`). No clamping:
/// anomalous bands legitimately produce values above c or below zero.
pub fn group_velocity(medium: &dyn IndexModel, omega: f64) -> Result<f64> {
    let (n_re, slope) = if omega == 0.0 {
        let h = 1e-6 * medium.reference_scale();
        let n0 = medium.index_at(0.0)?.re;
        let n1 = medium.index_at(h)?.re;
        (n0, (n1 - n0) / h)
    } else {
        let h = 1e-6 * omega.abs();
        let n = medium.index_hermitian(omega)?.re;
        let np = medium.index_hermitian(omega + h)?.re;
        let nm = medium.index_hermitian(omega - h)?.re;
        (n, (np - nm) / (2.0 * h))
    };
    Ok(SPEED_OF_LIGHT / (n_re + omega * slope))
}

/// Build the `delta/c`-shifted slab kernel on the grid implied by the time
/// window and run the causality verdict on it. For any medium whose index
/// approaches 1 at high frequency the kernel is causal; media with
/// `n(inf) < 1` leak response into negative times.
pub fn relativistic_causality_check(
    config: &SlabConfig,
    grid: &TimeGrid,
) -> Result<CausalityReport> {
    let fgrid = grid.frequency_grid();
    let shifted = shifted_slab_transfer(config, &fgrid)?;
    causality_verdict(&shifted)
}

/// Built-in demonstration configuration: a sharp-front tone burst with the
/// carrier inside the anomalous band of a strong single resonance, where
/// the group velocity exceeds c while the front still arrives at exactly
/// the light transit time.
pub mod demo {
    use super::*;
    use crate::media::{LorentzMedium, Resonance};

    pub const GRID_COUNT: usize = 1 << 15;
    pub const WINDOW: f64 = 1056.0;
    pub const CARRIER: f64 = 1.6;
    pub const ENVELOPE_SIGMA: f64 = 33.0;
    pub const ENVELOPE_PEAK_OFFSET: f64 = 180.0;
    pub const FRONT_INDEX: usize = 2048;
    pub const DELAY_BINS: usize = 93;

    pub fn medium() -> LorentzMedium {
        LorentzMedium::new(vec![Resonance::new(1.0, 0.1, 1.0)], 2.0)
            .expect("demo medium parameters are valid")
    }

    pub fn time_grid() -> TimeGrid {
        TimeGrid::centered(WINDOW / GRID_COUNT as f64, GRID_COUNT)
            .expect("demo grid parameters are valid")
    }

    /// Slab thickness in cm; the light transit time is an exact number of
    /// samples so the vacuum run is a pure circular shift.
    pub fn thickness_cm() -> f64 {
        DELAY_BINS as f64 * time_grid().dt() * SPEED_OF_LIGHT
    }

    pub fn pulse() -> SampledSignal {
        let grid = time_grid();
        let t_start = grid.time_at(FRONT_INDEX);
        SampledSignal::from_fn(grid, |t| {
            let s = t - t_start;
            if s <= 0.0 {
                0.0
            } else {
                (CARRIER * s).sin()
                    * (-(s - ENVELOPE_PEAK_OFFSET) * (s - ENVELOPE_PEAK_OFFSET)
                        / (2.0 * ENVELOPE_SIGMA * ENVELOPE_SIGMA))
                        .exp()
            }
        })
        .expect("demo pulse is finite")
    }
}
