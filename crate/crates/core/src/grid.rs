//! Sampling grids and the sampled-signal / sampled-spectrum containers.
//!
//! Time-domain samples live on a uniform grid `t_j = t0 + j*dt`. Two-sided
//! frequency grids are laid out in monotonically increasing order
//! `omega_m = (m - count/2) * domega`, so the zero bin sits at index
//! `count/2`. For even counts the lowest bin (`-Nyquist`) has no positive
//! partner; Hermitian checks require it to be real.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Relative tolerance for the Hermitian-symmetry check on paired bins.
pub const HERMITIAN_TOL: f64 = 1e-12;

/// Relative tolerance on the imaginary part of the zero-frequency sample.
pub const ZERO_BIN_IMAG_TOL: f64 = 1e-10;

/// Uniform time grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeGrid {
    t0: f64,
    dt: f64,
    count: usize,
}

impl TimeGrid {
    pub fn new(t0: f64, dt: f64, count: usize) -> Result<Self> {
        if !dt.is_finite() || dt <= 0.0 {
            return Err(Error::InvalidGrid(format!("dt must be positive, got {dt}")));
        }
        if count < 2 {
            return Err(Error::InvalidGrid(format!(
                "count must be at least 2, got {count}"
            )));
        }
        if !t0.is_finite() {
            return Err(Error::InvalidGrid("t0 must be finite".into()));
        }
        Ok(Self { t0, dt, count })
    }

    /// Grid of `count` samples centered so that t = 0 falls on index `count/2`.
    pub fn centered(dt: f64, count: usize) -> Result<Self> {
        let half = count / 2;
        Self::new(-(half as f64) * dt, dt, count)
    }

    pub fn t0(&self) -> f64 {
        self.t0
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn time_at(&self, index: usize) -> f64 {
        self.t0 + index as f64 * self.dt
    }

    pub fn times(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.count).map(move |j| self.time_at(j))
    }

    /// Total window length `count * dt`.
    pub fn span(&self) -> f64 {
        self.count as f64 * self.dt
    }

    /// Implied frequency spacing `2*pi / (count*dt)`.
    pub fn domega(&self) -> f64 {
        2.0 * std::f64::consts::PI / self.span()
    }

    /// Nyquist angular frequency `pi / dt`.
    pub fn nyquist(&self) -> f64 {
        std::f64::consts::PI / self.dt
    }

    /// Matching two-sided frequency grid (same count, implied spacing).
    pub fn frequency_grid(&self) -> FrequencyGrid {
        FrequencyGrid::two_sided(self.domega(), self.count)
    }
}

/// Whether a frequency grid covers both signs of omega or only omega >= 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sidedness {
    TwoSided,
    OneSidedPositive,
}

/// Uniform frequency grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrequencyGrid {
    omega0: f64,
    domega: f64,
    count: usize,
    sidedness: Sidedness,
}

impl FrequencyGrid {
    /// Two-sided grid `(m - count/2) * domega`, zero bin at index `count/2`.
    pub fn two_sided(domega: f64, count: usize) -> Self {
        let half = count / 2;
        Self {
            omega0: -(half as f64) * domega,
            domega,
            count,
            sidedness: Sidedness::TwoSided,
        }
    }

    /// One-sided grid `m * domega` starting at zero.
    pub fn one_sided(domega: f64, count: usize) -> Self {
        Self {
            omega0: 0.0,
            domega,
            count,
            sidedness: Sidedness::OneSidedPositive,
        }
    }

    pub fn omega0(&self) -> f64 {
        self.omega0
    }

    pub fn domega(&self) -> f64 {
        self.domega
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn sidedness(&self) -> Sidedness {
        self.sidedness
    }

    pub fn is_two_sided(&self) -> bool {
        self.sidedness == Sidedness::TwoSided
    }

    pub fn omega_at(&self, index: usize) -> f64 {
        self.omega0 + index as f64 * self.domega
    }

    pub fn omegas(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.count).map(move |m| self.omega_at(m))
    }

    /// Index of the omega = 0 bin, if sampled.
    pub fn zero_index(&self) -> Option<usize> {
        let m = -self.omega0 / self.domega;
        let rounded = m.round();
        if (m - rounded).abs() < 1e-9 && rounded >= 0.0 && (rounded as usize) < self.count {
            Some(rounded as usize)
        } else {
            None
        }
    }

    /// Index of the bin holding `-omega_at(index)`, when it exists.
    pub fn mirror_index(&self, index: usize) -> Option<usize> {
        let zero = self.zero_index()?;
        let mirrored = 2 * zero;
        if index <= mirrored && mirrored - index < self.count {
            Some(mirrored - index)
        } else {
            None
        }
    }

    /// Largest |omega| on the grid.
    pub fn band_edge(&self) -> f64 {
        self.omegas().fold(0.0_f64, |acc, w| acc.max(w.abs()))
    }

    /// Implied time-window length `2*pi / domega`.
    pub fn time_span(&self) -> f64 {
        2.0 * std::f64::consts::PI / self.domega
    }

    /// Time grid centered on zero matching this two-sided grid.
    pub fn centered_time_grid(&self) -> Result<TimeGrid> {
        if !self.is_two_sided() {
            return Err(Error::NotTwoSided(
                "a centered time grid needs a two-sided spectrum".into(),
            ));
        }
        TimeGrid::centered(self.time_span() / self.count as f64, self.count)
    }

    fn approx_eq(a: f64, b: f64) -> bool {
        (a - b).abs() <= 1e-9 * (1.0 + a.abs().max(b.abs()))
    }
}

impl FrequencyGrid {
    pub fn same_grid(&self, other: &FrequencyGrid) -> bool {
        self.count == other.count
            && self.sidedness == other.sidedness
            && Self::approx_eq(self.omega0, other.omega0)
            && Self::approx_eq(self.domega, other.domega)
    }
}

/// Real-valued samples on a [`TimeGrid`].
#[derive(Debug, Clone)]
pub struct SampledSignal {
    grid: TimeGrid,
    values: Vec<f64>,
}

impl SampledSignal {
    pub fn new(grid: TimeGrid, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.count() {
            return Err(Error::GridMismatch(format!(
                "signal has {} values for a grid of {} samples",
                values.len(),
                grid.count()
            )));
        }
        if let Some(index) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        Ok(Self { grid, values })
    }

    /// Build from a function of time evaluated on the grid.
    pub fn from_fn(grid: TimeGrid, f: impl Fn(f64) -> f64) -> Result<Self> {
        let values = grid.times().map(f).collect();
        Self::new(grid, values)
    }

    pub fn grid(&self) -> &TimeGrid {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }

    /// Discrete L2 norm `sqrt(sum v^2 * dt)`.
    pub fn l2_norm(&self) -> f64 {
        (self.values.iter().map(|v| v * v).sum::<f64>() * self.grid.dt()).sqrt()
    }

    pub fn peak(&self) -> f64 {
        self.values.iter().fold(0.0_f64, |acc, v| acc.max(v.abs()))
    }
}

/// Complex-valued samples on a [`FrequencyGrid`].
///
/// `time_origin` records the `t0` of the signal a spectrum was computed
/// from, so the inverse transform restores the original window. Spectra
/// built directly from frequency data default to a centered window.
#[derive(Debug, Clone)]
pub struct SampledSpectrum {
    grid: FrequencyGrid,
    values: Vec<Complex64>,
    time_origin: f64,
}

impl SampledSpectrum {
    pub fn new(grid: FrequencyGrid, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != grid.count() {
            return Err(Error::GridMismatch(format!(
                "spectrum has {} values for a grid of {} bins",
                values.len(),
                grid.count()
            )));
        }
        if let Some(index) = values
            .iter()
            .position(|v| !v.re.is_finite() || !v.im.is_finite())
        {
            return Err(Error::NonFinite { index });
        }
        let time_origin = if grid.is_two_sided() {
            -((grid.count() / 2) as f64) * 2.0 * std::f64::consts::PI
                / (grid.domega() * grid.count() as f64)
        } else {
            0.0
        };
        Ok(Self {
            grid,
            values,
            time_origin,
        })
    }

    pub fn from_fn(grid: FrequencyGrid, f: impl Fn(f64) -> Complex64) -> Result<Self> {
        let values = grid.omegas().map(f).collect();
        Self::new(grid, values)
    }

    pub fn with_time_origin(mut self, t0: f64) -> Self {
        self.time_origin = t0;
        self
    }

    pub fn grid(&self) -> &FrequencyGrid {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [Complex64] {
        &mut self.values
    }

    pub fn time_origin(&self) -> f64 {
        self.time_origin
    }

    pub fn peak_magnitude(&self) -> f64 {
        self.values.iter().fold(0.0_f64, |acc, v| acc.max(v.norm()))
    }

    /// `sum |G|^2 domega`, the squared L2 norm along the real axis.
    pub fn l2_norm_sq(&self) -> f64 {
        self.values.iter().map(|v| v.norm_sqr()).sum::<f64>() * self.grid.domega()
    }

    /// Worst Hermitian-symmetry violation among paired bins, as a fraction
    /// of the peak magnitude: `G(-omega)` must equal `conj(G(omega))`.
    pub fn hermitian_deviation(&self) -> (usize, f64) {
        let peak = self.peak_magnitude();
        if peak == 0.0 {
            return (0, 0.0);
        }
        let mut worst = (0usize, 0.0f64);
        for m in 0..self.grid.count() {
            if let Some(mm) = self.grid.mirror_index(m) {
                let dev = (self.values[mm] - self.values[m].conj()).norm();
                if dev > worst.1 {
                    worst = (m, dev);
                }
            }
        }
        (worst.0, worst.1 / peak)
    }

    pub fn check_hermitian(&self) -> Result<()> {
        let (index, deviation) = self.hermitian_deviation();
        if deviation > HERMITIAN_TOL {
            return Err(Error::NotHermitian {
                index,
                omega: self.grid.omega_at(index),
                deviation,
            });
        }
        Ok(())
    }
}
