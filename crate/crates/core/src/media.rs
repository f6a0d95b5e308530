//! Refractive-index models in Gaussian units.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::grid::{FrequencyGrid, Sidedness};

/// Speed of light, cm/s.
pub const SPEED_OF_LIGHT: f64 = 2.9979e10;
/// Electron charge, esu.
pub const ELECTRON_CHARGE: f64 = 4.8032e-10;
/// Electron mass, g.
pub const ELECTRON_MASS: f64 = 9.1094e-28;

/// A single damped resonance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Resonance {
    pub omega: f64,
    pub gamma: f64,
    pub strength: f64,
}

impl Resonance {
    pub fn new(omega: f64, gamma: f64, strength: f64) -> Self {
        Self {
            omega,
            gamma,
            strength,
        }
    }
}

/// Damped-oscillator medium:
/// `n^2 = 1 + wp^2 sum_j f_j / (w_j^2 - w^2 - i gamma_j w)`.
///
/// Every resonance must carry positive damping and a positive frequency,
/// which keeps all poles off the real axis.
#[derive(Debug, Clone)]
pub struct LorentzMedium {
    resonances: Vec<Resonance>,
    plasma_omega_sq: f64,
}

impl LorentzMedium {
    pub fn new(resonances: Vec<Resonance>, plasma_omega_sq: f64) -> Result<Self> {
        if !plasma_omega_sq.is_finite() || plasma_omega_sq < 0.0 {
            return Err(Error::InvalidMedium(format!(
                "plasma_omega_sq must be finite and nonnegative, got {plasma_omega_sq}"
            )));
        }
        for (i, r) in resonances.iter().enumerate() {
            if !r.gamma.is_finite() || r.gamma <= 0.0 {
                return Err(Error::InvalidMedium(format!(
                    "resonance {i}: damping must be positive (gamma = {}), \
                     undamped resonances put poles on the real axis",
                    r.gamma
                )));
            }
            if !r.omega.is_finite() || r.omega <= 0.0 {
                return Err(Error::InvalidMedium(format!(
                    "resonance {i}: frequency must be positive (omega = {})",
                    r.omega
                )));
            }
            if !r.strength.is_finite() || r.strength < 0.0 {
                return Err(Error::InvalidMedium(format!(
                    "resonance {i}: oscillator strength must be nonnegative (f = {})",
                    r.strength
                )));
            }
        }
        Ok(Self {
            resonances,
            plasma_omega_sq,
        })
    }

    /// Convenience constructor from ideal-gas parameters:
    /// `wp^2 = 4 pi N e^2 / m` with `N` in cm^-3.
    pub fn plasma_omega_sq_from_density(number_density: f64) -> f64 {
        4.0 * std::f64::consts::PI * number_density * ELECTRON_CHARGE * ELECTRON_CHARGE
            / ELECTRON_MASS
    }

    pub fn resonances(&self) -> &[Resonance] {
        &self.resonances
    }

    pub fn plasma_omega_sq(&self) -> f64 {
        self.plasma_omega_sq
    }

    /// Slowest damping rate, which sets the response ring-down time.
    pub fn min_gamma(&self) -> Option<f64> {
        self.resonances
            .iter()
            .map(|r| r.gamma)
            .min_by(f64::total_cmp)
    }

    pub fn max_resonance(&self) -> Option<f64> {
        self.resonances
            .iter()
            .map(|r| r.omega)
            .max_by(f64::total_cmp)
    }
}

/// Complex refractive index of a damped-oscillator medium at real `omega`.
///
/// The square root branch is the one continuous from `n(0) > 0`; for
/// positive damping `n^2` never crosses the negative real axis, so the
/// principal branch is that continuation.
pub fn lorentz_index(medium: &LorentzMedium, omega: f64) -> Complex64 {
    let mut chi_sum = Complex64::default();
    for r in &medium.resonances {
        let denom = Complex64::new(r.omega * r.omega - omega * omega, -r.gamma * omega);
        chi_sum += r.strength / denom;
    }
    let n_sq = Complex64::new(1.0, 0.0) + medium.plasma_omega_sq * chi_sum;
    n_sq.sqrt()
}

/// High-frequency free-electron susceptibility
/// `chi(w) = -N e^2 / (m w^2)` (Gaussian units, N in cm^-3).
pub fn free_electron_chi(number_density: f64, omega: f64) -> Result<f64> {
    if omega == 0.0 {
        return Err(Error::ZeroFrequency(
            "the free-electron susceptibility is the high-frequency asymptote".into(),
        ));
    }
    Ok(-number_density * ELECTRON_CHARGE * ELECTRON_CHARGE / (ELECTRON_MASS * omega * omega))
}

/// `n = sqrt(1 + 4 pi chi)`, branch `Re n >= 0`.
pub fn chi_to_index(chi: Complex64) -> Result<Complex64> {
    let n = (Complex64::new(1.0, 0.0) + 4.0 * std::f64::consts::PI * chi).sqrt();
    if n.re == 0.0 && n.im != 0.0 {
        return Err(Error::BranchAmbiguity);
    }
    Ok(n)
}

/// `chi = (n^2 - 1) / 4 pi`, the exact inverse of [`chi_to_index`].
pub fn index_to_chi(n: Complex64) -> Complex64 {
    (n * n - Complex64::new(1.0, 0.0)) / (4.0 * std::f64::consts::PI)
}

/// Absorption coefficient `alpha = 2 n_i w / c`, in cm^-1.
pub fn absorption_coefficient(n_imag: f64, omega: f64) -> f64 {
    2.0 * n_imag * omega / SPEED_OF_LIGHT
}

/// Anything that can produce `n(omega)` for `omega >= 0`.
pub trait IndexModel {
    /// Index at nonnegative frequency.
    fn index_at(&self, omega: f64) -> Result<Complex64>;

    /// A characteristic frequency of the model, for step-size choices.
    fn reference_scale(&self) -> f64;

    /// Hermitian evaluation on the whole real line: `n(-w) = conj(n(w))`.
    fn index_hermitian(&self, omega: f64) -> Result<Complex64> {
        if omega >= 0.0 {
            self.index_at(omega)
        } else {
            Ok(self.index_at(-omega)?.conj())
        }
    }
}

impl IndexModel for LorentzMedium {
    fn index_at(&self, omega: f64) -> Result<Complex64> {
        Ok(lorentz_index(self, omega))
    }

    fn reference_scale(&self) -> f64 {
        self.max_resonance().unwrap_or(1.0)
    }
}

/// Tabulated index data at strictly increasing frequencies, as read from
/// measurement files; evaluation interpolates linearly in complex `n`
/// inside the covered range only.
#[derive(Debug, Clone)]
pub struct TabulatedIndex {
    omegas: Vec<f64>,
    n_values: Vec<Complex64>,
    source: String,
    gain_flagged: bool,
}

impl TabulatedIndex {
    /// Passive-medium constructor: rejects entries with `Im n < 0`.
    pub fn new_passive(
        omegas: Vec<f64>,
        n_values: Vec<Complex64>,
        source: impl Into<String>,
    ) -> Result<Self> {
        if let Some(i) = n_values.iter().position(|n| n.im < 0.0) {
            return Err(Error::InvalidMedium(format!(
                "entry {i} has Im n = {} < 0; gain tables must be flagged explicitly",
                n_values[i].im
            )));
        }
        Self::build(omegas, n_values, source.into(), false)
    }

    /// Constructor for explicitly flagged gain media (`Im n < 0` allowed).
    pub fn new_with_gain(
        omegas: Vec<f64>,
        n_values: Vec<Complex64>,
        source: impl Into<String>,
    ) -> Result<Self> {
        Self::build(omegas, n_values, source.into(), true)
    }

    fn build(
        omegas: Vec<f64>,
        n_values: Vec<Complex64>,
        source: String,
        gain_flagged: bool,
    ) -> Result<Self> {
        if omegas.len() != n_values.len() {
            return Err(Error::InvalidMedium(format!(
                "{} frequencies but {} index values",
                omegas.len(),
                n_values.len()
            )));
        }
        if omegas.len() < 2 {
            return Err(Error::InvalidMedium(
                "a table needs at least two entries".into(),
            ));
        }
        if omegas[0] < 0.0 {
            return Err(Error::InvalidMedium(format!(
                "frequencies must be nonnegative, got {}",
                omegas[0]
            )));
        }
        for w in omegas.windows(2) {
            if w[1] <= w[0] || w[1].is_nan() {
                return Err(Error::InvalidMedium(format!(
                    "frequencies must be strictly increasing ({} then {})",
                    w[0], w[1]
                )));
            }
        }
        Ok(Self {
            omegas,
            n_values,
            source,
            gain_flagged,
        })
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn gain_flagged(&self) -> bool {
        self.gain_flagged
    }

    pub fn omegas(&self) -> &[f64] {
        &self.omegas
    }

    pub fn n_values(&self) -> &[Complex64] {
        &self.n_values
    }

    pub fn min_omega(&self) -> f64 {
        self.omegas[0]
    }

    pub fn max_omega(&self) -> f64 {
        *self.omegas.last().unwrap()
    }
}

impl IndexModel for TabulatedIndex {
    fn index_at(&self, omega: f64) -> Result<Complex64> {
        if omega < self.min_omega() || omega > self.max_omega() {
            return Err(Error::OutsideTable {
                omega,
                min: self.min_omega(),
                max: self.max_omega(),
            });
        }
        let i = match self
            .omegas
            .binary_search_by(|probe| probe.total_cmp(&omega))
        {
            Ok(exact) => return Ok(self.n_values[exact]),
            Err(insert) => insert - 1,
        };
        let (w0, w1) = (self.omegas[i], self.omegas[i + 1]);
        let frac = (omega - w0) / (w1 - w0);
        Ok(self.n_values[i] * (1.0 - frac) + self.n_values[i + 1] * frac)
    }

    fn reference_scale(&self) -> f64 {
        self.max_omega()
    }
}

/// Index samples on a uniform one-sided grid.
#[derive(Debug, Clone)]
pub struct RefractiveIndexTable {
    grid: FrequencyGrid,
    n_values: Vec<Complex64>,
    source: String,
}

impl RefractiveIndexTable {
    pub fn grid(&self) -> &FrequencyGrid {
        &self.grid
    }

    pub fn n_values(&self) -> &[Complex64] {
        &self.n_values
    }

    pub fn source(&self) -> &str {
        &self.source
    }
}

/// Sample any index model onto a uniform one-sided grid.
pub fn sample_index(model: &dyn IndexModel, grid: &FrequencyGrid) -> Result<RefractiveIndexTable> {
    if grid.sidedness() != Sidedness::OneSidedPositive || grid.omega0() < 0.0 {
        return Err(Error::InvalidGrid(
            "index tables live on one-sided nonnegative grids".into(),
        ));
    }
    let n_values = grid
        .omegas()
        .map(|w| model.index_at(w))
        .collect::<Result<Vec<_>>>()?;
    Ok(RefractiveIndexTable {
        grid: *grid,
        n_values,
        source: "sampled".into(),
    })
}
