//! Causality machinery for dispersive optics: continuum-scaled Fourier
//! transforms, Titchmarsh-theorem checks, Kramers-Kronig dispersion
//! relations (plain and subtracted), refractive-index models, and pulse
//! propagation through thin dispersive slabs with front-velocity
//! measurement.
//!
//! Everything works in Gaussian units; lengths are cm, times s, angular
//! frequencies rad/s. Unit conversions belong at the command-line boundary.

pub mod causality;
pub mod cli;
pub mod error;
pub mod grid;
pub mod media;
pub mod propagation;
pub mod scharnhorst;
pub mod spectral;

pub use error::{Error, Result};
pub use grid::{FrequencyGrid, SampledSignal, SampledSpectrum, Sidedness, TimeGrid};
