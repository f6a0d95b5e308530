//! Dispersion (Kramers-Kronig) relations on the positive-frequency grid,
//! and the subtracted form for bounded, non-square-integrable spectra.
//!
//! The folded kernel `nu / (nu^2 - w^2)` splits into Toeplitz and Hankel
//! reciprocal sums, both evaluated by FFT convolution in a fixed order, so
//! results are reproducible bin for bin. The principal-value cell at
//! `nu = w` is skipped and restored with its local odd-symmetry correction.
//! Beyond the band edge the input is extrapolated with an algebraic tail
//! fitted at the edge and integrated in closed form.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::grid::{FrequencyGrid, SampledSpectrum, Sidedness};
use crate::media::SPEED_OF_LIGHT;

use super::hilbert::{
    hankel_reciprocal_sum, hilbert_transform, toeplitz_reciprocal_sum, HilbertDirection,
};
use super::tail::{kernel, HILBERT_A_FACTOR};

/// Band-edge decay demanded of the input before the reconstruction is
/// considered truncation-clean.
pub const TRUNCATION_DECAY: f64 = 1e-3;

/// A reconstructed dispersion counterpart.
#[derive(Debug, Clone)]
pub struct KkOutput {
    pub values: Vec<f64>,
    /// Set when the input had not decayed below `TRUNCATION_DECAY` of its
    /// peak at the band edge; edge regions are then truncation-dominated.
    pub truncation_warning: bool,
}

/// Point about which a dispersion relation is subtracted.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SubtractionPoint {
    Finite(f64),
    Infinity,
}

/// One-subtraction specification: the point and the (given) value there.
#[derive(Debug, Clone, Copy)]
pub struct SubtractionSpec {
    pub omega0: SubtractionPoint,
    pub g_at_omega0: Complex64,
}

fn require_positive_grid(grid: &FrequencyGrid, len: usize) -> Result<()> {
    if grid.sidedness() != Sidedness::OneSidedPositive || grid.omega0() != 0.0 {
        return Err(Error::InvalidGrid(
            "dispersion integrals need a one-sided grid starting at omega = 0".into(),
        ));
    }
    if len != grid.count() {
        return Err(Error::GridMismatch(format!(
            "{} values on a {}-bin grid",
            len,
            grid.count()
        )));
    }
    Ok(())
}

/// `Int_edge^inf dnu / (nu^2 (nu^2 - w^2))` for `0 <= w < edge`, the
/// closed-form tail factor shared by both relations.
fn tail_j3(w: f64, edge: f64) -> f64 {
    let x = w / edge;
    if x < 0.5 {
        // series around w = 0; the x^10 term is < 3e-4 relative here
        (1.0 + 0.6 * x * x
            + (3.0 / 7.0) * x.powi(4)
            + (1.0 / 3.0) * x.powi(6)
            + (3.0 / 11.0) * x.powi(8))
            / (3.0 * edge.powi(3))
    } else {
        (((edge + w) / (edge - w)).ln() / (2.0 * w) - 1.0 / edge) / (w * w)
    }
}

fn edge_indices(n: usize) -> std::ops::Range<usize> {
    let ne = (n / 100).max(8).min(n);
    (n - ne)..n
}

/// Shared folded core:
/// `(2/pi) P Int_0^edge nu v(nu) / (nu^2 - w^2) dnu`, with the causal-kernel
/// prefit and the `C/nu^3` extrapolated tail.
pub(crate) fn folded_dispersion(nus: &[f64], v: &[f64], dnu: f64) -> Vec<f64> {
    let n = v.len();
    let a = HILBERT_A_FACTOR * dnu / (2.0 * std::f64::consts::PI);

    // prefit the slow part of the tail to Im K1 = nu/(a^2+nu^2), whose
    // folded transform is Re K1 exactly
    let im_k1: Vec<f64> = nus.iter().map(|&w| kernel(w, a, 1).im).collect();
    let edge = edge_indices(n);
    let num: f64 = edge.clone().map(|i| im_k1[i] * v[i]).sum();
    let den: f64 = edge.clone().map(|i| im_k1[i] * im_k1[i]).sum();
    let c1 = if den > 0.0 { num / den } else { 0.0 };
    let residual: Vec<f64> = v.iter().zip(&im_k1).map(|(x, k)| x - c1 * k).collect();

    // beyond-band extrapolation of the residual as C3/nu^3
    let c3 = edge
        .clone()
        .map(|i| residual[i] * nus[i].powi(3))
        .sum::<f64>()
        / edge.len() as f64;

    let toep = toeplitz_reciprocal_sum(&residual);
    let hank = hankel_reciprocal_sum(&residual);
    let band_edge = nus[n - 1] + dnu;

    let mut out = vec![0.0; n];
    for j in 0..n {
        // the Hankel sum retains its k = j node, so restoring the skipped
        // principal-value cell needs only the local odd-symmetry term
        let cell = if j == 0 {
            // integrand v(nu)/nu is regular at 0 for odd v
            0.5 * (residual[1] - residual[0])
        } else {
            let d = if j == n - 1 {
                residual[n - 1] - residual[n - 2]
            } else {
                (residual[j + 1] - residual[j - 1]) / 2.0
            };
            0.5 * d
        };
        let integral = 0.5 * (toep[j] + hank[j]) + cell;
        out[j] = c1 * kernel(nus[j], a, 1).re
            + (2.0 / std::f64::consts::PI) * (integral + c3 * tail_j3(nus[j], band_edge));
    }
    out
}

/// Odd-folded core:
/// `(2/pi) P Int_0^edge w r(nu) / (nu^2 - w^2) dnu` with a `C/nu^2` tail.
///
/// A constant component of `r` integrates to zero over the infinite line;
/// the fitted edge constant is therefore removed and never restored, which
/// treats the beyond-band region as the constant's continuation.
fn folded_dispersion_odd(nus: &[f64], r: &[f64], dnu: f64) -> Vec<f64> {
    let n = r.len();
    let edge = edge_indices(n);
    let c0 = edge.clone().map(|i| r[i]).sum::<f64>() / edge.len() as f64;
    let residual: Vec<f64> = r.iter().map(|x| x - c0).collect();

    let c2 = edge
        .clone()
        .map(|i| residual[i] * nus[i] * nus[i])
        .sum::<f64>()
        / edge.len() as f64;

    let toep = toeplitz_reciprocal_sum(&residual);
    let hank = hankel_reciprocal_sum(&residual);
    let band_edge = nus[n - 1] + dnu;

    let mut out = vec![0.0; n];
    for j in 1..n {
        let d = if j == n - 1 {
            residual[n - 1] - residual[n - 2]
        } else {
            (residual[j + 1] - residual[j - 1]) / 2.0
        };
        let integral = 0.5 * (toep[j] - hank[j]) + 0.5 * d;
        out[j] = (2.0 / std::f64::consts::PI)
            * (integral + c2 * nus[j] * nus[j] * tail_j3(nus[j], band_edge));
    }
    // at w = 0 the integrand vanishes identically
    out[0] = 0.0;
    out
}

fn truncation_check(v: &[f64], n: usize) -> bool {
    let peak = v.iter().fold(0.0_f64, |m, x| m.max(x.abs()));
    if peak == 0.0 {
        return false;
    }
    let edge = edge_indices(n);
    let len = edge.len() as f64;
    let edge_mean = edge.map(|i| v[i].abs()).sum::<f64>() / len;
    edge_mean > TRUNCATION_DECAY * peak
}

/// `Re n(w) = 1 + (2P/pi) Int_0^inf nu Im n(nu) / (nu^2 - w^2) dnu`.
///
/// With `absorption_form`, the input is the absorption coefficient
/// `alpha(nu) = 2 n_i nu / c` and the equivalent
/// `(cP/pi) Int alpha(nu)/(nu^2 - w^2) dnu` form is used.
pub fn kk_real_from_imag(
    grid: &FrequencyGrid,
    input: &[f64],
    absorption_form: bool,
) -> Result<KkOutput> {
    require_positive_grid(grid, input.len())?;
    let nus: Vec<f64> = grid.omegas().collect();
    let v: Vec<f64> = if absorption_form {
        input
            .iter()
            .zip(&nus)
            .map(|(&alpha, &nu)| {
                if nu == 0.0 {
                    0.0
                } else {
                    alpha * SPEED_OF_LIGHT / (2.0 * nu)
                }
            })
            .collect()
    } else {
        input.to_vec()
    };
    let core = folded_dispersion(&nus, &v, grid.domega());
    Ok(KkOutput {
        values: core.iter().map(|x| 1.0 + x).collect(),
        truncation_warning: truncation_check(&v, v.len()),
    })
}

/// `Im n(w) = -(2P/pi) Int_0^inf w Re[n(nu) - 1] / (nu^2 - w^2) dnu`.
pub fn kk_imag_from_real(grid: &FrequencyGrid, n_real: &[f64]) -> Result<KkOutput> {
    require_positive_grid(grid, n_real.len())?;
    let nus: Vec<f64> = grid.omegas().collect();
    let r: Vec<f64> = n_real.iter().map(|&u| u - 1.0).collect();
    let core = folded_dispersion_odd(&nus, &r, grid.domega());
    Ok(KkOutput {
        values: core.iter().map(|x| -x).collect(),
        truncation_warning: truncation_check(&r, r.len()),
    })
}

/// One-subtraction dispersion relation for a bounded two-sided spectrum.
///
/// Reconstructs `Re G` from `Im G` and the subtraction constant. For a
/// finite subtraction point the relation
/// `Re G(w) = Re G(w0) + ((w - w0)/pi) P Int Im[(G(nu)-G(w0))/(nu-w0)] / (nu-w) dnu`
/// is evaluated with the singular bin at `w0` replaced by the derivative
/// limit. For a subtraction at infinity the folded positive-frequency form
/// is used, with the `Im G(inf)` term taken from the supplied constant
/// (zero for the usual choice).
pub fn subtracted_dispersion(g: &SampledSpectrum, spec: &SubtractionSpec) -> Result<Vec<f64>> {
    let grid = g.grid();
    if !grid.is_two_sided() {
        return Err(Error::NotTwoSided(
            "subtracted dispersion needs a two-sided spectrum".into(),
        ));
    }
    let n = grid.count();
    let omegas: Vec<f64> = grid.omegas().collect();
    let values = g.values();

    // boundedness behind the subtraction: |G|^2 <= K0 with K0 finite holds
    // for any finite sample; what must decay is H = (G - G0)/(w - w0)
    match spec.omega0 {
        SubtractionPoint::Infinity => {
            g.check_hermitian().map_err(|_| {
                Error::InvalidInput(
                    "the infinity-subtracted relation assumes a Hermitian spectrum \
                     (odd imaginary part)"
                        .into(),
                )
            })?;
            let zero = grid
                .zero_index()
                .ok_or_else(|| Error::InvalidGrid("two-sided grid must sample omega = 0".into()))?;
            let m = n - zero;
            let pos_grid = FrequencyGrid::one_sided(grid.domega(), m);
            let nus: Vec<f64> = pos_grid.omegas().collect();
            let im_pos: Vec<f64> = (zero..n).map(|i| values[i].im).collect();
            let core = folded_dispersion(&nus, &im_pos, grid.domega());
            let band_edge = nus[m - 1] + grid.domega();
            let g_inf = spec.g_at_omega0;
            let mut out = vec![0.0; n];
            for (k, &w) in nus.iter().enumerate() {
                // -(2/pi) Int_0^edge w Im G(inf) / (nu^2 - w^2) dnu
                let inf_term = if g_inf.im == 0.0 || w == 0.0 {
                    0.0
                } else if w < band_edge {
                    -(g_inf.im / std::f64::consts::PI) * ((band_edge - w) / (band_edge + w)).ln()
                } else {
                    0.0
                };
                let val = g_inf.re + core[k] + inf_term;
                out[zero + k] = val;
                if k <= zero {
                    out[zero - k] = val; // Re G is even for Hermitian G
                }
            }
            // the unpaired lowest bin of an even grid has no positive
            // partner; fill it from the outermost evaluated value
            if zero > nus.len() - 1 {
                out[0] = out[n - 1];
            }
            Ok(out)
        }
        SubtractionPoint::Finite(w0) => {
            let rel = (w0 - grid.omega0()) / grid.domega();
            let j0 = rel.round();
            if (rel - j0).abs() > 1e-6 || j0 < 0.0 || j0 as usize >= n {
                return Err(Error::InvalidInput(format!(
                    "subtraction point {w0} does not lie on the sampled grid"
                )));
            }
            let j0 = j0 as usize;
            if j0 == 0 || j0 == n - 1 {
                return Err(Error::InvalidInput(
                    "subtraction point at the outermost bin leaves no derivative stencil".into(),
                ));
            }
            let g0 = values[j0];
            let mut h = vec![Complex64::default(); n];
            for (k, &w) in omegas.iter().enumerate() {
                if k == j0 {
                    // limit value: H(w0) = G'(w0)
                    h[k] = (values[j0 + 1] - values[j0 - 1]) / (2.0 * grid.domega());
                } else {
                    h[k] = (values[k] - g0) / (w - w0);
                }
            }
            // H must be square integrable: demand decay at the band edges
            let edge_len = (n / 50).max(4);
            let edge_mean = h[..edge_len]
                .iter()
                .chain(&h[n - edge_len..])
                .map(|c| c.norm())
                .sum::<f64>()
                / (2 * edge_len) as f64;
            let rms = (h.iter().map(|c| c.norm_sqr()).sum::<f64>() / n as f64).sqrt();
            if rms > 0.0 && edge_mean > 0.9 * rms {
                return Err(Error::NotSquareIntegrable(format!(
                    "H(omega) has not decayed at the band edge \
                     (edge mean {edge_mean:.3e} vs rms {rms:.3e})"
                )));
            }
            let im_h: Vec<f64> = h.iter().map(|c| c.im).collect();
            let hil = hilbert_transform(grid, &im_h, HilbertDirection::RealFromImag)?;
            Ok(omegas
                .iter()
                .zip(&hil.values)
                .map(|(&w, &t)| g0.re + (w - w0) * t)
                .collect())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::media::{lorentz_index, LorentzMedium, Resonance};

    fn lorentz() -> LorentzMedium {
        LorentzMedium::new(vec![Resonance::new(1.0, 0.1, 1.0)], 0.2).unwrap()
    }

    fn interior_rel_l2(nus: &[f64], got: &[f64], want: &[f64], lo: f64, hi: f64) -> f64 {
        let mut d = 0.0;
        let mut n = 0.0;
        for ((&w, &g), &t) in nus.iter().zip(got).zip(want) {
            if w >= lo && w <= hi {
                d += (g - t) * (g - t);
                n += t * t;
            }
        }
        (d / n).sqrt()
    }

    #[test]
    fn vacuum_reconstructs_vacuum() {
        let grid = FrequencyGrid::one_sided(0.01, 1024);
        let out = kk_real_from_imag(&grid, &vec![0.0; 1024], false).unwrap();
        assert!(out.values.iter().all(|&v| (v - 1.0).abs() < 1e-14));
        let out = kk_imag_from_real(&grid, &vec![1.0; 1024]).unwrap();
        assert!(out.values.iter().all(|&v| v.abs() < 1e-14));
    }

    #[test]
    fn lorentz_real_from_imag_within_one_percent() {
        let n = 1 << 14;
        let grid = FrequencyGrid::one_sided(20.0 / n as f64, n);
        let medium = lorentz();
        let nus: Vec<f64> = grid.omegas().collect();
        let imag: Vec<f64> = nus.iter().map(|&w| lorentz_index(&medium, w).im).collect();
        let real: Vec<f64> = nus.iter().map(|&w| lorentz_index(&medium, w).re).collect();
        let out = kk_real_from_imag(&grid, &imag, false).unwrap();
        assert!(!out.truncation_warning);
        let err = interior_rel_l2(&nus, &out.values, &real, 0.1, 5.0);
        assert!(err < 0.01, "interior relative error {err}");
    }

    #[test]
    fn lorentz_imag_from_real_within_one_percent() {
        let n = 1 << 14;
        let grid = FrequencyGrid::one_sided(20.0 / n as f64, n);
        let medium = lorentz();
        let nus: Vec<f64> = grid.omegas().collect();
        let imag: Vec<f64> = nus.iter().map(|&w| lorentz_index(&medium, w).im).collect();
        let real: Vec<f64> = nus.iter().map(|&w| lorentz_index(&medium, w).re).collect();
        let out = kk_imag_from_real(&grid, &real).unwrap();
        let err = interior_rel_l2(&nus, &out.values, &imag, 0.1, 5.0);
        assert!(err < 0.01, "interior relative error {err}");
    }

    #[test]
    fn roundtrip_within_two_percent() {
        let n = 1 << 13;
        let grid = FrequencyGrid::one_sided(20.0 / n as f64, n);
        let medium = lorentz();
        let nus: Vec<f64> = grid.omegas().collect();
        let imag: Vec<f64> = nus.iter().map(|&w| lorentz_index(&medium, w).im).collect();
        let real = kk_real_from_imag(&grid, &imag, false).unwrap();
        let back = kk_imag_from_real(&grid, &real.values).unwrap();
        let err = interior_rel_l2(&nus, &back.values, &imag, 0.1, 5.0);
        assert!(err < 0.02, "roundtrip error {err}");
    }

    #[test]
    fn doubling_imag_doubles_departure_from_unity() {
        let n = 1 << 10;
        let grid = FrequencyGrid::one_sided(20.0 / n as f64, n);
        let medium = lorentz();
        let imag: Vec<f64> = grid
            .omegas()
            .map(|w| lorentz_index(&medium, w).im)
            .collect();
        let doubled: Vec<f64> = imag.iter().map(|x| 2.0 * x).collect();
        let one = kk_real_from_imag(&grid, &imag, false).unwrap();
        let two = kk_real_from_imag(&grid, &doubled, false).unwrap();
        for (a, b) in one.values.iter().zip(&two.values) {
            assert!((2.0 * (a - 1.0) - (b - 1.0)).abs() < 1e-12);
        }
    }

    #[test]
    fn absorption_form_matches_imag_form() {
        let n = 1 << 10;
        let grid = FrequencyGrid::one_sided(20.0 / n as f64, n);
        let medium = lorentz();
        let nus: Vec<f64> = grid.omegas().collect();
        let imag: Vec<f64> = nus.iter().map(|&w| lorentz_index(&medium, w).im).collect();
        let alpha: Vec<f64> = nus
            .iter()
            .zip(&imag)
            .map(|(&w, &ni)| 2.0 * ni * w / SPEED_OF_LIGHT)
            .collect();
        let a = kk_real_from_imag(&grid, &imag, false).unwrap();
        let b = kk_real_from_imag(&grid, &alpha, true).unwrap();
        for (x, y) in a.values.iter().zip(&b.values) {
            assert!((x - y).abs() < 1e-12);
        }
    }

    #[test]
    fn subtracted_matches_unsubtracted_for_decaying_spectrum() {
        use crate::grid::SampledSpectrum;
        use num_complex::Complex64;

        let n = 1 << 13;
        let grid = FrequencyGrid::two_sided(2.0 * std::f64::consts::PI / 40.0, n);
        let g =
            SampledSpectrum::from_fn(grid, |w| Complex64::new(1.0, 0.0) / Complex64::new(1.0, -w))
                .unwrap();
        // subtraction point toward the band edge, on the grid
        let edge = grid.band_edge();
        let w0 = (0.9 * edge / grid.domega()).round() * grid.domega();
        let g0 = Complex64::new(1.0, 0.0) / Complex64::new(1.0, -w0);
        let spec = SubtractionSpec {
            omega0: SubtractionPoint::Finite(w0),
            g_at_omega0: g0,
        };
        let subtracted = subtracted_dispersion(&g, &spec).unwrap();
        let unsubtracted = hilbert_transform(
            &grid,
            &g.values().iter().map(|v| v.im).collect::<Vec<_>>(),
            HilbertDirection::RealFromImag,
        )
        .unwrap();
        let omegas: Vec<f64> = grid.omegas().collect();
        let (mut d, mut s) = (0.0, 0.0);
        for ((&w, &a), &b) in omegas.iter().zip(&subtracted).zip(&unsubtracted.values) {
            if w.abs() <= edge / 2.0 {
                d += (a - b) * (a - b);
                s += b * b;
            }
        }
        let err = (d / s).sqrt();
        assert!(err < 1e-3, "subtracted vs unsubtracted interior {err}");
    }

    #[test]
    fn subtracted_reconstruction_is_linear_in_the_input() {
        use crate::grid::SampledSpectrum;
        use num_complex::Complex64;

        let n = 1 << 10;
        let grid = FrequencyGrid::two_sided(2.0 * std::f64::consts::PI / 40.0, n);
        let base =
            SampledSpectrum::from_fn(grid, |w| Complex64::new(1.0, 0.0) / Complex64::new(1.0, -w))
                .unwrap();
        let a = 2.5;
        let scaled =
            SampledSpectrum::new(*base.grid(), base.values().iter().map(|v| a * v).collect())
                .unwrap();
        let spec = |g0: Complex64| SubtractionSpec {
            omega0: SubtractionPoint::Infinity,
            g_at_omega0: g0,
        };
        let one = subtracted_dispersion(&base, &spec(Complex64::default())).unwrap();
        let two = subtracted_dispersion(&scaled, &spec(Complex64::default())).unwrap();
        for (x, y) in one.iter().zip(&two) {
            assert!((a * x - y).abs() < 1e-10);
        }
    }

    #[test]
    fn subtracted_rejects_non_decaying_h() {
        use crate::grid::SampledSpectrum;
        use num_complex::Complex64;

        // |G| growing linearly: H = (G - G0)/(w - w0) approaches a constant
        let n = 1 << 8;
        let grid = FrequencyGrid::two_sided(0.25, n);
        let g = SampledSpectrum::from_fn(grid, |w| Complex64::new(0.0, w)).unwrap();
        let spec = SubtractionSpec {
            omega0: SubtractionPoint::Finite(0.0),
            g_at_omega0: Complex64::default(),
        };
        assert!(matches!(
            subtracted_dispersion(&g, &spec).unwrap_err(),
            Error::NotSquareIntegrable(_)
        ));
    }

    #[test]
    fn truncation_warning_when_band_too_short() {
        let n = 1 << 10;
        // band to 2 w0 only: Im n is nowhere near decayed at the edge
        let grid = FrequencyGrid::one_sided(2.0 / n as f64, n);
        let medium = lorentz();
        let imag: Vec<f64> = grid
            .omegas()
            .map(|w| lorentz_index(&medium, w).im)
            .collect();
        let out = kk_real_from_imag(&grid, &imag, false).unwrap();
        assert!(out.truncation_warning);
    }
}
