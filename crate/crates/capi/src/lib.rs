//! C ABI for the dispersion-relation and causality library.
//!
//! Opaque handles own the Rust objects; every function that can fail
//! returns a [`DisprelStatus`] and writes results through out-pointers.
//! The generated header lives in `include/disprel.h`.

use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use disprel::causality::{causality_verdict_with, Verdict, DEFAULT_LEAK_TOL};
use disprel::causality::{kk_imag_from_real, kk_real_from_imag};
use disprel::cli::table::parse_medium_spec_str;
use disprel::grid::{FrequencyGrid, SampledSpectrum, TimeGrid};
use disprel::media::{lorentz_index, IndexModel, LorentzMedium};
use disprel::propagation::{group_velocity, shifted_slab_transfer, SlabConfig};
use disprel::scharnhorst::{scharnhorst_ratio, DEFAULT_ALPHA, DEFAULT_K};
use num_complex::Complex64;

/// Status codes returned by every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DisprelStatus {
    /// Operation succeeded.
    Ok = 0,
    /// A pointer argument was null.
    NullPointer = 1,
    /// Arguments failed validation (grid, medium, or value errors).
    InvalidArgument = 2,
    /// A numeric routine reported an error.
    ComputationFailed = 3,
    /// A panic was caught at the boundary; state may be incomplete.
    Panic = 4,
}

/// Verdict codes mirrored from the library's three-way answer.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DisprelVerdict {
    Causal = 0,
    Anticausal = 1,
    Inconclusive = 2,
}

impl From<Verdict> for DisprelVerdict {
    fn from(v: Verdict) -> Self {
        match v {
            Verdict::Causal => DisprelVerdict::Causal,
            Verdict::Anticausal => DisprelVerdict::Anticausal,
            Verdict::Inconclusive => DisprelVerdict::Inconclusive,
        }
    }
}

/// Opaque damped-oscillator medium.
pub struct DisprelMedium {
    inner: LorentzMedium,
}

fn guard<F: FnOnce() -> DisprelStatus>(f: F) -> DisprelStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(_) => DisprelStatus::Panic,
    }
}

/// Create a medium from parallel resonance arrays
/// (`omega_j`, `gamma_j`, `f_j`, all of length `count`) and the plasma
/// frequency squared. Returns null on invalid parameters.
///
/// # Safety
/// The three arrays must be readable for `count` elements.
#[no_mangle]
pub unsafe extern "C" fn disprel_medium_new(
    omegas: *const f64,
    gammas: *const f64,
    strengths: *const f64,
    count: usize,
    plasma_omega_sq: f64,
) -> *mut DisprelMedium {
    if count > 0 && (omegas.is_null() || gammas.is_null() || strengths.is_null()) {
        return ptr::null_mut();
    }
    let mut resonances = Vec::with_capacity(count);
    for i in 0..count {
        resonances.push(disprel::media::Resonance::new(
            *omegas.add(i),
            *gammas.add(i),
            *strengths.add(i),
        ));
    }
    match LorentzMedium::new(resonances, plasma_omega_sq) {
        Ok(inner) => Box::into_raw(Box::new(DisprelMedium { inner })),
        Err(_) => ptr::null_mut(),
    }
}

/// Create a medium from the key-value spec format
/// (`resonance = w,g,f; plasma_omega_sq = v`). Returns null on parse errors.
///
/// # Safety
/// `spec` must point to a valid NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn disprel_medium_from_spec(spec: *const c_char) -> *mut DisprelMedium {
    if spec.is_null() {
        return ptr::null_mut();
    }
    let Ok(text) = CStr::from_ptr(spec).to_str() else {
        return ptr::null_mut();
    };
    match parse_medium_spec_str(text, "<capi>") {
        Ok(inner) => Box::into_raw(Box::new(DisprelMedium { inner })),
        Err(_) => ptr::null_mut(),
    }
}

/// Free a medium created by this library. Null is ignored.
///
/// # Safety
/// `medium` must have come from this library and not been freed before.
#[no_mangle]
pub unsafe extern "C" fn disprel_medium_free(medium: *mut DisprelMedium) {
    if !medium.is_null() {
        drop(Box::from_raw(medium));
    }
}

/// Complex refractive index at `omega` (rad/s, any sign).
///
/// # Safety
/// `medium` must be a live handle; the out-pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn disprel_medium_index(
    medium: *const DisprelMedium,
    omega: f64,
    n_real: *mut f64,
    n_imag: *mut f64,
) -> DisprelStatus {
    if medium.is_null() || n_real.is_null() || n_imag.is_null() {
        return DisprelStatus::NullPointer;
    }
    guard(|| {
        let m = &(*medium).inner;
        let n = if omega >= 0.0 {
            lorentz_index(m, omega)
        } else {
            lorentz_index(m, -omega).conj()
        };
        *n_real = n.re;
        *n_imag = n.im;
        DisprelStatus::Ok
    })
}

/// Group velocity `c / (Re n + w dRe n/dw)` in cm/s.
///
/// # Safety
/// `medium` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn disprel_group_velocity(
    medium: *const DisprelMedium,
    omega: f64,
    out: *mut f64,
) -> DisprelStatus {
    if medium.is_null() || out.is_null() {
        return DisprelStatus::NullPointer;
    }
    guard(|| match group_velocity(&(*medium).inner, omega) {
        Ok(v) => {
            *out = v;
            DisprelStatus::Ok
        }
        Err(_) => DisprelStatus::ComputationFailed,
    })
}

/// Reconstruct `Re n` from `Im n` sampled on the uniform grid
/// `nu_k = k * domega`, writing `count` values into `out`.
/// `truncation_warning` (optional) is set when the input has not decayed
/// at the band edge.
///
/// # Safety
/// `n_imag` must be readable and `out` writable for `count` elements;
/// `truncation_warning` may be null.
#[no_mangle]
pub unsafe extern "C" fn disprel_kk_real_from_imag(
    n_imag: *const f64,
    count: usize,
    domega: f64,
    out: *mut f64,
    truncation_warning: *mut bool,
) -> DisprelStatus {
    if n_imag.is_null() || out.is_null() {
        return DisprelStatus::NullPointer;
    }
    guard(|| {
        let input = std::slice::from_raw_parts(n_imag, count);
        let grid = FrequencyGrid::one_sided(domega, count);
        match kk_real_from_imag(&grid, input, false) {
            Ok(res) => {
                std::slice::from_raw_parts_mut(out, count).copy_from_slice(&res.values);
                if !truncation_warning.is_null() {
                    *truncation_warning = res.truncation_warning;
                }
                DisprelStatus::Ok
            }
            Err(_) => DisprelStatus::InvalidArgument,
        }
    })
}

/// Mirror relation: reconstruct `Im n` from `Re n`.
///
/// # Safety
/// `n_real` must be readable and `out` writable for `count` elements;
/// `truncation_warning` may be null.
#[no_mangle]
pub unsafe extern "C" fn disprel_kk_imag_from_real(
    n_real: *const f64,
    count: usize,
    domega: f64,
    out: *mut f64,
    truncation_warning: *mut bool,
) -> DisprelStatus {
    if n_real.is_null() || out.is_null() {
        return DisprelStatus::NullPointer;
    }
    guard(|| {
        let input = std::slice::from_raw_parts(n_real, count);
        let grid = FrequencyGrid::one_sided(domega, count);
        match kk_imag_from_real(&grid, input) {
            Ok(res) => {
                std::slice::from_raw_parts_mut(out, count).copy_from_slice(&res.values);
                if !truncation_warning.is_null() {
                    *truncation_warning = res.truncation_warning;
                }
                DisprelStatus::Ok
            }
            Err(_) => DisprelStatus::InvalidArgument,
        }
    })
}

/// Causality verdict of a complex spectrum sampled on the two-sided grid
/// `omega_m = (m - count/2) * domega` (interleaved re/im pairs).
///
/// # Safety
/// `g_interleaved` must be readable for `2 * count` doubles; the
/// out-pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn disprel_causality_verdict(
    g_interleaved: *const f64,
    count: usize,
    domega: f64,
    leak_tol: f64,
    verdict: *mut DisprelVerdict,
    leakage: *mut f64,
) -> DisprelStatus {
    if g_interleaved.is_null() || verdict.is_null() || leakage.is_null() {
        return DisprelStatus::NullPointer;
    }
    guard(|| {
        let raw = std::slice::from_raw_parts(g_interleaved, 2 * count);
        let values: Vec<Complex64> = raw
            .chunks_exact(2)
            .map(|c| Complex64::new(c[0], c[1]))
            .collect();
        let grid = FrequencyGrid::two_sided(domega, count);
        let Ok(spectrum) = SampledSpectrum::new(grid, values) else {
            return DisprelStatus::InvalidArgument;
        };
        let tol = if leak_tol > 0.0 {
            leak_tol
        } else {
            DEFAULT_LEAK_TOL
        };
        match causality_verdict_with(&spectrum, tol) {
            Ok(report) => {
                *verdict = report.verdict.into();
                *leakage = report.anticausal_leakage;
                DisprelStatus::Ok
            }
            Err(_) => DisprelStatus::ComputationFailed,
        }
    })
}

/// Causality verdict of the delay-shifted slab kernel of a medium on a
/// centered time window of `count` samples spanning `window_s` seconds.
///
/// # Safety
/// `medium` must be a live handle; the out-pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn disprel_slab_causality_check(
    medium: *const DisprelMedium,
    thickness_cm: f64,
    count: usize,
    window_s: f64,
    verdict: *mut DisprelVerdict,
    leakage: *mut f64,
) -> DisprelStatus {
    if medium.is_null() || verdict.is_null() || leakage.is_null() {
        return DisprelStatus::NullPointer;
    }
    guard(|| {
        let m = &(*medium).inner;
        let Ok(slab) = SlabConfig::new(thickness_cm, m as &dyn IndexModel, true) else {
            return DisprelStatus::InvalidArgument;
        };
        let Ok(tgrid) = TimeGrid::centered(window_s / count as f64, count) else {
            return DisprelStatus::InvalidArgument;
        };
        let Ok(shifted) = shifted_slab_transfer(&slab, &tgrid.frequency_grid()) else {
            return DisprelStatus::ComputationFailed;
        };
        match causality_verdict_with(&shifted, DEFAULT_LEAK_TOL) {
            Ok(report) => {
                *verdict = report.verdict.into();
                *leakage = report.anticausal_leakage;
                DisprelStatus::Ok
            }
            Err(_) => DisprelStatus::ComputationFailed,
        }
    })
}

/// Mirror-experiment measurability ratio; pass zero or negative optional
/// parameters to use the built-in defaults.
///
/// # Safety
/// The out-pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn disprel_scharnhorst_ratio(
    l_cm: f64,
    wavelength_cm: f64,
    k: f64,
    alpha: f64,
    ratio: *mut f64,
    delta_c_over_c: *mut f64,
) -> DisprelStatus {
    if ratio.is_null() || delta_c_over_c.is_null() {
        return DisprelStatus::NullPointer;
    }
    guard(|| {
        let wl = if wavelength_cm > 0.0 {
            Some(wavelength_cm)
        } else {
            None
        };
        let kk = if k > 0.0 { k } else { DEFAULT_K };
        let al = if alpha > 0.0 { alpha } else { DEFAULT_ALPHA };
        match scharnhorst_ratio(l_cm, wl, kk, al) {
            Ok(r) => {
                *ratio = r.ratio;
                *delta_c_over_c = r.delta_c_over_c;
                DisprelStatus::Ok
            }
            Err(_) => DisprelStatus::InvalidArgument,
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn medium_roundtrip_through_c_abi() {
        unsafe {
            let omegas = [1.0];
            let gammas = [0.1];
            let strengths = [1.0];
            let m =
                disprel_medium_new(omegas.as_ptr(), gammas.as_ptr(), strengths.as_ptr(), 1, 0.2);
            assert!(!m.is_null());
            let (mut re, mut im) = (0.0, 0.0);
            let status = disprel_medium_index(m, 1.0, &mut re, &mut im);
            assert_eq!(status, DisprelStatus::Ok);
            assert!(im > 0.0);
            // Hermitian evaluation at negative frequency
            let (mut re2, mut im2) = (0.0, 0.0);
            disprel_medium_index(m, -1.0, &mut re2, &mut im2);
            assert!((re - re2).abs() < 1e-15);
            assert!((im + im2).abs() < 1e-15);
            disprel_medium_free(m);
        }
    }

    #[test]
    fn invalid_medium_returns_null() {
        unsafe {
            let omegas = [1.0];
            let gammas = [0.0]; // undamped: rejected
            let strengths = [1.0];
            let m =
                disprel_medium_new(omegas.as_ptr(), gammas.as_ptr(), strengths.as_ptr(), 1, 0.2);
            assert!(m.is_null());
        }
    }

    #[test]
    fn spec_parsing_through_c_abi() {
        unsafe {
            let spec =
                std::ffi::CString::new("resonance=1.0,0.1,1.0; plasma_omega_sq=0.2").unwrap();
            let m = disprel_medium_from_spec(spec.as_ptr());
            assert!(!m.is_null());
            let mut vg = 0.0;
            let status = disprel_group_velocity(m, 1.3, &mut vg);
            assert_eq!(status, DisprelStatus::Ok);
            disprel_medium_free(m);
        }
    }

    #[test]
    fn kk_through_c_abi() {
        let n = 1 << 12;
        let domega = 20.0 / n as f64;
        let medium =
            LorentzMedium::new(vec![disprel::media::Resonance::new(1.0, 0.1, 1.0)], 0.2).unwrap();
        let imag: Vec<f64> = (0..n)
            .map(|k| lorentz_index(&medium, k as f64 * domega).im)
            .collect();
        let mut out = vec![0.0; n];
        let mut warn = false;
        let status = unsafe {
            disprel_kk_real_from_imag(imag.as_ptr(), n, domega, out.as_mut_ptr(), &mut warn)
        };
        assert_eq!(status, DisprelStatus::Ok);
        assert!(!warn);
        let expect = lorentz_index(&medium, 0.5).re;
        let idx = (0.5 / domega).round() as usize;
        assert!((out[idx] - expect).abs() < 0.01 * expect.abs());
    }

    #[test]
    fn verdict_through_c_abi() {
        let n = 1 << 12;
        let domega = 2.0 * std::f64::consts::PI / 40.0;
        let half = n / 2;
        let mut interleaved = Vec::with_capacity(2 * n);
        for m in 0..n {
            let w = (m as f64 - half as f64) * domega;
            let g = Complex64::new(1.0, 0.0) / Complex64::new(1.0, -w);
            interleaved.push(g.re);
            interleaved.push(g.im);
        }
        let mut verdict = DisprelVerdict::Inconclusive;
        let mut leakage = 1.0;
        let status = unsafe {
            disprel_causality_verdict(
                interleaved.as_ptr(),
                n,
                domega,
                0.0,
                &mut verdict,
                &mut leakage,
            )
        };
        assert_eq!(status, DisprelStatus::Ok);
        assert_eq!(verdict, DisprelVerdict::Causal);
        assert!(leakage < 1e-6);
    }

    #[test]
    fn scharnhorst_through_c_abi() {
        let mut ratio = 0.0;
        let mut shift = 0.0;
        let status =
            unsafe { disprel_scharnhorst_ratio(3.9e-11, 0.0, 0.0, 0.0, &mut ratio, &mut shift) };
        assert_eq!(status, DisprelStatus::Ok);
        assert!((ratio - 1.8769e6).abs() < 1.0);
        let status =
            unsafe { disprel_scharnhorst_ratio(-1.0, 0.0, 0.0, 0.0, &mut ratio, &mut shift) };
        assert_eq!(status, DisprelStatus::InvalidArgument);
    }
}
