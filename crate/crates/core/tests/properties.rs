//! Property tests for the transform layer and media symmetries.

use num_complex::Complex64;
use proptest::prelude::*;

use disprel::grid::{SampledSignal, SampledSpectrum, TimeGrid};
use disprel::media::{lorentz_index, LorentzMedium, Resonance};
use disprel::spectral::{forward_transform, inverse_transform, parseval_residual};

/// Band-limited test signals: a few Gaussian-windowed tones with bounded
/// parameters, always well decayed at the grid ends.
fn signal_strategy() -> impl Strategy<Value = SampledSignal> {
    (
        proptest::collection::vec((0.1f64..3.0, -4.0f64..4.0, 0.5f64..2.5, -1.0f64..1.0), 1..4),
        prop_oneof![Just(256_usize), Just(512), Just(1024)],
    )
        .prop_map(|(components, n)| {
            let grid = TimeGrid::centered(40.0 / n as f64, n).unwrap();
            SampledSignal::from_fn(grid, |t| {
                components
                    .iter()
                    .map(|(freq, center, width, amp)| {
                        amp * (freq * t).cos()
                            * (-(t - center) * (t - center) / (2.0 * width * width)).exp()
                    })
                    .sum()
            })
            .unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn roundtrip_identity(signal in signal_strategy()) {
        let spectrum = forward_transform(&signal).unwrap();
        let back = inverse_transform(&spectrum).unwrap();
        let peak = signal.peak().max(1e-300);
        for (a, b) in signal.values().iter().zip(back.values()) {
            prop_assert!((a - b).abs() < 1e-12 * peak);
        }
    }

    #[test]
    fn parseval_holds(signal in signal_strategy()) {
        let spectrum = forward_transform(&signal).unwrap();
        prop_assert!(parseval_residual(&signal, &spectrum).unwrap() < 1e-10);
    }

    #[test]
    fn hermitian_spectra_produce_real_signals(signal in signal_strategy()) {
        // forward transforms of real signals must pass the Hermitian check
        let spectrum = forward_transform(&signal).unwrap();
        prop_assert!(spectrum.check_hermitian().is_ok());
    }

    #[test]
    fn transform_linearity(
        a in -3.0f64..3.0,
        b in -3.0f64..3.0,
        f in signal_strategy(),
    ) {
        // second signal derived deterministically from the first
        let grid = *f.grid();
        let g = SampledSignal::from_fn(grid, |t| (-t * t / 5.0).exp() * (1.7 * t).sin()).unwrap();
        let combo = SampledSignal::new(
            grid,
            f.values()
                .iter()
                .zip(g.values())
                .map(|(x, y)| a * x + b * y)
                .collect(),
        )
        .unwrap();
        let fc = forward_transform(&combo).unwrap();
        let ff = forward_transform(&f).unwrap();
        let fg = forward_transform(&g).unwrap();
        let scale = fc.peak_magnitude().max(1e-300);
        for ((c, x), y) in fc.values().iter().zip(ff.values()).zip(fg.values()) {
            prop_assert!((c - (a * x + b * y)).norm() < 1e-11 * scale);
        }
    }

    #[test]
    fn lorentz_symmetry_and_passivity(
        w0 in 0.5f64..4.0,
        gamma in 0.01f64..1.0,
        strength in 0.0f64..2.0,
        wp2 in 0.0f64..3.0,
        omega in 0.0f64..50.0,
    ) {
        let medium = LorentzMedium::new(vec![Resonance::new(w0, gamma, strength)], wp2).unwrap();
        let n = lorentz_index(&medium, omega);
        let mirrored = lorentz_index(&medium, -omega);
        prop_assert!((mirrored - n.conj()).norm() < 1e-14 * n.norm().max(1.0));
        prop_assert!(n.im >= 0.0);
    }

    #[test]
    fn slab_kernel_spectra_are_hermitian(
        w0 in 0.5f64..2.0,
        gamma in 0.05f64..0.5,
        wp2 in 0.1f64..2.0,
    ) {
        use disprel::media::SPEED_OF_LIGHT;
        use disprel::propagation::{shifted_slab_transfer, SlabConfig};
        let medium = LorentzMedium::new(vec![Resonance::new(w0, gamma, 1.0)], wp2).unwrap();
        let slab = SlabConfig::new(2.0 * SPEED_OF_LIGHT, &medium, true).unwrap();
        let tgrid = TimeGrid::centered(400.0 / 2048.0, 2048).unwrap();
        let kernel = shifted_slab_transfer(&slab, &tgrid.frequency_grid()).unwrap();
        prop_assert!(kernel.check_hermitian().is_ok());
        // the inverse response of a Hermitian kernel is real by
        // construction; verify through the public transform
        let response = inverse_transform(&kernel).unwrap();
        prop_assert!(response.values().iter().all(|v| v.is_finite()));
    }
}

/// The extension of a slab transfer function sampled on the positive half
/// satisfies the conjugate symmetry exactly by construction, so its time
/// response is real: round-tripping the real response back to the
/// frequency domain reproduces the extension to rounding.
#[test]
fn hermitian_extension_of_slab_transfer_is_real() {
    use disprel::media::{IndexModel, SPEED_OF_LIGHT};
    use disprel::propagation::SlabConfig;
    use disprel::spectral::hermitian_extend;

    let medium = LorentzMedium::new(vec![Resonance::new(1.0, 0.1, 1.0)], 0.2).unwrap();
    let slab = SlabConfig::new(5.0 * SPEED_OF_LIGHT, &medium, true).unwrap();
    let m = 2048;
    let domega = 64.0 / m as f64;
    let pos = disprel::grid::FrequencyGrid::one_sided(domega, m);
    let half_values: Vec<Complex64> = pos
        .omegas()
        .map(|w| {
            let n = medium.index_hermitian(w).unwrap();
            (Complex64::new(0.0, 1.0) * w * (n - 1.0) * slab.vacuum_transit()).exp()
        })
        .collect();
    let half_spec = SampledSpectrum::new(pos, half_values).unwrap();
    let extended = hermitian_extend(&half_spec).unwrap();
    assert!(extended.check_hermitian().is_ok());

    // real response and an exact round trip certify the reality claim
    let response = inverse_transform(&extended).unwrap();
    let back = forward_transform(&response).unwrap();
    let peak = extended.peak_magnitude();
    for (a, b) in extended.values().iter().zip(back.values()) {
        assert!((a - b).norm() < 1e-12 * peak);
    }
}
