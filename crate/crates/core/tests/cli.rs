//! End-to-end tests of the command-line binary: exit codes, file formats,
//! and byte-level determinism.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use disprel::media::{lorentz_index, LorentzMedium, Resonance, SPEED_OF_LIGHT};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_disprel"))
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn value_of(block: &str, key: &str) -> Option<f64> {
    block.lines().find_map(|l| {
        let (k, v) = l.split_once('=')?;
        (k.trim() == key).then(|| v.trim().parse().ok())?
    })
}

const REFERENCE_DT: f64 = 800.0 / 16384.0;

#[test]
fn check_passes_on_lorentz_fixture() {
    let out = run(&[
        "check",
        "--medium",
        fixture("lorentz_medium.txt").to_str().unwrap(),
        "--delta-cm",
        &format!("{}", 5.0 * SPEED_OF_LIGHT),
        "--grid-count",
        "16384",
        "--dt",
        &format!("{REFERENCE_DT}"),
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = stdout_of(&out);
    assert!(text.contains("verdict = causal"), "{text}");
    let leakage = value_of(&text, "anticausal_leakage").unwrap();
    assert!(leakage < 1e-6, "leakage {leakage}");
}

#[test]
fn check_rejects_subluminal_fixture_with_exit_2() {
    let out = run(&[
        "check",
        "--medium",
        fixture("subluminal_index.txt").to_str().unwrap(),
        "--delta-cm",
        &format!("{}", 5.0 * SPEED_OF_LIGHT),
        "--grid-count",
        "16384",
        "--dt",
        &format!("{REFERENCE_DT}"),
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout_of(&out).contains("verdict = anticausal"));
}

#[test]
fn check_accepts_domega_and_leak_tol_overrides() {
    // same grid expressed through --domega; a leak tolerance tighter than
    // the measured leakage lands in the inconclusive gap (still exit 0)
    let domega = 2.0 * std::f64::consts::PI / 800.0;
    let out = run(&[
        "check",
        "--medium",
        fixture("lorentz_medium.txt").to_str().unwrap(),
        "--delta-cm",
        &format!("{}", 5.0 * SPEED_OF_LIGHT),
        "--grid-count",
        "16384",
        "--domega",
        &format!("{domega}"),
        "--leak-tol",
        "1e-12",
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = stdout_of(&out);
    assert!(text.contains("verdict = inconclusive"), "{text}");
    let leakage = value_of(&text, "anticausal_leakage").unwrap();
    assert!(leakage > 1e-12 && leakage < 1e-2);
}

#[test]
fn check_output_is_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let mut blocks = Vec::new();
    for run_idx in 0..2 {
        let path = dir.path().join(format!("report_{run_idx}.txt"));
        let out = run(&[
            "check",
            "--medium",
            "resonance=1.0,0.1,1.0; plasma_omega_sq=0.2",
            "--delta-cm",
            &format!("{}", 5.0 * SPEED_OF_LIGHT),
            "--grid-count",
            "4096",
            "--dt",
            &format!("{}", 800.0 / 4096.0),
            "--output",
            path.to_str().unwrap(),
            "--json",
        ]);
        assert_eq!(out.status.code(), Some(0));
        blocks.push((
            std::fs::read(&path).unwrap(),
            std::fs::read(path.with_extension("json")).unwrap(),
        ));
    }
    assert_eq!(blocks[0].0, blocks[1].0);
    assert_eq!(blocks[0].1, blocks[1].1);
}

#[test]
fn kk_reconstructs_missing_real_column() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("imag_only.txt");
    let output = dir.path().join("reconstructed.txt");

    let medium = LorentzMedium::new(vec![Resonance::new(1.0, 0.1, 1.0)], 0.2).unwrap();
    let n = 4096;
    let domega = 20.0 / n as f64;
    let mut text = String::from("# omega n_real n_imag\n");
    for k in 0..n {
        let w = k as f64 * domega;
        text.push_str(&format!(
            "{w:.12e} nan {:.12e}\n",
            lorentz_index(&medium, w).im
        ));
    }
    std::fs::write(&input, text).unwrap();

    let out = run(&[
        "kk",
        "--input",
        input.to_str().unwrap(),
        "--output",
        output.to_str().unwrap(),
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(stdout_of(&out).contains("direction = real-from-imag"));

    // interior accuracy of the written table
    let written = std::fs::read_to_string(&output).unwrap();
    let mut worst: f64 = 0.0;
    for line in written.lines().filter(|l| !l.starts_with('#')) {
        let cols: Vec<f64> = line
            .split_whitespace()
            .map(|t| t.parse().unwrap())
            .collect();
        let (w, n_real) = (cols[0], cols[1]);
        if (0.5..=4.0).contains(&w) {
            let expect = lorentz_index(&medium, w).re;
            worst = worst.max((n_real - expect).abs() / expect.abs());
        }
    }
    assert!(worst < 0.01, "worst interior error {worst}");
}

#[test]
fn kk_reports_parse_errors_with_location() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("broken.txt");
    std::fs::write(&input, "0.0 1.0 0.0\n0.5 oops 0.0\n").unwrap();
    let out = run(&[
        "kk",
        "--input",
        input.to_str().unwrap(),
        "--output",
        "/dev/null",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains(":2:"), "diagnostic should name line 2: {err}");
}

#[test]
fn propagate_demo_front_at_light_speed() {
    let dir = tempfile::tempdir().unwrap();
    let trace = dir.path().join("demo_out.txt");
    let out = run(&["propagate", "--demo", "--output", trace.to_str().unwrap()]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = stdout_of(&out);
    let v_front = value_of(&text, "front_velocity_over_c").unwrap();
    let v_group = value_of(&text, "group_velocity_over_c").unwrap();
    let v_peak = value_of(&text, "peak_transit_velocity_over_c").unwrap();
    assert!((v_front - 1.0).abs() < 0.03, "front velocity {v_front} c");
    assert!(v_group > 1.0, "group velocity {v_group} c");
    assert!(v_peak > 1.0 || v_peak <= 0.0, "peak transit {v_peak} c");
    assert!(text.contains("causality_violation = false"));
    assert!(trace.exists());
}

#[test]
fn propagate_custom_signal_below_resonance() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("pulse.txt");
    let output = dir.path().join("pulse_out.txt");
    let n = 8192_usize;
    let dt = 400.0 / n as f64;
    let mut text = String::from("# t value\n");
    for j in 0..n {
        let t = -200.0 + j as f64 * dt;
        let s = t + 150.0;
        let v = if s > 0.0 {
            (1.3 * s).sin() * (-(s - 60.0) * (s - 60.0) / (2.0 * 15.0 * 15.0)).exp()
        } else {
            0.0
        };
        text.push_str(&format!("{t:.10e} {v:.10e}\n"));
    }
    std::fs::write(&input, text).unwrap();
    let out = run(&[
        "propagate",
        "--medium",
        "resonance=1.0,0.1,1.0; plasma_omega_sq=0.2",
        "--delta-cm",
        &format!("{}", 2.0 * SPEED_OF_LIGHT),
        "--input",
        input.to_str().unwrap(),
        "--output",
        output.to_str().unwrap(),
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let textout = stdout_of(&out);
    let v_front = value_of(&textout, "front_velocity_over_c").unwrap();
    let v_peak = value_of(&textout, "peak_transit_velocity_over_c").unwrap();
    // sub-resonance carrier: normal dispersion, front at c and a slow peak
    assert!((v_front - 1.0).abs() < 0.05, "front {v_front} c");
    assert!(v_peak < 1.0 && v_peak > 0.0, "peak transit {v_peak} c");
    assert!(textout.contains("causality_violation = false"));
    assert!(output.exists());
}

#[test]
fn continue_matches_closed_form_line() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("spectrum.txt");
    let output = dir.path().join("lines.txt");
    let n = 4096_usize;
    let domega = 2.0 * std::f64::consts::PI / 40.0;
    let half = (n / 2) as f64;
    let mut text = String::new();
    for m in 0..n {
        let w = (m as f64 - half) * domega;
        let g = num_complex::Complex64::new(1.0, 0.0) / num_complex::Complex64::new(1.0, -w);
        text.push_str(&format!("{w:.12e} {:.12e} {:.12e}\n", g.re, g.im));
    }
    std::fs::write(&input, text).unwrap();
    let out = run(&[
        "continue",
        "--input",
        input.to_str().unwrap(),
        "--y",
        "1.0",
        "--output",
        output.to_str().unwrap(),
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let written = std::fs::read_to_string(&output).unwrap();
    let mut worst: f64 = 0.0;
    for line in written.lines().filter(|l| !l.starts_with('#')) {
        let cols: Vec<f64> = line
            .split_whitespace()
            .map(|t| t.parse().unwrap())
            .collect();
        let (x, re, im) = (cols[1], cols[2], cols[3]);
        let expect = num_complex::Complex64::new(1.0, 0.0) / num_complex::Complex64::new(2.0, -x);
        worst = worst.max((num_complex::Complex64::new(re, im) - expect).norm());
    }
    assert!(worst < 1e-6, "worst continuation error {worst}");
}

#[test]
fn scharnhorst_reports_both_coefficients() {
    let out = run(&["scharnhorst", "--l-cm", "1e-6"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    let exact = value_of(&text, "coefficient_exact").unwrap();
    let printed = value_of(&text, "coefficient_printed").unwrap();
    let ratio = value_of(&text, "ratio_dv_over_dc_exact").unwrap();
    assert!((exact - 1.8769e6).abs() < 1.0);
    assert_eq!(printed, 1.5e6);
    // 1.877e6 * (1e-6 cm / 3.9e-11 cm)^3 = 3.16e19
    assert!((ratio / 3.164e19 - 1.0).abs() < 0.01, "ratio {ratio:.3e}");
}

#[test]
fn missing_file_exits_one() {
    let out = run(&[
        "kk",
        "--input",
        "/nonexistent/path.txt",
        "--output",
        "/dev/null",
    ]);
    assert_eq!(out.status.code(), Some(1));
}
