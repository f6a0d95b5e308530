//! Batch command dispatch: dataset ingestion, analysis runs, and plot-data
//! emission. Exit codes: 0 success, 1 error, 2 anticausal verdict.

pub mod table;

use std::path::{Path, PathBuf};

use crate::causality::{
    analytic_continue, causality_verdict_with, kk_imag_from_real, kk_real_from_imag, Verdict,
    DEFAULT_LEAK_TOL,
};
use crate::error::{Error, Result};
use crate::grid::{SampledSpectrum, TimeGrid};
use crate::media::{IndexModel, LorentzMedium, TabulatedIndex, SPEED_OF_LIGHT};
use crate::propagation::{
    demo, group_velocity, measure_velocities, propagate_pulse, shifted_slab_transfer, SlabConfig,
};
use crate::scharnhorst::scharnhorst_ratio;

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_ANTICAUSAL: i32 = 2;

/// Grid requested on the command line: sample count plus either the time
/// step or the frequency spacing.
#[derive(Debug, Clone, Copy)]
pub struct GridSpec {
    pub count: usize,
    pub dt: Option<f64>,
    pub domega: Option<f64>,
}

impl GridSpec {
    pub fn time_grid(&self) -> Result<TimeGrid> {
        let dt = match (self.dt, self.domega) {
            (Some(dt), _) => dt,
            (None, Some(domega)) => 2.0 * std::f64::consts::PI / (domega * self.count as f64),
            (None, None) => {
                return Err(Error::InvalidInput(
                    "grid needs --dt or --domega alongside --grid-count".into(),
                ))
            }
        };
        if !self.count.is_power_of_two() {
            eprintln!(
                "note: grid count {} is not a power of two; transforms will be slower",
                self.count
            );
        }
        TimeGrid::centered(dt, self.count)
    }
}

/// Which dispersion relation a `kk` run applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KkDirection {
    RealFromImag,
    ImagFromReal,
}

#[derive(Debug)]
pub enum Command {
    Kk {
        input: PathBuf,
        direction: Option<KkDirection>,
    },
    Check {
        medium: String,
        delta_cm: f64,
        grid: GridSpec,
        leak_tol: Option<f64>,
    },
    Propagate {
        medium: Option<String>,
        delta_cm: Option<f64>,
        input: Option<PathBuf>,
        demo: bool,
    },
    Continue {
        input: PathBuf,
        y_values: Vec<f64>,
    },
    Scharnhorst {
        l_cm: f64,
        wavelength_cm: Option<f64>,
        k: f64,
        alpha: f64,
    },
}

#[derive(Debug)]
pub struct RunConfig {
    pub command: Command,
    pub output: Option<PathBuf>,
    pub json: bool,
}

/// A resolved medium argument: inline spec, spec file, or index table.
pub enum Medium {
    Lorentz(LorentzMedium),
    Table(TabulatedIndex),
}

impl Medium {
    pub fn as_model(&self) -> &dyn IndexModel {
        match self {
            Medium::Lorentz(m) => m,
            Medium::Table(t) => t,
        }
    }

    /// Inline specs contain `=`; otherwise the value is a path whose
    /// contents decide between a key-value medium spec and an index table.
    pub fn resolve(arg: &str) -> Result<Medium> {
        if arg.contains('=') {
            return Ok(Medium::Lorentz(table::parse_medium_spec_str(
                arg, "<inline>",
            )?));
        }
        let path = Path::new(arg);
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: arg.to_string(),
            source,
        })?;
        let has_kv = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .any(|l| l.contains('='));
        if has_kv {
            Ok(Medium::Lorentz(table::parse_medium_spec_str(&text, arg)?))
        } else {
            let t = table::parse_index_table_str(&text, arg)?;
            Ok(Medium::Table(t.as_tabulated(arg)?))
        }
    }
}

/// Flat key-value report, printed as text and optionally mirrored as JSON.
#[derive(Debug, Default)]
pub struct Report {
    entries: Vec<(String, String)>,
}

impl Report {
    fn push(&mut self, key: &str, value: impl std::fmt::Display) {
        self.entries.push((key.to_string(), value.to_string()));
    }

    fn push_f64(&mut self, key: &str, value: f64) {
        self.entries
            .push((key.to_string(), format!("{value:.16e}")));
    }

    fn text(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.entries {
            out.push_str(&format!("{k} = {v}\n"));
        }
        out
    }

    fn json(&self) -> String {
        let mut map = serde_json::Map::new();
        for (k, v) in &self.entries {
            let value = v
                .parse::<f64>()
                .ok()
                .and_then(serde_json::Number::from_f64)
                .map(serde_json::Value::Number)
                .unwrap_or_else(|| serde_json::Value::String(v.clone()));
            map.insert(k.clone(), value);
        }
        serde_json::to_string_pretty(&serde_json::Value::Object(map)).expect("json serialization")
    }
}

fn emit(report: &Report, config: &RunConfig) -> Result<()> {
    print!("{}", report.text());
    if config.json {
        if let Some(out) = &config.output {
            let twin = out.with_extension("json");
            std::fs::write(&twin, report.json()).map_err(|source| Error::Io {
                path: twin.display().to_string(),
                source,
            })?;
        } else {
            println!("{}", report.json());
        }
    }
    Ok(())
}

fn require_output(config: &RunConfig) -> Result<&PathBuf> {
    config.output.as_ref().ok_or_else(|| {
        Error::InvalidInput("this command writes a data file; pass --output <path>".into())
    })
}

/// Run one command; returns the process exit code.
pub fn dispatch(config: &RunConfig) -> Result<i32> {
    match &config.command {
        Command::Kk { input, direction } => run_kk(config, input, *direction),
        Command::Check {
            medium,
            delta_cm,
            grid,
            leak_tol,
        } => run_check(config, medium, *delta_cm, grid, *leak_tol),
        Command::Propagate {
            medium,
            delta_cm,
            input,
            demo,
        } => run_propagate(
            config,
            medium.as_deref(),
            *delta_cm,
            input.as_deref(),
            *demo,
        ),
        Command::Continue { input, y_values } => run_continue(config, input, y_values),
        Command::Scharnhorst {
            l_cm,
            wavelength_cm,
            k,
            alpha,
        } => run_scharnhorst(config, *l_cm, *wavelength_cm, *k, *alpha),
    }
}

fn run_kk(config: &RunConfig, input: &Path, direction: Option<KkDirection>) -> Result<i32> {
    let file = table::parse_index_table(input)?;
    let direction = match direction {
        Some(d) => d,
        None => match (file.real_column_complete(), file.imag_column_complete()) {
            (false, true) => KkDirection::RealFromImag,
            (true, false) => KkDirection::ImagFromReal,
            (true, true) => {
                return Err(Error::InvalidInput(
                    "both columns are present; pick one with --direction".into(),
                ))
            }
            (false, false) => {
                return Err(Error::InvalidInput(
                    "neither column is complete; nothing to reconstruct from".into(),
                ))
            }
        },
    };
    let grid = file.uniform_grid()?;
    let mut report = Report::default();
    report.push("command", "kk");
    let out_path = require_output(config)?;

    let (n_real, n_imag, residual, warning) = match direction {
        KkDirection::RealFromImag => {
            let imag: Vec<f64> = file.rows.iter().map(|r| r.n_imag).collect();
            let out = kk_real_from_imag(&grid, &imag, false)?;
            let residual: Vec<f64> = file
                .rows
                .iter()
                .zip(&out.values)
                .map(|(r, &v)| {
                    if r.n_real.is_finite() {
                        v - r.n_real
                    } else {
                        f64::NAN
                    }
                })
                .collect();
            report.push("direction", "real-from-imag");
            (out.values, imag, residual, out.truncation_warning)
        }
        KkDirection::ImagFromReal => {
            let real: Vec<f64> = file.rows.iter().map(|r| r.n_real).collect();
            let out = kk_imag_from_real(&grid, &real)?;
            let residual: Vec<f64> = file
                .rows
                .iter()
                .zip(&out.values)
                .map(|(r, &v)| {
                    if r.n_imag.is_finite() {
                        v - r.n_imag
                    } else {
                        f64::NAN
                    }
                })
                .collect();
            report.push("direction", "imag-from-real");
            (real, out.values, residual, out.truncation_warning)
        }
    };
    table::write_kk_table(out_path, &grid, &n_real, &n_imag, &residual)?;
    report.push("bins", grid.count());
    report.push_f64("domega_rad_per_s", grid.domega());
    report.push("truncation_warning", warning);
    let finite: Vec<f64> = residual.iter().copied().filter(|r| r.is_finite()).collect();
    if !finite.is_empty() {
        let rms = (finite.iter().map(|r| r * r).sum::<f64>() / finite.len() as f64).sqrt();
        report.push_f64("residual_rms", rms);
    }
    report.push("output", out_path.display());
    emit(&report, config)?;
    Ok(EXIT_OK)
}

fn run_check(
    config: &RunConfig,
    medium_arg: &str,
    delta_cm: f64,
    grid: &GridSpec,
    leak_tol: Option<f64>,
) -> Result<i32> {
    let medium = Medium::resolve(medium_arg)?;
    let slab = SlabConfig::new(delta_cm, medium.as_model(), true)?;
    let tgrid = grid.time_grid()?;
    let shifted = shifted_slab_transfer(&slab, &tgrid.frequency_grid())?;
    let tol = leak_tol.unwrap_or(DEFAULT_LEAK_TOL);
    let report_data = causality_verdict_with(&shifted, tol)?;

    let mut report = Report::default();
    report.push("command", "check");
    report.push("verdict", report_data.verdict);
    report.push_f64("anticausal_leakage", report_data.anticausal_leakage);
    report.push_f64("l2_norm", report_data.l2_norm);
    report.push_f64("leak_tol", tol);
    report.push_f64("delta_cm", delta_cm);
    report.push_f64("vacuum_transit_s", slab.vacuum_transit());
    for (i, (y, norm)) in report_data.uhp_decay.iter().enumerate() {
        report.push_f64(&format!("uhp_y_{i}"), *y);
        report.push_f64(&format!("uhp_line_norm_{i}"), *norm);
    }
    if let Some(out) = &config.output {
        std::fs::write(out, report.text()).map_err(|source| Error::Io {
            path: out.display().to_string(),
            source,
        })?;
    }
    emit(&report, config)?;
    Ok(match report_data.verdict {
        Verdict::Anticausal => EXIT_ANTICAUSAL,
        _ => EXIT_OK,
    })
}

fn run_propagate(
    config: &RunConfig,
    medium_arg: Option<&str>,
    delta_cm: Option<f64>,
    input: Option<&Path>,
    use_demo: bool,
) -> Result<i32> {
    let mut report = Report::default();
    report.push("command", "propagate");

    let (pulse, medium, delta, carrier) = if use_demo {
        report.push("configuration", "built-in demo");
        (
            demo::pulse(),
            Medium::Lorentz(demo::medium()),
            demo::thickness_cm(),
            Some(demo::CARRIER),
        )
    } else {
        let medium_arg = medium_arg
            .ok_or_else(|| Error::InvalidInput("propagate needs --medium (or --demo)".into()))?;
        let delta = delta_cm
            .ok_or_else(|| Error::InvalidInput("propagate needs --delta-cm (or --demo)".into()))?;
        let input = input.ok_or_else(|| {
            Error::InvalidInput("propagate needs --input <signal file> (or --demo)".into())
        })?;
        (
            table::parse_signal(input)?,
            Medium::resolve(medium_arg)?,
            delta,
            None,
        )
    };

    let slab = SlabConfig::new(delta, medium.as_model(), true)?;
    let result = propagate_pulse(&pulse, &slab)?;
    let velocities = measure_velocities(&result, result.input_front, result.input_peak, &slab);

    report.push_f64("delta_cm", delta);
    report.push_f64("vacuum_front_time_s", result.vacuum_front_time);
    report.push_f64("noise_floor", result.noise_floor);
    report.push_f64("input_front_s", result.input_front);
    report.push_f64("input_peak_s", result.input_peak);
    report.push_f64("front_arrival_s", result.front_arrival);
    report.push_f64("peak_arrival_s", result.peak_arrival);
    report.push_f64("front_velocity_cm_per_s", velocities.front_velocity);
    report.push_f64(
        "peak_transit_velocity_cm_per_s",
        velocities.peak_transit_velocity,
    );
    report.push_f64(
        "front_velocity_over_c",
        velocities.front_velocity / SPEED_OF_LIGHT,
    );
    report.push_f64(
        "peak_transit_velocity_over_c",
        velocities.peak_transit_velocity / SPEED_OF_LIGHT,
    );
    report.push("causality_violation", velocities.causality_violation);
    if let Some(wc) = carrier {
        let vg = group_velocity(medium.as_model(), wc)?;
        report.push_f64("carrier_rad_per_s", wc);
        report.push_f64("group_velocity_cm_per_s", vg);
        report.push_f64("group_velocity_over_c", vg / SPEED_OF_LIGHT);
    }
    if let Some(out) = &config.output {
        table::write_signal(out, &result.output)?;
        report.push("output", out.display());
    }
    emit(&report, config)?;
    Ok(EXIT_OK)
}

fn run_continue(config: &RunConfig, input: &Path, y_values: &[f64]) -> Result<i32> {
    let spectrum = table::parse_spectrum(input)?;
    let out_path = require_output(config)?;
    let mut blocks: Vec<(f64, SampledSpectrum)> = Vec::new();
    let mut report = Report::default();
    report.push("command", "continue");
    for (i, &y) in y_values.iter().enumerate() {
        let gy = analytic_continue(&spectrum, y)?;
        report.push_f64(&format!("y_{i}"), y);
        report.push_f64(&format!("line_norm_{i}"), gy.l2_norm_sq().sqrt());
        blocks.push((y, gy));
    }
    table::write_continuation(out_path, &blocks)?;
    report.push("output", out_path.display());
    emit(&report, config)?;
    Ok(EXIT_OK)
}

fn run_scharnhorst(
    config: &RunConfig,
    l_cm: f64,
    wavelength_cm: Option<f64>,
    k: f64,
    alpha: f64,
) -> Result<i32> {
    let r = scharnhorst_ratio(l_cm, wavelength_cm, k, alpha)?;
    let mut report = Report::default();
    report.push("command", "scharnhorst");
    report.push_f64("l_cm", l_cm);
    report.push_f64("k", k);
    report.push_f64("alpha", alpha);
    report.push_f64("coefficient_exact", r.coefficient_exact);
    report.push_f64("coefficient_printed", r.coefficient_printed);
    report.push_f64("ratio_dv_over_dc_exact", r.ratio);
    report.push_f64("ratio_dv_over_dc_printed", r.ratio_printed);
    report.push_f64("delta_c_over_c", r.delta_c_over_c);
    if let Some(out) = &config.output {
        std::fs::write(out, report.text()).map_err(|source| Error::Io {
            path: out.display().to_string(),
            source,
        })?;
    }
    emit(&report, config)?;
    Ok(EXIT_OK)
}
