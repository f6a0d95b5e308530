use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use disprel::cli::{dispatch, Command, GridSpec, KkDirection, RunConfig, EXIT_ERROR};
use disprel::scharnhorst::{DEFAULT_ALPHA, DEFAULT_K};

/// Dispersion relations, causality checks, and dispersive pulse propagation.
#[derive(Parser)]
#[command(name = "disprel", version, about)]
struct Cli {
    /// Write the report as machine-readable JSON too (to <output>.json when
    /// --output is given, to stdout otherwise).
    #[arg(long, global = true)]
    json: bool,

    /// Output path for data files / report copies.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: CliCommand,
}

#[derive(Args)]
struct GridArgs {
    /// Number of samples (powers of two are fastest).
    #[arg(long, default_value_t = 16384)]
    grid_count: usize,

    /// Time step in seconds.
    #[arg(long)]
    dt: Option<f64>,

    /// Frequency spacing in rad/s (alternative to --dt).
    #[arg(long)]
    domega: Option<f64>,
}

impl GridArgs {
    fn to_spec(&self) -> GridSpec {
        GridSpec {
            count: self.grid_count,
            dt: self.dt,
            domega: self.domega,
        }
    }
}

#[derive(Subcommand)]
enum CliCommand {
    /// Reconstruct the missing column of an index table through the
    /// dispersion relations and write table plus residuals.
    Kk {
        /// Index table: `omega_rad_per_s n_real n_imag`, `nan` marking the
        /// column to reconstruct.
        #[arg(long)]
        input: PathBuf,

        /// Force a direction when both columns are present.
        #[arg(long, value_parser = parse_direction)]
        direction: Option<KkDirection>,
    },

    /// Run the causality verdict on the delay-shifted slab kernel of a
    /// medium. Exits 2 when the verdict is anticausal.
    Check {
        /// Medium: spec file, index-table file, or inline
        /// `resonance=w,g,f; plasma_omega_sq=v`.
        #[arg(long)]
        medium: String,

        /// Slab thickness in cm.
        #[arg(long, required_unless_present = "delta_m")]
        delta_cm: Option<f64>,

        /// Slab thickness in meters (converted at this boundary).
        #[arg(long, conflicts_with = "delta_cm")]
        delta_m: Option<f64>,

        /// Override the causal-leakage tolerance.
        #[arg(long)]
        leak_tol: Option<f64>,

        #[command(flatten)]
        grid: GridArgs,
    },

    /// Propagate a front-limited pulse through a slab and measure front
    /// and peak velocities.
    Propagate {
        /// Medium: spec file, index-table file, or inline form.
        #[arg(long)]
        medium: Option<String>,

        /// Slab thickness in cm.
        #[arg(long)]
        delta_cm: Option<f64>,

        /// Slab thickness in meters (converted at this boundary).
        #[arg(long, conflicts_with = "delta_cm")]
        delta_m: Option<f64>,

        /// Input signal trace (`t value` per line, uniform spacing).
        #[arg(long)]
        input: Option<PathBuf>,

        /// Run the built-in anomalous-band demonstration.
        #[arg(long)]
        demo: bool,
    },

    /// Analytically continue a sampled spectrum to lines Im omega = y.
    Continue {
        /// Spectrum table: `omega re im`, uniform two-sided grid.
        #[arg(long)]
        input: PathBuf,

        /// Comma-separated list of heights y >= 0.
        #[arg(long, value_delimiter = ',', default_value = "0.5,1.0,2.0")]
        y: Vec<f64>,
    },

    /// Evaluate the mirror-experiment measurability ratio.
    Scharnhorst {
        /// Mirror separation in cm.
        #[arg(long)]
        l_cm: f64,

        /// Probe wavelength in cm (defaults to the Compton wavelength).
        #[arg(long)]
        wavelength_cm: Option<f64>,

        /// Numerical prefactor of the velocity shift.
        #[arg(long, default_value_t = DEFAULT_K)]
        k: f64,

        /// Fine-structure constant.
        #[arg(long, default_value_t = DEFAULT_ALPHA)]
        alpha: f64,
    },
}

fn parse_direction(s: &str) -> Result<KkDirection, String> {
    match s {
        "real-from-imag" => Ok(KkDirection::RealFromImag),
        "imag-from-real" => Ok(KkDirection::ImagFromReal),
        other => Err(format!(
            "unknown direction {other:?}; use real-from-imag or imag-from-real"
        )),
    }
}

fn delta_in_cm(delta_cm: Option<f64>, delta_m: Option<f64>) -> Option<f64> {
    delta_cm.or(delta_m.map(|m| m * 100.0))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let command = match cli.command {
        CliCommand::Kk { input, direction } => Command::Kk { input, direction },
        CliCommand::Check {
            medium,
            delta_cm,
            delta_m,
            leak_tol,
            grid,
        } => Command::Check {
            medium,
            delta_cm: delta_in_cm(delta_cm, delta_m).expect("clap enforces one delta"),
            grid: grid.to_spec(),
            leak_tol,
        },
        CliCommand::Propagate {
            medium,
            delta_cm,
            delta_m,
            input,
            demo,
        } => Command::Propagate {
            medium,
            delta_cm: delta_in_cm(delta_cm, delta_m),
            input,
            demo,
        },
        CliCommand::Continue { input, y } => Command::Continue { input, y_values: y },
        CliCommand::Scharnhorst {
            l_cm,
            wavelength_cm,
            k,
            alpha,
        } => Command::Scharnhorst {
            l_cm,
            wavelength_cm,
            k,
            alpha,
        },
    };
    let config = RunConfig {
        command,
        output: cli.output,
        json: cli.json,
    };
    match dispatch(&config) {
        Ok(code) => ExitCode::from(code as u8),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(EXIT_ERROR as u8)
        }
    }
}
