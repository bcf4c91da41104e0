//! `qfriction` — quantum-friction calculations for a two-level atom moving
//! above a Drude metal: velocity/damping/frequency sweeps, time evolution,
//! (omega0, d) maps, decay rates, and the numerical validation suite.
//!
//! All inputs and outputs are dimensionless (see the column-header
//! comments in the emitted files). Exit codes: 0 success, 1 validation
//! failure, 2 usage error, 3 numerical failure.

// Range checks use `!(a < b)` on purpose: NaN inputs are rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod commands;
mod output;
mod params;
mod si;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use output::Format;
use params::{FileConfig, RawParams, SweepRange};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Numerical(String),
    Io(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Io(_) => 2,
            CliError::Numerical(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Numerical(m) | CliError::Io(m) => m,
        }
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "qfriction",
    version,
    about = "Quantum friction of a moving two-level atom above a Drude metal (dimensionless units)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Default)]
struct CommonArgs {
    /// Atomic transition frequency (units of omega_sp)
    #[arg(long)]
    omega0: Option<f64>,
    /// Atom-surface distance (units of c/omega_sp)
    #[arg(long)]
    d: Option<f64>,
    /// Velocity (units of c); v < 0 is mapped to the mirrored dipole
    #[arg(long, allow_hyphen_values = true)]
    v: Option<f64>,
    /// Drude damping rate (units of omega_sp); 0 routes to --lossless
    #[arg(long = "gamma-c")]
    gamma_c: Option<f64>,
    /// Use the analytic lossless (gamma_c -> 0+) expressions
    #[arg(long)]
    lossless: bool,
    /// Transition dipole as three comma-separated complex numbers,
    /// e.g. "0.70710678+0i,0+0i,0-0.70710678i" (normalized internally)
    #[arg(long)]
    gamma: Option<String>,
    /// Excited-state probability for static force evaluations
    #[arg(long)]
    pe: Option<f64>,
    /// Initial excited-state probability for trajectories
    #[arg(long)]
    pe0: Option<f64>,
    /// Relative tolerance of the adaptive quadrature (default 1e-8)
    #[arg(long = "rel-tol")]
    rel_tol: Option<f64>,
    /// Worker threads for sweep/map grids (default 1; results are
    /// identical to the serial ones)
    #[arg(long)]
    threads: Option<usize>,
    /// Output path (default stdout)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Output format for tabular commands
    #[arg(long, value_parser = ["csv", "json"])]
    format: Option<String>,
    /// JSON config file with the same keys; flags override file values
    #[arg(long)]
    config: Option<PathBuf>,
    /// Surface-plasmon frequency in rad/s; switches --omega0/--gamma-c to
    /// rad/s, --d to metres and --v to m/s, normalized at the boundary
    #[arg(long = "si-omega-sp")]
    si_omega_sp: Option<f64>,
    /// Dipole magnitude |gamma| in C*m; records the SI scales Gamma_0 and
    /// |F_0| in the output header
    #[arg(long = "si-dipole")]
    si_dipole: Option<f64>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Force vs one swept variable (v, gamma_c, omega0, d or pe)
    ForceSweep {
        #[command(flatten)]
        common: CommonArgs,
        /// Sweep request var:min:max:steps[:log]
        #[arg(long)]
        sweep: Option<String>,
    },
    /// Population and force along a time grid (units 1/Gamma_0)
    Evolve {
        #[command(flatten)]
        common: CommonArgs,
        /// Final time (units of 1/Gamma_0)
        #[arg(long)]
        tmax: Option<f64>,
        /// Number of time samples (including t = 0)
        #[arg(long)]
        steps: Option<usize>,
    },
    /// Force over an (omega0, d) grid at fixed v
    Map {
        #[command(flatten)]
        common: CommonArgs,
        /// omega0 axis as min:max:steps
        #[arg(long = "omega0-grid")]
        omega0_grid: Option<String>,
        /// d axis as min:max:steps
        #[arg(long = "d-grid")]
        d_grid: Option<String>,
    },
    /// Decay rates, stationary population and plasmon wave numbers (JSON)
    Rates {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Run the full oracle/property suite; exit 0 iff all checks pass
    Validate {
        /// Output path (default stdout)
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Flag value, else config-file value, else default.
fn pick<T: Clone>(flag: &Option<T>, file: &Option<T>, default: T) -> T {
    flag.clone().or_else(|| file.clone()).unwrap_or(default)
}

struct Resolved {
    raw: RawParams,
    threads: usize,
    out: Option<PathBuf>,
    format: Format,
    tmax: Option<f64>,
    steps: Option<usize>,
    omega0_grid: Option<String>,
    d_grid: Option<String>,
}

fn resolve(common: &CommonArgs) -> Result<(Resolved, params::Params), CliError> {
    let file = match &common.config {
        Some(path) => FileConfig::load(&path.to_string_lossy())?,
        None => FileConfig::default(),
    };
    let raw = RawParams {
        omega0: pick(&common.omega0, &file.omega0, 0.1),
        d: pick(&common.d, &file.d, 0.1),
        v: pick(&common.v, &file.v, 0.05),
        gamma_c: common.gamma_c.or(file.gamma_c),
        lossless: common.lossless || file.lossless.unwrap_or(false),
        gamma: pick(&common.gamma, &file.gamma, "0+0i,0+0i,1+0i".to_string()),
        pe: pick(&common.pe, &file.pe, 0.0),
        pe0: pick(&common.pe0, &file.pe0, 0.0),
        rel_tol: common.rel_tol.or(file.rel_tol),
        si_omega_sp: common.si_omega_sp.or(file.si_omega_sp),
        si_dipole: common.si_dipole.or(file.si_dipole),
    };
    let threads = pick(&common.threads, &file.threads, 1).max(1);
    let format = match pick(&common.format, &file.format, "csv".to_string()).as_str() {
        "csv" => Format::Csv,
        "json" => Format::Json,
        other => return Err(CliError::Usage(format!("unknown format {other:?}"))),
    };
    let out = common
        .out
        .clone()
        .or_else(|| file.out.as_ref().map(PathBuf::from));
    let p = raw.resolve()?;
    Ok((
        Resolved {
            raw,
            threads,
            out,
            format,
            tmax: file.tmax,
            steps: file.steps,
            omega0_grid: file.omega0_grid,
            d_grid: file.d_grid,
        },
        p,
    ))
}

fn open_out(path: &Option<PathBuf>) -> Result<Box<dyn Write>, CliError> {
    match path {
        None => Ok(Box::new(std::io::stdout().lock())),
        Some(p) => {
            let f = fs::File::create(p)
                .map_err(|e| CliError::Io(format!("cannot create {}: {e}", p.display())))?;
            Ok(Box::new(std::io::BufWriter::new(f)))
        }
    }
}

fn run() -> Result<u8, CliError> {
    let cli = Cli::parse();
    match cli.command {
        Command::ForceSweep { common, sweep } => {
            // The sweep request may live in the config file, and a gamma_c
            // sweep carries its own substrate per row, so settle the sweep
            // string before the substrate flags are validated.
            let file_sweep = match &common.config {
                Some(path) => FileConfig::load(&path.to_string_lossy())?.sweep,
                None => None,
            };
            let sweep_str = sweep
                .or(file_sweep)
                .ok_or_else(|| CliError::Usage("force-sweep requires --sweep".into()))?;
            let sweep = SweepRange::parse(&sweep_str)?;

            let mut common = common;
            if sweep.var == params::SweepVar::GammaC && common.gamma_c.is_none() && !common.lossless
            {
                common.gamma_c = Some(0.0);
            }
            let (res, p) = resolve(&common)?;
            let (sheet, any_failed) =
                commands::cmd_force_sweep(&p, &sweep, res.raw.rel_tol, res.threads)?;
            sheet.write(res.format, &mut *open_out(&res.out)?)?;
            Ok(if any_failed { 3 } else { 0 })
        }
        Command::Evolve {
            common,
            tmax,
            steps,
        } => {
            let (res, p) = resolve(&common)?;
            let tmax = tmax
                .or(res.tmax)
                .ok_or_else(|| CliError::Usage("evolve requires --tmax".into()))?;
            let steps = steps.or(res.steps).unwrap_or(200);
            let (sheet, _) = commands::cmd_evolve(&p, tmax, steps)?;
            sheet.write(res.format, &mut *open_out(&res.out)?)?;
            Ok(0)
        }
        Command::Map {
            common,
            omega0_grid,
            d_grid,
        } => {
            let (res, p) = resolve(&common)?;
            let w_axis = params::parse_axis(
                &omega0_grid
                    .or(res.omega0_grid)
                    .ok_or_else(|| CliError::Usage("map requires --omega0-grid".into()))?,
                "--omega0-grid",
            )?;
            let d_axis = params::parse_axis(
                &d_grid
                    .or(res.d_grid)
                    .ok_or_else(|| CliError::Usage("map requires --d-grid".into()))?,
                "--d-grid",
            )?;
            let (sheet, any_failed) = commands::cmd_map(&p, w_axis, d_axis, res.threads)?;
            sheet.write(res.format, &mut *open_out(&res.out)?)?;
            Ok(if any_failed { 3 } else { 0 })
        }
        Command::Rates { common } => {
            let (res, p) = resolve(&common)?;
            let rates = commands::cmd_rates(&p)?;
            let mut w = open_out(&res.out)?;
            serde_json::to_writer_pretty(&mut w, &rates)
                .map_err(|e| CliError::Io(e.to_string()))?;
            writeln!(w).map_err(|e| CliError::Io(e.to_string()))?;
            Ok(0)
        }
        Command::Validate { out } => {
            let mut w = open_out(&out)?;
            let all_passed = commands::cmd_validate(&mut *w)?;
            Ok(if all_passed { 0 } else { 1 })
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {}", err.message());
            ExitCode::from(err.exit_code())
        }
    }
}
