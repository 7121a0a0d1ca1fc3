use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand};
use two_ion_jcm::MotionalState;
use two_ion_jcm_cli::config::{FigureId, SimulationConfig};
use two_ion_jcm_cli::output::{render_csv, render_json};
use two_ion_jcm_cli::pipeline::{figure_config, figure_envelope, metadata, simulate, verify};
use two_ion_jcm_cli::svg::render_chart;
use two_ion_jcm_cli::CliError;

/// Collapse and revival dynamics of two trapped ions driven on the k-th red
/// sideband of their center-of-mass mode.
#[derive(Parser)]
#[command(name = "two-ion-jcm", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the closed-form population traces and write them as CSV.
    Simulate(SimulateArgs),
    /// Compare the closed form against the brute-force Fock-space evolution.
    Verify(VerifyArgs),
    /// Reproduce one of the reference parameter sets (CSV + JSON + SVG).
    Figure(FigureArgs),
}

/// Physical flags shared by `simulate` and `verify`.
#[derive(Args)]
#[command(group = ArgGroup::new("initial").required(true).multiple(false))]
struct PhysicalArgs {
    /// Lamb-Dicke parameter (dimensionless, > 0).
    #[arg(long)]
    eta: f64,
    /// Rabi frequency Ω/2π in kHz.
    #[arg(long, value_name = "KHZ")]
    rabi_khz: f64,
    /// Red-sideband order (k phonons absorbed per excitation).
    #[arg(long)]
    k: usize,
    /// Coherent motional state with this mean phonon number |α|².
    #[arg(long, group = "initial")]
    alpha_sq: Option<f64>,
    /// Fock motional state |n0⟩.
    #[arg(long, value_name = "N0", group = "initial")]
    fock: Option<usize>,
    /// Acceptable probability weight beyond the Fock truncation.
    #[arg(long, default_value_t = 1e-12)]
    tail_tol: f64,
    /// Explicit Fock truncation (chosen automatically when omitted).
    #[arg(long)]
    n_max: Option<usize>,
}

impl PhysicalArgs {
    fn config(&self, t_max_us: f64, t_points: usize) -> SimulationConfig {
        let initial = match (self.alpha_sq, self.fock) {
            (Some(alpha_sq), None) => MotionalState::Coherent { alpha_sq },
            (None, Some(n0)) => MotionalState::Fock { n0 },
            _ => unreachable!("clap enforces exactly one initial-state flag"),
        };
        SimulationConfig {
            eta: self.eta,
            rabi_khz: self.rabi_khz,
            k: self.k,
            initial,
            t_max_us,
            t_points,
            tail_tol: self.tail_tol,
            n_max: self.n_max,
        }
    }
}

#[derive(Args)]
struct SimulateArgs {
    #[command(flatten)]
    physical: PhysicalArgs,
    /// Length of the simulated interval in microseconds.
    #[arg(long, value_name = "US")]
    t_max_us: f64,
    /// Number of uniform time samples (including both endpoints).
    #[arg(long)]
    t_points: usize,
    /// CSV output path.
    #[arg(long)]
    out: PathBuf,
    /// Optional JSON metadata path.
    #[arg(long)]
    json: Option<PathBuf>,
    /// Optional SVG chart path.
    #[arg(long)]
    svg: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    physical: PhysicalArgs,
    /// Length of the compared interval in microseconds.
    #[arg(long, value_name = "US")]
    t_max_us: f64,
    /// Number of uniform time samples.
    #[arg(long)]
    t_points: usize,
    /// Largest acceptable absolute population difference.
    #[arg(long)]
    tol: f64,
}

#[derive(Args)]
struct FigureArgs {
    /// Which reference figure to reproduce.
    #[arg(value_enum)]
    id: FigureId,
    /// Directory the CSV/JSON/SVG files are written into.
    #[arg(long)]
    out_dir: PathBuf,
    /// Override the preset time span (microseconds).
    #[arg(long, value_name = "US")]
    t_max_us: Option<f64>,
    /// Override the preset sampling density.
    #[arg(long)]
    t_points: Option<usize>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            err.exit_code()
        }
    }
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Simulate(args) => run_simulate(args),
        Command::Verify(args) => run_verify(args),
        Command::Figure(args) => run_figure(args),
    }
}

fn run_simulate(args: SimulateArgs) -> Result<(), CliError> {
    let cfg = args.physical.config(args.t_max_us, args.t_points);
    let out = simulate(&cfg)?;
    std::fs::write(&args.out, render_csv(&out))?;
    println!(
        "wrote {}: {} samples, n_max = {}, tail bound = {:.3e}",
        args.out.display(),
        out.times_us.len(),
        out.params.n_max,
        out.trace.tail_bound
    );
    if let Some(path) = &args.json {
        std::fs::write(path, render_json(&metadata(&cfg, &out, None)))?;
        println!("wrote {}", path.display());
    }
    if let Some(path) = &args.svg {
        std::fs::write(path, render_chart(&out))?;
        println!("wrote {}", path.display());
    }
    Ok(())
}

fn run_verify(args: VerifyArgs) -> Result<(), CliError> {
    if !args.tol.is_finite() || args.tol <= 0.0 {
        return Err(CliError::Usage(format!("--tol must be positive and finite, got {}", args.tol)));
    }
    let cfg = args.physical.config(args.t_max_us, args.t_points);
    let report = verify(&cfg)?;
    println!(
        "max absolute population error: {:.3e} (tolerance {:.3e}, n_max = {}, oracle dim = {})",
        report.max_error, args.tol, report.dynamics_n_max, report.oracle_dim
    );
    if report.max_error > args.tol {
        return Err(CliError::VerifyMismatch { max_error: report.max_error, tolerance: args.tol });
    }
    Ok(())
}

fn run_figure(args: FigureArgs) -> Result<(), CliError> {
    let cfg = figure_config(args.id, args.t_max_us, args.t_points)?;
    let out = simulate(&cfg)?;
    let envelope = figure_envelope(&out)?;
    std::fs::create_dir_all(&args.out_dir)?;
    let stem = args.out_dir.join(args.id.name());

    let csv_path = stem.with_extension("csv");
    std::fs::write(&csv_path, render_csv(&out))?;
    let json_path = stem.with_extension("json");
    std::fs::write(&json_path, render_json(&metadata(&cfg, &out, Some(envelope.clone()))))?;
    let svg_path = stem.with_extension("svg");
    std::fs::write(&svg_path, render_chart(&out))?;

    println!(
        "wrote {}, {}, {} (t_max = {:.1} us, {} samples)",
        csv_path.display(),
        json_path.display(),
        svg_path.display(),
        cfg.t_max_us,
        cfg.t_points
    );
    let summary = |name: &str, level: &two_ion_jcm_cli::config::LevelEnvelope| {
        println!(
            "{name}: collapse = {}, revival = {}, contrast = {:.3}",
            level
                .collapse_time_us
                .map(|t| format!("{t:.1} us"))
                .unwrap_or_else(|| "not found".into()),
            level
                .revival_time_us
                .map(|t| format!("{t:.1} us"))
                .unwrap_or_else(|| "not found".into()),
            level.revival_contrast
        );
    };
    summary("rho_00", &envelope.rho_00);
    summary("rho_11", &envelope.rho_11);
    Ok(())
}
