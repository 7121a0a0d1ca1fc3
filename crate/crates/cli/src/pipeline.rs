//! Shared machinery behind the subcommands.

use std::f64::consts::TAU;

use two_ion_jcm::analysis::{envelope, mean_chain_frequency, revival_estimate, EnvelopeReport};
use two_ion_jcm::dynamics::{phonon_distribution, populations, required_n_max};
use two_ion_jcm::oracle::{self, build_hamiltonian, evolve_mixture};
use two_ion_jcm::{DickeLevel, ModelParams, MotionalState, PopulationTrace};

use crate::config::{
    EnvelopeMetadata, FigureId, GridMetadata, LevelEnvelope, ParamsMetadata, RunMetadata, SimulationConfig,
    PRESET_RABI_KHZ, T_MAX_REVIVALS, WINDOW_PERIODS,
};
use crate::CliError;

/// A finished simulation: the trace plus the microsecond grid it was
/// sampled on (kept separate so CSV output never round-trips through
/// seconds).
pub struct SimulationOutput {
    pub times_us: Vec<f64>,
    pub trace: PopulationTrace<f64>,
    pub params: ModelParams<f64>,
}

/// Outcome of a dynamics-versus-oracle comparison.
pub struct VerifyReport {
    pub max_error: f64,
    pub dynamics_n_max: usize,
    pub oracle_dim: usize,
}

fn validate_grid(cfg: &SimulationConfig) -> Result<(), CliError> {
    if !cfg.t_max_us.is_finite() || cfg.t_max_us <= 0.0 {
        return Err(CliError::Usage(format!("--t-max-us must be positive and finite, got {}", cfg.t_max_us)));
    }
    if cfg.t_points < 2 {
        return Err(CliError::Usage(format!("--t-points must be at least 2, got {}", cfg.t_points)));
    }
    Ok(())
}

/// Physical parameters in internal units, with the truncation resolved.
pub fn resolve_params(cfg: &SimulationConfig) -> Result<ModelParams<f64>, CliError> {
    if let MotionalState::Coherent { alpha_sq } = cfg.initial {
        if !alpha_sq.is_finite() || alpha_sq < 0.0 {
            return Err(CliError::Usage(format!("--alpha-sq must be nonnegative and finite, got {alpha_sq}")));
        }
    }
    let rabi = TAU * cfg.rabi_khz * 1e3;
    let floor = 2 * cfg.k.max(1);
    let n_max = match cfg.n_max {
        Some(explicit) => explicit,
        None => match cfg.initial {
            MotionalState::Coherent { alpha_sq } => required_n_max(alpha_sq, cfg.tail_tol)?.max(floor),
            MotionalState::Fock { n0 } => n0.max(floor),
        },
    };
    Ok(ModelParams::new(cfg.eta, rabi, cfg.k, n_max, cfg.tail_tol)?)
}

/// Uniform grid of `points` times from 0 to `t_max_us` inclusive.
pub fn time_grid_us(t_max_us: f64, points: usize) -> Vec<f64> {
    (0..points).map(|i| t_max_us * i as f64 / (points - 1) as f64).collect()
}

/// Run the closed-form dynamics for `cfg`.
pub fn simulate(cfg: &SimulationConfig) -> Result<SimulationOutput, CliError> {
    validate_grid(cfg)?;
    let params = resolve_params(cfg)?;
    let times_us = time_grid_us(cfg.t_max_us, cfg.t_points);
    let seconds: Vec<f64> = times_us.iter().map(|t| t * 1e-6).collect();
    let trace = populations(&params, &cfg.initial, &seconds)?;
    Ok(SimulationOutput { times_us, trace, params })
}

/// Run both routes for `cfg` and report the largest population difference.
pub fn verify(cfg: &SimulationConfig) -> Result<VerifyReport, CliError> {
    validate_grid(cfg)?;
    let params = resolve_params(cfg)?;
    let times_us = time_grid_us(cfg.t_max_us, cfg.t_points);
    let seconds: Vec<f64> = times_us.iter().map(|t| t * 1e-6).collect();
    let closed = populations(&params, &cfg.initial, &seconds)?;

    let oracle_params = params.with_n_max(params.n_max + oracle::TRUNCATION_BUFFER)?;
    let weights = phonon_distribution(&cfg.initial, params.n_max, params.tail_tol)?;
    let hamiltonian = build_hamiltonian(&oracle_params);
    let brute = evolve_mixture(&hamiltonian, &cfg.initial, &weights, &seconds)?;

    Ok(VerifyReport {
        max_error: closed.max_abs_difference(&brute),
        dynamics_n_max: params.n_max,
        oracle_dim: hamiltonian.dim(),
    })
}

/// Configuration a figure preset expands to. Only the time grid may be
/// overridden; the physical fields are the preset's by definition.
pub fn figure_config(
    id: FigureId,
    t_max_us: Option<f64>,
    t_points: Option<usize>,
) -> Result<SimulationConfig, CliError> {
    let preset = id.preset();
    let initial = MotionalState::Coherent { alpha_sq: preset.alpha_sq };
    let mut cfg = SimulationConfig {
        eta: preset.eta,
        rabi_khz: PRESET_RABI_KHZ,
        k: preset.k,
        initial,
        t_max_us: 0.0,
        t_points: t_points.unwrap_or(preset.t_points),
        tail_tol: 1e-12,
        n_max: None,
    };
    cfg.t_max_us = match t_max_us {
        Some(explicit) => explicit,
        None => default_t_max_us(&cfg, preset.alpha_sq)?,
    };
    Ok(cfg)
}

/// Default figure time span: a fixed number of estimated revival times.
fn default_t_max_us(cfg: &SimulationConfig, alpha_sq: f64) -> Result<f64, CliError> {
    let params = resolve_params(cfg)?;
    let n_bar = alpha_sq.round() as usize;
    let t_rev = revival_estimate(&params, n_bar)
        .ok_or_else(|| CliError::Numerical(format!("degenerate chain frequencies around n = {n_bar}")))?;
    Ok(T_MAX_REVIVALS * t_rev * 1e6)
}

/// Envelope window for a trace: a fixed number of periods of the
/// distribution-averaged chain frequency (seconds).
pub fn envelope_window(out: &SimulationOutput) -> Result<f64, CliError> {
    let weights = phonon_distribution(&out.trace.initial, out.params.n_max, out.params.tail_tol)?;
    let mean = mean_chain_frequency(&out.params, &weights);
    if mean <= 0.0 {
        return Err(CliError::Numerical("vanishing mean chain frequency".into()));
    }
    Ok(WINDOW_PERIODS * TAU / mean)
}

fn level_envelope(report: &EnvelopeReport<f64>) -> LevelEnvelope {
    LevelEnvelope {
        collapse_time_us: report.collapse_time.map(|t| t * 1e6),
        revival_time_us: report.revival_time.map(|t| t * 1e6),
        revival_contrast: report.revival_contrast(),
        window_centers_us: report.window_centers.iter().map(|t| t * 1e6).collect(),
        amplitudes: report.amplitudes.clone(),
    }
}

/// Envelope analysis of the middle and upper levels of a finished run.
pub fn figure_envelope(out: &SimulationOutput) -> Result<EnvelopeMetadata, CliError> {
    let window = envelope_window(out)?;
    let rho_00 = envelope(&out.trace, DickeLevel::Zero, window)?;
    let rho_11 = envelope(&out.trace, DickeLevel::PlusOne, window)?;
    Ok(EnvelopeMetadata {
        window_us: window * 1e6,
        rho_00: level_envelope(&rho_00),
        rho_11: level_envelope(&rho_11),
    })
}

/// Metadata document for a finished run.
pub fn metadata(cfg: &SimulationConfig, out: &SimulationOutput, envelope: Option<EnvelopeMetadata>) -> RunMetadata {
    RunMetadata {
        params: ParamsMetadata {
            eta: cfg.eta,
            rabi_khz: cfg.rabi_khz,
            k: cfg.k,
            n_max: out.params.n_max,
            tail_tol: cfg.tail_tol,
        },
        initial: cfg.initial,
        grid: GridMetadata { t_max_us: cfg.t_max_us, t_points: cfg.t_points },
        tail_bound: out.trace.tail_bound,
        envelope,
    }
}
