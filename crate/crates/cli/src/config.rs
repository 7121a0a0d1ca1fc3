//! Run configuration, figure presets and the JSON metadata schema.

use clap::ValueEnum;
use serde::{Deserialize, Serialize};
use two_ion_jcm::MotionalState;

/// Rabi frequency Ω/2π in kHz shared by every figure preset.
pub const PRESET_RABI_KHZ: f64 = 500.0;

/// Factor between the estimated first revival time and a preset's default
/// time span.
pub const T_MAX_REVIVALS: f64 = 4.0;

/// Envelope window length in periods of the distribution-averaged chain
/// frequency.
pub const WINDOW_PERIODS: f64 = 3.25;

/// One fully resolved simulation request, in user units (µs, kHz).
#[derive(Clone, Debug, PartialEq)]
pub struct SimulationConfig {
    pub eta: f64,
    pub rabi_khz: f64,
    pub k: usize,
    pub initial: MotionalState<f64>,
    pub t_max_us: f64,
    pub t_points: usize,
    pub tail_tol: f64,
    /// Explicit truncation; chosen automatically when absent.
    pub n_max: Option<usize>,
}

/// The six reference parameter bundles.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FigureId {
    Fig1,
    Fig2a,
    Fig2b,
    Fig3a,
    Fig3b,
    Fig3c,
}

/// Physical part of a figure preset plus its sampling density.
#[derive(Clone, Copy, Debug)]
pub struct FigurePreset {
    pub eta: f64,
    pub k: usize,
    pub alpha_sq: f64,
    pub t_points: usize,
}

impl FigureId {
    pub const ALL: [FigureId; 6] =
        [FigureId::Fig1, FigureId::Fig2a, FigureId::Fig2b, FigureId::Fig3a, FigureId::Fig3b, FigureId::Fig3c];

    /// File-name stem and CLI spelling.
    pub fn name(self) -> &'static str {
        match self {
            FigureId::Fig1 => "fig1",
            FigureId::Fig2a => "fig2a",
            FigureId::Fig2b => "fig2b",
            FigureId::Fig3a => "fig3a",
            FigureId::Fig3b => "fig3b",
            FigureId::Fig3c => "fig3c",
        }
    }

    /// Parameter bundle of this figure. Sampling densities are chosen so
    /// every preset resolves its carrier oscillation; fig3b needs more
    /// points because its revival estimate is two orders above its carrier
    /// period.
    pub fn preset(self) -> FigurePreset {
        match self {
            FigureId::Fig1 => FigurePreset { eta: 0.1, k: 1, alpha_sq: 10.0, t_points: 4000 },
            FigureId::Fig2a => FigurePreset { eta: 0.2, k: 1, alpha_sq: 50.0, t_points: 2000 },
            FigureId::Fig2b => FigurePreset { eta: 0.4, k: 1, alpha_sq: 80.0, t_points: 2000 },
            FigureId::Fig3a => FigurePreset { eta: 0.1, k: 2, alpha_sq: 20.0, t_points: 2000 },
            FigureId::Fig3b => FigurePreset { eta: 0.2, k: 2, alpha_sq: 50.0, t_points: 8000 },
            FigureId::Fig3c => FigurePreset { eta: 0.4, k: 2, alpha_sq: 80.0, t_points: 2000 },
        }
    }
}

/// Top-level JSON document written next to a CSV.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunMetadata {
    pub params: ParamsMetadata,
    pub initial: MotionalState<f64>,
    pub grid: GridMetadata,
    pub tail_bound: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub envelope: Option<EnvelopeMetadata>,
}

/// Physical parameters as they went into the run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ParamsMetadata {
    pub eta: f64,
    pub rabi_khz: f64,
    pub k: usize,
    pub n_max: usize,
    pub tail_tol: f64,
}

/// Time-grid description.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridMetadata {
    pub t_max_us: f64,
    pub t_points: usize,
}

/// Envelope analysis of the run, for the middle and upper Dicke levels.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EnvelopeMetadata {
    pub window_us: f64,
    pub rho_00: LevelEnvelope,
    pub rho_11: LevelEnvelope,
}

/// Per-level envelope summary, in microseconds.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LevelEnvelope {
    pub collapse_time_us: Option<f64>,
    pub revival_time_us: Option<f64>,
    pub revival_contrast: f64,
    pub window_centers_us: Vec<f64>,
    pub amplitudes: Vec<f64>,
}

impl RunMetadata {
    /// Reconstruct the configuration this metadata was produced from; the
    /// echoed n_max is pinned so the rerun reproduces the file exactly.
    pub fn to_config(&self) -> SimulationConfig {
        SimulationConfig {
            eta: self.params.eta,
            rabi_khz: self.params.rabi_khz,
            k: self.params.k,
            initial: self.initial,
            t_max_us: self.grid.t_max_us,
            t_points: self.grid.t_points,
            tail_tol: self.params.tail_tol,
            n_max: Some(self.params.n_max),
        }
    }
}
