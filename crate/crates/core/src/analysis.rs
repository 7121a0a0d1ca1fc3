//! Collapse and revival quantification.
//!
//! The trace is cut into consecutive windows of fixed duration and each
//! window is reduced to its peak-to-peak amplitude. A collapse is the first
//! window whose amplitude falls below [`COLLAPSE_FRACTION`] of the first
//! window's amplitude; a revival is the first later window that climbs back
//! above [`REVIVAL_FRACTION`] of it. The window should span at least three
//! periods of the dominant chain frequency so that each amplitude estimate
//! sees whole oscillations; [`mean_chain_frequency`] gives a robust scale
//! for that choice even when √(A²+B²) at the mean phonon number happens to
//! sit near a zero of the Laguerre factor.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coupling::{chain_coefficients, ModelParams};
use crate::dynamics::PopulationTrace;
use crate::{DickeLevel, Real};

/// Amplitude fraction below which a window counts as collapsed.
pub const COLLAPSE_FRACTION: f64 = 0.2;

/// Amplitude fraction above which a later window counts as revived.
pub const REVIVAL_FRACTION: f64 = 0.5;

/// Windows required for the envelope to mean anything.
const MIN_WINDOWS: usize = 3;

/// Envelope analysis failures.
#[derive(Clone, Debug, PartialEq, Error)]
pub enum AnalysisError {
    #[error("window duration must be positive, finite and no finer than the sample spacing")]
    InvalidWindow,
    #[error("trace spans only {available} full windows, need at least {required}")]
    InsufficientWindows { available: usize, required: usize },
}

/// Windowed peak-to-peak amplitudes of one population trace.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EnvelopeReport<T: Real> {
    /// Center time of each window (seconds).
    pub window_centers: Vec<T>,
    /// max − min of the population within each window.
    pub amplitudes: Vec<T>,
    /// First window center whose amplitude dropped below
    /// `COLLAPSE_FRACTION × amplitudes[0]`, if any.
    pub collapse_time: Option<T>,
    /// First window center after the collapse whose amplitude exceeded
    /// `REVIVAL_FRACTION × amplitudes[0]`, if any.
    pub revival_time: Option<T>,
}

impl<T: Real> EnvelopeReport<T> {
    /// Ratio of the largest amplitude seen after the quietest window in the
    /// first half of the observation to the initial amplitude. Near zero for
    /// a collapse that never rebuilds; order one for a pronounced revival.
    /// Zero when undefined (empty or flat-zero envelope).
    pub fn revival_contrast(&self) -> T {
        let first = match self.amplitudes.first() {
            Some(&a) if a > T::zero() => a,
            _ => return T::zero(),
        };
        if self.amplitudes.len() < 2 {
            return T::zero();
        }
        let half = (self.amplitudes.len() / 2).max(1);
        let mut quietest = 1;
        for (i, &a) in self.amplitudes.iter().enumerate().take(half + 1).skip(1) {
            if a < self.amplitudes[quietest] {
                quietest = i;
            }
        }
        self.amplitudes[quietest + 1..]
            .iter()
            .fold(T::zero(), |acc, &a| acc.max(a))
            / first
    }
}

/// Windowed peak-to-peak envelope of one Dicke level's occupation.
///
/// Windows partition `[t0, t0 + n·window)`; a trailing partial window is
/// dropped. Fails unless at least three full windows fit.
pub fn envelope<T: Real>(
    trace: &PopulationTrace<T>,
    which: DickeLevel,
    window: T,
) -> Result<EnvelopeReport<T>, AnalysisError> {
    if !window.is_finite() || window <= T::zero() {
        return Err(AnalysisError::InvalidWindow);
    }
    let times = &trace.times;
    let values = trace.level(which);
    let start = times[0];
    let span = *times.last().expect("populations never returns an empty grid") - start;
    let available = (span / window).to_usize().unwrap_or(0);
    if available < MIN_WINDOWS {
        return Err(AnalysisError::InsufficientWindows { available, required: MIN_WINDOWS });
    }
    if available >= times.len() {
        return Err(AnalysisError::InvalidWindow);
    }

    let mut lows = vec![T::infinity(); available];
    let mut highs = vec![T::neg_infinity(); available];
    for (&t, &v) in times.iter().zip(values.iter()) {
        let idx = ((t - start) / window).to_usize().unwrap_or(usize::MAX);
        if idx < available {
            lows[idx] = lows[idx].min(v);
            highs[idx] = highs[idx].max(v);
        }
    }

    let half = T::from_f64(0.5).unwrap();
    let mut window_centers = Vec::with_capacity(available);
    let mut amplitudes = Vec::with_capacity(available);
    for i in 0..available {
        // every window contains at least its left edge sample only for
        // grids finer than the window; an empty one contributes nothing
        if highs[i] >= lows[i] {
            window_centers.push(start + window * (T::from_usize(i).unwrap() + half));
            amplitudes.push(highs[i] - lows[i]);
        }
    }
    if amplitudes.len() < MIN_WINDOWS {
        return Err(AnalysisError::InsufficientWindows { available: amplitudes.len(), required: MIN_WINDOWS });
    }

    let initial = amplitudes[0];
    let collapse_level = T::from_f64(COLLAPSE_FRACTION).unwrap() * initial;
    let revival_level = T::from_f64(REVIVAL_FRACTION).unwrap() * initial;
    let collapse_time = window_centers
        .iter()
        .zip(amplitudes.iter())
        .find(|(_, &a)| a < collapse_level)
        .map(|(&c, _)| c);
    let revival_time = collapse_time.and_then(|collapsed| {
        window_centers
            .iter()
            .zip(amplitudes.iter())
            .find(|(&c, &a)| c > collapsed && a > revival_level)
            .map(|(&c, _)| c)
    });

    Ok(EnvelopeReport { window_centers, amplitudes, collapse_time, revival_time })
}

/// Oscillation frequency √(A(n)² + B(n)²) of the chain with bottom index n.
pub fn chain_frequency<T: Real>(params: &ModelParams<T>, n: usize) -> T {
    chain_coefficients(params, n).frequency()
}

/// Chain frequency averaged over a phonon distribution. A stable window
/// scale: single-chain frequencies can vanish at zeros of the Laguerre
/// factor, the distribution average cannot.
pub fn mean_chain_frequency<T: Real>(params: &ModelParams<T>, weights: &[T]) -> T {
    debug_assert!(weights.len() <= params.n_max + 1);
    let mut acc = T::zero();
    let mut total = T::zero();
    for (n, &w) in weights.iter().enumerate() {
        if w != T::zero() {
            acc += w * chain_frequency(params, n);
            total += w;
        }
    }
    if total > T::zero() {
        acc / total
    } else {
        T::zero()
    }
}

/// First-order rephasing estimate 2π/|Δ| with
/// Δ = √(A(n̄+1)²+B(n̄+1)²) − √(A(n̄)²+B(n̄)²).
///
/// This is the time at which neighboring-chain phases realign for an
/// observable oscillating at the chain frequency itself. The middle-level
/// occupation oscillates at twice the chain frequency (its per-chain signal
/// is sin²), so its first revival sits at half this estimate. `None` when
/// the two frequencies are degenerate.
pub fn revival_estimate<T: Real>(params: &ModelParams<T>, n_bar: usize) -> Option<T> {
    let delta = (chain_frequency(params, n_bar + 1) - chain_frequency(params, n_bar)).abs();
    if delta > T::zero() {
        Some(T::TAU() / delta)
    } else {
        None
    }
}
