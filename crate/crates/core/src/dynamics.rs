//! Population traces of the three Dicke levels.
//!
//! Both ions start in the ground state, so the initial density matrix is a
//! phonon-diagonal mixture over the bottom chain states |−1, n⟩ and every
//! chain contributes its closed-form populations weighted by p(n). The sum
//! over chains runs in ascending n so that floating-point rounding is
//! reproducible regardless of how the time grid is parallelized.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coupling::{chain_coefficients, ChainClass, ModelParams};
use crate::{real_from_usize, Real};

/// Extra headroom added on top of the smallest tail-compliant truncation.
pub const TRUNCATION_SAFETY_MARGIN: usize = 10;

/// Phonon indices the automatic truncation search is willing to explore.
const TRUNCATION_SEARCH_LIMIT: usize = 1_000_000;

/// Motional input state of the center-of-mass mode.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MotionalState<T: Real> {
    /// Coherent state with mean phonon number |α|².
    Coherent { alpha_sq: T },
    /// Number state |n0⟩.
    Fock { n0: usize },
}

/// Motional input together with its truncated phonon distribution.
#[derive(Clone, Debug, PartialEq)]
pub struct InitialMotionalState<T: Real> {
    /// What the distribution was derived from.
    pub kind: MotionalState<T>,
    /// p(n) for n = 0..=n_max.
    pub weights: Vec<T>,
    /// Probability discarded by the truncation, max(0, 1 − Σ p(n)).
    pub tail_bound: T,
}

/// Dynamics-level failures.
#[derive(Clone, Debug, PartialEq, Error)]
pub enum DynamicsError {
    #[error("truncation insufficient: n_max must be at least {required_n_max}")]
    TruncationInsufficient { required_n_max: usize },
    #[error("truncation search exceeded {limit} phonons; mean phonon number too large")]
    TruncationSearchExceeded { limit: usize },
    #[error("time grid is empty")]
    EmptyTimeGrid,
    #[error("time grid must be nonnegative, finite and nondecreasing (offending index {0})")]
    InvalidTimeGrid(usize),
}

/// Smallest truncation for which the coherent-state tail drops below
/// `tail_tol`, plus a fixed safety margin.
pub fn required_n_max<T: Real>(alpha_sq: T, tail_tol: T) -> Result<usize, DynamicsError> {
    if alpha_sq == T::zero() {
        return Ok(TRUNCATION_SAFETY_MARGIN);
    }
    let mut ln_p = -alpha_sq;
    let mut cumulative = T::zero();
    for n in 0..TRUNCATION_SEARCH_LIMIT {
        cumulative += ln_p.exp();
        if T::one() - cumulative < tail_tol {
            return Ok(n + TRUNCATION_SAFETY_MARGIN);
        }
        ln_p += alpha_sq.ln() - real_from_usize::<T>(n + 1).ln();
    }
    Err(DynamicsError::TruncationSearchExceeded { limit: TRUNCATION_SEARCH_LIMIT })
}

/// Phonon-number distribution p(n), n = 0..=n_max.
///
/// Coherent states use the log-space recursion
/// `ln p(n+1) = ln p(n) + ln|α|² − ln(n+1)`; Fock states are a delta. If the
/// truncated weights miss more than `tail_tol` of the distribution the
/// truncation is reported as insufficient together with the n_max that would
/// suffice.
pub fn phonon_distribution<T: Real>(
    kind: &MotionalState<T>,
    n_max: usize,
    tail_tol: T,
) -> Result<Vec<T>, DynamicsError> {
    match *kind {
        MotionalState::Fock { n0 } => {
            if n0 > n_max {
                return Err(DynamicsError::TruncationInsufficient { required_n_max: n0 });
            }
            let mut weights = vec![T::zero(); n_max + 1];
            weights[n0] = T::one();
            Ok(weights)
        }
        MotionalState::Coherent { alpha_sq } => {
            if alpha_sq == T::zero() {
                let mut weights = vec![T::zero(); n_max + 1];
                weights[0] = T::one();
                return Ok(weights);
            }
            let mut weights = Vec::with_capacity(n_max + 1);
            let mut ln_p = -alpha_sq;
            for n in 0..=n_max {
                weights.push(ln_p.exp());
                ln_p += alpha_sq.ln() - real_from_usize::<T>(n + 1).ln();
            }
            let total: T = weights.iter().copied().sum();
            if T::one() - total > tail_tol {
                return Err(DynamicsError::TruncationInsufficient {
                    required_n_max: required_n_max(alpha_sq, tail_tol)?,
                });
            }
            Ok(weights)
        }
    }
}

impl<T: Real> InitialMotionalState<T> {
    /// Derive the truncated distribution for `kind` under `params`.
    pub fn build(kind: MotionalState<T>, params: &ModelParams<T>) -> Result<Self, DynamicsError> {
        let weights = phonon_distribution(&kind, params.n_max, params.tail_tol)?;
        let total: T = weights.iter().copied().sum();
        let tail_bound = (T::one() - total).max(T::zero());
        Ok(Self { kind, weights, tail_bound })
    }
}

/// Time series of the three Dicke-level occupations.
#[derive(Clone, Debug, PartialEq)]
pub struct PopulationTrace<T: Real> {
    /// Sample times in seconds.
    pub times: Vec<T>,
    /// Occupation of |+1⟩ (both ions excited).
    pub rho_11: Vec<T>,
    /// Occupation of |0⟩.
    pub rho_00: Vec<T>,
    /// Occupation of |−1⟩ (both ions ground).
    pub rho_m1m1: Vec<T>,
    /// Parameters the trace was computed with.
    pub params: ModelParams<T>,
    /// Motional input the trace was computed for.
    pub initial: MotionalState<T>,
    /// Probability weight lost to the truncation.
    pub tail_bound: T,
}

impl<T: Real> PopulationTrace<T> {
    /// Occupation series of one level.
    pub fn level(&self, level: crate::DickeLevel) -> &[T] {
        match level {
            crate::DickeLevel::PlusOne => &self.rho_11,
            crate::DickeLevel::Zero => &self.rho_00,
            crate::DickeLevel::MinusOne => &self.rho_m1m1,
        }
    }

    /// Largest pointwise difference of the three occupations against `other`.
    pub fn max_abs_difference(&self, other: &Self) -> T {
        let mut worst = T::zero();
        for (a, b) in [(&self.rho_11, &other.rho_11), (&self.rho_00, &other.rho_00), (&self.rho_m1m1, &other.rho_m1m1)]
        {
            for (x, y) in a.iter().zip(b.iter()) {
                let dev = (*x - *y).abs();
                if dev > worst {
                    worst = dev;
                }
            }
        }
        worst
    }
}

/// Per-chain quantities reused at every time sample.
enum ChainTerm<T: Real> {
    Full { weight: T, a_sq: T, b_sq: T, freq: T },
    TwoLevel { weight: T, b: T },
    Frozen { weight: T },
}

/// Population traces for the given motional input over a time grid
/// (seconds, nonnegative and nondecreasing).
///
/// Evaluation is independent per time sample and parallelized over the
/// grid; within one sample the chain sum runs in ascending n so results do
/// not depend on the thread count.
pub fn populations<T: Real>(
    params: &ModelParams<T>,
    state: &MotionalState<T>,
    times: &[T],
) -> Result<PopulationTrace<T>, DynamicsError> {
    if times.is_empty() {
        return Err(DynamicsError::EmptyTimeGrid);
    }
    for (i, &t) in times.iter().enumerate() {
        let ordered = i == 0 || times[i - 1] <= t;
        if !t.is_finite() || t < T::zero() || !ordered {
            return Err(DynamicsError::InvalidTimeGrid(i));
        }
    }
    let initial = InitialMotionalState::build(*state, params)?;

    let terms: Vec<ChainTerm<T>> = initial
        .weights
        .iter()
        .enumerate()
        .filter(|(_, w)| **w != T::zero())
        .map(|(n, &weight)| {
            let coeffs = chain_coefficients(params, n);
            match coeffs.chain_class {
                ChainClass::Full => ChainTerm::Full {
                    weight,
                    a_sq: coeffs.a_coef * coeffs.a_coef,
                    b_sq: coeffs.b_coef * coeffs.b_coef,
                    freq: coeffs.frequency(),
                },
                ChainClass::TwoLevel => ChainTerm::TwoLevel { weight, b: coeffs.b_coef },
                ChainClass::Frozen => ChainTerm::Frozen { weight },
            }
        })
        .collect();

    let samples: Vec<[T; 3]> = times.par_iter().map(|&t| sample(&terms, t)).collect();

    Ok(PopulationTrace {
        times: times.to_vec(),
        rho_11: samples.iter().map(|s| s[0]).collect(),
        rho_00: samples.iter().map(|s| s[1]).collect(),
        rho_m1m1: samples.iter().map(|s| s[2]).collect(),
        params: *params,
        initial: *state,
        tail_bound: initial.tail_bound,
    })
}

fn sample<T: Real>(terms: &[ChainTerm<T>], t: T) -> [T; 3] {
    let mut rho = [T::zero(); 3];
    for term in terms {
        match *term {
            ChainTerm::Full { weight, a_sq, b_sq, freq } => {
                let freq_sq = a_sq + b_sq;
                let (sin, cos) = (freq * t).sin_cos();
                let one_minus_cos = T::one() - cos;
                rho[0] += a_sq * b_sq / (freq_sq * freq_sq) * one_minus_cos * one_minus_cos * weight;
                rho[1] += b_sq / freq_sq * sin * sin * weight;
                let ground = (b_sq * cos + a_sq) / freq_sq;
                rho[2] += ground * ground * weight;
            }
            ChainTerm::TwoLevel { weight, b } => {
                let (sin, cos) = (b * t).sin_cos();
                rho[1] += sin * sin * weight;
                rho[2] += cos * cos * weight;
            }
            ChainTerm::Frozen { weight } => {
                rho[2] += weight;
            }
        }
    }
    rho
}
