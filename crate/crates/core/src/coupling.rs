//! Chain coupling coefficients and the nonlinear coupling operator.
//!
//! For fixed sideband order k the interaction couples each bottom state
//! |−1, n⟩ only to |0, n−k⟩ and |1, n−2k⟩. The two coupling strengths of
//! that chain are
//!
//! ```text
//! A(n) = √2 Ω e^{−η²/2} η^k √((n−2k)!/(n−k)!) L_{n−2k}^k(η²)   (n ≥ 2k)
//! B(n) = √2 Ω e^{−η²/2} η^k √((n−k)!/n!)     L_{n−k}^k(η²)     (n ≥ k)
//! ```
//!
//! Independently of those closed forms, [`coupling_operator_element`] sums
//! the operator series ⟨row| f(a†a) a^k |col⟩ term by term. The two routes
//! agree (up to the i^k phase carried by the operator element) and that
//! agreement is one of the standing cross-checks of the crate.

use num_complex::Complex;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::specialfn::{laguerre, log_factorial_ratio};
use crate::{real_from_usize, Real};

/// Relative size at which the operator series is truncated.
const SERIES_RELATIVE_CUTOFF: f64 = 1e-18;

/// Physical and numerical inputs of a simulation run.
///
/// Both ions share the same Rabi frequency and Lamb-Dicke parameter.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelParams<T: Real> {
    /// Lamb-Dicke parameter η (dimensionless, > 0).
    pub eta: T,
    /// Rabi frequency Ω in angular units (rad/s, > 0).
    pub rabi: T,
    /// Red-sideband order k (≥ 1); each internal excitation absorbs k phonons.
    pub k: usize,
    /// Fock-space truncation: phonon numbers 0..=n_max are retained.
    pub n_max: usize,
    /// Acceptable probability weight outside the truncated range.
    pub tail_tol: T,
}

/// Rejected [`ModelParams`] constructions.
#[derive(Clone, Debug, PartialEq, Error)]
pub enum ParamsError {
    #[error("Lamb-Dicke parameter must be positive and finite, got {0}")]
    InvalidEta(String),
    #[error("Rabi frequency must be positive and finite, got {0}")]
    InvalidRabi(String),
    #[error("sideband order must be at least 1")]
    ZeroSidebandOrder,
    #[error("truncation n_max = {n_max} is below the minimum 2k = {min}")]
    TruncationBelowMinimum { n_max: usize, min: usize },
    #[error("tail tolerance must lie in (0, 1), got {0}")]
    InvalidTailTolerance(String),
}

impl<T: Real> ModelParams<T> {
    /// Validate and build. `n_max` must be at least 2k so that at least one
    /// full chain exists.
    pub fn new(eta: T, rabi: T, k: usize, n_max: usize, tail_tol: T) -> Result<Self, ParamsError> {
        if !eta.is_finite() || eta <= T::zero() {
            return Err(ParamsError::InvalidEta(format!("{eta}")));
        }
        if !rabi.is_finite() || rabi <= T::zero() {
            return Err(ParamsError::InvalidRabi(format!("{rabi}")));
        }
        if k == 0 {
            return Err(ParamsError::ZeroSidebandOrder);
        }
        if n_max < 2 * k {
            return Err(ParamsError::TruncationBelowMinimum { n_max, min: 2 * k });
        }
        if !(tail_tol > T::zero() && tail_tol < T::one()) {
            return Err(ParamsError::InvalidTailTolerance(format!("{tail_tol}")));
        }
        Ok(Self { eta, rabi, k, n_max, tail_tol })
    }

    /// Same parameters with a different truncation.
    pub fn with_n_max(&self, n_max: usize) -> Result<Self, ParamsError> {
        Self::new(self.eta, self.rabi, self.k, n_max, self.tail_tol)
    }
}

/// How much of a chain actually exists below the phonon vacuum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ChainClass {
    /// n ≥ 2k: all three states present.
    Full,
    /// k ≤ n < 2k: |1, n−2k⟩ does not exist; two-state flopping at B(n).
    TwoLevel,
    /// n < k: no phonons to absorb; the state is stationary.
    Frozen,
}

impl ChainClass {
    /// Classification by phonon index alone.
    pub fn of(n: usize, k: usize) -> Self {
        if n >= 2 * k {
            ChainClass::Full
        } else if n >= k {
            ChainClass::TwoLevel
        } else {
            ChainClass::Frozen
        }
    }
}

/// Coupling pair of the chain whose bottom state is |−1, n⟩.
///
/// Coefficients are real; their sign follows the Laguerre factor. The i^k
/// phases of the coupling operator are applied by the propagator, not here.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChainCoefficients<T: Real> {
    /// Phonon index of the bottom chain state.
    pub n: usize,
    /// Sideband order the chain was built for.
    pub k: usize,
    /// A(n) in rad/s; zero unless the chain is full.
    pub a_coef: T,
    /// B(n) in rad/s; zero for frozen chains.
    pub b_coef: T,
    /// Which states of the chain exist.
    pub chain_class: ChainClass,
}

/// Compute (A(n), B(n)) for the chain with bottom state |−1, n⟩.
pub fn chain_coefficients<T: Real>(params: &ModelParams<T>, n: usize) -> ChainCoefficients<T> {
    debug_assert!(n <= params.n_max, "chain index beyond truncation");
    let k = params.k;
    let chain_class = ChainClass::of(n, k);
    let half = T::from_f64(0.5).unwrap();
    let eta_sq = params.eta * params.eta;
    let prefactor = T::SQRT_2() * params.rabi * (-eta_sq * half).exp() * params.eta.powi(k as i32);

    let b_coef = if n >= k {
        prefactor * (half * log_factorial_ratio::<T>(n - k, n)).exp() * laguerre(n - k, k, eta_sq)
    } else {
        T::zero()
    };
    let a_coef = if n >= 2 * k {
        prefactor * (half * log_factorial_ratio::<T>(n - 2 * k, n - k)).exp() * laguerre(n - 2 * k, k, eta_sq)
    } else {
        T::zero()
    };
    ChainCoefficients { n, k, a_coef, b_coef, chain_class }
}

impl<T: Real> ChainCoefficients<T> {
    /// Chain oscillation frequency √(A² + B²).
    pub fn frequency(&self) -> T {
        self.a_coef.hypot(self.b_coef)
    }
}

/// Matrix element ⟨row| f(a†a) a^k |col⟩ of the nonlinear coupling operator,
/// by direct summation of the operator series.
///
/// Zero unless `col == row + k` (each transition absorbs exactly k phonons).
/// The series over the normal-ordered ladder powers terminates on its own at
/// j = row; terms below 1e-18 of the running sum are dropped early. The
/// element equals i^k times a real number; the full complex value is
/// returned.
pub fn coupling_operator_element<T: Real>(params: &ModelParams<T>, row: usize, col: usize) -> Complex<T> {
    debug_assert!(row <= params.n_max && col <= params.n_max, "Fock index beyond truncation");
    let k = params.k;
    if col != row + k {
        return Complex::new(T::zero(), T::zero());
    }
    im_pow::<T>(k).scale(coupling_series_magnitude(params, row))
}

/// The real factor of ⟨m| f(a†a) a^k |m+k⟩ (the element divided by i^k).
pub(crate) fn coupling_series_magnitude<T: Real>(params: &ModelParams<T>, m: usize) -> T {
    let k = params.k;
    let half = T::from_f64(0.5).unwrap();
    let cutoff = T::from_f64(SERIES_RELATIVE_CUTOFF).unwrap();
    let eta_sq = params.eta * params.eta;

    // sum_{j=0}^{m} (-1)^j eta^{2j} m! / (j! (j+k)! (m-j)!), via the exact
    // term ratio; term_0 = 1/k!.
    let mut term = T::one();
    for i in 1..=k {
        term /= real_from_usize::<T>(i);
    }
    let mut sum = term;
    for j in 0..m {
        let jj = real_from_usize::<T>(j);
        term = -term * eta_sq * real_from_usize::<T>(m - j)
            / ((jj + T::one()) * (jj + real_from_usize::<T>(k) + T::one()));
        sum += term;
        if term.abs() < cutoff * sum.abs() {
            break;
        }
    }

    let sqrt_ratio = (half * log_factorial_ratio::<T>(m + k, m)).exp();
    (-eta_sq * half).exp() * params.eta.powi(k as i32) * sqrt_ratio * sum
}

/// i^k, exact for every k.
pub(crate) fn im_pow<T: Real>(k: usize) -> Complex<T> {
    match k % 4 {
        0 => Complex::new(T::one(), T::zero()),
        1 => Complex::new(T::zero(), T::one()),
        2 => Complex::new(-T::one(), T::zero()),
        _ => Complex::new(T::zero(), -T::one()),
    }
}
