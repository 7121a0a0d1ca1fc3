//! Brute-force verification path.
//!
//! Builds the full interaction Hamiltonian Ω J₊ f(a†a)aᵏ + h.c. on the
//! truncated product space {|+1⟩, |0⟩, |−1⟩} ⊗ {|0⟩..|n_max⟩} and evolves
//! exactly through a Hermitian eigendecomposition. The only code shared
//! with the closed-form path is the coupling-operator series (itself
//! cross-checked against a displacement-operator closed form); neither the
//! Laguerre recurrence nor the analytic propagator is touched here, so
//! agreement between the two routes is meaningful evidence.
//!
//! The i^k phases of the coupling operator can be rotated away by a
//! diagonal gauge that is constant on each Dicke level. Populations are
//! diagonal in the gauged basis, so evolution runs on the real symmetric
//! representative; the stored Hamiltonian keeps the original phases.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex;
use num_traits::Float;
use rayon::prelude::*;
use thiserror::Error;

use crate::coupling::{coupling_operator_element, im_pow, ModelParams};
use crate::dynamics::{MotionalState, PopulationTrace};
use crate::{DickeLevel, Real};

/// How far above the truncation under test the oracle's own truncation sits.
pub const TRUNCATION_BUFFER: usize = 10;

/// Iteration allowance handed to the eigensolver, per matrix dimension.
const EIGEN_ITERATIONS_PER_DIM: usize = 100;

/// Failures of the brute-force path.
#[derive(Clone, Debug, PartialEq, Error)]
pub enum OracleError {
    #[error("eigendecomposition did not converge")]
    EigenConvergence,
    #[error("mixture has {len} weights but the Hamiltonian holds {capacity} phonon states")]
    MixtureTooLong { len: usize, capacity: usize },
    #[error("mixture weights must lie in [0, 1] and sum to at most 1 (found {0})")]
    InvalidMixtureWeights(String),
    #[error("state vector has {len} entries, expected {expected}")]
    StateDimensionMismatch { len: usize, expected: usize },
    #[error("initial state norm deviates from 1 by {0}")]
    StateNotNormalized(String),
}

/// Dense Hamiltonian on the flattened basis (level, phonon).
///
/// Flat index = `level.index() * (n_max + 1) + phonon`, levels ordered
/// (+1, 0, −1). Hermitian by construction: the upper triangle is filled and
/// mirrored.
#[derive(Clone, Debug)]
pub struct DenseHamiltonian<T: Real + nalgebra::RealField> {
    params: ModelParams<T>,
    matrix: DMatrix<Complex<T>>,
}

/// Build the dense Hamiltonian for `params`, without touching the
/// closed-form coefficient or propagator code.
pub fn build_hamiltonian<T: Real + nalgebra::RealField>(params: &ModelParams<T>) -> DenseHamiltonian<T> {
    let states = params.n_max + 1;
    let dim = 3 * states;
    let k = params.k;
    let sqrt2_rabi = Complex::new(Float::sqrt(T::one() + T::one()) * params.rabi, T::zero());
    let mut matrix = DMatrix::<Complex<T>>::zeros(dim, dim);
    // J₊ connects level index ℓ+1 → ℓ while the mode loses k phonons:
    // ⟨ℓ, m−k| H |ℓ+1, m⟩ = √2 Ω ⟨m−k| f(a†a)aᵏ |m⟩.
    for upper_level in 0..2usize {
        for m in k..states {
            let element = sqrt2_rabi * coupling_operator_element(params, m - k, m);
            let row = upper_level * states + (m - k);
            let col = (upper_level + 1) * states + m;
            matrix[(row, col)] = element;
            matrix[(col, row)] = element.conj();
        }
    }
    DenseHamiltonian { params: *params, matrix }
}

impl<T: Real + nalgebra::RealField> DenseHamiltonian<T> {
    /// Full matrix dimension 3(n_max + 1).
    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    /// Number of phonon states per level, n_max + 1.
    pub fn phonon_states(&self) -> usize {
        self.params.n_max + 1
    }

    /// Parameters the matrix was built for.
    pub fn params(&self) -> &ModelParams<T> {
        &self.params
    }

    /// Flat basis index of |level, phonon⟩.
    pub fn flat_index(&self, level: DickeLevel, phonon: usize) -> usize {
        debug_assert!(phonon <= self.params.n_max);
        level.index() * self.phonon_states() + phonon
    }

    /// The Hermitian matrix itself (rad/s).
    pub fn matrix(&self) -> &DMatrix<Complex<T>> {
        &self.matrix
    }

    /// Real symmetric representative: conjugating by the diagonal gauge
    /// i^{−k·level} cancels the i^k of every coupling element exactly.
    fn real_symmetric_gauge(&self) -> DMatrix<T> {
        let states = self.phonon_states();
        let gauge = |flat: usize| im_pow::<T>((self.params.k * (flat / states)) % 4).conj();
        DMatrix::from_fn(self.dim(), self.dim(), |r, c| {
            let rotated = gauge(r).conj() * self.matrix[(r, c)] * gauge(c);
            debug_assert!(Float::abs(rotated.im) <= T::epsilon() * Float::max(Float::abs(rotated.re), T::one()));
            rotated.re
        })
    }

    /// Eigendecomposition of the real symmetric representative.
    pub fn diagonalize(&self) -> Result<Spectrum<T>, OracleError> {
        let eigen = SymmetricEigen::try_new(
            self.real_symmetric_gauge(),
            T::epsilon(),
            EIGEN_ITERATIONS_PER_DIM * self.dim(),
        )
        .ok_or(OracleError::EigenConvergence)?;
        Ok(Spectrum { eigenvalues: eigen.eigenvalues, eigenvectors: eigen.eigenvectors })
    }
}

/// Spectral decomposition of the (gauged) Hamiltonian.
pub struct Spectrum<T: Real + nalgebra::RealField> {
    /// Eigenfrequencies in rad/s.
    pub eigenvalues: DVector<T>,
    /// Orthonormal eigenvectors, one per column.
    pub eigenvectors: DMatrix<T>,
}

/// Exact evolution of the phonon-diagonal mixture Σ p(n) |−1, n⟩⟨−1, n|.
///
/// `weights` lists p(n) for n = 0, 1, …; it may be shorter than the
/// Hamiltonian's phonon range (the usual case when the oracle carries a
/// truncation buffer) but not longer. Populations come out as a
/// [`PopulationTrace`] carrying `kind` as provenance.
pub fn evolve_mixture<T: Real + nalgebra::RealField>(
    hamiltonian: &DenseHamiltonian<T>,
    kind: &MotionalState<T>,
    weights: &[T],
    times: &[T],
) -> Result<PopulationTrace<T>, OracleError> {
    let states = hamiltonian.phonon_states();
    if weights.len() > states {
        return Err(OracleError::MixtureTooLong { len: weights.len(), capacity: states });
    }
    let total: T = weights.iter().copied().sum();
    let eps = T::from_f64(1e-12).unwrap();
    if weights.iter().any(|w| *w < -eps || *w > T::one() + eps) || total > T::one() + eps {
        return Err(OracleError::InvalidMixtureWeights(format!("{total}")));
    }

    let spectrum = hamiltonian.diagonalize()?;
    let dim = hamiltonian.dim();
    let n_init = weights.len();

    // Column i holds the eigenbasis expansion of |−1, n_i⟩.
    let mut expansion = DMatrix::<T>::zeros(dim, n_init);
    for (i, _) in weights.iter().enumerate() {
        let flat = hamiltonian.flat_index(DickeLevel::MinusOne, i);
        for s in 0..dim {
            expansion[(s, i)] = spectrum.eigenvectors[(flat, s)];
        }
    }

    let samples: Vec<[T; 3]> = times
        .par_iter()
        .map(|&t| {
            let mut cos_scaled = expansion.clone();
            let mut sin_scaled = expansion.clone();
            for s in 0..dim {
                let (sin, cos) = Float::sin_cos(spectrum.eigenvalues[s] * t);
                for i in 0..n_init {
                    cos_scaled[(s, i)] *= cos;
                    sin_scaled[(s, i)] *= sin;
                }
            }
            let amp_re = &spectrum.eigenvectors * cos_scaled;
            let amp_im = &spectrum.eigenvectors * sin_scaled;

            let mut rho = [T::zero(); 3];
            for (i, &weight) in weights.iter().enumerate() {
                if weight == T::zero() {
                    continue;
                }
                for level in DickeLevel::ALL {
                    let base = level.index() * states;
                    let mut acc = T::zero();
                    for r in base..base + states {
                        acc += amp_re[(r, i)] * amp_re[(r, i)] + amp_im[(r, i)] * amp_im[(r, i)];
                    }
                    rho[level.index()] += weight * acc;
                }
            }
            rho
        })
        .collect();

    let tail: T = Float::max(T::one() - total, T::zero());
    Ok(PopulationTrace {
        times: times.to_vec(),
        rho_11: samples.iter().map(|s| s[0]).collect(),
        rho_00: samples.iter().map(|s| s[1]).collect(),
        rho_m1m1: samples.iter().map(|s| s[2]).collect(),
        params: *hamiltonian.params(),
        initial: *kind,
        tail_bound: tail,
    })
}

/// Evolution record of a single state vector.
pub struct StateEvolution<T: Real> {
    /// Sample times in seconds.
    pub times: Vec<T>,
    /// Dicke-level populations, ordered (+1, 0, −1), per sample.
    pub populations: Vec<[T; 3]>,
    /// Energy expectation ⟨H⟩ per sample (rad/s).
    pub energy: Vec<T>,
}

/// Exact evolution of a pure state given on the flattened (level, phonon)
/// basis. The state must be normalized within 1e-12.
pub fn evolve_state<T: Real + nalgebra::RealField>(
    hamiltonian: &DenseHamiltonian<T>,
    state: &DVector<Complex<T>>,
    times: &[T],
) -> Result<StateEvolution<T>, OracleError> {
    let dim = hamiltonian.dim();
    let states = hamiltonian.phonon_states();
    if state.len() != dim {
        return Err(OracleError::StateDimensionMismatch { len: state.len(), expected: dim });
    }
    let norm_defect = Float::abs(state.iter().map(|c| c.norm_sqr()).sum::<T>() - T::one());
    if norm_defect > T::from_f64(1e-12).unwrap() {
        return Err(OracleError::StateNotNormalized(format!("{norm_defect}")));
    }

    // Move the state into the gauge that makes the Hamiltonian real.
    let gauge = |flat: usize| im_pow::<T>((hamiltonian.params.k * (flat / states)) % 4).conj();
    let gauged: Vec<Complex<T>> = (0..dim).map(|r| gauge(r).conj() * state[r]).collect();

    let real_h = hamiltonian.real_symmetric_gauge();
    let spectrum = hamiltonian.diagonalize()?;

    // Eigenbasis expansion of the (complex) gauged state.
    let mut coeffs = vec![Complex::new(T::zero(), T::zero()); dim];
    for (s, c) in coeffs.iter_mut().enumerate() {
        for (r, g) in gauged.iter().enumerate() {
            *c += g.scale(spectrum.eigenvectors[(r, s)]);
        }
    }

    let mut populations = Vec::with_capacity(times.len());
    let mut energy = Vec::with_capacity(times.len());
    for &t in times {
        let mut re = DVector::<T>::zeros(dim);
        let mut im = DVector::<T>::zeros(dim);
        for (s, coeff) in coeffs.iter().enumerate() {
            let (sin, cos) = Float::sin_cos(spectrum.eigenvalues[s] * t);
            let phase = Complex::new(cos, -sin);
            let c = *coeff * phase;
            for r in 0..dim {
                let v = spectrum.eigenvectors[(r, s)];
                re[r] += v * c.re;
                im[r] += v * c.im;
            }
        }
        let mut rho = [T::zero(); 3];
        for level in DickeLevel::ALL {
            let base = level.index() * states;
            for r in base..base + states {
                rho[level.index()] += re[r] * re[r] + im[r] * im[r];
            }
        }
        populations.push(rho);
        let h_re = &real_h * &re;
        let h_im = &real_h * &im;
        energy.push(re.dot(&h_re) + im.dot(&h_im));
    }

    Ok(StateEvolution { times: times.to_vec(), populations, energy })
}
