//! Exact dynamics of two trapped ions driven on the k-th red sideband of
//! their center-of-mass mode.
//!
//! The two ions form a Dicke triplet {|+1⟩, |0⟩, |−1⟩} coupled to the shared
//! vibrational mode through a nonlinear (Lamb-Dicke–exact) coupling. On the
//! k-th red sideband the Hamiltonian splits into independent three-state
//! chains {|+1, n−2k⟩, |0, n−k⟩, |−1, n⟩}, each of which evolves in closed
//! form. This crate provides
//!
//! * [`specialfn`] — associated Laguerre polynomials and log-factorial
//!   ratios underlying every coupling strength,
//! * [`coupling`] — the per-chain coupling pair (A(n), B(n)) and, separately,
//!   the matrix elements of the nonlinear coupling operator,
//! * [`propagator`] — the closed-form per-chain time-evolution block,
//! * [`dynamics`] — population traces of the three Dicke levels for coherent
//!   or Fock motional input,
//! * [`oracle`] — an independent brute-force path (dense Hamiltonian +
//!   eigendecomposition) used to validate the closed form,
//! * [`analysis`] — windowed-amplitude quantification of collapse and
//!   revival.
//!
//! All numerics are generic over the scalar type through [`Real`]; `f64` is
//! the intended production type and is what the concrete aliases at the
//! crate root use.

pub mod analysis;
pub mod coupling;
pub mod dynamics;
pub mod oracle;
pub mod propagator;
pub mod specialfn;

use std::fmt;
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign};

/// Scalar type the whole library is generic over.
///
/// `f32` satisfies the bounds but the tolerances quoted throughout the
/// documentation assume `f64`.
pub trait Real:
    Float + FloatConst + FromPrimitive + NumAssign + Sum + fmt::Debug + fmt::Display + Send + Sync + 'static
{
}

impl Real for f32 {}
impl Real for f64 {}

/// Collective (Dicke) level of the two-ion triplet, the eigenvalue of J_z.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DickeLevel {
    /// Both ions excited, J_z = +1.
    PlusOne,
    /// Symmetric single excitation, J_z = 0.
    Zero,
    /// Both ions in the ground state, J_z = −1.
    MinusOne,
}

impl DickeLevel {
    /// Row/column index used by every matrix in this crate: +1 ↦ 0, 0 ↦ 1,
    /// −1 ↦ 2.
    pub fn index(self) -> usize {
        match self {
            DickeLevel::PlusOne => 0,
            DickeLevel::Zero => 1,
            DickeLevel::MinusOne => 2,
        }
    }

    /// All three levels in index order.
    pub const ALL: [DickeLevel; 3] = [DickeLevel::PlusOne, DickeLevel::Zero, DickeLevel::MinusOne];
}

impl fmt::Display for DickeLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DickeLevel::PlusOne => write!(f, "+1"),
            DickeLevel::Zero => write!(f, "0"),
            DickeLevel::MinusOne => write!(f, "-1"),
        }
    }
}

pub use coupling::{chain_coefficients, coupling_operator_element, ChainClass, ChainCoefficients, ModelParams};
pub use dynamics::{
    phonon_distribution, populations, required_n_max, InitialMotionalState, MotionalState, PopulationTrace,
};
pub use propagator::{chain_propagator, BlockMatrix, PhaseConvention, PropagatorBlock};

/// `f64` model parameters.
pub type ModelParamsF64 = coupling::ModelParams<f64>;
/// `f32` model parameters.
pub type ModelParamsF32 = coupling::ModelParams<f32>;
/// `f64` chain coupling pair.
pub type ChainCoefficientsF64 = coupling::ChainCoefficients<f64>;
/// `f64` per-chain propagator block.
pub type PropagatorBlockF64 = propagator::PropagatorBlock<f64>;
/// `f64` motional input state.
pub type MotionalStateF64 = dynamics::MotionalState<f64>;
/// `f64` population trace.
pub type PopulationTraceF64 = dynamics::PopulationTrace<f64>;
/// `f64` dense Hamiltonian for the brute-force path.
pub type DenseHamiltonianF64 = oracle::DenseHamiltonian<f64>;
/// `f64` envelope report.
pub type EnvelopeReportF64 = analysis::EnvelopeReport<f64>;

pub(crate) fn real_from_usize<T: Real>(n: usize) -> T {
    T::from_usize(n).expect("phonon index representable as scalar")
}
