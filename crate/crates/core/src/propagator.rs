//! Closed-form per-chain time evolution.
//!
//! On a full chain {|1, n−2k⟩, |0, n−k⟩, |−1, n⟩} the interaction is the
//! tridiagonal Hermitian matrix with off-diagonal entries i^k A and i^k B,
//! and its exponential exp(−iHt) has the closed form implemented here. The
//! i^{k+1} and (−1)^{k+1} phases on the off-diagonal entries are kept
//! exactly as the model prescribes; populations never depend on them, which
//! is what the eigendecomposition cross-check asserts.

use num_complex::Complex;

use crate::coupling::{im_pow, ChainClass, ChainCoefficients};
use crate::Real;

/// Off-diagonal phase factors applied to a propagator block.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PhaseConvention<T: Real> {
    /// −i^{k+1}, carried by the sin-proportional entries.
    pub sin_phase: Complex<T>,
    /// (−1)^{k+1}, carried by the |1⟩↔|−1⟩ corner entries.
    pub corner_sign: T,
}

impl<T: Real> PhaseConvention<T> {
    fn for_order(k: usize) -> Self {
        let i = Complex::new(T::zero(), T::one());
        PhaseConvention {
            sin_phase: -(im_pow::<T>(k) * i),
            corner_sign: if k % 2 == 1 { T::one() } else { -T::one() },
        }
    }
}

/// Unitary block of one chain, sized to the states that exist.
///
/// Indices run over the Dicke levels present, ordered (+1, 0, −1); a
/// two-level block holds the (0, −1) sector and a frozen block is the
/// scalar 1.
#[derive(Clone, Debug, PartialEq)]
pub enum BlockMatrix<T: Real> {
    Full([[Complex<T>; 3]; 3]),
    TwoLevel([[Complex<T>; 2]; 2]),
    Frozen,
}

impl<T: Real> BlockMatrix<T> {
    /// Number of chain states.
    pub fn dim(&self) -> usize {
        match self {
            BlockMatrix::Full(_) => 3,
            BlockMatrix::TwoLevel(_) => 2,
            BlockMatrix::Frozen => 1,
        }
    }

    /// Entry (row, col) within the block.
    pub fn entry(&self, row: usize, col: usize) -> Complex<T> {
        match self {
            BlockMatrix::Full(u) => u[row][col],
            BlockMatrix::TwoLevel(u) => u[row][col],
            BlockMatrix::Frozen => {
                debug_assert!(row == 0 && col == 0);
                Complex::new(T::one(), T::zero())
            }
        }
    }

    /// Largest entry of |U†U − I|.
    pub fn unitarity_defect(&self) -> T {
        let d = self.dim();
        let mut worst = T::zero();
        for r in 0..d {
            for c in 0..d {
                let mut acc = Complex::new(T::zero(), T::zero());
                for s in 0..d {
                    acc += self.entry(s, r).conj() * self.entry(s, c);
                }
                let target = if r == c { T::one() } else { T::zero() };
                let dev = (acc - Complex::new(target, T::zero())).norm();
                if dev > worst {
                    worst = dev;
                }
            }
        }
        worst
    }

    /// Matrix product, defined for blocks of the same shape.
    pub fn compose(&self, rhs: &Self) -> Self {
        match (self, rhs) {
            (BlockMatrix::Full(a), BlockMatrix::Full(b)) => {
                let zero = Complex::new(T::zero(), T::zero());
                let mut out = [[zero; 3]; 3];
                for r in 0..3 {
                    for c in 0..3 {
                        for s in 0..3 {
                            out[r][c] += a[r][s] * b[s][c];
                        }
                    }
                }
                BlockMatrix::Full(out)
            }
            (BlockMatrix::TwoLevel(a), BlockMatrix::TwoLevel(b)) => {
                let zero = Complex::new(T::zero(), T::zero());
                let mut out = [[zero; 2]; 2];
                for r in 0..2 {
                    for c in 0..2 {
                        for s in 0..2 {
                            out[r][c] += a[r][s] * b[s][c];
                        }
                    }
                }
                BlockMatrix::TwoLevel(out)
            }
            (BlockMatrix::Frozen, BlockMatrix::Frozen) => BlockMatrix::Frozen,
            _ => panic!("cannot compose propagator blocks of different chain classes"),
        }
    }

    /// Largest entry-wise difference |self − rhs|.
    pub fn max_entry_distance(&self, rhs: &Self) -> T {
        assert_eq!(self.dim(), rhs.dim(), "blocks of different chain classes");
        let mut worst = T::zero();
        for r in 0..self.dim() {
            for c in 0..self.dim() {
                let dev = (self.entry(r, c) - rhs.entry(r, c)).norm();
                if dev > worst {
                    worst = dev;
                }
            }
        }
        worst
    }
}

/// Time-evolution block of one chain at a fixed time.
#[derive(Clone, Debug, PartialEq)]
pub struct PropagatorBlock<T: Real> {
    /// Phonon index of the bottom chain state |−1, n⟩.
    pub n: usize,
    /// Evolution time in seconds.
    pub t: T,
    /// The unitary, sized by the chain class.
    pub u: BlockMatrix<T>,
    /// Off-diagonal phase factors used.
    pub phase_convention: PhaseConvention<T>,
}

impl<T: Real> PropagatorBlock<T> {
    /// Populations of the Dicke levels (+1, 0, −1) reached from the bottom
    /// state |−1, n⟩: the squared moduli of the block's last column, padded
    /// with zeros for states the chain does not contain.
    pub fn ground_column_populations(&self) -> [T; 3] {
        match &self.u {
            BlockMatrix::Full(u) => [u[0][2].norm_sqr(), u[1][2].norm_sqr(), u[2][2].norm_sqr()],
            BlockMatrix::TwoLevel(u) => [T::zero(), u[0][1].norm_sqr(), u[1][1].norm_sqr()],
            BlockMatrix::Frozen => [T::zero(), T::zero(), T::one()],
        }
    }
}

/// Evolve the chain described by `coeffs` for time `t` (seconds, ≥ 0).
///
/// Full chains use the closed-form 3×3 block; two-level chains reduce to a
/// rotation at frequency B(n); frozen chains are the identity. A full chain
/// with A = B = 0 would contradict its classification and panics.
pub fn chain_propagator<T: Real>(coeffs: &ChainCoefficients<T>, t: T) -> PropagatorBlock<T> {
    debug_assert!(t >= T::zero(), "propagator time must be nonnegative");
    let phase_convention = PhaseConvention::for_order(coeffs.k);
    let u = match coeffs.chain_class {
        ChainClass::Frozen => BlockMatrix::Frozen,
        ChainClass::TwoLevel => BlockMatrix::TwoLevel(two_level_block(coeffs.b_coef, t, &phase_convention)),
        ChainClass::Full => BlockMatrix::Full(full_block(coeffs, t, &phase_convention)),
    };
    PropagatorBlock { n: coeffs.n, t, u, phase_convention }
}

fn two_level_block<T: Real>(b: T, t: T, phases: &PhaseConvention<T>) -> [[Complex<T>; 2]; 2] {
    let (sin, cos) = (b * t).sin_cos();
    let c = Complex::new(cos, T::zero());
    let upper = phases.sin_phase.scale(sin);
    [[c, upper], [-upper.conj(), c]]
}

fn full_block<T: Real>(coeffs: &ChainCoefficients<T>, t: T, phases: &PhaseConvention<T>) -> [[Complex<T>; 3]; 3] {
    let (a, b) = (coeffs.a_coef, coeffs.b_coef);
    let freq_sq = a * a + b * b;
    assert!(
        freq_sq > T::zero(),
        "full chain n={} has vanishing couplings; classification is inconsistent",
        coeffs.n
    );
    let freq = freq_sq.sqrt();
    let (sin, cos) = (freq * t).sin_cos();
    let re = |x: T| Complex::new(x, T::zero());

    let u00 = re((a * a * cos + b * b) / freq_sq);
    let u11 = re(cos);
    let u22 = re((b * b * cos + a * a) / freq_sq);
    let u01 = phases.sin_phase.scale(a * sin / freq);
    let u12 = phases.sin_phase.scale(b * sin / freq);
    let u02 = re(phases.corner_sign * a * b * (T::one() - cos) / freq_sq);
    [[u00, u01, u02], [-u01.conj(), u11, u12], [u02, -u12.conj(), u22]]
}
