//! Associated Laguerre polynomials and factorial ratios.
//!
//! Every coupling strength in the model carries a factor
//! `√(p!/q!) · L_n^k(η²)`, so these two primitives decide the numerical
//! quality of everything downstream. The polynomial is evaluated by the
//! three-term recurrence in the degree, which is forward-stable for x ≥ 0;
//! the textbook alternating sum loses precision well before degree 100 and
//! is kept only as a cross-check ([`laguerre_reference`]). Factorial ratios
//! are formed in log space so that phonon indices in the hundreds stay
//! representable.

use std::cmp::Ordering;

use crate::{real_from_usize, Real};

/// Associated Laguerre polynomial L_n^k(x) of degree `n` and order `k`.
///
/// Uses the degree recurrence
/// `(m+1) L_{m+1}^k = (2m+k+1−x) L_m^k − (m+k) L_{m−1}^k`
/// starting from `L_0^k = 1`, `L_1^k = 1 + k − x`. Finite in `f64` for all
/// n ≤ 10⁴, k ≤ 16, x ≤ 4.
///
/// Negative `x` is outside the supported domain (checked in debug builds).
pub fn laguerre<T: Real>(n: usize, k: usize, x: T) -> T {
    debug_assert!(x >= T::zero(), "laguerre argument must be nonnegative");
    if n == 0 {
        return T::one();
    }
    let order = real_from_usize::<T>(k);
    let mut below = T::one();
    let mut value = T::one() + order - x;
    for m in 1..n {
        let deg = real_from_usize::<T>(m);
        let two = T::one() + T::one();
        let next = ((two * deg + order + T::one() - x) * value - (deg + order) * below) / (deg + T::one());
        below = value;
        value = next;
    }
    value
}

/// Reference evaluation of L_n^k(x) by the explicit alternating sum
/// `Σ_{m=0}^{n} (−1)^m C(n+k, n−m) x^m / m!`.
///
/// Kept for validation only: the alternating terms cancel catastrophically
/// for large degrees, so use [`laguerre`] everywhere else.
pub fn laguerre_reference<T: Real>(n: usize, k: usize, x: T) -> T {
    let mut sum = T::zero();
    // term_0 = C(n+k, n); term_{m+1}/term_m = -x (n-m) / ((m+1)(m+k+1))
    let mut term = binomial::<T>(n + k, n);
    for m in 0..=n {
        sum += term;
        if m < n {
            let mm = real_from_usize::<T>(m);
            let num = real_from_usize::<T>(n - m);
            let den = (mm + T::one()) * (mm + real_from_usize::<T>(k) + T::one());
            term = -term * x * num / den;
        }
    }
    sum
}

fn binomial<T: Real>(n: usize, r: usize) -> T {
    let r = r.min(n - r);
    let mut acc = T::one();
    for i in 0..r {
        acc = acc * real_from_usize::<T>(n - i) / real_from_usize::<T>(i + 1);
    }
    acc
}

/// ln(p!/q!), formed as a signed sum of logarithms.
///
/// Exactly antisymmetric: `log_factorial_ratio(p, q) == -log_factorial_ratio(q, p)`
/// bit for bit, because both directions sum the same logs.
pub fn log_factorial_ratio<T: Real>(p: usize, q: usize) -> T {
    match p.cmp(&q) {
        Ordering::Equal => T::zero(),
        Ordering::Greater => {
            let mut acc = T::zero();
            for i in (q + 1)..=p {
                acc += real_from_usize::<T>(i).ln();
            }
            acc
        }
        Ordering::Less => -log_factorial_ratio::<T>(q, p),
    }
}
