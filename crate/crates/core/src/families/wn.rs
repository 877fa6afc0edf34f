//! One-parameter n-qubit W states `a(|10..0> + |010..0> + .. + |0..010>) + b|0..01>`.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use super::{closed_form, Formula};
use crate::error::{GsdError, Result};
use crate::gsd::{t_index, GsdDecomposition};
use crate::scalar::Real;
use crate::state::{QubitState, Qubit1, MAX_QUBITS};
use crate::tolerance::Tolerances;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct WnParams<T> {
    pub n: usize,
    pub a: T,
    pub b: T,
}

impl<T: Real> WnParams<T> {
    /// Requires `n >= 3`, non-negative `a, b` and `(n-1)a^2 + b^2 = 1`.
    pub fn new(n: usize, a: T, b: T) -> Result<Self> {
        if n < 3 {
            return Err(GsdError::UnsupportedArity { n, requirement: "the W family needs at least 3 qubits" });
        }
        if n > MAX_QUBITS {
            return Err(GsdError::UnsupportedArity { n, requirement: "too many qubits" });
        }
        if !a.is_finite() || !b.is_finite() {
            return Err(GsdError::NonFinite);
        }
        if a < T::zero() || b < T::zero() {
            return Err(GsdError::InvalidParams("W-family parameters must be non-negative".into()));
        }
        let norm2 = T::of((n - 1) as f64) * a * a + b * b;
        if (norm2 - T::one()).abs() > Tolerances::<T>::default().norm {
            return Err(GsdError::InvalidParams(format!("(n-1)a^2 + b^2 = {norm2}, expected 1")));
        }
        Ok(Self { n, a, b })
    }

    /// `b` fixed by normalization.
    pub fn from_a(n: usize, a: T) -> Result<Self> {
        let rest = T::one() - T::of((n.max(1) - 1) as f64) * a * a;
        if rest < -Tolerances::<T>::default().norm {
            return Err(GsdError::InvalidParams(format!("a = {a} too large for n = {n}")));
        }
        Self::new(n, a, rest.max(T::zero()).sqrt())
    }

    /// Scales non-negative `a, b` onto the normalization constraint.
    pub fn normalized(n: usize, a: T, b: T) -> Result<Self> {
        let norm = (T::of((n.max(1) - 1) as f64) * a * a + b * b).sqrt();
        if !(norm > T::zero()) {
            return Err(GsdError::ZeroNorm);
        }
        Self::new(n, a / norm, b / norm)
    }

    /// `r_n = (n-1)a^2 - b^2`; negative in the slightly entangled region.
    pub fn r_n(&self) -> T {
        T::of((self.n - 1) as f64) * self.a * self.a - self.b * self.b
    }

    /// `S_n = (n-1)^2 a^2 - b^2`.
    pub fn s_n(&self) -> T {
        let m = T::of((self.n - 1) as f64);
        m * m * self.a * self.a - self.b * self.b
    }

    /// `(n-2)/2`.
    pub fn gamma(&self) -> T {
        T::of((self.n - 2) as f64 * 0.5)
    }

    pub fn state(&self) -> QubitState<T> {
        let n = self.n;
        let mut terms: Vec<(usize, Complex<T>)> =
            (0..n - 1).map(|k| (1usize << (n - 1 - k), Complex::new(self.a, T::zero()))).collect();
        terms.push((1, Complex::new(self.b, T::zero())));
        QubitState::from_terms(n, &terms).expect("normalized parameters")
    }
}

/// Closed-form decomposition.
///
/// For `r_n < 0` the dominant product state is `|0..01>` with `g = b`, `h = 0`.
/// Otherwise the first `n-1` factors are `(a sqrt((n-1)(n-2)), sqrt(r_n))/sqrt(S_n)`,
/// the last is `(sqrt((n-1) r_n), b sqrt(n-2))/sqrt(S_n)`, and
///
/// ```text
/// g   = (1 - b^2)^(gamma + 1/2) ((n-2)/S_n)^gamma
/// t_n = sqrt((n-2) r_n) (r_n/S_n)^gamma
/// h   = b sqrt(n-1) (r_n/S_n)^gamma,   phi = pi/(n-1)
/// ```
///
/// The remaining `t_k` have no closed form and are read off the expansion.
pub fn wn_gsd<T: Real>(p: &WnParams<T>, tol: &Tolerances<T>) -> Result<GsdDecomposition<T>> {
    let n = p.n;
    let s = p.state();
    let rn = p.r_n();
    let real = |x: T| Complex::new(x, T::zero());
    let (q, g, tn, h) = if rn < T::zero() {
        let mut q = vec![Qubit1::zero(); n];
        q[n - 1] = Qubit1::one();
        (q, p.b, None, T::zero())
    } else {
        let sn = p.s_n();
        let (m, m2) = (T::of((n - 1) as f64), T::of((n - 2) as f64));
        let root_s = sn.sqrt();
        let head = Qubit1::new(real(p.a * (m * m2).sqrt() / root_s), real(rn.sqrt() / root_s))?;
        let last = Qubit1::new(real((m * rn).sqrt() / root_s), real(p.b * m2.sqrt() / root_s))?;
        let mut q = vec![head; n - 1];
        q.push(last);
        let gamma = p.gamma();
        let ratio = (rn / sn).powf(gamma);
        let g = (T::one() - p.b * p.b).powf(gamma + T::of(0.5)) * (m2 / sn).powf(gamma);
        (q, g, Some((m2 * rn).sqrt() * ratio), p.b * m.sqrt() * ratio)
    };
    // t_1 .. t_{n-1} come from the same expansion the gauge fix uses
    let numeric = crate::gsd::decompose_in_basis(&s, q.clone(), tol)?;
    let mut t: Vec<T> = (0..n).map(|k| numeric.coeffs[t_index(n, k)].norm()).collect();
    if let Some(tn) = tn {
        t[n - 1] = tn;
    }
    let phi = T::PI() / T::of((n - 1) as f64);
    closed_form(&s, q, Formula { g, t, h, phi }, tol)
}
