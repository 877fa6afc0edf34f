//! Extended GHZ states `a|000> + b|001> + c|110> + d|111>`.
//!
//! The two stationary points are `|0>|0>(a, b)/g` and `|1>|1>(c, d)/g`, and the
//! larger of `sqrt(a^2 + b^2)` and `sqrt(c^2 + d^2)` is the injective norm, so
//! `g^2 >= 1/2` throughout the family.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use super::{closed_form, Formula};
use crate::error::{GsdError, Result};
use crate::gsd::GsdDecomposition;
use crate::scalar::Real;
use crate::state::{QubitState, Qubit1};
use crate::tolerance::Tolerances;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GhzExtParams<T> {
    pub a: T,
    pub b: T,
    pub c: T,
    pub d: T,
}

impl<T: Real> GhzExtParams<T> {
    /// Requires real parameters of unit norm within `1e-12` (scaled for `f32`).
    pub fn new(a: T, b: T, c: T, d: T) -> Result<Self> {
        let v = [a, b, c, d];
        if v.iter().any(|x| !x.is_finite()) {
            return Err(GsdError::NonFinite);
        }
        let norm2 = v.iter().fold(T::zero(), |acc, &x| acc + x * x);
        if (norm2 - T::one()).abs() > Tolerances::<T>::default().norm {
            return Err(GsdError::InvalidParams(format!("a^2+b^2+c^2+d^2 = {norm2}, expected 1")));
        }
        Ok(Self { a, b, c, d })
    }

    pub fn normalized(a: T, b: T, c: T, d: T) -> Result<Self> {
        let v = [a, b, c, d];
        if v.iter().any(|x| !x.is_finite()) {
            return Err(GsdError::NonFinite);
        }
        let norm = v.iter().fold(T::zero(), |acc, &x| acc + x * x).sqrt();
        if norm <= T::zero() {
            return Err(GsdError::ZeroNorm);
        }
        Ok(Self { a: a / norm, b: b / norm, c: c / norm, d: d / norm })
    }

    pub fn to_array(&self) -> [T; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn state(&self) -> QubitState<T> {
        let terms = [(0, self.a), (1, self.b), (6, self.c), (7, self.d)]
            .map(|(i, x)| (i, Complex::new(x, T::zero())));
        QubitState::from_terms(3, &terms).expect("normalized parameters")
    }

    /// Norms of the two stationary points, `(sqrt(a^2+b^2), sqrt(c^2+d^2))`.
    pub fn branch_norms(&self) -> (T, T) {
        (self.a.hypot(self.b), self.c.hypot(self.d))
    }

    /// The two stationary points have equal overlap; [`ghz_gsd`] then takes the first.
    pub fn is_tie(&self, tol: T) -> bool {
        let (g1, g2) = self.branch_norms();
        (g1 - g2).abs() <= tol
    }
}

/// `g = max(sqrt(a^2+b^2), sqrt(c^2+d^2))`, `t_3 = |ac + bd|/g`,
/// `h = |ad - bc|/g`, `t_1 = t_2 = 0`.
///
/// `t_3` is reported as a magnitude: the gauge makes it non-negative, which
/// absorbs the sign of `ac + bd` for negative parameters.
pub fn ghz_gsd<T: Real>(p: &GhzExtParams<T>, tol: &Tolerances<T>) -> Result<GsdDecomposition<T>> {
    let GhzExtParams { a, b, c, d } = *p;
    let (g1, g2) = p.branch_norms();
    let real = |x: T| Complex::new(x, T::zero());
    let (q, g) = if g1 >= g2 {
        (vec![Qubit1::zero(), Qubit1::zero(), Qubit1::new(real(a), real(b))?], g1)
    } else {
        (vec![Qubit1::one(), Qubit1::one(), Qubit1::new(real(c), real(d))?], g2)
    };
    let t3 = (a * c + b * d).abs() / g;
    let h = (a * d - b * c).abs() / g;
    let f = Formula { g, t: vec![T::zero(), T::zero(), t3], h, phi: T::zero() };
    closed_form(&p.state(), q, f, tol)
}
