//! Every numeric threshold used by the library lives in [`Tolerances`].
//!
//! Defaults are tuned for `f64`. In lower precision each value is floored to a
//! small multiple of machine epsilon.

use serde::{Deserialize, Serialize};

use crate::scalar::Real;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Tolerances<T> {
    /// Unit-norm checks on states and single-qubit factors.
    pub norm: T,
    /// Magnitude below which a vector component counts as zero for the
    /// first-nonzero-component phase convention.
    pub component_zero: T,
    /// A contraction with norm at or below this is a degenerate fiber.
    pub contraction_zero: T,
    /// `t_k` or `h` at or below this leaves a gauge phase undetermined.
    pub gauge_zero: T,
    /// Distance from the lower edge of the phi window that gets snapped to the upper edge.
    pub phi_snap: T,
    /// Coefficient magnitude treated as zero by the separability predicate.
    pub separability: T,
    /// Bound on `|t_k|` and `|g^2 - 1/2|` for the completely-mixed predicate.
    pub mixed: T,
    /// Width of the band around `r = 0` that counts as a region boundary.
    pub boundary: T,
    /// Largest `h` for which the slightly-entangled lower bound applies.
    pub h_zero: T,
    /// Slack allowed when testing the slightly-entangled lower bound.
    pub lower_bound_slack: T,
    /// Largest single-p coefficient for which the coefficient Bloch formula is exact.
    pub formula_support: T,
}

impl<T: Real> Default for Tolerances<T> {
    fn default() -> Self {
        Self {
            norm: T::tol(1e-12, 64.0),
            component_zero: T::tol(1e-14, 64.0),
            contraction_zero: T::tol(1e-14, 64.0),
            gauge_zero: T::tol(1e-9, 256.0),
            phi_snap: T::tol(1e-9, 256.0),
            separability: T::tol(1e-7, 256.0),
            mixed: T::tol(1e-7, 256.0),
            boundary: T::tol(1e-9, 256.0),
            h_zero: T::tol(1e-9, 256.0),
            lower_bound_slack: T::tol(1e-10, 256.0),
            formula_support: T::tol(1e-9, 256.0),
        }
    }
}
