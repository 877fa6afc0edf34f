//! Closed-form decompositions for the W-type and extended GHZ families.
//!
//! Every closed form builds its basis from the analytic dominant product
//! state, expands the state numerically in it (so the intermediate
//! coefficients and the `p` phases come from the same gauge fix as
//! [`build_gsd`](crate::gsd::build_gsd)), and then reports `g`, `t_k`, `h`
//! and `phi` from the formulas.

pub mod ghz;
pub mod w3;
pub mod wn;

use crate::error::Result;
use crate::gsd::{decompose_in_basis, GsdDecomposition};
use crate::scalar::Real;
use crate::solver::analytic_eigenpair;
use crate::state::{ProductState, QubitState, Qubit1};
use crate::tolerance::Tolerances;

pub use ghz::{ghz_gsd, GhzExtParams};
pub use w3::{
    w3_boundary_point, w3_classify, w3_gsd, w3_gsd_highly_entangled, w3_gsd_slight, w3_invariants,
    w3_stationary_solutions, OmitReason, W3Invariants, W3Params, W3Region, W3RegionLabel, W3Solution,
    W3SolutionKind, W3Solutions,
};
pub use wn::{wn_gsd, WnParams};

/// Residual bound for analytic eigenpairs.
const ANALYTIC_RESIDUAL: f64 = 1e-9;

/// Analytic scalars of a closed-form decomposition.
pub(crate) struct Formula<T> {
    pub g: T,
    pub t: Vec<T>,
    pub h: T,
    /// Value of `phi` when no gauge phase is left undetermined.
    pub phi: T,
}

pub(crate) fn closed_form<T: Real>(
    s: &QubitState<T>,
    q: Vec<Qubit1<T>>,
    f: Formula<T>,
    tol: &Tolerances<T>,
) -> Result<GsdDecomposition<T>> {
    let product = ProductState::new(q.clone())?;
    let mut d = decompose_in_basis(s, q, tol)?;
    let degenerate = f.h <= tol.gauge_zero || f.t.iter().any(|&t| t <= tol.gauge_zero);
    d.phi = if degenerate { T::zero() } else { f.phi };
    d.eigenpair = Some(analytic_eigenpair(s, product, f.g, T::of(ANALYTIC_RESIDUAL))?);
    d.g = f.g;
    d.t = f.t;
    d.h = f.h;
    Ok(d)
}
