//! Generalized Schmidt decomposition of multi-qubit pure states.
//!
//! The injective tensor norm `g(psi) = max |<q_0 ... q_{n-1}|psi>|` over
//! product states is found by solving the stationarity equations numerically
//! ([`solver`]). The maximizing product state and its orthogonal complements
//! give a local basis in which `psi` takes a canonical form ([`gsd`]).
//! Closed forms for the three-qubit W-class, the n-qubit W family and an
//! extended GHZ family are in [`families`]; [`oracle`] is an independent
//! brute-force maximizer used for cross-checks.

pub mod error;
pub mod families;
pub mod gsd;
pub mod json;
pub mod oracle;
pub mod sampling;
pub mod scalar;
pub mod solver;
pub mod state;
pub mod tolerance;

pub use error::{GsdError, Result};
pub use families::{
    ghz_gsd, w3_classify, w3_gsd, w3_invariants, w3_stationary_solutions, wn_gsd, GhzExtParams, W3Params,
    W3Region, W3RegionLabel, WnParams,
};
pub use gsd::{
    bloch_norm_from_coeffs, build_gsd, check_lower_bound, decompose_in_basis, expand, gauge_fix,
    is_qubit_separable, is_reduction_mixed, orthogonal_complement, GsdBasis, GsdDecomposition,
};
pub use oracle::{brute_force, brute_force_g, GridSpec};
pub use scalar::Real;
pub use solver::{enumerate_stationary, find_dominant, power_iterate, seq_residual, SeqEigenpair, SolverConfig};
pub use state::{bloch_vector, overlap, partial_contract, reduced_density, ProductState, QubitState, Qubit1};
pub use tolerance::Tolerances;

pub type State = QubitState<f64>;
pub type Product = ProductState<f64>;
pub type Qubit = Qubit1<f64>;
pub type Decomposition = GsdDecomposition<f64>;
pub type Eigenpair = SeqEigenpair<f64>;
pub type Tol = Tolerances<f64>;
