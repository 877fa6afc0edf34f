//! Numerical solution of the stationarity equations
//!
//! ```text
//! <q_0 ... q^_k ... q_{n-1}|psi> = g |q_k>,   k = 0..n-1
//! ```
//!
//! by alternating (higher-order) power iteration. Each factor update replaces
//! `|q_k>` with the normalized partial contraction, which maximizes the overlap
//! over that factor with the others held fixed, so `|<q|psi>|` never decreases.
//! The dominant eigenpair, whose eigenvalue is the injective tensor norm, is
//! selected by a seeded multistart.

use num_complex::Complex;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{GsdError, Result};
use crate::sampling::{random_product, random_qubit};
use crate::scalar::Real;
use crate::state::{contract_all, contract_except, spinor_norm, ProductState, QubitState, Qubit1};
use crate::tolerance::Tolerances;

/// Computational-basis starts added by [`enumerate_stationary`] only up to this size.
const MAX_BASIS_START_QUBITS: usize = 12;

/// Basis starts added by [`find_dominant`] only up to this size.
const MAX_DOMINANT_BASIS_START_QUBITS: usize = 6;

/// Sweep budget of the first pass of [`find_dominant`].
const FIRST_PASS_SWEEPS: usize = 10_000;

/// An unconverged run beating the best converged `g` by more than this invalidates it.
const UNCONVERGED_MARGIN: f64 = 1e-9;

/// Slack on the per-sweep monotonicity check of the overlap magnitude.
const MONOTONE_SLACK: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SolverConfig {
    pub restarts: usize,
    /// Maximum number of full sweeps per restart.
    pub max_iterations: usize,
    pub residual_tol: f64,
    /// Two eigenvectors whose factor-wise fidelities all exceed `1 - dedup_tol` are merged.
    pub dedup_tol: f64,
    /// Restart `i` is seeded with `rng_seed + i`.
    pub rng_seed: u64,
    /// Run restarts on the rayon pool. Results are identical either way.
    pub parallel: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            restarts: 64,
            max_iterations: 100_000,
            residual_tol: 1e-10,
            dedup_tol: 1e-6,
            rng_seed: 0,
            parallel: true,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        if self.restarts == 0 {
            return Err(GsdError::InvalidConfig("restarts must be at least 1".into()));
        }
        if self.max_iterations == 0 {
            return Err(GsdError::InvalidConfig("max_iterations must be at least 1".into()));
        }
        for (name, v) in [("residual_tol", self.residual_tol), ("dedup_tol", self.dedup_tol)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(GsdError::InvalidConfig(format!("{name} must be positive, got {v}")));
            }
        }
        Ok(())
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.rng_seed = seed;
        self
    }

    pub fn with_restarts(mut self, restarts: usize) -> Self {
        self.restarts = restarts;
        self
    }
}

/// A stationary product state together with its eigenvalue.
#[derive(Clone, Debug, PartialEq)]
pub struct SeqEigenpair<T> {
    pub product: ProductState<T>,
    /// `|<q|psi>|`.
    pub g: T,
    /// `<q|psi>` including its phase.
    pub overlap: Complex<T>,
    /// `max_k || <q..q^_k..q|psi> - <q|psi> |q_k> ||`.
    pub residual: T,
    /// Full sweeps performed.
    pub iterations: usize,
    pub converged: bool,
    /// Factors replaced by a random vector after a vanishing contraction.
    pub degenerate_resets: usize,
    /// Whether `|<q|psi>|` was non-decreasing over every sweep without a reset.
    pub monotone: bool,
    /// Index of the restart that produced this pair, when it came from a multistart.
    pub restart: Option<usize>,
}

/// Overlap and stationarity residual of `p` against `s`.
pub fn seq_residual<T: Real>(s: &QubitState<T>, p: &ProductState<T>) -> Result<(Complex<T>, T)> {
    if p.n() != s.n() {
        return Err(GsdError::Dimension { expected: s.n(), found: p.n() });
    }
    let lambda = contract_all(s.amps(), p.factors());
    let residual = (0..s.n())
        .map(|k| {
            let v = contract_except(s.amps(), p.factors(), k);
            let q = p.factors()[k];
            spinor_norm(&[v[0] - lambda * q.c0(), v[1] - lambda * q.c1()])
        })
        .fold(T::zero(), T::max);
    Ok((lambda, residual))
}

/// Wraps an analytic stationary point into an eigenpair, with `g` taken from the caller.
pub fn analytic_eigenpair<T: Real>(
    s: &QubitState<T>,
    product: ProductState<T>,
    g: T,
    residual_tol: T,
) -> Result<SeqEigenpair<T>> {
    let (overlap, residual) = seq_residual(s, &product)?;
    Ok(SeqEigenpair {
        product,
        g,
        overlap,
        residual,
        iterations: 0,
        converged: residual <= residual_tol,
        degenerate_resets: 0,
        monotone: true,
        restart: None,
    })
}

/// Alternating power iteration from `start`, seeded with `cfg.rng_seed` for degenerate-fiber resets.
pub fn power_iterate<T: Real>(
    s: &QubitState<T>,
    start: &ProductState<T>,
    cfg: &SolverConfig,
) -> Result<SeqEigenpair<T>> {
    cfg.validate()?;
    if start.n() != s.n() {
        return Err(GsdError::Dimension { expected: s.n(), found: start.n() });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.rng_seed);
    Ok(iterate(s, start.factors().to_vec(), cfg, &mut rng))
}

fn iterate<T: Real>(
    s: &QubitState<T>,
    mut factors: Vec<Qubit1<T>>,
    cfg: &SolverConfig,
    rng: &mut ChaCha8Rng,
) -> SeqEigenpair<T> {
    let tols = Tolerances::<T>::default();
    let tol = T::tol(cfg.residual_tol, 4.0);
    let slack = T::tol(MONOTONE_SLACK, 16.0);
    let n = s.n();

    let mut prev = contract_all(s.amps(), &factors).norm();
    let mut resets = 0;
    let mut monotone = true;
    let mut converged = false;
    let mut residual = T::infinity();
    let mut sweeps = 0;

    while sweeps < cfg.max_iterations {
        sweeps += 1;
        let mut reset = false;
        for k in 0..n {
            let v = contract_except(s.amps(), &factors, k);
            let norm = spinor_norm(&v);
            factors[k] = if norm <= tols.contraction_zero {
                resets += 1;
                reset = true;
                random_qubit(rng)
            } else {
                Qubit1::from_unit(v[0] / norm, v[1] / norm).with_canonical_phase(tols.component_zero)
            };
        }
        let current = contract_all(s.amps(), &factors).norm();
        if !reset && current + slack < prev {
            monotone = false;
        }
        let stagnant = !reset && (current - prev).abs() < tol;
        prev = current;
        if stagnant {
            let p = ProductState::new(factors.clone()).expect("n >= 1");
            residual = seq_residual(s, &p).expect("dimensions match").1;
            if residual <= tol {
                converged = true;
                break;
            }
        }
    }

    let product = ProductState::new(factors).expect("n >= 1");
    let (overlap, final_residual) = seq_residual(s, &product).expect("dimensions match");
    if !converged {
        residual = final_residual;
    }
    SeqEigenpair {
        product,
        g: overlap.norm(),
        overlap,
        residual: final_residual.min(residual),
        iterations: sweeps,
        converged,
        degenerate_resets: resets,
        monotone,
        restart: None,
    }
}

fn run_restart<T: Real>(s: &QubitState<T>, cfg: &SolverConfig, index: usize) -> SeqEigenpair<T> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.rng_seed.wrapping_add(index as u64));
    let start = random_product(s.n(), &mut rng);
    let mut pair = iterate(s, start.into_factors(), cfg, &mut rng);
    pair.restart = Some(index);
    pair
}

fn run_basis_start<T: Real>(s: &QubitState<T>, cfg: &SolverConfig, index: usize, basis: usize) -> SeqEigenpair<T> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.rng_seed.wrapping_add(index as u64));
    let start = ProductState::computational(s.n(), basis).expect("basis index in range");
    let mut pair = iterate(s, start.into_factors(), cfg, &mut rng);
    pair.restart = Some(index);
    pair
}

fn multistart<T: Real>(s: &QubitState<T>, cfg: &SolverConfig, basis_up_to: usize) -> Vec<SeqEigenpair<T>> {
    let mut runs: Vec<SeqEigenpair<T>> = if cfg.parallel {
        (0..cfg.restarts).into_par_iter().map(|i| run_restart(s, cfg, i)).collect()
    } else {
        (0..cfg.restarts).map(|i| run_restart(s, cfg, i)).collect()
    };
    if s.n() <= basis_up_to {
        let offset = cfg.restarts;
        let basis = 0..1usize << s.n();
        let basis_runs: Vec<SeqEigenpair<T>> = if cfg.parallel {
            basis.into_par_iter().map(|b| run_basis_start(s, cfg, offset + b, b)).collect()
        } else {
            basis.map(|b| run_basis_start(s, cfg, offset + b, b)).collect()
        };
        runs.extend(basis_runs);
    }
    runs
}

fn diverged<T: Real>(runs: &[SeqEigenpair<T>]) -> GsdError {
    let best = runs.iter().map(|r| r.residual.as_f64()).fold(f64::INFINITY, f64::min);
    GsdError::SolverDiverged { restarts: runs.len(), best_residual: best }
}

fn best_converged<T: Real>(runs: &[SeqEigenpair<T>]) -> Option<&SeqEigenpair<T>> {
    let mut best: Option<&SeqEigenpair<T>> = None;
    for run in runs.iter().filter(|r| r.converged) {
        match best {
            Some(b) if run.g <= b.g => {}
            _ => best = Some(run),
        }
    }
    best
}

/// Resumes an unconverged run for `sweeps` more sweeps.
fn resume<T: Real>(s: &QubitState<T>, cfg: &SolverConfig, run: &SeqEigenpair<T>, sweeps: usize) -> SeqEigenpair<T> {
    let index = run.restart.unwrap_or(0);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.rng_seed.wrapping_add(index as u64));
    // a separate stream, so resets do not replay the draws of the first pass
    rng.set_stream(1);
    let budget = SolverConfig { max_iterations: sweeps, ..cfg.clone() };
    let mut pair = iterate(s, run.product.factors().to_vec(), &budget, &mut rng);
    pair.iterations += run.iterations;
    pair.degenerate_resets += run.degenerate_resets;
    pair.monotone &= run.monotone;
    pair.restart = run.restart;
    pair
}

/// Converged pair with the largest `g` over `cfg.restarts` seeded restarts.
///
/// For `n <= 6` the computational-basis products are tried as well: at
/// boundary states of the W-type families the maximum is degenerate, power
/// iteration approaches it only sublinearly from a random start, and the
/// maximizer is a basis product that these starts hit exactly.
///
/// Every start first gets at most 10 000 sweeps. Only unconverged runs that
/// could still beat the best converged `g` are then resumed up to
/// `cfg.max_iterations`; near a bifurcation of the stationary points the
/// convergence is linear with a rate close to one and needs that budget.
///
/// If an unconverged run still overlaps the state more than the best converged
/// one, the converged answer is not the maximum and the call fails with
/// `SolverDiverged` instead. Ties go to the lowest restart index, so the result
/// is reproducible bit for bit for a fixed seed and restart count.
pub fn find_dominant<T: Real>(s: &QubitState<T>, cfg: &SolverConfig) -> Result<SeqEigenpair<T>> {
    cfg.validate()?;
    let first = SolverConfig { max_iterations: cfg.max_iterations.min(FIRST_PASS_SWEEPS), ..cfg.clone() };
    let mut runs = multistart(s, &first, MAX_DOMINANT_BASIS_START_QUBITS);
    let margin = T::tol(UNCONVERGED_MARGIN, 64.0);
    let threshold = best_converged(&runs).map(|b| b.g + margin);
    let suspects: Vec<usize> = (0..runs.len())
        .filter(|&i| !runs[i].converged && threshold.is_none_or(|t| runs[i].g > t))
        .collect();
    let remaining = cfg.max_iterations - first.max_iterations;
    if !suspects.is_empty() && remaining > 0 {
        let resumed: Vec<SeqEigenpair<T>> = if cfg.parallel {
            suspects.par_iter().map(|&i| resume(s, cfg, &runs[i], remaining)).collect()
        } else {
            suspects.iter().map(|&i| resume(s, cfg, &runs[i], remaining)).collect()
        };
        for (i, pair) in suspects.into_iter().zip(resumed) {
            runs[i] = pair;
        }
    }
    let best = best_converged(&runs).ok_or_else(|| diverged(&runs))?;
    if runs.iter().any(|r| !r.converged && r.g > best.g + margin) {
        return Err(diverged(&runs));
    }
    Ok(best.clone())
}

/// All distinct converged fixed points found, sorted by `g` descending.
///
/// Besides the random restarts, every computational-basis product state is
/// used as a start when `n <= 12`. Those starts reach exact stationary points
/// that are saddles of the overlap and never attract a random start.
pub fn enumerate_stationary<T: Real>(s: &QubitState<T>, cfg: &SolverConfig) -> Result<Vec<SeqEigenpair<T>>> {
    cfg.validate()?;
    let runs = multistart(s, cfg, MAX_BASIS_START_QUBITS);
    let mut converged: Vec<&SeqEigenpair<T>> = runs.iter().filter(|r| r.converged).collect();
    if converged.is_empty() {
        return Err(diverged(&runs));
    }
    // stable sort keeps restart order among equal g
    converged.sort_by(|a, b| b.g.partial_cmp(&a.g).expect("finite g"));

    let threshold = T::one() - T::of(cfg.dedup_tol);
    let mut distinct: Vec<SeqEigenpair<T>> = Vec::new();
    for pair in converged {
        let seen = distinct
            .iter()
            .any(|d| d.product.min_factor_fidelity(&pair.product) > threshold);
        if !seen {
            distinct.push(pair.clone());
        }
    }
    Ok(distinct)
}

/// Overlap magnitude after each sweep, for inspecting convergence.
pub fn overlap_trace<T: Real>(
    s: &QubitState<T>,
    start: &ProductState<T>,
    sweeps: usize,
) -> Result<Vec<T>> {
    if start.n() != s.n() {
        return Err(GsdError::Dimension { expected: s.n(), found: start.n() });
    }
    let tols = Tolerances::<T>::default();
    let mut factors = start.factors().to_vec();
    let mut trace = Vec::with_capacity(sweeps + 1);
    trace.push(contract_all(s.amps(), &factors).norm());
    for _ in 0..sweeps {
        for k in 0..s.n() {
            let v = contract_except(s.amps(), &factors, k);
            let norm = spinor_norm(&v);
            if norm > tols.contraction_zero {
                factors[k] = Qubit1::from_unit(v[0] / norm, v[1] / norm);
            }
        }
        trace.push(contract_all(s.amps(), &factors).norm());
    }
    Ok(trace)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::random_state;
    use num_complex::Complex64;

    fn w3(a: f64, b: f64, c: f64, d: f64) -> QubitState<f64> {
        let r = |x: f64| Complex64::new(x, 0.0);
        QubitState::from_terms(3, &[(4, r(a)), (2, r(b)), (1, r(c)), (7, r(d))]).unwrap()
    }

    fn quick() -> SolverConfig {
        SolverConfig { restarts: 16, ..SolverConfig::default() }
    }

    #[test]
    fn product_state_converges_to_itself() {
        let s = QubitState::<f64>::basis(3, 0).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let start = random_product(3, &mut rng);
        let pair = power_iterate(&s, &start, &quick()).unwrap();
        assert!(pair.converged);
        assert!((pair.g - 1.0).abs() < 1e-12);
        let p000 = ProductState::computational(3, 0).unwrap();
        assert!(pair.product.min_factor_fidelity(&p000) > 1.0 - 1e-12);
    }

    #[test]
    fn symmetric_w_gives_two_thirds() {
        let r3 = 1.0 / 3f64.sqrt();
        let s = w3(r3, r3, r3, 0.0);
        let pair = find_dominant(&s, &quick()).unwrap();
        assert!((pair.g - 2.0 / 3.0).abs() < 1e-9, "g = {}", pair.g);
        assert!(pair.residual <= 1e-10);
    }

    #[test]
    fn ghz_from_near_000_stays_there() {
        let s = QubitState::from_real(3, &[1.0, 0., 0., 0., 0., 0., 0., 1.0]).unwrap();
        let near = ProductState::new(vec![
            Qubit1::from_bloch_angles(0.2, 0.3),
            Qubit1::from_bloch_angles(0.1, -1.0),
            Qubit1::from_bloch_angles(0.15, 2.0),
        ])
        .unwrap();
        let pair = power_iterate(&s, &near, &quick()).unwrap();
        assert!(pair.converged);
        assert!((pair.g - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-12);
        let p000 = ProductState::computational(3, 0).unwrap();
        assert!(pair.product.min_factor_fidelity(&p000) > 1.0 - 1e-12);
    }

    #[test]
    fn slight_w3_dominant_is_largest_coefficient() {
        let s = w3(0.7f64.sqrt(), 0.1f64.sqrt(), 0.1f64.sqrt(), 0.1f64.sqrt());
        let pair = find_dominant(&s, &quick()).unwrap();
        assert!((pair.g - 0.7f64.sqrt()).abs() < 1e-9);
    }

    #[test]
    fn orthogonal_start_triggers_reset() {
        // every contraction from |111> against |000> vanishes
        let s = QubitState::<f64>::basis(3, 0).unwrap();
        let start = ProductState::computational(3, 0b111).unwrap();
        let pair = power_iterate(&s, &start, &quick()).unwrap();
        assert!(pair.degenerate_resets > 0);
        assert!(pair.converged);
        assert!((pair.g - 1.0).abs() < 1e-12);
    }

    #[test]
    fn reproducible_for_fixed_seed() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let s: QubitState<f64> = random_state(4, &mut rng);
        let cfg = SolverConfig { restarts: 8, rng_seed: 99, ..SolverConfig::default() };
        let a = find_dominant(&s, &cfg).unwrap();
        let b = find_dominant(&s, &SolverConfig { parallel: false, ..cfg.clone() }).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn enumerate_product_state_has_single_point() {
        let s = QubitState::<f64>::basis(3, 0).unwrap();
        let list = enumerate_stationary(&s, &quick()).unwrap();
        assert_eq!(list.len(), 1);
        assert!((list[0].g - 1.0).abs() < 1e-12);
    }

    #[test]
    fn config_validation() {
        let s = QubitState::<f64>::basis(2, 0).unwrap();
        let bad = SolverConfig { restarts: 0, ..SolverConfig::default() };
        assert!(matches!(find_dominant(&s, &bad), Err(GsdError::InvalidConfig(_))));
        let bad = SolverConfig { residual_tol: -1.0, ..SolverConfig::default() };
        assert!(matches!(find_dominant(&s, &bad), Err(GsdError::InvalidConfig(_))));
    }

    #[test]
    fn divergence_is_reported() {
        let r3 = 1.0 / 3f64.sqrt();
        let s = w3(r3, r3, r3, 0.0);
        let cfg = SolverConfig { restarts: 2, max_iterations: 1, ..SolverConfig::default() };
        match find_dominant(&s, &cfg) {
            Err(GsdError::SolverDiverged { restarts, best_residual }) => {
                // two random restarts plus the eight basis starts
                assert_eq!(restarts, 10);
                assert!(best_residual.is_finite() && best_residual >= 0.0);
            }
            other => panic!("expected divergence, got {other:?}"),
        }
    }

    #[test]
    fn overlap_trace_is_monotone() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let s: QubitState<f64> = random_state(3, &mut rng);
        let start = random_product(3, &mut rng);
        let trace = overlap_trace(&s, &start, 50).unwrap();
        for w in trace.windows(2) {
            assert!(w[1] + 1e-12 >= w[0]);
        }
    }
}
