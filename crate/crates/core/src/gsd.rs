//! Generalized Schmidt decomposition built from the dominant eigenvector.
//!
//! With `|q_k>` the factors of the dominant stationary product state and
//! `|p_k>` their orthogonal complements, the `2^n` products form an orthonormal
//! basis. Coefficients are indexed by bitstrings with the same qubit order as
//! amplitudes: bit 0 selects `|q_k>`, bit 1 selects `|p_k>`. Stationarity kills
//! every coefficient with exactly one `p`. The remaining phase freedom of the
//! `|p_k>` is fixed so the coefficients `t_k` (exactly one `q`, at position `k`)
//! are real and non-negative, and the all-`p` coefficient `e^{i phi} h` has
//! `phi` in `(-pi/(n-1), pi/(n-1)]`.

use num_complex::Complex;

use crate::error::{GsdError, Result};
use crate::scalar::Real;
use crate::solver::{find_dominant, SeqEigenpair, SolverConfig};
use crate::state::{apply_local, bit_of, check_index, qubit_mask, Mat2, QubitState, Qubit1};
use crate::tolerance::Tolerances;

/// `|p>` orthogonal to `x`: `(-conj(c1), conj(c0))` with the leading component made real positive.
pub fn orthogonal_complement<T: Real>(x: &Qubit1<T>) -> Qubit1<T> {
    let tol = Tolerances::<T>::default().component_zero;
    Qubit1::from_unit(-x.c1().conj(), x.c0().conj()).with_canonical_phase(tol)
}

#[derive(Clone, Debug, PartialEq)]
pub struct GsdBasis<T> {
    q: Vec<Qubit1<T>>,
    p: Vec<Qubit1<T>>,
}

impl<T: Real> GsdBasis<T> {
    /// Completes `q` with [`orthogonal_complement`] factors.
    pub fn from_q(q: Vec<Qubit1<T>>) -> Self {
        let p = q.iter().map(orthogonal_complement).collect();
        Self { q, p }
    }

    /// Checks unit norms and `<p_k|q_k> = 0` against `tol.norm`.
    pub fn new(q: Vec<Qubit1<T>>, p: Vec<Qubit1<T>>, tol: &Tolerances<T>) -> Result<Self> {
        if q.len() != p.len() {
            return Err(GsdError::Dimension { expected: q.len(), found: p.len() });
        }
        for (qk, pk) in q.iter().zip(&p) {
            let unit = (qk.norm() - T::one()).abs() <= tol.norm && (pk.norm() - T::one()).abs() <= tol.norm;
            if !unit || pk.inner(qk).norm() > tol.norm {
                return Err(GsdError::InvalidParams("basis factors must be orthonormal pairs".into()));
            }
        }
        Ok(Self { q, p })
    }

    pub fn n(&self) -> usize {
        self.q.len()
    }

    pub fn q(&self) -> &[Qubit1<T>] {
        &self.q
    }

    pub fn p(&self) -> &[Qubit1<T>] {
        &self.p
    }

    /// Rows `<q_k|` and `<p_k|`: maps amplitudes of qubit `k` into basis coordinates.
    fn analysis_matrix(&self, k: usize) -> Mat2<T> {
        let (q, p) = (self.q[k], self.p[k]);
        [[q.c0().conj(), q.c1().conj()], [p.c0().conj(), p.c1().conj()]]
    }

    /// Columns `|q_k>` and `|p_k>`.
    fn synthesis_matrix(&self, k: usize) -> Mat2<T> {
        let (q, p) = (self.q[k], self.p[k]);
        [[q.c0(), p.c0()], [q.c1(), p.c1()]]
    }

    fn rotate_p(&mut self, theta: &[T]) {
        for (pk, &th) in self.p.iter_mut().zip(theta) {
            *pk = pk.rotated(th);
        }
    }
}

/// Coordinates `c_b = <b|psi>` of `s` in the product basis.
pub fn expand<T: Real>(s: &QubitState<T>, basis: &GsdBasis<T>) -> Result<Vec<Complex<T>>> {
    if basis.n() != s.n() {
        return Err(GsdError::Dimension { expected: s.n(), found: basis.n() });
    }
    let mut c = s.amps().to_vec();
    for k in 0..s.n() {
        apply_local(&mut c, s.n(), k, &basis.analysis_matrix(k));
    }
    Ok(c)
}

/// Bitstring index of the coefficient `t_k`: `p` everywhere except `q` at `k`.
pub fn t_index(n: usize, k: usize) -> usize {
    ((1 << n) - 1) ^ qubit_mask(k, n)
}

/// Bitstring index of the all-`p` coefficient.
pub fn h_index(n: usize) -> usize {
    (1 << n) - 1
}

/// Bitstring index of the single-`p` coefficient at `k`, which stationarity forces to zero.
pub fn single_p_index(n: usize, k: usize) -> usize {
    qubit_mask(k, n)
}

/// Output of [`gauge_fix`].
#[derive(Clone, Debug, PartialEq)]
pub struct GaugeFix<T> {
    /// Coefficients after the global rotation and the `p`-phase shifts.
    pub coeffs: Vec<Complex<T>>,
    /// `|p_k> -> e^{i theta_k}|p_k>` applied to the basis.
    pub theta: Vec<T>,
    /// The input was multiplied by `e^{-i global_phase}`.
    pub global_phase: T,
    pub t: Vec<T>,
    pub h: T,
    pub phi: T,
    /// Qubits whose `t_k` vanished, leaving their phase equation out of the solve.
    pub dropped: Vec<usize>,
}

fn wrap_pi<T: Real>(x: T) -> T {
    let two_pi = T::PI() + T::PI();
    let mut y = x % two_pi;
    if y <= -T::PI() {
        y = y + two_pi;
    } else if y > T::PI() {
        y = y - two_pi;
    }
    y
}

/// Fixes the phases of the `|p_k>` so every non-vanishing `t_k` is real
/// non-negative and `phi` lies in `(-pi/(n-1), pi/(n-1)]`.
///
/// Under `|p_j> -> e^{i theta_j}|p_j>` the argument of `t_k` shifts by
/// `-(Theta - theta_k)` with `Theta = sum_j theta_j`, and that of `h` by
/// `-Theta`. With every `t_k` nonzero the system has the solutions
/// `Theta = (sum_k arg t_k + 2 pi m)/(n-1)`, `theta_k = Theta - arg t_k`;
/// `m` picks the window for `phi`. When some `t_k` vanish their equations
/// are dropped: `Theta` is set to `arg h` (so `phi = 0`), or to 0 when `h`
/// vanishes too, the first dropped qubit absorbs the remaining freedom and
/// every other free phase is 0.
pub fn gauge_fix<T: Real>(raw: &[Complex<T>], n: usize, tol: &Tolerances<T>) -> Result<GaugeFix<T>> {
    if n < 2 {
        return Err(GsdError::UnsupportedArity { n, requirement: "gauge fixing needs at least 2 qubits" });
    }
    if raw.len() != 1 << n {
        return Err(GsdError::Dimension { expected: 1 << n, found: raw.len() });
    }
    let lead = raw[0];
    if lead.norm() <= tol.contraction_zero {
        return Err(GsdError::NotApplicable("all-q coefficient vanishes"));
    }
    let global_phase = lead.arg();
    let unrotate = Complex::from_polar(T::one(), -global_phase);
    let mut coeffs: Vec<Complex<T>> = raw.iter().map(|&c| c * unrotate).collect();

    let t_raw: Vec<Complex<T>> = (0..n).map(|k| coeffs[t_index(n, k)]).collect();
    let h_raw = coeffs[h_index(n)];
    let live: Vec<usize> = (0..n).filter(|&k| t_raw[k].norm() > tol.gauge_zero).collect();
    let dropped: Vec<usize> = (0..n).filter(|&k| t_raw[k].norm() <= tol.gauge_zero).collect();
    let h_live = h_raw.norm() > tol.gauge_zero;

    let mut theta = vec![T::zero(); n];
    let mut phi = T::zero();
    if dropped.is_empty() {
        let nm1 = T::of((n - 1) as f64);
        let width = (T::PI() + T::PI()) / nm1;
        let alpha_sum = t_raw.iter().fold(T::zero(), |acc, t| acc + t.arg());
        let big_theta = alpha_sum / nm1;
        for k in 0..n {
            theta[k] = big_theta - t_raw[k].arg();
        }
        if h_live {
            let phi0 = wrap_pi(h_raw.arg() - big_theta);
            let half = T::of(0.5);
            let mut m = (phi0 / width - half).ceil();
            let mut wrapped = phi0 - m * width;
            if wrapped <= -width * half + tol.phi_snap {
                wrapped = wrapped + width;
                m = m - T::one();
            }
            phi = wrapped;
            for th in theta.iter_mut() {
                *th = *th + m * width;
            }
        }
    } else {
        let big_theta = if h_live { h_raw.arg() } else { T::zero() };
        let mut assigned = T::zero();
        for &k in &live {
            theta[k] = big_theta - t_raw[k].arg();
            assigned = assigned + theta[k];
        }
        theta[dropped[0]] = big_theta - assigned;
    }

    for (b, c) in coeffs.iter_mut().enumerate() {
        let shift = (0..n)
            .filter(|&k| bit_of(b, k, n) == 1)
            .fold(T::zero(), |acc, k| acc + theta[k]);
        *c = *c * Complex::from_polar(T::one(), -shift);
    }
    let t = (0..n).map(|k| coeffs[t_index(n, k)].norm()).collect();
    let h = coeffs[h_index(n)].norm();
    Ok(GaugeFix { coeffs, theta: theta.into_iter().map(wrap_pi).collect(), global_phase, t, h, phi, dropped })
}

/// Gauge-fixed generalized Schmidt decomposition.
#[derive(Clone, Debug, PartialEq)]
pub struct GsdDecomposition<T> {
    pub basis: GsdBasis<T>,
    /// `c_b = <b|psi'>` with `psi' = e^{-i global_phase} psi`.
    pub coeffs: Vec<Complex<T>>,
    pub g: T,
    pub t: Vec<T>,
    pub h: T,
    pub phi: T,
    pub global_phase: T,
    pub theta: Vec<T>,
    pub gauge_dropped: Vec<usize>,
    /// Solver output the basis came from; `None` for closed-form bases.
    pub eigenpair: Option<SeqEigenpair<T>>,
}

impl<T: Real> GsdDecomposition<T> {
    pub fn n(&self) -> usize {
        self.basis.n()
    }

    pub fn coefficient(&self, index: usize) -> Complex<T> {
        self.coeffs[index]
    }

    /// Largest single-`p` coefficient magnitude.
    pub fn max_single_p(&self) -> T {
        let n = self.n();
        (0..n).map(|k| self.coeffs[single_p_index(n, k)].norm()).fold(T::zero(), T::max)
    }

    /// Coefficients outside the `g`, `t_k`, single-`p` and `h` patterns.
    pub fn intermediates(&self) -> impl Iterator<Item = (usize, Complex<T>)> + '_ {
        let n = self.n();
        self.coeffs.iter().enumerate().filter_map(move |(b, &c)| {
            let ones = b.count_ones() as usize;
            (ones >= 2 && ones + 1 < n).then_some((b, c))
        })
    }

    /// `sum_b c_b |b>`, which equals the input up to the global phase `e^{-i global_phase}`.
    pub fn reconstruct(&self) -> Result<QubitState<T>> {
        let n = self.n();
        let mut amps = self.coeffs.clone();
        for k in 0..n {
            apply_local(&mut amps, n, k, &self.basis.synthesis_matrix(k));
        }
        QubitState::new(n, amps)
    }

    /// Dominant product state `|q_0 ... q_{n-1}>`.
    pub fn dominant_product(&self) -> crate::state::ProductState<T> {
        crate::state::ProductState::new(self.basis.q.clone()).expect("n >= 1")
    }

    /// Violated structural constraints, checked with absolute slack `eps`.
    pub fn violations(&self, eps: T) -> Vec<String> {
        let n = self.n();
        let mut out = Vec::new();
        let lead = self.coeffs[0];
        if lead.im.abs() > eps || (lead.re - self.g).abs() > eps || self.g < -eps {
            out.push(format!("all-q coefficient {lead:?} is not g = {:e}", self.g));
        }
        let max_mag = self.coeffs.iter().map(|c| c.norm()).fold(T::zero(), T::max);
        if max_mag > self.g + eps {
            out.push(format!("coefficient magnitude {max_mag:e} exceeds g = {:e}", self.g));
        }
        for k in 0..n {
            let tk = self.coeffs[t_index(n, k)];
            if n > 2 && !self.gauge_dropped.contains(&k) && (tk.im.abs() > eps || tk.re < -eps) {
                out.push(format!("t_{k} coefficient {tk:?} is not real non-negative"));
            }
            if self.t[k] < T::zero() {
                out.push(format!("t_{k} negative"));
            }
        }
        if self.h < T::zero() {
            out.push("h negative".into());
        }
        let edge = T::PI() / T::of((n - 1) as f64);
        if self.phi <= -edge - eps || self.phi > edge + eps {
            out.push(format!("phi = {:e} outside (-pi/(n-1), pi/(n-1)]", self.phi));
        }
        let total = self.coeffs.iter().map(|c| c.norm_sqr()).fold(T::zero(), |a, b| a + b);
        if (total - T::one()).abs() > eps {
            out.push(format!("coefficients not normalized: {total:e}"));
        }
        out
    }
}

/// Decomposes `s` in the basis completed from `q`, which should be a stationary product state.
pub fn decompose_in_basis<T: Real>(
    s: &QubitState<T>,
    q: Vec<Qubit1<T>>,
    tol: &Tolerances<T>,
) -> Result<GsdDecomposition<T>> {
    if q.len() != s.n() {
        return Err(GsdError::Dimension { expected: s.n(), found: q.len() });
    }
    let mut basis = GsdBasis::from_q(q);
    let raw = expand(s, &basis)?;
    let fix = gauge_fix(&raw, s.n(), tol)?;
    basis.rotate_p(&fix.theta);
    Ok(GsdDecomposition {
        basis,
        g: fix.coeffs[0].re,
        coeffs: fix.coeffs,
        t: fix.t,
        h: fix.h,
        phi: fix.phi,
        global_phase: fix.global_phase,
        theta: fix.theta,
        gauge_dropped: fix.dropped,
        eigenpair: None,
    })
}

/// Dominant eigenvector, orthogonal completion, expansion and gauge fixing in one call.
pub fn build_gsd<T: Real>(s: &QubitState<T>, cfg: &SolverConfig, tol: &Tolerances<T>) -> Result<GsdDecomposition<T>> {
    if s.n() < 2 {
        return Err(GsdError::UnsupportedArity { n: s.n(), requirement: "decomposition needs at least 2 qubits" });
    }
    let pair = find_dominant(s, cfg)?;
    let mut d = decompose_in_basis(s, pair.product.factors().to_vec(), tol)?;
    d.eigenpair = Some(pair);
    Ok(d)
}

/// Qubit `k` is unentangled iff every coefficient with `|p_k>` at position `k`
/// vanishes: `h`, every `t_i` with `i != k`, and each intermediate lacking `q_k`.
pub fn is_qubit_separable<T: Real>(d: &GsdDecomposition<T>, k: usize, tol: &Tolerances<T>) -> Result<bool> {
    let n = d.n();
    check_index(k, n)?;
    let mask = qubit_mask(k, n);
    Ok(d
        .coeffs
        .iter()
        .enumerate()
        .filter(|(b, _)| b & mask != 0)
        .all(|(_, c)| c.norm() <= tol.separability))
}

fn require_three<T: Real>(d: &GsdDecomposition<T>) -> Result<()> {
    if d.n() != 3 {
        return Err(GsdError::UnsupportedArity { n: d.n(), requirement: "three-qubit only" });
    }
    Ok(())
}

/// Reduced state of qubit `k` is completely mixed iff `t_k = 0` and `g^2 = 1/2`.
pub fn is_reduction_mixed<T: Real>(d: &GsdDecomposition<T>, k: usize, tol: &Tolerances<T>) -> Result<bool> {
    require_three(d)?;
    check_index(k, 3)?;
    let half = T::of(0.5);
    Ok(d.t[k].abs() <= tol.mixed && (d.g * d.g - half).abs() <= tol.mixed)
}

/// Bloch length of qubit `k` read off the coefficients.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CoeffBloch<T> {
    pub norm: T,
    /// False when single-`p` coefficients exceed `formula_support`; the value is then not exact.
    pub support_ok: bool,
}

/// `r_k = sqrt(4 h^2 t_k^2 + (g^2 + t_k^2 - sum_{i != k} t_i^2 - h^2)^2)` for three qubits.
pub fn bloch_norm_from_coeffs<T: Real>(d: &GsdDecomposition<T>, k: usize, tol: &Tolerances<T>) -> Result<CoeffBloch<T>> {
    require_three(d)?;
    check_index(k, 3)?;
    let (g, h) = (d.g, d.h);
    let tk = d.t[k];
    let others = (0..3).filter(|&i| i != k).fold(T::zero(), |acc, i| acc + d.t[i] * d.t[i]);
    let four = T::of(4.0);
    let z = g * g + tk * tk - others - h * h;
    let norm = (four * h * h * tk * tk + z * z).sqrt();
    Ok(CoeffBloch { norm, support_ok: d.max_single_p() <= tol.formula_support })
}

/// Both sides of `g^2 >= t_1^2 + t_2^2 + t_3^2 + 2 t_1 t_2 t_3 / g`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LowerBound<T> {
    pub lhs: T,
    pub rhs: T,
    pub holds: bool,
}

/// Lower bound on `g` for three-qubit states with `h = 0`.
pub fn check_lower_bound<T: Real>(d: &GsdDecomposition<T>, tol: &Tolerances<T>) -> Result<LowerBound<T>> {
    require_three(d)?;
    if d.h > tol.h_zero {
        return Err(GsdError::NotApplicable("lower bound requires h = 0"));
    }
    let t = &d.t;
    let lhs = d.g * d.g;
    let rhs = t[0] * t[0] + t[1] * t[1] + t[2] * t[2] + T::of(2.0) * t[0] * t[1] * t[2] / d.g;
    Ok(LowerBound { lhs, rhs, holds: lhs >= rhs - tol.lower_bound_slack })
}

impl<T: Real> GsdDecomposition<T> {
    /// Real `g, t, h` plus `phi` as a flat tuple-like vector, for comparisons.
    pub fn invariants(&self) -> Vec<T> {
        let mut v = vec![self.g];
        v.extend(&self.t);
        v.push(self.h);
        v.push(self.phi);
        v
    }
}
