//! Dense pure-state algebra for n qubits.
//!
//! Basis index convention: qubit 0 is the most significant bit, so amplitude
//! `amps[i]` belongs to the bitstring of `i` written with `n` digits, read
//! left to right as qubit 0, 1, ..., n-1. Qubit indices are 0-based
//! throughout the library API.

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{GsdError, Result};
use crate::scalar::Real;

/// Unnormalized single-qubit vector `(component |0>, component |1>)`.
pub type Spinor<T> = [Complex<T>; 2];

/// 2x2 complex matrix in row-major order.
pub type Mat2<T> = [[Complex<T>; 2]; 2];

/// Largest register handled by the dense representation.
pub const MAX_QUBITS: usize = 24;

#[inline]
pub(crate) fn bit_of(index: usize, qubit: usize, n: usize) -> usize {
    (index >> (n - 1 - qubit)) & 1
}

#[inline]
pub(crate) fn qubit_mask(qubit: usize, n: usize) -> usize {
    1 << (n - 1 - qubit)
}

pub(crate) fn spinor_norm<T: Real>(v: &Spinor<T>) -> T {
    (v[0].norm_sqr() + v[1].norm_sqr()).sqrt()
}

/// Normalized single-qubit state `c0|0> + c1|1>`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Qubit1<T> {
    c0: Complex<T>,
    c1: Complex<T>,
}

impl<T: Real> Qubit1<T> {
    /// Normalizes `(c0, c1)`. Fails on a zero or non-finite vector.
    pub fn new(c0: Complex<T>, c1: Complex<T>) -> Result<Self> {
        let v = [c0, c1];
        if !v.iter().all(|c| c.re.is_finite() && c.im.is_finite()) {
            return Err(GsdError::NonFinite);
        }
        let norm = spinor_norm(&v);
        if norm.is_zero() {
            return Err(GsdError::ZeroNorm);
        }
        Ok(Self { c0: c0 / norm, c1: c1 / norm })
    }

    pub fn from_spinor(v: Spinor<T>) -> Result<Self> {
        Self::new(v[0], v[1])
    }

    /// Caller guarantees the vector is already unit norm.
    pub(crate) fn from_unit(c0: Complex<T>, c1: Complex<T>) -> Self {
        Self { c0, c1 }
    }

    pub fn zero() -> Self {
        Self { c0: Complex::one(), c1: Complex::zero() }
    }

    pub fn one() -> Self {
        Self { c0: Complex::zero(), c1: Complex::one() }
    }

    /// `|0>` for `false`, `|1>` for `true`.
    pub fn basis(bit: bool) -> Self {
        if bit {
            Self::one()
        } else {
            Self::zero()
        }
    }

    /// `cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>`.
    pub fn from_bloch_angles(theta: T, phi: T) -> Self {
        let half = theta / T::of(2.0);
        Self {
            c0: Complex::new(half.cos(), T::zero()),
            c1: Complex::from_polar(half.sin(), phi),
        }
    }

    pub fn c0(&self) -> Complex<T> {
        self.c0
    }

    pub fn c1(&self) -> Complex<T> {
        self.c1
    }

    pub fn spinor(&self) -> Spinor<T> {
        [self.c0, self.c1]
    }

    /// `<self|v>` for an arbitrary (unnormalized) spinor.
    pub fn bra(&self, v: &Spinor<T>) -> Complex<T> {
        self.c0.conj() * v[0] + self.c1.conj() * v[1]
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &Self) -> Complex<T> {
        self.bra(&other.spinor())
    }

    /// `|<self|other>|^2`.
    pub fn fidelity(&self, other: &Self) -> T {
        self.inner(other).norm_sqr()
    }

    pub fn norm(&self) -> T {
        spinor_norm(&self.spinor())
    }

    /// Multiplies by `e^{i angle}`.
    pub fn rotated(&self, angle: T) -> Self {
        let phase = Complex::from_polar(T::one(), angle);
        Self { c0: self.c0 * phase, c1: self.c1 * phase }
    }

    /// Rotates the global phase so the first component whose magnitude exceeds
    /// `zero_tol` is real and positive.
    pub fn with_canonical_phase(&self, zero_tol: T) -> Self {
        let lead = if self.c0.norm() > zero_tol { self.c0 } else { self.c1 };
        let mag = lead.norm();
        if mag.is_zero() {
            return *self;
        }
        let phase = lead.conj() / mag;
        Self { c0: self.c0 * phase, c1: self.c1 * phase }
    }

    pub fn apply(&self, u: &Mat2<T>) -> Self {
        Self {
            c0: u[0][0] * self.c0 + u[0][1] * self.c1,
            c1: u[1][0] * self.c0 + u[1][1] * self.c1,
        }
    }

    pub fn cast<U: Real>(&self) -> Qubit1<U> {
        Qubit1 { c0: cast_complex(self.c0), c1: cast_complex(self.c1) }
    }
}

pub(crate) fn cast_complex<T: Real, U: Real>(c: Complex<T>) -> Complex<U> {
    Complex::new(U::of(c.re.as_f64()), U::of(c.im.as_f64()))
}

/// Complete product state `|chi_0> (x) |chi_1> (x) ... (x) |chi_{n-1}>`.
#[derive(Clone, Debug, PartialEq)]
pub struct ProductState<T> {
    factors: Vec<Qubit1<T>>,
}

impl<T: Real> ProductState<T> {
    pub fn new(factors: Vec<Qubit1<T>>) -> Result<Self> {
        if factors.is_empty() || factors.len() > MAX_QUBITS {
            return Err(GsdError::UnsupportedArity {
                n: factors.len(),
                requirement: "product states need between 1 and MAX_QUBITS factors",
            });
        }
        Ok(Self { factors })
    }

    /// Computational basis product state for `index` (qubit 0 = most significant bit).
    pub fn computational(n: usize, index: usize) -> Result<Self> {
        if n == 0 || n > MAX_QUBITS {
            return Err(GsdError::UnsupportedArity { n, requirement: "1..=MAX_QUBITS qubits" });
        }
        if index >= 1 << n {
            return Err(GsdError::Index { index, n });
        }
        Self::new((0..n).map(|k| Qubit1::basis(bit_of(index, k, n) == 1)).collect())
    }

    pub fn n(&self) -> usize {
        self.factors.len()
    }

    pub fn factors(&self) -> &[Qubit1<T>] {
        &self.factors
    }

    pub fn factor(&self, k: usize) -> Result<&Qubit1<T>> {
        self.factors.get(k).ok_or(GsdError::Index { index: k, n: self.n() })
    }

    pub fn into_factors(self) -> Vec<Qubit1<T>> {
        self.factors
    }

    /// Dense amplitude vector of the product.
    pub fn to_state(&self) -> QubitState<T> {
        let mut amps = vec![Complex::one()];
        for f in &self.factors {
            amps = amps
                .iter()
                .flat_map(|&a| [a * f.c0, a * f.c1])
                .collect();
        }
        QubitState { n: self.n(), amps, input_norm: T::one() }
    }

    /// Smallest per-factor fidelity `min_k |<a_k|b_k>|^2`; 1 means equal up to per-factor phases.
    pub fn min_factor_fidelity(&self, other: &Self) -> T {
        self.factors
            .iter()
            .zip(&other.factors)
            .map(|(a, b)| a.fidelity(b))
            .fold(T::one(), T::min)
    }
}

/// Normalized n-qubit pure state.
#[derive(Clone, Debug, PartialEq)]
pub struct QubitState<T> {
    n: usize,
    amps: Vec<Complex<T>>,
    input_norm: T,
}

impl<T: Real> QubitState<T> {
    /// Normalizes `amps` and records the norm it arrived with.
    pub fn new(n: usize, amps: Vec<Complex<T>>) -> Result<Self> {
        if n == 0 || n > MAX_QUBITS {
            return Err(GsdError::UnsupportedArity { n, requirement: "1..=MAX_QUBITS qubits" });
        }
        if amps.len() != 1 << n {
            return Err(GsdError::Dimension { expected: 1 << n, found: amps.len() });
        }
        if !amps.iter().all(|c| c.re.is_finite() && c.im.is_finite()) {
            return Err(GsdError::NonFinite);
        }
        let norm = amps.iter().map(|c| c.norm_sqr()).fold(T::zero(), |a, b| a + b).sqrt();
        if norm.is_zero() {
            return Err(GsdError::ZeroNorm);
        }
        let amps = amps.into_iter().map(|c| c / norm).collect();
        Ok(Self { n, amps, input_norm: norm })
    }

    /// Infers `n` from the amplitude count, which must be a power of two.
    pub fn from_amplitudes(amps: Vec<Complex<T>>) -> Result<Self> {
        let len = amps.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(GsdError::Dimension { expected: len.next_power_of_two().max(2), found: len });
        }
        Self::new(len.trailing_zeros() as usize, amps)
    }

    pub fn from_real(n: usize, amps: &[T]) -> Result<Self> {
        Self::new(n, amps.iter().map(|&a| Complex::new(a, T::zero())).collect())
    }

    /// Builds a state from `(basis index, amplitude)` pairs; all other amplitudes are zero.
    pub fn from_terms(n: usize, terms: &[(usize, Complex<T>)]) -> Result<Self> {
        if n == 0 || n > MAX_QUBITS {
            return Err(GsdError::UnsupportedArity { n, requirement: "1..=MAX_QUBITS qubits" });
        }
        let mut amps = vec![Complex::zero(); 1 << n];
        for &(i, a) in terms {
            let slot = amps.get_mut(i).ok_or(GsdError::Index { index: i, n })?;
            *slot = *slot + a;
        }
        Self::new(n, amps)
    }

    pub fn basis(n: usize, index: usize) -> Result<Self> {
        Self::from_terms(n, &[(index, Complex::one())])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amps(&self) -> &[Complex<T>] {
        &self.amps
    }

    /// Norm of the amplitudes before normalization.
    pub fn input_norm(&self) -> T {
        self.input_norm
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &Self) -> Result<Complex<T>> {
        if self.n != other.n {
            return Err(GsdError::Dimension { expected: self.n, found: other.n });
        }
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .fold(Complex::zero(), |acc, (a, b)| acc + a.conj() * b))
    }

    /// `|<self|other>|^2`, insensitive to global phase.
    pub fn fidelity(&self, other: &Self) -> Result<T> {
        Ok(self.inner(other)?.norm_sqr())
    }

    /// Applies the 2x2 matrix `u` to qubit `k`. `u` is not required to be unitary;
    /// the result is renormalized.
    pub fn apply_single_qubit(&self, k: usize, u: &Mat2<T>) -> Result<Self> {
        check_index(k, self.n)?;
        let mut amps = self.amps.clone();
        apply_local(&mut amps, self.n, k, u);
        Self::new(self.n, amps)
    }

    /// `self (x) other`, with `self` on the leading qubits.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        let amps = self
            .amps
            .iter()
            .flat_map(|&a| other.amps.iter().map(move |&b| a * b))
            .collect();
        Self::new(self.n + other.n, amps)
    }

    pub fn cast<U: Real>(&self) -> QubitState<U> {
        QubitState {
            n: self.n,
            amps: self.amps.iter().map(|&c| cast_complex(c)).collect(),
            input_norm: U::of(self.input_norm.as_f64()),
        }
    }
}

pub(crate) fn check_index(k: usize, n: usize) -> Result<()> {
    if k >= n {
        Err(GsdError::Index { index: k, n })
    } else {
        Ok(())
    }
}

/// In-place `u` on qubit `k` of a raw amplitude array.
pub(crate) fn apply_local<T: Real>(amps: &mut [Complex<T>], n: usize, k: usize, u: &Mat2<T>) {
    let mask = qubit_mask(k, n);
    for i0 in 0..amps.len() {
        if i0 & mask != 0 {
            continue;
        }
        let i1 = i0 | mask;
        let (a0, a1) = (amps[i0], amps[i1]);
        amps[i0] = u[0][0] * a0 + u[0][1] * a1;
        amps[i1] = u[1][0] * a0 + u[1][1] * a1;
    }
}

/// Contracts the least significant qubit with `<chi|`, halving the vector.
fn contract_last<T: Real>(v: &[Complex<T>], chi: &Qubit1<T>) -> Vec<Complex<T>> {
    let (b0, b1) = (chi.c0.conj(), chi.c1.conj());
    v.chunks_exact(2).map(|p| b0 * p[0] + b1 * p[1]).collect()
}

/// Contracts the most significant qubit with `<chi|`, halving the vector.
fn contract_first<T: Real>(v: &[Complex<T>], chi: &Qubit1<T>) -> Vec<Complex<T>> {
    let half = v.len() / 2;
    let (b0, b1) = (chi.c0.conj(), chi.c1.conj());
    (0..half).map(|i| b0 * v[i] + b1 * v[half + i]).collect()
}

/// `<chi_0 ... chi_{k-1} chi_{k+1} ... chi_{n-1}|psi>` over raw factors, in O(2^n).
pub(crate) fn contract_except<T: Real>(amps: &[Complex<T>], factors: &[Qubit1<T>], k: usize) -> Spinor<T> {
    let n = factors.len();
    let mut v: Vec<Complex<T>> = amps.to_vec();
    for j in (k + 1..n).rev() {
        v = contract_last(&v, &factors[j]);
    }
    for f in &factors[..k] {
        v = contract_first(&v, f);
    }
    debug_assert_eq!(v.len(), 2);
    [v[0], v[1]]
}

pub(crate) fn contract_all<T: Real>(amps: &[Complex<T>], factors: &[Qubit1<T>]) -> Complex<T> {
    let mut v: Vec<Complex<T>> = amps.to_vec();
    for f in factors.iter().rev() {
        v = contract_last(&v, f);
    }
    v[0]
}

fn check_dims<T: Real>(p: &ProductState<T>, s: &QubitState<T>) -> Result<()> {
    if p.n() != s.n() {
        return Err(GsdError::Dimension { expected: s.n(), found: p.n() });
    }
    Ok(())
}

/// `<chi_0 chi_1 ... chi_{n-1}|psi>`.
pub fn overlap<T: Real>(p: &ProductState<T>, s: &QubitState<T>) -> Result<Complex<T>> {
    check_dims(p, s)?;
    Ok(contract_all(&s.amps, &p.factors))
}

/// `<q_0 ... q^_k ... q_{n-1}|psi>`: every factor except `k` contracted against the state.
///
/// `factor(k).bra(&result)` reproduces [`overlap`].
pub fn partial_contract<T: Real>(p: &ProductState<T>, s: &QubitState<T>, k: usize) -> Result<Spinor<T>> {
    check_dims(p, s)?;
    check_index(k, s.n)?;
    Ok(contract_except(&s.amps, &p.factors, k))
}

/// One-qubit reduced density matrix.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Density2<T> {
    pub m: Mat2<T>,
}

impl<T: Real> Density2<T> {
    pub fn trace(&self) -> T {
        self.m[0][0].re + self.m[1][1].re
    }

    /// `Tr(rho^2)`.
    pub fn purity(&self) -> T {
        let m = &self.m;
        m[0][0].norm_sqr() + m[1][1].norm_sqr() + m[0][1].norm_sqr() + m[1][0].norm_sqr()
    }

    pub fn hermiticity_error(&self) -> T {
        let m = &self.m;
        let off = (m[0][1] - m[1][0].conj()).norm();
        off.max(m[0][0].im.abs()).max(m[1][1].im.abs())
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> [T; 2] {
        let half_tr = self.trace() / T::of(2.0);
        let diff = (self.m[0][0].re - self.m[1][1].re) / T::of(2.0);
        let rad = (diff * diff + self.m[0][1].norm_sqr()).sqrt();
        [half_tr - rad, half_tr + rad]
    }

    /// Pauli expectations `(<X>, <Y>, <Z>)`.
    pub fn bloch(&self) -> BlochVector<T> {
        let two = T::of(2.0);
        let rho01 = self.m[0][1];
        BlochVector::new(two * rho01.re, -two * rho01.im, self.m[0][0].re - self.m[1][1].re)
    }
}

/// Traces out every qubit except `k`.
pub fn reduced_density<T: Real>(s: &QubitState<T>, k: usize) -> Result<Density2<T>> {
    check_index(k, s.n)?;
    let mask = qubit_mask(k, s.n);
    let (mut r00, mut r11) = (T::zero(), T::zero());
    let mut r01 = Complex::zero();
    for i0 in (0..s.dim()).filter(|i| i & mask == 0) {
        let (a0, a1) = (s.amps[i0], s.amps[i0 | mask]);
        r00 = r00 + a0.norm_sqr();
        r11 = r11 + a1.norm_sqr();
        r01 = r01 + a0 * a1.conj();
    }
    Ok(Density2 {
        m: [
            [Complex::new(r00, T::zero()), r01],
            [r01.conj(), Complex::new(r11, T::zero())],
        ],
    })
}

/// Bloch vector of a single-qubit reduced state. Norm 1: unentangled qubit; norm 0: completely mixed.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BlochVector<T> {
    pub x: T,
    pub y: T,
    pub z: T,
    pub norm: T,
}

impl<T: Real> BlochVector<T> {
    pub fn new(x: T, y: T, z: T) -> Self {
        Self { x, y, z, norm: (x * x + y * y + z * z).sqrt() }
    }
}

pub fn bloch_vector<T: Real>(s: &QubitState<T>, k: usize) -> Result<BlochVector<T>> {
    Ok(reduced_density(s, k)?.bloch())
}

#[cfg(test)]
mod tests {
    use super::*;

    type C = Complex<f64>;

    fn c(re: f64) -> C {
        C::new(re, 0.0)
    }

    fn w3(a: f64, b: f64, cc: f64, d: f64) -> QubitState<f64> {
        QubitState::from_terms(3, &[(0b100, c(a)), (0b010, c(b)), (0b001, c(cc)), (0b111, c(d))]).unwrap()
    }

    fn close(a: C, b: C, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    #[test]
    fn overlap_examples() {
        let s000 = QubitState::<f64>::basis(3, 0).unwrap();
        let p000 = ProductState::computational(3, 0).unwrap();
        assert!(close(overlap(&p000, &s000).unwrap(), c(1.0), 1e-15));

        let r3 = 1.0 / 3f64.sqrt();
        let w = w3(r3, r3, r3, 0.0);
        let p100 = ProductState::computational(3, 0b100).unwrap();
        assert!(close(overlap(&p100, &w).unwrap(), c(r3), 1e-15));

        let plus = Qubit1::new(c(1.0), c(1.0)).unwrap();
        let pplus = ProductState::new(vec![plus; 3]).unwrap();
        let ghz = QubitState::from_real(3, &[1.0, 0., 0., 0., 0., 0., 0., 1.0]).unwrap();
        // (1/sqrt2)^3 * (1 + 1) / sqrt2 = 1/2
        assert!(close(overlap(&pplus, &ghz).unwrap(), c(0.5), 1e-15));
    }

    #[test]
    fn partial_contract_examples() {
        let s000 = QubitState::<f64>::basis(3, 0).unwrap();
        let p000 = ProductState::computational(3, 0).unwrap();
        let v = partial_contract(&p000, &s000, 0).unwrap();
        assert!(close(v[0], c(1.0), 1e-15) && close(v[1], c(0.0), 1e-15));

        let r3 = 1.0 / 3f64.sqrt();
        let w = w3(r3, r3, r3, 0.0);
        let v = partial_contract(&p000, &w, 0).unwrap();
        assert!(close(v[0], c(0.0), 1e-15) && close(v[1], c(r3), 1e-15));

        // a|100> + b|010> + c|001> + d|111>: <00| on qubits 1,2 leaves (0, a), <11| on 0,1 leaves (0, d)
        let (a, b, cc, d) = (0.1f64, 0.3, 0.5, 0.7);
        let norm = (a * a + b * b + cc * cc + d * d).sqrt();
        let s = w3(a, b, cc, d);
        let p111 = ProductState::computational(3, 0b111).unwrap();
        let v = partial_contract(&p000, &s, 0).unwrap();
        assert!(close(v[0], c(0.0), 1e-15) && close(v[1], c(a / norm), 1e-15));
        let v = partial_contract(&p111, &s, 2).unwrap();
        assert!(close(v[0], c(0.0), 1e-15) && close(v[1], c(d / norm), 1e-15));
        let v = partial_contract(&p000, &s, 2).unwrap();
        assert!(close(v[0], c(0.0), 1e-15) && close(v[1], c(cc / norm), 1e-15));
    }

    #[test]
    fn index_and_dimension_errors() {
        let s = QubitState::<f64>::basis(3, 0).unwrap();
        let p = ProductState::computational(3, 0).unwrap();
        let p2 = ProductState::computational(2, 0).unwrap();
        assert_eq!(partial_contract(&p, &s, 3), Err(GsdError::Index { index: 3, n: 3 }));
        assert_eq!(overlap(&p2, &s), Err(GsdError::Dimension { expected: 3, found: 2 }));
        assert!(matches!(reduced_density(&s, 5), Err(GsdError::Index { .. })));
        assert!(matches!(bloch_vector(&s, 3), Err(GsdError::Index { .. })));
    }

    #[test]
    fn constructor_normalizes_and_rejects_zero() {
        let s = QubitState::<f64>::from_real(1, &[3.0, 4.0]).unwrap();
        assert!((s.input_norm() - 5.0).abs() < 1e-15);
        assert!((s.amps()[0].re - 0.6).abs() < 1e-15);
        assert_eq!(QubitState::<f64>::from_real(2, &[0.0; 4]), Err(GsdError::ZeroNorm));
        assert!(matches!(QubitState::<f64>::from_real(2, &[1.0; 3]), Err(GsdError::Dimension { .. })));
        assert_eq!(QubitState::<f64>::from_real(1, &[f64::NAN, 1.0]), Err(GsdError::NonFinite));
        assert_eq!(Qubit1::<f64>::new(c(0.0), c(0.0)), Err(GsdError::ZeroNorm));
    }

    #[test]
    fn reduced_density_examples() {
        let s000 = QubitState::<f64>::basis(3, 0).unwrap();
        let rho = reduced_density(&s000, 1).unwrap();
        assert!(close(rho.m[0][0], c(1.0), 1e-15) && close(rho.m[1][1], c(0.0), 1e-15));

        let ghz = QubitState::from_real(3, &[1.0, 0., 0., 0., 0., 0., 0., 1.0]).unwrap();
        let rho = reduced_density(&ghz, 0).unwrap();
        assert!(close(rho.m[0][0], c(0.5), 1e-15) && close(rho.m[1][1], c(0.5), 1e-15));
        assert!(close(rho.m[0][1], c(0.0), 1e-15));

        let r3 = 1.0 / 3f64.sqrt();
        let w = w3(r3, r3, r3, 0.0);
        let rho = reduced_density(&w, 0).unwrap();
        assert!(close(rho.m[0][0], c(2.0 / 3.0), 1e-15) && close(rho.m[1][1], c(1.0 / 3.0), 1e-15));
    }

    #[test]
    fn bloch_examples() {
        let s000 = QubitState::<f64>::basis(3, 0).unwrap();
        for k in 0..3 {
            assert!((bloch_vector(&s000, k).unwrap().norm - 1.0).abs() < 1e-15);
        }
        let ghz = QubitState::from_real(3, &[1.0, 0., 0., 0., 0., 0., 0., 1.0]).unwrap();
        for k in 0..3 {
            assert!(bloch_vector(&ghz, k).unwrap().norm < 1e-15);
        }
        let r3 = 1.0 / 3f64.sqrt();
        let w = w3(r3, r3, r3, 0.0);
        let b = bloch_vector(&w, 0).unwrap();
        assert!((b.norm - 1.0 / 3.0).abs() < 1e-15);
        assert!((b.z - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn pauli_convention_on_eigenstates() {
        let i = C::new(0.0, 1.0);
        let yplus = QubitState::new(1, vec![c(1.0), i]).unwrap();
        let b = bloch_vector(&yplus, 0).unwrap();
        assert!((b.y - 1.0).abs() < 1e-15 && b.x.abs() < 1e-15 && b.z.abs() < 1e-15);
        let xplus = QubitState::<f64>::from_real(1, &[1.0, 1.0]).unwrap();
        let b = bloch_vector(&xplus, 0).unwrap();
        assert!((b.x - 1.0).abs() < 1e-15);
    }

    #[test]
    fn canonical_phase_makes_lead_real_positive() {
        let i = C::new(0.0, 1.0);
        let q = Qubit1::new(-i * 0.6, c(0.8)).unwrap().with_canonical_phase(1e-14);
        assert!((q.c0() - c(0.6)).norm() < 1e-15);
        assert!((q.c1() - i * 0.8).norm() < 1e-15);
        let q = Qubit1::new(c(0.0), -i).unwrap().with_canonical_phase(1e-14);
        assert!((q.c1() - c(1.0)).norm() < 1e-15);
    }

    #[test]
    fn product_to_state_matches_overlap() {
        let f = vec![
            Qubit1::from_bloch_angles(0.3, 1.1),
            Qubit1::from_bloch_angles(2.0, -0.4),
            Qubit1::from_bloch_angles(1.2, 2.9),
        ];
        let p = ProductState::<f64>::new(f).unwrap();
        let s = p.to_state();
        assert!((overlap(&p, &s).unwrap().norm() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn generic_over_f32() {
        let s = QubitState::<f32>::from_real(2, &[1.0, 0.0, 0.0, 1.0]).unwrap();
        let b = bloch_vector(&s, 1).unwrap();
        assert!(b.norm < 1e-6);
        let p = ProductState::<f32>::computational(2, 3).unwrap();
        assert!((overlap(&p, &s).unwrap().norm() - std::f32::consts::FRAC_1_SQRT_2).abs() < 1e-6);
    }
}
