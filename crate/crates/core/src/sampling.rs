//! Haar-style random states and unitaries for restarts and tests.

use num_complex::Complex;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::scalar::Real;
use crate::state::{Mat2, ProductState, QubitState, Qubit1};

fn gaussian<T: Real, R: Rng + ?Sized>(rng: &mut R) -> Complex<T> {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex::new(T::of(re), T::of(im))
}

/// Uniformly distributed single-qubit state.
pub fn random_qubit<T: Real, R: Rng + ?Sized>(rng: &mut R) -> Qubit1<T> {
    loop {
        if let Ok(q) = Qubit1::new(gaussian(rng), gaussian(rng)) {
            return q;
        }
    }
}

pub fn random_product<T: Real, R: Rng + ?Sized>(n: usize, rng: &mut R) -> ProductState<T> {
    ProductState::new((0..n).map(|_| random_qubit(rng)).collect()).expect("n within range")
}

/// Uniformly distributed pure state on `n` qubits.
pub fn random_state<T: Real, R: Rng + ?Sized>(n: usize, rng: &mut R) -> QubitState<T> {
    loop {
        let amps = (0..1usize << n).map(|_| gaussian(rng)).collect();
        if let Ok(s) = QubitState::new(n, amps) {
            return s;
        }
    }
}

/// Haar-random 2x2 unitary.
pub fn random_unitary<T: Real, R: Rng + ?Sized>(rng: &mut R) -> Mat2<T> {
    let col0 = random_qubit::<T, _>(rng);
    let phase = Complex::from_polar(T::one(), T::of(rng.random_range(0.0..std::f64::consts::TAU)));
    // second column orthogonal to the first, with a random phase
    let col1 = [-col0.c1().conj() * phase, col0.c0().conj() * phase];
    [[col0.c0(), col1[0]], [col0.c1(), col1[1]]]
}

/// Applies an independent random unitary to every qubit.
pub fn random_local_unitary<T: Real, R: Rng + ?Sized>(s: &QubitState<T>, rng: &mut R) -> QubitState<T> {
    (0..s.n()).fold(s.clone(), |acc, k| {
        acc.apply_single_qubit(k, &random_unitary(rng)).expect("index in range")
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn unitary_is_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let u: Mat2<f64> = random_unitary(&mut rng);
            for i in 0..2 {
                for j in 0..2 {
                    let dot = u[0][i].conj() * u[0][j] + u[1][i].conj() * u[1][j];
                    let expect = if i == j { 1.0 } else { 0.0 };
                    assert!((dot - Complex::new(expect, 0.0)).norm() < 1e-14);
                }
            }
        }
    }

    #[test]
    fn random_state_is_normalized() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let s: QubitState<f64> = random_state(4, &mut rng);
        let norm: f64 = s.amps().iter().map(|c| c.norm_sqr()).sum();
        assert!((norm - 1.0).abs() < 1e-14);
    }
}
