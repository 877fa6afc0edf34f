//! JSON interchange for states and decompositions.
//!
//! Complex numbers are `[re, im]` pairs. Coefficients are keyed by bitstrings
//! whose first character is qubit 0, `0` for `|q_k>` and `1` for `|p_k>`.

use std::collections::BTreeMap;

use num_complex::{Complex, Complex64};
use serde::{Deserialize, Serialize};

use crate::error::{GsdError, Result};
use crate::gsd::GsdDecomposition;
use crate::scalar::Real;
use crate::state::{QubitState, Qubit1};

pub type Pair = [f64; 2];

/// Rounds to `digits` significant decimal digits.
pub fn round_sig(x: f64, digits: usize) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{:.*e}", digits.saturating_sub(1), x).parse().unwrap_or(x)
}

fn pair<T: Real>(c: Complex<T>, digits: usize) -> Pair {
    [round_sig(c.re.as_f64(), digits), round_sig(c.im.as_f64(), digits)]
}

fn complex(p: Pair) -> Complex64 {
    Complex64::new(p[0], p[1])
}

/// `{"n": 3, "amps": [[re, im], ...]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StateJson {
    pub n: usize,
    pub amps: Vec<Pair>,
}

impl StateJson {
    pub fn from_state<T: Real>(s: &QubitState<T>, digits: usize) -> Self {
        Self { n: s.n(), amps: s.amps().iter().map(|&c| pair(c, digits)).collect() }
    }

    /// Builds the normalized state; the second value is the input norm so
    /// callers can warn about inputs that were noticeably off.
    pub fn to_state(&self) -> Result<(QubitState<f64>, f64)> {
        if self.amps.iter().flatten().any(|x| !x.is_finite()) {
            return Err(GsdError::NonFinite);
        }
        let s = QubitState::new(self.n, self.amps.iter().map(|&p| complex(p)).collect())?;
        let norm = s.input_norm();
        Ok((s, norm))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BasisJson {
    /// `|q_k>` as `[c0, c1]`.
    pub q: Vec<[Pair; 2]>,
    pub p: Vec<[Pair; 2]>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecompositionJson {
    pub n: usize,
    pub basis: BasisJson,
    pub coefficients: BTreeMap<String, Pair>,
    pub g: f64,
    pub t: Vec<f64>,
    pub h: f64,
    pub phi: f64,
    /// The coefficients expand `e^{-i global_phase}` times the input state.
    pub global_phase: f64,
}

pub fn bitstring(index: usize, n: usize) -> String {
    format!("{index:0n$b}")
}

impl DecompositionJson {
    pub fn from_decomposition<T: Real>(d: &GsdDecomposition<T>, digits: usize) -> Self {
        let n = d.n();
        let spin = |q: &Qubit1<T>| [pair(q.c0(), digits), pair(q.c1(), digits)];
        Self {
            n,
            basis: BasisJson { q: d.basis.q().iter().map(spin).collect(), p: d.basis.p().iter().map(spin).collect() },
            coefficients: d.coeffs.iter().enumerate().map(|(b, &c)| (bitstring(b, n), pair(c, digits))).collect(),
            g: round_sig(d.g.as_f64(), digits),
            t: d.t.iter().map(|t| round_sig(t.as_f64(), digits)).collect(),
            h: round_sig(d.h.as_f64(), digits),
            phi: round_sig(d.phi.as_f64(), digits),
            global_phase: round_sig(d.global_phase.as_f64(), digits),
        }
    }

    /// Rebuilds the original state, global phase included, from basis and coefficients.
    pub fn reconstruct(&self) -> Result<QubitState<f64>> {
        let n = self.n;
        if self.basis.q.len() != n || self.basis.p.len() != n {
            return Err(GsdError::Dimension { expected: n, found: self.basis.q.len().min(self.basis.p.len()) });
        }
        let dim = 1usize << n;
        let phase = Complex64::from_polar(1.0, self.global_phase);
        let mut amps = vec![Complex64::new(0.0, 0.0); dim];
        for (key, &c) in &self.coefficients {
            let b = usize::from_str_radix(key, 2)
                .ok()
                .filter(|&b| key.len() == n && b < dim)
                .ok_or_else(|| GsdError::InvalidParams(format!("bad coefficient key {key:?}")))?;
            let coeff = complex(c) * phase;
            // amplitude of |x> in |b> is prod_k <x_k|v_k>
            for (x, amp) in amps.iter_mut().enumerate() {
                let mut term = coeff;
                for k in 0..n {
                    let shift = n - 1 - k;
                    let v = if (b >> shift) & 1 == 1 { &self.basis.p[k] } else { &self.basis.q[k] };
                    term *= complex(v[(x >> shift) & 1]);
                }
                *amp += term;
            }
        }
        QubitState::new(n, amps)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::random_state;
    use crate::solver::SolverConfig;
    use crate::tolerance::Tolerances;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn rounding() {
        assert_eq!(round_sig(1.0 / 3.0, 12), 0.333333333333);
        assert_eq!(round_sig(-2.0 / 3.0 * 1e-5, 3), -6.67e-6);
        assert_eq!(round_sig(0.0, 12), 0.0);
    }

    #[test]
    fn bitstrings_put_qubit_zero_first() {
        assert_eq!(bitstring(4, 3), "100");
        assert_eq!(bitstring(1, 4), "0001");
    }

    #[test]
    fn state_schema_round_trip() {
        let text = r#"{"n": 1, "amps": [[3.0, 0.0], [0.0, 4.0]]}"#;
        let parsed: StateJson = serde_json::from_str(text).unwrap();
        let (s, norm) = parsed.to_state().unwrap();
        assert!((norm - 5.0).abs() < 1e-15);
        assert!((s.amps()[1].im - 0.8).abs() < 1e-15);
        let again = StateJson::from_state(&s, 12);
        assert_eq!(again.amps[0], [0.6, 0.0]);
        assert!(serde_json::from_str::<StateJson>(r#"{"n": 1}"#).is_err());
    }

    #[test]
    fn decomposition_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for n in [2, 3, 4] {
            let s: QubitState<f64> = random_state(n, &mut rng);
            let d = crate::gsd::build_gsd(&s, &SolverConfig::default(), &Tolerances::default()).unwrap();
            let js = DecompositionJson::from_decomposition(&d, 12);
            let text = serde_json::to_string(&js).unwrap();
            let back: DecompositionJson = serde_json::from_str(&text).unwrap();
            let r = back.reconstruct().unwrap();
            assert!(r.fidelity(&s).unwrap() > 1.0 - 1e-9);
            // the global phase is restored as well
            assert!((r.inner(&s).unwrap().re - 1.0).abs() < 1e-9);
        }
    }
}
