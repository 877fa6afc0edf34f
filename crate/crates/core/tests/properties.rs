use gsd_core::json::DecompositionJson;
use gsd_core::sampling::random_state;
use gsd_core::{bloch_norm_from_coeffs, bloch_vector, build_gsd, w3_classify, w3_gsd, State, SolverConfig, Tol, W3Params};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn decomposition_reconstructs_and_is_canonical(seed in any::<u64>(), n in 2usize..=4) {
        let s: State = random_state(n, &mut ChaCha8Rng::seed_from_u64(seed));
        let d = build_gsd(&s, &SolverConfig::default(), &Tol::default()).unwrap();
        prop_assert!(d.violations(1e-9).is_empty(), "{:?}", d.violations(1e-9));
        let r = d.reconstruct().unwrap();
        prop_assert!(r.fidelity(&s).unwrap() > 1.0 - 1e-10);
        let js = DecompositionJson::from_decomposition(&d, 12).reconstruct().unwrap();
        prop_assert!((js.inner(&s).unwrap().re - 1.0).abs() < 1e-9);
    }

    #[test]
    fn three_qubit_bloch_norms_follow_from_coefficients(seed in any::<u64>()) {
        let s: State = random_state(3, &mut ChaCha8Rng::seed_from_u64(seed));
        let tol = Tol::default();
        let d = build_gsd(&s, &SolverConfig::default(), &tol).unwrap();
        for k in 0..3 {
            let direct = bloch_vector(&s, k).unwrap().norm;
            let from = bloch_norm_from_coeffs(&d, k, &tol).unwrap();
            prop_assert!(from.support_ok);
            prop_assert!((direct - from.norm).abs() < 1e-8, "{} vs {}", direct, from.norm);
        }
    }

    #[test]
    fn w3_closed_form_is_a_valid_decomposition(a in 0.0f64..1.0, b in 0.0f64..1.0, c in 0.0f64..1.0, d in 0.0f64..1.0) {
        prop_assume!(a + b + c + d > 0.05);
        let p = W3Params::normalized(a, b, c, d).unwrap();
        let tol = Tol::default();
        let dec = w3_gsd(&p, &tol).unwrap();
        prop_assert!(dec.reconstruct().unwrap().fidelity(&p.state()).unwrap() > 1.0 - 1e-10);
        prop_assert!(dec.max_single_p() < 1e-8);
        if w3_classify(&p, &tol).label.is_slight() {
            prop_assert_eq!(dec.h, 0.0);
        }
    }
}
