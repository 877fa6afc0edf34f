use gsd_core::sampling::{random_local_unitary, random_product, random_state};
use gsd_core::{build_gsd, find_dominant, overlap, seq_residual, State, SolverConfig, Tol};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn dominant_beats_random_products() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for n in [2, 3, 4, 5] {
        for _ in 0..5 {
            let s: State = random_state(n, &mut rng);
            let best = find_dominant(&s, &SolverConfig::default()).unwrap();
            for _ in 0..1000 {
                let p = random_product(n, &mut rng);
                let g = overlap(&p, &s).unwrap().norm();
                assert!(g <= best.g + 1e-12, "n = {n}: product {g} beats dominant {}", best.g);
            }
        }
    }
}

#[test]
fn invariants_survive_local_unitaries() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let tol = Tol::default();
    let cfg = SolverConfig::default();
    for n in [3, 4] {
        for _ in 0..10 {
            let s: State = random_state(n, &mut rng);
            let d = build_gsd(&s, &cfg, &tol).unwrap();
            let moved = build_gsd(&random_local_unitary(&s, &mut rng), &cfg, &tol).unwrap();
            // the basis is only as accurate as the solver residual, so coefficients agree less tightly than g
            assert!((d.g - moved.g).abs() < 1e-12);
            assert!((d.h - moved.h).abs() < 1e-8, "n = {n}: g {} vs {}, h {} vs {}", d.g, moved.g, d.h, moved.h);
            for k in 0..n {
                assert!((d.t[k] - moved.t[k]).abs() < 1e-7, "t_{k}: {} vs {}", d.t[k], moved.t[k]);
            }
            assert!((d.phi - moved.phi).abs() < 1e-6, "phi {} vs {}", d.phi, moved.phi);
        }
    }
}

#[test]
fn multistart_is_reproducible() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let s: State = random_state(4, &mut rng);
    let cfg = SolverConfig::default().with_seed(42).with_restarts(20);
    let a = find_dominant(&s, &cfg).unwrap();
    let b = find_dominant(&s, &cfg).unwrap();
    let serial = find_dominant(&s, &SolverConfig { parallel: false, ..cfg.clone() }).unwrap();
    assert_eq!(a, b);
    assert_eq!(a, serial);
    assert!(seq_residual(&s, &a.product).unwrap().1 <= 1e-10);
}

#[test]
fn product_inputs_have_unit_norm_and_vanishing_coefficients() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for n in 1..=5 {
        let s = random_product::<f64, _>(n, &mut rng).to_state();
        let best = find_dominant(&s, &SolverConfig::default()).unwrap();
        assert!((best.g - 1.0).abs() < 1e-12);
        if n >= 2 {
            let d = build_gsd(&s, &SolverConfig::default(), &Tol::default()).unwrap();
            assert!(d.t.iter().all(|t| t.abs() < 1e-9) && d.h < 1e-9);
        }
    }
}
