use gsd_core::{build_gsd, find_dominant, w3_gsd, QubitState, SolverConfig, Tolerances, W3Params};

#[test]
fn f32_w_state() {
    let r = 1.0f32 / 3f32.sqrt();
    let s = QubitState::<f32>::from_real(3, &[0.0, r, r, 0.0, r, 0.0, 0.0, 0.0]).unwrap();
    let cfg = SolverConfig { residual_tol: 1e-5, ..SolverConfig::default() };
    let best = find_dominant(&s, &cfg).unwrap();
    assert!((best.g - 2.0 / 3.0).abs() < 1e-5, "{}", best.g);
    let d = build_gsd(&s, &cfg, &Tolerances::default()).unwrap();
    assert!(d.reconstruct().unwrap().fidelity(&s).unwrap() > 1.0 - 1e-5);
}

#[test]
fn f32_closed_form_agrees_with_f64() {
    let v = [0.4, 0.5, 0.6, 0.3];
    let p64 = W3Params::<f64>::normalized(v[0], v[1], v[2], v[3]).unwrap();
    let p32 = W3Params::<f32>::normalized(v[0] as f32, v[1] as f32, v[2] as f32, v[3] as f32).unwrap();
    let g64 = w3_gsd(&p64, &Tolerances::default()).unwrap().g;
    let g32 = w3_gsd(&p32, &Tolerances::default()).unwrap().g;
    assert!((g32 as f64 - g64).abs() < 1e-5);
}
