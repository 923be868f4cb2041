use std::f64::consts::LN_2;

use num_complex::Complex64;

use cpbnr::observables::{entropy_from, series_with, SeriesOptions};
use cpbnr::{
    cat_coefficients, entropy, evolve_state, inner_products, inversion, series, AmplitudeState,
    DetuningProfile, IntegratorConfig, ModelParams, ObservableError, ReducedInnerProducts,
};

/// Deterministic pseudo-random amplitudes (splitmix64).
fn random_state(seed: u64, width: usize) -> AmplitudeState {
    let mut s = seed;
    let mut next = || {
        s = s.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = s;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        ((z ^ (z >> 31)) >> 11) as f64 / (1u64 << 53) as f64 - 0.5
    };
    let ce: Vec<Complex64> = (0..width).map(|_| Complex64::new(next(), next())).collect();
    let cg: Vec<Complex64> = (0..width).map(|_| Complex64::new(next(), next())).collect();
    AmplitudeState { t: 0.0, ce, cg }
}

#[test]
fn cross_term_equals_natural_pairing() {
    for seed in 0..20 {
        let state = random_state(seed, 12);
        // natural pairing Σ_m C*_{e,m} C_{g,m} with C_{g,0} = 0
        let mut g = vec![Complex64::new(0.0, 0.0)];
        g.extend(&state.cg);
        let natural: Complex64 = state.ce.iter().zip(&g).map(|(e, g)| e.conj() * g).sum();
        let r12 = inner_products(&state).r12;
        assert!((r12 - natural).norm() < 1e-14, "seed {seed}");
    }
}

#[test]
fn single_block_has_no_cross_term() {
    let h = 0.5f64.sqrt();
    let state = AmplitudeState {
        t: 0.0,
        ce: vec![Complex64::new(h, 0.0), Complex64::new(0.0, 0.0)],
        cg: vec![Complex64::new(0.0, -h), Complex64::new(0.0, 0.0)],
    };
    let p = inner_products(&state);
    assert!((p.r11 - 0.5).abs() < 1e-15 && (p.r22 - 0.5).abs() < 1e-15);
    assert_eq!(p.r12, Complex64::new(0.0, 0.0));
    assert!((entropy(&state).unwrap() - LN_2).abs() < 1e-15);
}

#[test]
fn initial_series() {
    let cat = cat_coefficients(5.0, 75).unwrap();
    let s = series(&[AmplitudeState::initial(&cat)]).unwrap();
    assert_eq!(s.tau, vec![0.0]);
    assert!(s.entropy[0].abs() < 1e-12);
    assert!((s.inversion[0] - 1.0).abs() < 1e-12);
    assert!((s.norm2[0] - 1.0).abs() < 1e-12);
}

#[test]
fn resonant_trajectory_bounds() {
    let p = ModelParams::with_default_truncation(2000.0, 2000.0, 0.0, 5.0).unwrap();
    let cat = cat_coefficients(p.alpha, p.n_max).unwrap();
    let cfg = IntegratorConfig {
        t_max: 20.0,
        n_samples: 201,
        ..IntegratorConfig::default()
    };
    let states = evolve_state(&p, &DetuningProfile::Zero, &cfg, &cat).unwrap();
    let at10 = inner_products(&states[100]);
    assert_eq!(states[100].t, 10.0);
    assert!((at10.r11 + at10.r22 - 1.0).abs() < 1e-9);
    for st in &states {
        let i = inversion(st);
        assert!(i.abs() <= 1.0 + 1e-9);
        let (plus, minus) = inner_products(st).eigenvalues();
        assert!((plus + minus - 1.0).abs() < 1e-15);
        assert!(minus >= -1e-9 && plus <= 1.0 + 1e-9);
        let s = entropy(st).unwrap();
        assert!((0.0..=LN_2).contains(&s));
    }
}

#[test]
fn strong_decay_drains_excited_population() {
    let p = ModelParams::new(2000.0, 2000.0, 20.0, 0.0, 10).unwrap();
    let cat = cat_coefficients(0.0, 10).unwrap();
    let cfg = IntegratorConfig {
        t_max: 40.0,
        n_samples: 41,
        ..IntegratorConfig::default()
    };
    let states = evolve_state(&p, &DetuningProfile::Zero, &cfg, &cat).unwrap();
    let last = states.last().unwrap();
    let pr = inner_products(last);
    assert!(inversion(last) <= 0.0);
    // overdamped: the surviving mode carries excited weight ≈ (2λ₀/γ)² r22
    assert!(pr.r22 > 0.0);
    assert!((inversion(last) + pr.r22).abs() <= 0.02 * pr.r22);
}

#[test]
fn renormalized_series_differs_only_in_entropy() {
    let p = ModelParams::with_default_truncation(2000.0, 2000.0, 0.05, 5.0).unwrap();
    let cat = cat_coefficients(p.alpha, p.n_max).unwrap();
    let cfg = IntegratorConfig {
        t_max: 30.0,
        n_samples: 61,
        ..IntegratorConfig::default()
    };
    let states = evolve_state(&p, &DetuningProfile::Zero, &cfg, &cat).unwrap();
    let raw = series(&states).unwrap();
    let renorm = series_with(&states, SeriesOptions { renormalize: true }).unwrap();
    assert_eq!(raw.inversion, renorm.inversion);
    assert_eq!(raw.norm2, renorm.norm2);
    assert!((raw.entropy[0] - renorm.entropy[0]).abs() < 1e-12);
    assert!(raw.entropy.iter().zip(&renorm.entropy).any(|(a, b)| a != b));
}

#[test]
fn eigenvalue_clamp() {
    // root slightly above 1 gives Λ⁻ = −ε
    let tiny = ReducedInnerProducts {
        r11: 1.0 + 1e-13,
        r22: 0.0,
        r12: Complex64::new(0.0, 0.0),
    };
    assert_eq!(entropy_from(&tiny, 0.0).unwrap(), 0.0);
    let large = ReducedInnerProducts {
        r11: 1.0 + 1e-6,
        ..tiny
    };
    assert!(matches!(
        entropy_from(&large, 3.0),
        Err(ObservableError::NegativeEigenvalue { .. })
    ));
}
