use std::f64::consts::PI;

use num_complex::Complex64;

use cpbnr::spectrum::{frequency_grid, power_spectrum_of, SpectrumOptions};
use cpbnr::{power_spectrum, ObservableSeries, SpectrumError};

fn grid(t_max: f64, n: usize) -> Vec<f64> {
    (0..n).map(|k| t_max * k as f64 / (n - 1) as f64).collect()
}

fn ps(tau: &[f64], v: &[f64], w: &[f64]) -> Vec<Complex64> {
    power_spectrum_of(tau, v, w, SpectrumOptions::default())
        .unwrap()
        .ps_complex
}

#[test]
fn linear_in_the_signal() {
    let tau = grid(50.0, 1001);
    let w = frequency_grid(0.0, 2.0, 0.01).unwrap();
    let s1: Vec<f64> = tau.iter().map(|t| (0.3 * t).sin()).collect();
    let s2: Vec<f64> = tau.iter().map(|t| (-0.05 * t).exp()).collect();
    let (a, b) = (1.7, -0.4);
    let mix: Vec<f64> = s1.iter().zip(&s2).map(|(x, y)| a * x + b * y).collect();
    let (p1, p2, pm) = (ps(&tau, &s1, &w), ps(&tau, &s2, &w), ps(&tau, &mix, &w));
    let scale = pm.iter().map(|z| z.norm()).fold(0.0, f64::max);
    for k in 0..w.len() {
        assert!((pm[k] - (a * p1[k] + b * p2[k])).norm() <= 1e-12 * scale);
    }
}

#[test]
fn conjugate_symmetric_for_real_signals() {
    let tau = grid(30.0, 601);
    let s: Vec<f64> = tau.iter().map(|t| 0.5 + 0.2 * (1.3 * t).cos()).collect();
    let w = frequency_grid(0.0, 1.5, 0.05).unwrap();
    let neg: Vec<f64> = w.iter().map(|x| -x).collect();
    let (p, q) = (ps(&tau, &s, &w), ps(&tau, &s, &neg));
    for k in 0..w.len() {
        assert!((p[k].conj() - q[k]).norm() < 1e-12);
    }
}

#[test]
fn sinusoid_peaks_at_its_frequency() {
    let tau = grid(400.0, 8001);
    let s: Vec<f64> = tau.iter().map(|t| (0.5 * t).sin()).collect();
    let w = frequency_grid(0.0, 2.0, 5e-4).unwrap();
    let r = power_spectrum_of(&tau, &s, &w, SpectrumOptions::default()).unwrap();
    let (k, _) = r.peak().unwrap();
    assert!((w[k] - 0.5).abs() < 1e-9);
    assert_eq!(r.ps_normalized[k], 1.0);
}

#[test]
fn constant_signal_limit() {
    let tau = grid(100.0, 2001);
    let series = ObservableSeries {
        tau: tau.clone(),
        entropy: vec![0.3; tau.len()],
        inversion: vec![0.0; tau.len()],
        norm2: vec![1.0; tau.len()],
    };
    let r = power_spectrum(&series, &[0.0]).unwrap();
    assert!((r.ps_abs[0] - 0.3 * 100.0 / PI).abs() < 1e-12);
}

#[test]
fn mean_subtraction_removes_dc() {
    let tau = grid(100.0, 2001);
    let s = vec![0.42; tau.len()];
    let r = power_spectrum_of(&tau, &s, &[0.0, 0.3], SpectrumOptions { subtract_mean: true }).unwrap();
    let dc = 0.42 * 100.0 / PI;
    assert!(r.ps_abs.iter().all(|v| *v < 1e-12 * dc));
}

#[test]
fn rejects_irregular_input() {
    let w = [0.1];
    assert!(matches!(
        power_spectrum_of(&[0.0, 1.0, 2.5], &[0.0; 3], &w, SpectrumOptions::default()),
        Err(SpectrumError::NonUniformGrid { .. })
    ));
    assert!(matches!(
        power_spectrum_of(&[0.0], &[0.0], &w, SpectrumOptions::default()),
        Err(SpectrumError::TooFewSamples(1))
    ));
    assert!(power_spectrum_of(&[0.0, 1.0], &[0.0], &w, SpectrumOptions::default()).is_err());
}
