//! Power spectrum of the entropy,
//! `PS(ϖ) = (1/π) ∫₀^{τ_max} S(τ) e^{iϖτ} dτ`, by composite trapezoidal
//! quadrature on the sampling grid.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use thiserror::Error;

use crate::observables::ObservableSeries;

/// Relative deviation of a grid spacing from the mean spacing still
/// considered uniform.
pub const UNIFORMITY_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpectrumError {
    #[error("need at least 2 samples, got {0}")]
    TooFewSamples(usize),
    #[error("sample grid is not uniform: spacing {found} at index {index}, expected {expected}")]
    NonUniformGrid {
        index: usize,
        found: f64,
        expected: f64,
    },
    #[error("tau and value series differ in length ({tau} vs {values})")]
    LengthMismatch { tau: usize, values: usize },
    #[error("invalid frequency grid: {0}")]
    InvalidFrequencyGrid(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumResult {
    pub omega_grid: Vec<f64>,
    pub ps_complex: Vec<Complex64>,
    pub ps_abs: Vec<f64>,
    /// `|PS| / max|PS|`; all zeros when the spectrum vanishes identically.
    pub ps_normalized: Vec<f64>,
}

impl SpectrumResult {
    /// Index and frequency of the largest `|PS|`.
    pub fn peak(&self) -> Option<(usize, f64)> {
        self.ps_abs
            .iter()
            .enumerate()
            .fold(None, |best: Option<(usize, f64)>, (i, &v)| match best {
                Some((_, b)) if b >= v => best,
                _ => Some((i, v)),
            })
            .map(|(i, _)| (i, self.omega_grid[i]))
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SpectrumOptions {
    /// Subtract the trapezoidal mean of the series before transforming.
    pub subtract_mean: bool,
}

/// `n` evenly spaced frequencies from `start` to `stop` with spacing `step`.
pub fn frequency_grid(start: f64, stop: f64, step: f64) -> Result<Vec<f64>, SpectrumError> {
    if !(step > 0.0) || !start.is_finite() || !stop.is_finite() || stop < start {
        return Err(SpectrumError::InvalidFrequencyGrid(format!(
            "start = {start}, stop = {stop}, step = {step}"
        )));
    }
    let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
    Ok((0..count).map(|k| start + step * k as f64).collect())
}

/// Default grid `[0, 2]` with spacing `5·10⁻⁴`.
pub fn default_frequency_grid() -> Vec<f64> {
    frequency_grid(0.0, 2.0, 5e-4).expect("valid default grid")
}

/// Transforms the entropy column of `series`.
pub fn power_spectrum(
    series: &ObservableSeries,
    omega_grid: &[f64],
) -> Result<SpectrumResult, SpectrumError> {
    power_spectrum_of(&series.tau, &series.entropy, omega_grid, SpectrumOptions::default())
}

/// Transforms an arbitrary uniformly sampled real series.
pub fn power_spectrum_of(
    tau: &[f64],
    values: &[f64],
    omega_grid: &[f64],
    opts: SpectrumOptions,
) -> Result<SpectrumResult, SpectrumError> {
    if tau.len() != values.len() {
        return Err(SpectrumError::LengthMismatch {
            tau: tau.len(),
            values: values.len(),
        });
    }
    if tau.len() < 2 {
        return Err(SpectrumError::TooFewSamples(tau.len()));
    }
    let h = (tau[tau.len() - 1] - tau[0]) / (tau.len() - 1) as f64;
    for (i, w) in tau.windows(2).enumerate() {
        let d = w[1] - w[0];
        if !(d > 0.0) || ((d - h) / h).abs() > UNIFORMITY_TOLERANCE {
            return Err(SpectrumError::NonUniformGrid {
                index: i,
                found: d,
                expected: h,
            });
        }
    }

    let last = values.len() - 1;
    let weight = |k: usize| if k == 0 || k == last { 0.5 * h } else { h };
    let offset = if opts.subtract_mean {
        let integral: f64 = values.iter().enumerate().map(|(k, v)| weight(k) * v).sum();
        integral / (tau[last] - tau[0])
    } else {
        0.0
    };
    let weighted: Vec<f64> = values
        .iter()
        .enumerate()
        .map(|(k, v)| weight(k) * (v - offset) / PI)
        .collect();

    let ps_complex: Vec<Complex64> = omega_grid
        .par_iter()
        .map(|&w| {
            weighted
                .iter()
                .zip(tau)
                .map(|(&c, &t)| Complex64::from_polar(c, w * t))
                .sum()
        })
        .collect();
    let ps_abs: Vec<f64> = ps_complex.iter().map(|z| z.norm()).collect();
    let max = ps_abs.iter().copied().fold(0.0, f64::max);
    let ps_normalized = if max > 0.0 {
        ps_abs.iter().map(|v| v / max).collect()
    } else {
        vec![0.0; ps_abs.len()]
    };
    Ok(SpectrumResult {
        omega_grid: omega_grid.to_vec(),
        ps_complex,
        ps_abs,
        ps_normalized,
    })
}
