//! Reduced-state entropy and CPB excitation inversion.

use std::f64::consts::LN_2;

use num_complex::Complex64;
use thiserror::Error;

use crate::dynamics::{norm_squared, AmplitudeState};

/// Slack below zero tolerated for the smaller eigenvalue before clamping.
pub const EIGENVALUE_SLACK: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ObservableError {
    #[error("reduced-state eigenvalue {value:e} at t = {t} is below -{EIGENVALUE_SLACK:e}")]
    NegativeEigenvalue { t: f64, value: f64 },
}

/// Inner products of the CPB-conditioned NR vectors `|R₁⟩ = Σ C_{e,n}|n⟩`
/// and `|R₂⟩ = Σ C_{g,n+1}|n+1⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReducedInnerProducts {
    /// `⟨R₁|R₁⟩ = Σ|C_{e,n}|²`
    pub r11: f64,
    /// `⟨R₂|R₂⟩ = Σ|C_{g,n+1}|²`
    pub r22: f64,
    /// `⟨R₁|R₂⟩ = Σ C*_{e,n+1} C_{g,n+1}`
    pub r12: Complex64,
}

impl ReducedInnerProducts {
    /// `Λ± = ½(1 ± √[(r11 − r22)² + 4|r12|²])`, returned as `(Λ⁺, Λ⁻)`.
    pub fn eigenvalues(&self) -> (f64, f64) {
        let d = self.r11 - self.r22;
        let root = (d * d + 4.0 * self.r12.norm_sqr()).sqrt();
        (0.5 * (1.0 + root), 0.5 * (1.0 - root))
    }

    /// Same quantities after dividing the state by its norm.
    pub fn renormalized(&self) -> Self {
        let total = self.r11 + self.r22;
        if total > 0.0 {
            Self {
                r11: self.r11 / total,
                r22: self.r22 / total,
                r12: self.r12 / total,
            }
        } else {
            *self
        }
    }
}

pub fn inner_products(state: &AmplitudeState) -> ReducedInnerProducts {
    let r11 = state.ce.iter().map(|z| z.norm_sqr()).sum();
    let r22 = state.cg.iter().map(|z| z.norm_sqr()).sum();
    // cg[n] stores C_{g,n+1}, paired with C_{e,n+1} = ce[n+1]
    let r12 = state
        .ce
        .iter()
        .skip(1)
        .zip(&state.cg)
        .map(|(e, g)| e.conj() * g)
        .sum();
    ReducedInnerProducts { r11, r22, r12 }
}

fn x_ln_x(x: f64) -> f64 {
    if x > 0.0 {
        x * x.ln()
    } else {
        0.0
    }
}

/// `S = −[Λ⁺ ln Λ⁺ + Λ⁻ ln Λ⁻]` with `0·ln 0 = 0`, clamped to `[0, ln 2]`.
pub fn entropy_from(products: &ReducedInnerProducts, t: f64) -> Result<f64, ObservableError> {
    let (plus, mut minus) = products.eigenvalues();
    if minus < 0.0 {
        if minus < -EIGENVALUE_SLACK {
            return Err(ObservableError::NegativeEigenvalue { t, value: minus });
        }
        minus = 0.0;
    }
    let s = -(x_ln_x(plus) + x_ln_x(minus));
    Ok(s.clamp(0.0, LN_2))
}

/// Von Neumann entropy of the reduced state, computed from the amplitudes
/// as they are (no renormalization after decay).
pub fn entropy(state: &AmplitudeState) -> Result<f64, ObservableError> {
    entropy_from(&inner_products(state), state.t)
}

/// `I = Σ(|C_{e,n}|² − |C_{g,n+1}|²)`.
pub fn inversion(state: &AmplitudeState) -> f64 {
    let p = inner_products(state);
    p.r11 - p.r22
}

/// Sampled observables on the trajectory grid, indexed by `τ = λ₀t`.
#[derive(Debug, Clone, PartialEq)]
pub struct ObservableSeries {
    pub tau: Vec<f64>,
    pub entropy: Vec<f64>,
    pub inversion: Vec<f64>,
    pub norm2: Vec<f64>,
}

impl ObservableSeries {
    pub fn len(&self) -> usize {
        self.tau.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tau.is_empty()
    }
}

/// Options for [`series_with`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SeriesOptions {
    /// Divide the state by its norm before the entropy is evaluated.
    pub renormalize: bool,
}

/// Element-wise entropy, inversion and squared norm along a trajectory.
pub fn series(states: &[AmplitudeState]) -> Result<ObservableSeries, ObservableError> {
    series_with(states, SeriesOptions::default())
}

pub fn series_with(
    states: &[AmplitudeState],
    opts: SeriesOptions,
) -> Result<ObservableSeries, ObservableError> {
    let mut out = ObservableSeries {
        tau: Vec::with_capacity(states.len()),
        entropy: Vec::with_capacity(states.len()),
        inversion: Vec::with_capacity(states.len()),
        norm2: Vec::with_capacity(states.len()),
    };
    for state in states {
        let products = inner_products(state);
        let for_entropy = if opts.renormalize {
            products.renormalized()
        } else {
            products
        };
        out.tau.push(state.t);
        out.entropy.push(entropy_from(&for_entropy, state.t)?);
        out.inversion.push(products.r11 - products.r22);
        out.norm2.push(norm_squared(state));
    }
    Ok(out)
}
