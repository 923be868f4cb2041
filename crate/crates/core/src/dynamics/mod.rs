//! Time evolution of the block amplitudes `(C_{e,n}, C_{g,n+1})`.
//!
//! The working Hamiltonian conserves the excitation number, so with the CPB
//! initially excited each Fock index `n` gives an independent pair
//!
//! ```text
//! dC_{e,n}/dt   = −i nω(t) C_{e,n} − (i/2)ω₀ C_{e,n} − iλ(t)√(n+1) C_{g,n+1} − (γ/2) C_{e,n}
//! dC_{g,n+1}/dt = −i (n+1)ω(t) C_{g,n+1} + (i/2)ω₀ C_{g,n+1} − iλ(t)√(n+1) C_{e,n}
//! ```
//!
//! # Co-rotating frame
//!
//! With `ω ≈ 2000λ₀` the amplitudes rotate at up to `~10⁵` rad per unit
//! time. Write `Θ(t) = ∫₀ᵗ ω(s) ds`, `φ_n(t) = nΘ(t) + ω₀t/2` and
//! substitute `C_{e,n} = a e^{−iφ_n}`, `C_{g,n+1} = b e^{−iφ_n}`. Since
//! `φ̇_n = nω(t) + ω₀/2`, the common rotation cancels and
//!
//! ```text
//! da/dt = −iλ(t)√(n+1) b − (γ/2) a
//! db/dt = −i(ω(t) − ω₀) b − iλ(t)√(n+1) a
//! ```
//!
//! which only carries the detuning `ω(t) − ω₀` and the Rabi frequency
//! `λ(t)√(n+1)`. The substitution is a pure phase, so `|a|² + |b|²` equals
//! the block weight and the lab-frame amplitudes are recovered exactly by
//! multiplying back `e^{−iφ_n(t)}`. `Θ(t)` is available in closed form for
//! every [`DetuningProfile`].

mod analytic;
pub(crate) mod rk;

use num_complex::Complex64;
use rayon::prelude::*;
use thiserror::Error;

pub use analytic::{analytic_amplitudes, analytic_block, ZETA_SERIES_THRESHOLD};
pub use rk::Stats;

use crate::model::{CatState, DetuningProfile, ModelParams};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum IntegrationError {
    #[error("step size underflow in block n = {n} at t = {t}, step h = {h:e}")]
    StepUnderflow { n: usize, t: f64, h: f64 },
    #[error("invalid integrator setting `{name}` = {value}: {reason}")]
    InvalidConfig {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },
    #[error("cat state has n_max = {cat} but the model uses n_max = {model}")]
    TruncationMismatch { cat: usize, model: usize },
}

/// Tolerances and output grid of the block integrator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegratorConfig {
    pub rel_tol: f64,
    pub abs_tol: f64,
    /// End of the uniform output grid, in units of `1/λ₀`.
    pub t_max: f64,
    /// Number of output samples on `[0, t_max]`, endpoints included.
    pub n_samples: usize,
}

impl Default for IntegratorConfig {
    fn default() -> Self {
        Self {
            rel_tol: 1e-12,
            abs_tol: 1e-14,
            t_max: 100.0,
            n_samples: 2001,
        }
    }
}

impl IntegratorConfig {
    pub fn validate(&self) -> Result<(), IntegrationError> {
        let bad = |name, value, reason| Err(IntegrationError::InvalidConfig { name, value, reason });
        if !(self.rel_tol > 0.0) || !self.rel_tol.is_finite() {
            return bad("rel_tol", self.rel_tol, "must be > 0");
        }
        if !(self.abs_tol > 0.0) || !self.abs_tol.is_finite() {
            return bad("abs_tol", self.abs_tol, "must be > 0");
        }
        if !(self.t_max > 0.0) || !self.t_max.is_finite() {
            return bad("t_max", self.t_max, "must be > 0");
        }
        if self.n_samples < 2 {
            return bad("n_samples", self.n_samples as f64, "must be >= 2");
        }
        Ok(())
    }

    /// Uniform output grid `t_k = t_max·k/(n_samples − 1)`.
    pub fn grid(&self) -> Vec<f64> {
        let last = (self.n_samples - 1) as f64;
        (0..self.n_samples)
            .map(|k| self.t_max * k as f64 / last)
            .collect()
    }
}

/// All block amplitudes at one instant.
#[derive(Debug, Clone, PartialEq)]
pub struct AmplitudeState {
    pub t: f64,
    /// `C_{e,n}` for `n = 0..=n_max`.
    pub ce: Vec<Complex64>,
    /// Entry `n` holds `C_{g,n+1}`; `C_{g,0}` never couples and stays zero.
    pub cg: Vec<Complex64>,
}

impl AmplitudeState {
    /// CPB excited, NR in the cat state.
    pub fn initial(cat: &CatState) -> Self {
        Self {
            t: 0.0,
            ce: cat.coeffs.iter().map(|&f| Complex64::new(f, 0.0)).collect(),
            cg: vec![Complex64::new(0.0, 0.0); cat.coeffs.len()],
        }
    }

    pub fn norm_squared(&self) -> f64 {
        norm_squared(self)
    }
}

/// `Σ(|C_{e,n}|² + |C_{g,n+1}|²)`.
pub fn norm_squared(state: &AmplitudeState) -> f64 {
    state.ce.iter().map(|z| z.norm_sqr()).sum::<f64>()
        + state.cg.iter().map(|z| z.norm_sqr()).sum::<f64>()
}

/// Trajectory of a single block on the output grid.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockSolution {
    pub n: usize,
    /// `(t, C_{e,n}, C_{g,n+1})`, strictly increasing in `t`.
    pub samples: Vec<(f64, Complex64, Complex64)>,
    pub stats: Stats,
}

/// Integrates one block in the co-rotating frame and maps the result back to
/// lab-frame amplitudes on the uniform grid of `cfg`.
pub fn evolve_block(
    n: usize,
    params: &ModelParams,
    profile: &DetuningProfile,
    cfg: &IntegratorConfig,
    f_n: Complex64,
) -> Result<BlockSolution, IntegrationError> {
    cfg.validate()?;
    let grid = cfg.grid();
    let rabi = ((n + 1) as f64).sqrt();
    let minus_i = Complex64::new(0.0, -1.0);
    let half_gamma = 0.5 * params.gamma;
    let rhs = |t: f64, y: &[Complex64; 2]| {
        let (omega_t, lambda_t) = params.effective_frequencies(profile, t);
        let coupling = minus_i * (lambda_t * rabi);
        [
            coupling * y[1] - half_gamma * y[0],
            minus_i * (omega_t - params.omega0) * y[1] + coupling * y[0],
        ]
    };
    let tol = rk::Tolerances {
        rel: cfg.rel_tol,
        abs: cfg.abs_tol,
    };
    let (ys, stats) = rk::integrate_on_grid(rhs, [f_n, Complex64::new(0.0, 0.0)], &grid, tol)
        .map_err(|e| IntegrationError::StepUnderflow { n, t: e.t, h: e.h })?;

    let samples = grid
        .iter()
        .zip(ys)
        .map(|(&t, [a, b])| {
            let phase = Complex64::from_polar(1.0, -co_rotating_phase(n, params, profile, t));
            (t, a * phase, b * phase)
        })
        .collect();
    Ok(BlockSolution { n, samples, stats })
}

/// `φ_n(t) = nΘ(t) + ω₀t/2`, the phase removed by the co-rotating frame.
pub fn co_rotating_phase(n: usize, params: &ModelParams, profile: &DetuningProfile, t: f64) -> f64 {
    n as f64 * params.phase_integral(profile, t) + 0.5 * params.omega0 * t
}

/// Direct integration of the lab-frame block equations, without removing the
/// fast rotation. Only practical for short horizons; it serves as an
/// independent reference for [`evolve_block`].
pub fn evolve_block_lab_frame(
    n: usize,
    params: &ModelParams,
    profile: &DetuningProfile,
    cfg: &IntegratorConfig,
    f_n: Complex64,
) -> Result<BlockSolution, IntegrationError> {
    cfg.validate()?;
    let grid = cfg.grid();
    let nf = n as f64;
    let rabi = (nf + 1.0).sqrt();
    let minus_i = Complex64::new(0.0, -1.0);
    let rhs = |t: f64, y: &[Complex64; 2]| {
        let (omega_t, lambda_t) = params.effective_frequencies(profile, t);
        let coupling = minus_i * (lambda_t * rabi);
        [
            minus_i * (nf * omega_t + 0.5 * params.omega0) * y[0] + coupling * y[1]
                - 0.5 * params.gamma * y[0],
            minus_i * ((nf + 1.0) * omega_t - 0.5 * params.omega0) * y[1] + coupling * y[0],
        ]
    };
    let tol = rk::Tolerances {
        rel: cfg.rel_tol,
        abs: cfg.abs_tol,
    };
    let (ys, stats) = rk::integrate_on_grid(rhs, [f_n, Complex64::new(0.0, 0.0)], &grid, tol)
        .map_err(|e| IntegrationError::StepUnderflow { n, t: e.t, h: e.h })?;
    let samples = grid
        .iter()
        .zip(ys)
        .map(|(&t, [a, b])| (t, a, b))
        .collect();
    Ok(BlockSolution { n, samples, stats })
}

/// Evolves every populated block of the cat state and assembles the full
/// amplitude vectors on the shared grid. Blocks run in parallel on the
/// current rayon pool; each block is a pure function of its inputs, so the
/// result does not depend on scheduling.
pub fn evolve_state(
    params: &ModelParams,
    profile: &DetuningProfile,
    cfg: &IntegratorConfig,
    cat: &CatState,
) -> Result<Vec<AmplitudeState>, IntegrationError> {
    cfg.validate()?;
    if cat.n_max() != params.n_max {
        return Err(IntegrationError::TruncationMismatch {
            cat: cat.n_max(),
            model: params.n_max,
        });
    }
    let populated: Vec<(usize, f64)> = cat
        .coeffs
        .iter()
        .copied()
        .enumerate()
        .filter(|&(_, f)| f != 0.0)
        .collect();
    let blocks = populated
        .par_iter()
        .map(|&(n, f)| evolve_block(n, params, profile, cfg, Complex64::new(f, 0.0)))
        .collect::<Result<Vec<_>, _>>()?;

    let zero = Complex64::new(0.0, 0.0);
    let width = cat.coeffs.len();
    let mut states: Vec<AmplitudeState> = cfg
        .grid()
        .into_iter()
        .map(|t| AmplitudeState {
            t,
            ce: vec![zero; width],
            cg: vec![zero; width],
        })
        .collect();
    for block in &blocks {
        for (state, &(_, ce, cg)) in states.iter_mut().zip(&block.samples) {
            state.ce[block.n] = ce;
            state.cg[block.n] = cg;
        }
    }
    Ok(states)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::cat_coefficients;

    fn cfg(t_max: f64, n_samples: usize) -> IntegratorConfig {
        IntegratorConfig {
            t_max,
            n_samples,
            ..IntegratorConfig::default()
        }
    }

    #[test]
    fn config_validation() {
        assert!(IntegratorConfig::default().validate().is_ok());
        assert!(cfg(0.0, 10).validate().is_err());
        assert!(cfg(1.0, 1).validate().is_err());
        let bad = IntegratorConfig {
            rel_tol: 0.0,
            ..IntegratorConfig::default()
        };
        assert!(bad.validate().is_err());
        let g = IntegratorConfig::default().grid();
        assert_eq!(g.len(), 2001);
        assert_eq!(g[0], 0.0);
        assert_eq!(g[2000], 100.0);
        assert!((g[1] - 0.05).abs() < 1e-15);
    }

    #[test]
    fn resonant_rabi_block() {
        let p = ModelParams::new(2000.0, 2000.0, 0.0, 0.0, 4).unwrap();
        let sol =
            evolve_block(0, &p, &DetuningProfile::Zero, &cfg(10.0, 201), Complex64::new(1.0, 0.0))
                .unwrap();
        for &(t, ce, cg) in &sol.samples {
            assert!((cg.norm_sqr() - t.sin().powi(2)).abs() < 1e-9);
            assert!((ce.norm_sqr() - t.cos().powi(2)).abs() < 1e-9);
        }
    }

    #[test]
    fn vacuum_cat_evolves_single_block() {
        let p = ModelParams::new(2000.0, 2000.0, 0.0, 0.0, 4).unwrap();
        let cat = cat_coefficients(0.0, 4).unwrap();
        let states = evolve_state(&p, &DetuningProfile::Zero, &cfg(5.0, 11), &cat).unwrap();
        for s in &states {
            assert!(s.ce[1..].iter().all(|z| z.norm() == 0.0));
            assert!(s.cg[1..].iter().all(|z| z.norm() == 0.0));
        }
    }

    #[test]
    fn mismatched_truncation_rejected() {
        let p = ModelParams::new(2000.0, 2000.0, 0.0, 0.0, 4).unwrap();
        let cat = cat_coefficients(0.0, 6).unwrap();
        assert!(matches!(
            evolve_state(&p, &DetuningProfile::Zero, &cfg(5.0, 11), &cat),
            Err(IntegrationError::TruncationMismatch { .. })
        ));
    }

    #[test]
    fn initial_state_is_normalized() {
        let cat = cat_coefficients(5.0, 75).unwrap();
        let s = AmplitudeState::initial(&cat);
        assert!((norm_squared(&s) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn co_rotating_matches_lab_frame_short_horizon() {
        let p = ModelParams::new(2000.0, 2000.0, 0.05, 5.0, 75).unwrap();
        let profiles = [
            DetuningProfile::Zero,
            DetuningProfile::Constant { delta: 10.0 },
            DetuningProfile::Sinusoidal {
                c: 20.0,
                omega_prime: 0.5,
            },
        ];
        let lab_cfg = IntegratorConfig {
            rel_tol: 1e-13,
            abs_tol: 1e-15,
            t_max: 0.2,
            n_samples: 21,
        };
        let rot_cfg = IntegratorConfig {
            rel_tol: 1e-12,
            abs_tol: 1e-14,
            ..lab_cfg
        };
        for profile in &profiles {
            for n in [0usize, 2, 6] {
                let f = Complex64::new(0.2, 0.0);
                let lab = evolve_block_lab_frame(n, &p, profile, &lab_cfg, f).unwrap();
                let rot = evolve_block(n, &p, profile, &rot_cfg, f).unwrap();
                for (l, r) in lab.samples.iter().zip(&rot.samples) {
                    assert!((l.1 - r.1).norm() < 1e-9, "{profile:?} n={n} t={}", l.0);
                    assert!((l.2 - r.2).norm() < 1e-9, "{profile:?} n={n} t={}", l.0);
                }
            }
        }
    }
}
