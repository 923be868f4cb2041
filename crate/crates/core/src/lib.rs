//! Damped Jaynes-Cummings dynamics of a Cooper pair box (CPB) coupled to a
//! nanomechanical resonator (NR).
//!
//! The CPB starts in its excited state and the NR in an even cat state
//! `η(|α⟩ + |−α⟩)`. The Hamiltonian couples `|e, n⟩ ↔ |g, n+1⟩`, so the
//! dynamics splits into independent 2×2 blocks, one per Fock index `n`.
//! Each block is integrated in a co-rotating frame ([`dynamics`]), and the
//! resulting amplitudes feed the reduced-state entropy and the CPB
//! excitation inversion ([`observables`]) and the entropy power spectrum
//! ([`spectrum`]). [`cli`] wires everything into configurable runs that emit
//! CSV files plus a manifest.
//!
//! All frequencies and rates are expressed in units of the base coupling
//! `λ₀ = 1`, and time is the dimensionless `τ = λ₀t`.

pub mod cli;
pub mod dynamics;
pub mod model;
pub mod observables;
pub mod spectrum;

pub use dynamics::{
    analytic_block, evolve_block, evolve_state, norm_squared, AmplitudeState, BlockSolution,
    IntegrationError, IntegratorConfig,
};
pub use model::{
    cat_coefficients, device_to_model, CatState, DetuningProfile, DeviceParams, ModelError,
    ModelParams,
};
pub use observables::{
    entropy, inner_products, inversion, series, ObservableError, ObservableSeries,
    ReducedInnerProducts,
};
pub use spectrum::{power_spectrum, SpectrumError, SpectrumOptions, SpectrumResult};
