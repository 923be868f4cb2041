//! Physical parameters, detuning profiles and the initial even cat state.
//!
//! Frequencies are in units of `λ₀`, which is fixed to 1, so `t` and `τ = λ₀t`
//! coincide. `ħ = 1` throughout.

use std::f64::consts::PI;

use thiserror::Error;

/// Largest tail weight `Σ_{n>n_max} F_n²` accepted for a truncated cat state.
pub const TAIL_BOUND: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ModelError {
    #[error("invalid parameter `{name}` = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },
    #[error(
        "Fock truncation n_max = {n_max} drops cat-state weight {tail:.3e} (limit {TAIL_BOUND:e}) \
         for alpha = {alpha}; use n_max >= {minimal}"
    )]
    Truncation {
        alpha: f64,
        n_max: usize,
        tail: f64,
        minimal: usize,
    },
}

fn check(name: &'static str, value: f64, ok: bool, reason: &'static str) -> Result<(), ModelError> {
    if ok && value.is_finite() {
        Ok(())
    } else {
        Err(ModelError::InvalidParameter { name, value, reason })
    }
}

/// Parameters of the damped working Hamiltonian
/// `H = ω(t)a†a + ½ω₀σz + λ(t)(σ₊a + a†σ₋) − i(γ/2)|e⟩⟨e|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    /// NR frequency `ω`.
    pub omega: f64,
    /// CPB transition frequency `ω₀`.
    pub omega0: f64,
    /// Base coupling `λ₀`; the unit of every other frequency.
    pub lambda0: f64,
    /// CPB decay rate `γ`.
    pub gamma: f64,
    /// Cat-state amplitude `α` (real, nonnegative).
    pub alpha: f64,
    /// Highest retained Fock index.
    pub n_max: usize,
}

impl ModelParams {
    /// Validates the parameters, including the cat-state truncation tail.
    pub fn new(
        omega: f64,
        omega0: f64,
        gamma: f64,
        alpha: f64,
        n_max: usize,
    ) -> Result<Self, ModelError> {
        check("omega", omega, omega > 0.0, "must be > 0")?;
        check("omega0", omega0, omega0 >= 0.0, "must be >= 0")?;
        check("gamma", gamma, gamma >= 0.0, "must be >= 0")?;
        check("alpha", alpha, alpha >= 0.0, "must be >= 0")?;
        check("n_max", n_max as f64, n_max >= 1, "must be >= 1")?;
        let tail = cat_tail_weight(alpha, n_max);
        if tail >= TAIL_BOUND {
            return Err(ModelError::Truncation {
                alpha,
                n_max,
                tail,
                minimal: minimal_n_max(alpha),
            });
        }
        Ok(Self {
            omega,
            omega0,
            lambda0: 1.0,
            gamma,
            alpha,
            n_max,
        })
    }

    /// Same as [`ModelParams::new`] with `n_max` from [`default_n_max`].
    pub fn with_default_truncation(
        omega: f64,
        omega0: f64,
        gamma: f64,
        alpha: f64,
    ) -> Result<Self, ModelError> {
        check("alpha", alpha, alpha >= 0.0, "must be >= 0")?;
        Self::new(omega, omega0, gamma, alpha, default_n_max(alpha))
    }

    /// `(ω(t), λ(t)) = (ω + f(t), λ₀[1 + f(t)/ω])`.
    pub fn effective_frequencies(&self, profile: &DetuningProfile, t: f64) -> (f64, f64) {
        let f = profile.value(t);
        (self.omega + f, self.lambda0 * (1.0 + f / self.omega))
    }

    /// `Θ(t) = ∫₀ᵗ ω(s) ds`, evaluated in closed form.
    pub fn phase_integral(&self, profile: &DetuningProfile, t: f64) -> f64 {
        self.omega * t + profile.integral(t)
    }
}

/// Free-function form of [`ModelParams::effective_frequencies`].
pub fn effective_frequencies(params: &ModelParams, profile: &DetuningProfile, t: f64) -> (f64, f64) {
    params.effective_frequencies(profile, t)
}

/// The detuning `f(t)` added to the NR frequency.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DetuningProfile {
    Zero,
    Constant { delta: f64 },
    Sinusoidal { c: f64, omega_prime: f64 },
}

impl DetuningProfile {
    pub fn constant(delta: f64) -> Result<Self, ModelError> {
        check("profile.delta", delta, true, "must be finite")?;
        Ok(Self::Constant { delta })
    }

    pub fn sinusoidal(c: f64, omega_prime: f64) -> Result<Self, ModelError> {
        check("profile.c", c, true, "must be finite")?;
        check("profile.omega_prime", omega_prime, omega_prime > 0.0, "must be > 0")?;
        Ok(Self::Sinusoidal { c, omega_prime })
    }

    /// `f(t)`.
    pub fn value(&self, t: f64) -> f64 {
        match *self {
            Self::Zero => 0.0,
            Self::Constant { delta } => delta,
            Self::Sinusoidal { c, omega_prime } => c * (omega_prime * t).sin(),
        }
    }

    /// `∫₀ᵗ f(s) ds`.
    pub fn integral(&self, t: f64) -> f64 {
        match *self {
            Self::Zero => 0.0,
            Self::Constant { delta } => delta * t,
            // 1 − cos x = 2 sin²(x/2) avoids cancellation at small x
            Self::Sinusoidal { c, omega_prime } => {
                let s = (0.5 * omega_prime * t).sin();
                2.0 * c * s * s / omega_prime
            }
        }
    }

    /// Constant detuning value, `Some(0)` for [`DetuningProfile::Zero`] and
    /// `None` for time-dependent profiles.
    pub fn constant_value(&self) -> Option<f64> {
        match *self {
            Self::Zero => Some(0.0),
            Self::Constant { delta } => Some(delta),
            Self::Sinusoidal { .. } => None,
        }
    }

    /// Soft regime checks. A sinusoidal modulation is expected to satisfy
    /// `ω′ < c ≪ ω₀, ω`; violating it is allowed but reported here.
    pub fn warnings(&self, params: &ModelParams) -> Vec<String> {
        let mut out = Vec::new();
        if let Self::Sinusoidal { c, omega_prime } = *self {
            if omega_prime >= c.abs() {
                out.push(format!(
                    "sinusoidal detuning has omega_prime = {omega_prime} >= |c| = {}",
                    c.abs()
                ));
            }
            let scale = params.omega.min(params.omega0);
            if c.abs() > 0.1 * scale {
                out.push(format!(
                    "sinusoidal amplitude |c| = {} is not small against min(omega, omega0) = {scale}",
                    c.abs()
                ));
            }
        }
        out
    }
}

/// Free-function form of [`DetuningProfile::value`].
pub fn detuning_value(profile: &DetuningProfile, t: f64) -> f64 {
    profile.value(t)
}

/// Fock-basis coefficients of the even cat state `η(|α⟩ + |−α⟩)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CatState {
    /// `F_n` for `n = 0..=n_max`; odd entries are exactly zero.
    pub coeffs: Vec<f64>,
    /// `η = [2 + 2exp(−2α²)]^{−1/2}`.
    pub eta: f64,
}

impl CatState {
    pub fn n_max(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn norm_squared(&self) -> f64 {
        self.coeffs.iter().map(|f| f * f).sum()
    }
}

fn cat_eta(alpha: f64) -> f64 {
    (2.0 + 2.0 * (-2.0 * alpha * alpha).exp()).powf(-0.5)
}

/// Iterates `(n, ln F_n)` over even `n` starting at `start` (rounded up to
/// even), accumulating `ln n!` as a running sum of logarithms.
fn log_cat_terms(alpha: f64, start: usize) -> impl Iterator<Item = (usize, f64)> {
    let first = start + start % 2;
    let base = (2.0 * cat_eta(alpha)).ln() - 0.5 * alpha * alpha;
    let ln_alpha = alpha.ln();
    let mut ln_fact: f64 = (1..=first).map(|k| (k as f64).ln()).sum();
    let mut n = first;
    std::iter::from_fn(move || {
        let current = n;
        let value = base + current as f64 * ln_alpha - 0.5 * ln_fact;
        ln_fact += ((current + 1) as f64).ln() + ((current + 2) as f64).ln();
        n += 2;
        Some((current, value))
    })
}

/// `Σ_{n > n_max} F_n²`, summed term by term.
pub fn cat_tail_weight(alpha: f64, n_max: usize) -> f64 {
    if alpha == 0.0 {
        return 0.0;
    }
    let peak = alpha * alpha;
    let mut tail = 0.0;
    for (n, ln_f) in log_cat_terms(alpha, n_max + 1) {
        let term = (2.0 * ln_f).exp();
        tail += term;
        if n as f64 > peak && term < 1e-40 {
            break;
        }
    }
    tail
}

/// Smallest `n_max ≥ 1` whose cat-state tail stays below [`TAIL_BOUND`].
pub fn minimal_n_max(alpha: f64) -> usize {
    (1..)
        .find(|&n| cat_tail_weight(alpha, n) < TAIL_BOUND)
        .expect("tail weight vanishes for large n_max")
}

/// Smallest `n ≥ α² + 8α + 10` that satisfies the tail bound (75 for α = 5).
pub fn default_n_max(alpha: f64) -> usize {
    let start = (alpha * alpha + 8.0 * alpha + 10.0).ceil() as usize;
    (start..)
        .find(|&n| cat_tail_weight(alpha, n) < TAIL_BOUND)
        .expect("tail weight vanishes for large n_max")
}

/// Expands `η(|α⟩ + |−α⟩)` in the Fock basis up to `n_max`:
/// `F_n = 2η e^{−α²/2} αⁿ/√n!` for even `n`, zero for odd `n`.
pub fn cat_coefficients(alpha: f64, n_max: usize) -> Result<CatState, ModelError> {
    check("alpha", alpha, alpha >= 0.0, "must be >= 0")?;
    let tail = cat_tail_weight(alpha, n_max);
    if tail >= TAIL_BOUND {
        return Err(ModelError::Truncation {
            alpha,
            n_max,
            tail,
            minimal: minimal_n_max(alpha),
        });
    }
    let eta = cat_eta(alpha);
    let mut coeffs = vec![0.0; n_max + 1];
    if alpha == 0.0 {
        coeffs[0] = 2.0 * eta;
    } else {
        for (n, ln_f) in log_cat_terms(alpha, 0).take_while(|&(n, _)| n <= n_max) {
            coeffs[n] = ln_f.exp();
        }
    }
    Ok(CatState { coeffs, eta })
}

/// Hardware-level quantities that fix `λ₀` and `ω₀`.
///
/// `x₀ = √(mω/2)` enters only through the product `πBℓx₀/Φ₀`; the `ħ` that a
/// dimensionally complete zero-point amplitude would carry is absorbed into
/// that product.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeviceParams {
    /// Josephson energy `E_J⁰` of each junction.
    pub ej0: f64,
    /// Charging energy `E_c`.
    pub ec: f64,
    /// Gate charge number `N_g`.
    pub ng: f64,
    /// External flux `Φx` in units of `Φ₀`.
    pub phi_x: f64,
    /// Dimensionless `πBℓx₀/Φ₀`.
    pub b_field_times_length_times_x0: f64,
}

impl DeviceParams {
    pub fn validate(&self) -> Result<(), ModelError> {
        check("ej0", self.ej0, self.ej0 >= 0.0, "energy must be >= 0")?;
        check("ec", self.ec, self.ec >= 0.0, "energy must be >= 0")?;
        check("ng", self.ng, true, "must be finite")?;
        check("phi_x", self.phi_x, true, "must be finite")?;
        check(
            "b_field_times_length_times_x0",
            self.b_field_times_length_times_x0,
            true,
            "must be finite",
        )
    }
}

/// Maps device parameters to `(λ₀, ω₀)` in the device's energy units:
/// `λ₀ = −4E_J⁰ cos(πΦx/Φ₀)(πBℓx₀/Φ₀)`, `ω₀ = 8E_c(N_g − ½)`.
pub fn device_to_model(dev: &DeviceParams) -> Result<(f64, f64), ModelError> {
    dev.validate()?;
    // cos(π/2) is not exactly zero in floating point
    let cos_flux = if (dev.phi_x - 0.5).rem_euclid(1.0) == 0.0 {
        0.0
    } else {
        (PI * dev.phi_x).cos()
    };
    let lambda0 = -4.0 * dev.ej0 * cos_flux * dev.b_field_times_length_times_x0;
    let omega0 = 8.0 * dev.ec * (dev.ng - 0.5);
    Ok((lambda0, omega0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vacuum_cat() {
        let cat = cat_coefficients(0.0, 4).unwrap();
        assert_eq!(cat.coeffs, vec![1.0, 0.0, 0.0, 0.0, 0.0]);
        assert_eq!(cat.eta, 0.5);
    }

    #[test]
    fn odd_entries_vanish() {
        let cat = cat_coefficients(5.0, 75).unwrap();
        assert!(cat.coeffs.iter().skip(1).step_by(2).all(|&f| f == 0.0));
        assert!(cat.coeffs.iter().step_by(2).any(|&f| f > 0.1));
    }

    #[test]
    fn default_truncation_for_alpha_five() {
        assert_eq!(default_n_max(5.0), 75);
        assert_eq!(default_n_max(0.0), 10);
    }

    #[test]
    fn truncation_error_names_minimal_n_max() {
        let err = cat_coefficients(5.0, 40).unwrap_err();
        let minimal = minimal_n_max(5.0);
        match err {
            ModelError::Truncation { minimal: m, .. } => assert_eq!(m, minimal),
            other => panic!("unexpected {other:?}"),
        }
        assert!(cat_coefficients(5.0, minimal).is_ok());
        assert!(cat_coefficients(5.0, minimal - 1).is_err());
    }

    #[test]
    fn parameter_validation() {
        assert!(ModelParams::new(0.0, 1.0, 0.0, 1.0, 30).is_err());
        assert!(ModelParams::new(1.0, -1.0, 0.0, 1.0, 30).is_err());
        assert!(ModelParams::new(1.0, 1.0, -0.1, 1.0, 30).is_err());
        assert!(ModelParams::new(1.0, 1.0, 0.0, 0.0, 0).is_err());
        assert!(ModelParams::new(1.0, 1.0, f64::NAN, 0.0, 5).is_err());
        let p = ModelParams::with_default_truncation(2000.0, 2000.0, 0.05, 5.0).unwrap();
        assert_eq!(p.n_max, 75);
        assert_eq!(p.lambda0, 1.0);
    }

    #[test]
    fn detuning_values() {
        assert_eq!(DetuningProfile::Zero.value(7.3), 0.0);
        assert_eq!(DetuningProfile::constant(10.0).unwrap().value(123.0), 10.0);
        assert_eq!(DetuningProfile::sinusoidal(20.0, 0.1).unwrap().value(0.0), 0.0);
        assert!(DetuningProfile::sinusoidal(20.0, 0.0).is_err());
    }

    #[test]
    fn detuning_integral_matches_quadrature() {
        let profile = DetuningProfile::sinusoidal(20.0, 0.5).unwrap();
        let t = 7.0;
        let n = 20_000;
        let h = t / n as f64;
        // Simpson
        let mut acc = profile.value(0.0) + profile.value(t);
        for k in 1..n {
            let w = if k % 2 == 1 { 4.0 } else { 2.0 };
            acc += w * profile.value(k as f64 * h);
        }
        let simpson = acc * h / 3.0;
        assert!((simpson - profile.integral(t)).abs() < 1e-10);
    }

    #[test]
    fn effective_frequency_rule() {
        let p = ModelParams::new(2000.0, 2000.0, 0.0, 0.0, 4).unwrap();
        assert_eq!(p.effective_frequencies(&DetuningProfile::Zero, 3.0), (2000.0, 1.0));
        let (w, l) = p.effective_frequencies(&DetuningProfile::Constant { delta: 20.0 }, 0.0);
        assert_eq!(w, 2020.0);
        assert!((l - 1.01).abs() < 1e-15);
        let sin = DetuningProfile::sinusoidal(20.0, 0.5).unwrap();
        let (w, l) = p.effective_frequencies(&sin, PI);
        assert!((w - 2020.0).abs() < 1e-12);
        assert!((l - 1.01).abs() < 1e-15);
    }

    #[test]
    fn sinusoidal_regime_warnings() {
        let p = ModelParams::new(2000.0, 2000.0, 0.05, 5.0, 75).unwrap();
        assert!(DetuningProfile::sinusoidal(20.0, 0.1).unwrap().warnings(&p).is_empty());
        let w = DetuningProfile::sinusoidal(60.0, 20.0).unwrap().warnings(&p);
        assert!(w.is_empty());
        let w = DetuningProfile::sinusoidal(20.0, 30.0).unwrap().warnings(&p);
        assert_eq!(w.len(), 1);
        let w = DetuningProfile::sinusoidal(500.0, 30.0).unwrap().warnings(&p);
        assert_eq!(w.len(), 1);
    }

    #[test]
    fn device_mapping() {
        let base = DeviceParams {
            ej0: 1.0,
            ec: 2.0,
            ng: 0.5,
            phi_x: 0.0,
            b_field_times_length_times_x0: 0.01,
        };
        let (l, w) = device_to_model(&base).unwrap();
        assert_eq!(w, 0.0);
        assert!((l + 0.04).abs() < 1e-15);
        let (l, _) = device_to_model(&DeviceParams { phi_x: 0.5, ..base }).unwrap();
        assert_eq!(l, 0.0);
        let (_, w) = device_to_model(&DeviceParams { ng: 1.0, ..base }).unwrap();
        assert_eq!(w, 8.0);
        assert!(device_to_model(&DeviceParams { ec: -1.0, ..base }).is_err());
    }
}
