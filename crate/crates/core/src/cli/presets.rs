//! Embedded parameter sets for the published figure families.
//!
//! Every preset uses `α = 5`, `ω = ω₀ = 2000λ₀` and the default truncation
//! and time grid; the figure time ranges are not pinned, so reproduction is
//! qualitative in `τ_max`.

use toml::Value;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Profile {
    Zero,
    Constant(f64),
    Sinusoidal { c: f64, omega_prime: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Preset {
    pub name: &'static str,
    /// Plotted quantity and parameters, recorded in the run manifest.
    pub caption: &'static str,
    pub gamma: f64,
    pub profile: Profile,
    pub spectrum: bool,
}

const fn entropy(name: &'static str, caption: &'static str, gamma: f64, profile: Profile) -> Preset {
    Preset {
        name,
        caption,
        gamma,
        profile,
        spectrum: false,
    }
}

const fn spectrum(name: &'static str, caption: &'static str, gamma: f64, profile: Profile) -> Preset {
    Preset {
        name,
        caption,
        gamma,
        profile,
        spectrum: true,
    }
}

pub const PRESETS: &[Preset] = &[
    entropy("fig2a", "entropy vs tau; resonance f=0, gamma=0, alpha=5, omega=omega0=2000", 0.0, Profile::Zero),
    entropy("fig2b", "entropy vs tau; resonance f=0, gamma=0.01, alpha=5, omega=omega0=2000", 0.01, Profile::Zero),
    entropy("fig2c", "entropy vs tau; resonance f=0, gamma=0.05, alpha=5, omega=omega0=2000", 0.05, Profile::Zero),
    entropy("fig3a", "entropy vs tau; constant detuning Delta=10, gamma=0.05, alpha=5, omega=omega0=2000", 0.05, Profile::Constant(10.0)),
    entropy("fig3b", "entropy vs tau; constant detuning Delta=20, gamma=0.05, alpha=5, omega=omega0=2000", 0.05, Profile::Constant(20.0)),
    entropy("fig4a", "entropy vs tau; f=c sin(omega' t), c=20, omega'=0.1, gamma=0.05, alpha=5, omega=omega0=2000", 0.05, Profile::Sinusoidal { c: 20.0, omega_prime: 0.1 }),
    entropy("fig4b", "entropy vs tau; f=c sin(omega' t), c=20, omega'=0.5, gamma=0.05, alpha=5, omega=omega0=2000", 0.05, Profile::Sinusoidal { c: 20.0, omega_prime: 0.5 }),
    spectrum("fig5a", "normalized entropy power spectrum of fig2a", 0.0, Profile::Zero),
    spectrum("fig5b", "normalized entropy power spectrum of fig2b", 0.01, Profile::Zero),
    spectrum("fig5c", "normalized entropy power spectrum of fig2c", 0.05, Profile::Zero),
    spectrum("fig6a", "normalized entropy power spectrum of fig3a", 0.05, Profile::Constant(10.0)),
    spectrum("fig6b", "normalized entropy power spectrum of fig3b", 0.05, Profile::Constant(20.0)),
    spectrum("fig7a", "normalized entropy power spectrum of fig4a", 0.05, Profile::Sinusoidal { c: 20.0, omega_prime: 0.1 }),
    spectrum("fig7b", "normalized entropy power spectrum of fig4b", 0.05, Profile::Sinusoidal { c: 20.0, omega_prime: 0.5 }),
    entropy("fig8a", "CPB excitation inversion vs tau; constant detuning Delta=10, gamma=0.05, alpha=5, omega=omega0=2000", 0.05, Profile::Constant(10.0)),
    entropy("fig8b", "CPB excitation inversion vs tau; constant detuning Delta=20, gamma=0.05, alpha=5, omega=omega0=2000", 0.05, Profile::Constant(20.0)),
    entropy("fig9a", "CPB excitation inversion vs tau; f=c sin(omega' t), c=20, omega'=0.5, gamma=0.05, alpha=5, omega=omega0=2000", 0.05, Profile::Sinusoidal { c: 20.0, omega_prime: 0.5 }),
    entropy("fig9b", "CPB excitation inversion vs tau; f=c sin(omega' t), c=60, omega'=20, gamma=0.05, alpha=5, omega=omega0=2000", 0.05, Profile::Sinusoidal { c: 60.0, omega_prime: 20.0 }),
];

pub fn find(name: &str) -> Option<&'static Preset> {
    PRESETS.iter().find(|p| p.name == name)
}

impl Preset {
    /// Config entries the preset pins.
    pub fn entries(&self) -> Vec<(String, Value)> {
        let mut out = vec![
            ("model.alpha".to_string(), Value::Float(5.0)),
            ("model.omega".to_string(), Value::Float(2000.0)),
            ("model.omega0".to_string(), Value::Float(2000.0)),
            ("model.gamma".to_string(), Value::Float(self.gamma)),
        ];
        match self.profile {
            Profile::Zero => out.push(("profile.kind".into(), Value::String("zero".into()))),
            Profile::Constant(delta) => {
                out.push(("profile.kind".into(), Value::String("constant".into())));
                out.push(("profile.delta".into(), Value::Float(delta)));
            }
            Profile::Sinusoidal { c, omega_prime } => {
                out.push(("profile.kind".into(), Value::String("sinusoidal".into())));
                out.push(("profile.c".into(), Value::Float(c)));
                out.push(("profile.omega_prime".into(), Value::Float(omega_prime)));
            }
        }
        if self.spectrum {
            out.push(("spectrum.enabled".into(), Value::Boolean(true)));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::config::parse_config;
    use crate::model::DetuningProfile;

    #[test]
    fn names_are_unique() {
        for (i, a) in PRESETS.iter().enumerate() {
            assert!(PRESETS[i + 1..].iter().all(|b| b.name != a.name));
        }
    }

    #[test]
    fn every_preset_resolves() {
        for p in PRESETS {
            let cfg = parse_config(&format!("preset = \"{}\"", p.name)).unwrap();
            assert_eq!(cfg.model.n_max, 75);
            assert_eq!(cfg.spectrum.enabled, p.spectrum);
        }
    }

    #[test]
    fn fig2a_and_fig9b() {
        let cfg = parse_config("preset = \"fig2a\"").unwrap();
        assert_eq!(cfg.model.gamma, 0.0);
        assert_eq!(cfg.model.alpha, 5.0);
        assert_eq!((cfg.model.omega, cfg.model.omega0), (2000.0, 2000.0));
        assert_eq!(cfg.profile, DetuningProfile::Zero);

        let cfg = parse_config("preset = \"fig9b\"").unwrap();
        assert_eq!(
            cfg.profile,
            DetuningProfile::Sinusoidal {
                c: 60.0,
                omega_prime: 20.0
            }
        );
        assert_eq!(cfg.model.gamma, 0.05);
    }
}
