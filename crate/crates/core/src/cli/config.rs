//! Run configuration: a flat document of dotted keys.
//!
//! The document is TOML restricted to scalar values under the key paths in
//! [`KEYS`], e.g.
//!
//! ```toml
//! preset = "fig3a"
//! model.gamma = 0.05
//! profile.kind = "constant"
//! profile.delta = 10
//! ```
//!
//! Tables (`[model]`) and dotted keys are equivalent. Values are resolved in
//! layers: built-in defaults, then the document, then the preset (which wins
//! over conflicting document values), then `--set` overrides.

use std::collections::BTreeMap;
use std::path::PathBuf;

use thiserror::Error;
use toml::Value;

use super::presets;
use crate::dynamics::IntegratorConfig;
use crate::model::{default_n_max, DetuningProfile, ModelError, ModelParams};
use crate::observables::SeriesOptions;
use crate::spectrum::{frequency_grid, SpectrumOptions};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConfigError {
    #[error("malformed config document: {0}")]
    Malformed(String),
    #[error("unknown key `{key}`; {remedy}")]
    UnknownKey { key: String, remedy: String },
    #[error("key `{key}` expects {expected}, found `{found}`")]
    WrongType {
        key: String,
        expected: &'static str,
        found: String,
    },
    #[error("invalid value for `{key}`: {reason}")]
    Invalid { key: String, reason: String },
    #[error("missing key `{key}`: {remedy}")]
    Missing { key: String, remedy: String },
    #[error("unknown preset `{0}`; run `cpbnr presets` for the list")]
    UnknownPreset(String),
    #[error("malformed override `{0}`; expected key=value")]
    MalformedOverride(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Float,
    Integer,
    Bool,
    Str,
}

/// Every accepted key with its type.
pub const KEYS: &[(&str, Kind)] = &[
    ("preset", Kind::Str),
    ("model.omega", Kind::Float),
    ("model.omega0", Kind::Float),
    ("model.gamma", Kind::Float),
    ("model.alpha", Kind::Float),
    ("model.n_max", Kind::Integer),
    ("profile.kind", Kind::Str),
    ("profile.delta", Kind::Float),
    ("profile.c", Kind::Float),
    ("profile.omega_prime", Kind::Float),
    ("integrator.rel_tol", Kind::Float),
    ("integrator.abs_tol", Kind::Float),
    ("integrator.tau_max", Kind::Float),
    ("integrator.n_samples", Kind::Integer),
    ("observables.renormalize", Kind::Bool),
    ("spectrum.enabled", Kind::Bool),
    ("spectrum.omega_min", Kind::Float),
    ("spectrum.omega_max", Kind::Float),
    ("spectrum.omega_step", Kind::Float),
    ("spectrum.subtract_mean", Kind::Bool),
    ("output.dir", Kind::Str),
    ("output.stem", Kind::Str),
];

const PROFILE_PARAMS: &[&str] = &["profile.delta", "profile.c", "profile.omega_prime"];

pub type KeyMap = BTreeMap<String, Value>;

fn kind_of(key: &str) -> Option<Kind> {
    KEYS.iter().find(|(k, _)| *k == key).map(|&(_, kind)| kind)
}

/// Maps a bare last segment such as `gamma` to its full path when that is
/// unambiguous.
pub fn canonical_key(key: &str) -> Result<String, ConfigError> {
    if kind_of(key).is_some() {
        return Ok(key.to_string());
    }
    if !key.contains('.') {
        let hits: Vec<&str> = KEYS
            .iter()
            .map(|(k, _)| *k)
            .filter(|k| k.rsplit('.').next() == Some(key))
            .collect();
        if hits.len() == 1 {
            return Ok(hits[0].to_string());
        }
    }
    Err(ConfigError::UnknownKey {
        key: key.to_string(),
        remedy: remedy_for(key),
    })
}

fn remedy_for(key: &str) -> String {
    let last = key.rsplit('.').next().unwrap_or(key);
    let close: Vec<&str> = KEYS
        .iter()
        .map(|(k, _)| *k)
        .filter(|k| {
            let tail = k.rsplit('.').next().unwrap_or(k);
            tail.contains(last) || last.contains(tail)
        })
        .collect();
    if close.is_empty() {
        let all: Vec<&str> = KEYS.iter().map(|(k, _)| *k).collect();
        format!("valid keys are: {}", all.join(", "))
    } else {
        format!("did you mean {}?", close.join(" or "))
    }
}

fn flatten(prefix: &str, table: &toml::Table, out: &mut KeyMap) -> Result<(), ConfigError> {
    for (k, v) in table {
        let path = if prefix.is_empty() {
            k.clone()
        } else {
            format!("{prefix}.{k}")
        };
        match v {
            Value::Table(inner) => flatten(&path, inner, out)?,
            Value::Array(_) | Value::Datetime(_) => {
                return Err(ConfigError::WrongType {
                    key: path,
                    expected: "a scalar value",
                    found: v.to_string(),
                })
            }
            _ => {
                if kind_of(&path).is_none() {
                    return Err(ConfigError::UnknownKey {
                        remedy: remedy_for(&path),
                        key: path,
                    });
                }
                out.insert(path, v.clone());
            }
        }
    }
    Ok(())
}

/// Parses a document into its flat key map, rejecting unknown keys.
pub fn parse_document(text: &str) -> Result<KeyMap, ConfigError> {
    let table: toml::Table = text
        .parse()
        .map_err(|e: toml::de::Error| ConfigError::Malformed(e.to_string()))?;
    let mut out = KeyMap::new();
    flatten("", &table, &mut out)?;
    Ok(out)
}

/// Parses the value half of a `key=value` override. Anything that is not a
/// TOML scalar is taken as a bare string.
pub fn parse_override(spec: &str) -> Result<(String, Value), ConfigError> {
    let (key, raw) = spec
        .split_once('=')
        .ok_or_else(|| ConfigError::MalformedOverride(spec.to_string()))?;
    let key = canonical_key(key.trim())?;
    Ok((key, parse_scalar(raw)))
}

/// A TOML scalar, or the trimmed text itself as a string.
pub fn parse_scalar(raw: &str) -> Value {
    let raw = raw.trim();
    format!("v = {raw}")
        .parse::<toml::Table>()
        .ok()
        .and_then(|mut t| t.remove("v"))
        .filter(|v| !matches!(v, Value::Table(_) | Value::Array(_) | Value::Datetime(_)))
        .unwrap_or_else(|| Value::String(raw.to_string()))
}

/// Everything a configuration was assembled from, in precedence order.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ConfigSource {
    pub document: KeyMap,
    /// Preset named on the command line; takes precedence over `preset` in
    /// the document.
    pub preset: Option<String>,
    pub overrides: Vec<(String, Value)>,
}

impl ConfigSource {
    pub fn from_document(text: &str) -> Result<Self, ConfigError> {
        Ok(Self {
            document: parse_document(text)?,
            ..Self::default()
        })
    }

    pub fn with_override(mut self, key: &str, value: Value) -> Result<Self, ConfigError> {
        let key = canonical_key(key)?;
        self.overrides.push((key, value));
        Ok(self)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumConfig {
    pub enabled: bool,
    pub omega_min: f64,
    pub omega_max: f64,
    pub omega_step: f64,
    pub options: SpectrumOptions,
}

impl SpectrumConfig {
    pub fn grid(&self) -> Vec<f64> {
        frequency_grid(self.omega_min, self.omega_max, self.omega_step)
            .expect("validated at parse time")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OutputConfig {
    pub dir: PathBuf,
    pub stem: String,
}

/// A fully validated run description.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub model: ModelParams,
    pub profile: DetuningProfile,
    pub integrator: IntegratorConfig,
    pub observables: SeriesOptions,
    pub spectrum: SpectrumConfig,
    pub output: OutputConfig,
    pub preset: Option<String>,
    /// Document keys replaced or dropped by the preset, as `key: old -> new`.
    pub preset_overrides: Vec<String>,
    /// Keys that took their built-in default.
    pub defaulted: Vec<String>,
    /// Final value of every key affecting the run, preset excluded.
    pub resolved: KeyMap,
    pub source: ConfigSource,
}

/// Parses and validates a config document.
pub fn parse_config(text: &str) -> Result<RunConfig, ConfigError> {
    resolve(&ConfigSource::from_document(text)?)
}

struct Lookup<'a> {
    map: &'a KeyMap,
    defaulted: Vec<String>,
}

impl Lookup<'_> {
    fn float(&mut self, key: &str, default: Option<f64>) -> Result<f64, ConfigError> {
        match self.map.get(key) {
            Some(Value::Float(v)) => Ok(*v),
            Some(Value::Integer(v)) => Ok(*v as f64),
            Some(other) => Err(wrong(key, "a number", other)),
            None => self.fallback(key, default),
        }
    }

    fn integer(&mut self, key: &str, default: Option<i64>) -> Result<i64, ConfigError> {
        match self.map.get(key) {
            Some(Value::Integer(v)) => Ok(*v),
            Some(other) => Err(wrong(key, "an integer", other)),
            None => self.fallback(key, default),
        }
    }

    fn boolean(&mut self, key: &str, default: bool) -> Result<bool, ConfigError> {
        match self.map.get(key) {
            Some(Value::Boolean(v)) => Ok(*v),
            Some(other) => Err(wrong(key, "true or false", other)),
            None => self.fallback(key, Some(default)),
        }
    }

    fn string(&mut self, key: &str, default: &str) -> Result<String, ConfigError> {
        match self.map.get(key) {
            Some(Value::String(v)) => Ok(v.clone()),
            Some(other) => Err(wrong(key, "a string", other)),
            None => self.fallback(key, Some(default.to_string())),
        }
    }

    fn fallback<T>(&mut self, key: &str, default: Option<T>) -> Result<T, ConfigError> {
        match default {
            Some(v) => {
                self.defaulted.push(key.to_string());
                Ok(v)
            }
            None => Err(ConfigError::Missing {
                key: key.to_string(),
                remedy: "set it in the config or with --set".to_string(),
            }),
        }
    }
}

fn wrong(key: &str, expected: &'static str, found: &Value) -> ConfigError {
    ConfigError::WrongType {
        key: key.to_string(),
        expected,
        found: found.to_string(),
    }
}

fn invalid(key: &str, reason: impl Into<String>) -> ConfigError {
    ConfigError::Invalid {
        key: key.to_string(),
        reason: reason.into(),
    }
}

fn model_error(e: ModelError) -> ConfigError {
    match e {
        ModelError::InvalidParameter { name, value, reason } => {
            let key = if name.contains('.') {
                name.to_string()
            } else {
                format!("model.{name}")
            };
            invalid(&key, format!("{value} {reason}"))
        }
        ModelError::Truncation { minimal, .. } => {
            invalid("model.n_max", format!("{e}; remedy: set model.n_max >= {minimal} or omit it"))
        }
    }
}

/// Applies the layers of `source` and validates the result.
pub fn resolve(source: &ConfigSource) -> Result<RunConfig, ConfigError> {
    let mut map = source.document.clone();
    let preset_name = match &source.preset {
        Some(p) => Some(p.clone()),
        None => match map.get("preset") {
            Some(Value::String(p)) => Some(p.clone()),
            Some(other) => return Err(wrong("preset", "a string", other)),
            None => None,
        },
    };
    map.remove("preset");

    let mut preset_overrides = Vec::new();
    if let Some(name) = &preset_name {
        let preset = presets::find(name).ok_or_else(|| ConfigError::UnknownPreset(name.clone()))?;
        let entries = preset.entries();
        let sets_profile = entries.iter().any(|(k, _)| k == "profile.kind");
        if sets_profile {
            for key in PROFILE_PARAMS {
                if !entries.iter().any(|(k, _)| k == key) {
                    if let Some(old) = map.remove(*key) {
                        preset_overrides.push(format!("{key}: {old} -> (removed)"));
                    }
                }
            }
        }
        for (key, value) in entries {
            if let Some(old) = map.get(&key) {
                if *old != value {
                    preset_overrides.push(format!("{key}: {old} -> {value}"));
                }
            }
            map.insert(key, value);
        }
    }
    for (key, value) in &source.overrides {
        if key == "preset" {
            return Err(invalid("preset", "use --preset instead of --set preset=..."));
        }
        map.insert(key.clone(), value.clone());
    }

    let mut look = Lookup {
        map: &map,
        defaulted: Vec::new(),
    };

    let omega = look.float("model.omega", Some(2000.0))?;
    let omega0 = look.float("model.omega0", Some(2000.0))?;
    let gamma = look.float("model.gamma", Some(0.0))?;
    let alpha = look.float("model.alpha", Some(5.0))?;
    if !(alpha >= 0.0) || !alpha.is_finite() {
        return Err(invalid("model.alpha", format!("{alpha} must be >= 0")));
    }
    let n_max = look.integer("model.n_max", Some(default_n_max(alpha) as i64))?;
    if n_max < 1 {
        return Err(invalid("model.n_max", format!("{n_max} must be >= 1")));
    }
    let model = ModelParams::new(omega, omega0, gamma, alpha, n_max as usize).map_err(model_error)?;

    let kind = look.string("profile.kind", "zero")?;
    let profile = match kind.as_str() {
        "zero" => {
            for key in PROFILE_PARAMS {
                if map.contains_key(*key) {
                    return Err(invalid(key, "only allowed with profile.kind = constant or sinusoidal"));
                }
            }
            DetuningProfile::Zero
        }
        "constant" => {
            for key in ["profile.c", "profile.omega_prime"] {
                if map.contains_key(key) {
                    return Err(invalid(key, "only allowed with profile.kind = sinusoidal"));
                }
            }
            let delta = look.float("profile.delta", None)?;
            DetuningProfile::constant(delta).map_err(model_error)?
        }
        "sinusoidal" => {
            if map.contains_key("profile.delta") {
                return Err(invalid("profile.delta", "only allowed with profile.kind = constant"));
            }
            let c = look.float("profile.c", None)?;
            let omega_prime = look.float("profile.omega_prime", None)?;
            DetuningProfile::sinusoidal(c, omega_prime).map_err(model_error)?
        }
        other => {
            return Err(invalid(
                "profile.kind",
                format!("`{other}` is not one of zero, constant, sinusoidal"),
            ))
        }
    };

    let defaults = IntegratorConfig::default();
    let n_samples = look.integer("integrator.n_samples", Some(defaults.n_samples as i64))?;
    if n_samples < 2 {
        return Err(invalid("integrator.n_samples", format!("{n_samples} must be >= 2")));
    }
    let integrator = IntegratorConfig {
        rel_tol: look.float("integrator.rel_tol", Some(defaults.rel_tol))?,
        abs_tol: look.float("integrator.abs_tol", Some(defaults.abs_tol))?,
        t_max: look.float("integrator.tau_max", Some(defaults.t_max))?,
        n_samples: n_samples as usize,
    };
    integrator.validate().map_err(|e| {
        let key = match &e {
            crate::dynamics::IntegrationError::InvalidConfig { name, .. } => match *name {
                "t_max" => "integrator.tau_max".to_string(),
                other => format!("integrator.{other}"),
            },
            _ => "integrator".to_string(),
        };
        invalid(&key, e.to_string())
    })?;

    let observables = SeriesOptions {
        renormalize: look.boolean("observables.renormalize", false)?,
    };

    let spectrum = SpectrumConfig {
        enabled: look.boolean("spectrum.enabled", false)?,
        omega_min: look.float("spectrum.omega_min", Some(0.0))?,
        omega_max: look.float("spectrum.omega_max", Some(2.0))?,
        omega_step: look.float("spectrum.omega_step", Some(5e-4))?,
        options: SpectrumOptions {
            subtract_mean: look.boolean("spectrum.subtract_mean", false)?,
        },
    };
    frequency_grid(spectrum.omega_min, spectrum.omega_max, spectrum.omega_step)
        .map_err(|e| invalid("spectrum.omega_step", e.to_string()))?;

    let output = OutputConfig {
        dir: PathBuf::from(look.string("output.dir", ".")?),
        stem: look.string(
            "output.stem",
            preset_name.as_deref().unwrap_or("run"),
        )?,
    };
    if output.stem.is_empty() || output.stem.contains(['/', '\\']) {
        return Err(invalid("output.stem", "must be a non-empty file name without separators"));
    }

    let defaulted = look.defaulted;
    let resolved = resolved_map(&model, &profile, &integrator, &observables, &spectrum, &output);

    Ok(RunConfig {
        model,
        profile,
        integrator,
        observables,
        spectrum,
        output,
        preset: preset_name,
        preset_overrides,
        defaulted,
        resolved,
        source: source.clone(),
    })
}

fn resolved_map(
    model: &ModelParams,
    profile: &DetuningProfile,
    integrator: &IntegratorConfig,
    observables: &SeriesOptions,
    spectrum: &SpectrumConfig,
    output: &OutputConfig,
) -> KeyMap {
    let mut m = KeyMap::new();
    let mut f = |k: &str, v: f64| {
        m.insert(k.to_string(), Value::Float(v));
    };
    f("model.omega", model.omega);
    f("model.omega0", model.omega0);
    f("model.gamma", model.gamma);
    f("model.alpha", model.alpha);
    match *profile {
        DetuningProfile::Zero => {}
        DetuningProfile::Constant { delta } => f("profile.delta", delta),
        DetuningProfile::Sinusoidal { c, omega_prime } => {
            f("profile.c", c);
            f("profile.omega_prime", omega_prime);
        }
    }
    f("integrator.rel_tol", integrator.rel_tol);
    f("integrator.abs_tol", integrator.abs_tol);
    f("integrator.tau_max", integrator.t_max);
    f("spectrum.omega_min", spectrum.omega_min);
    f("spectrum.omega_max", spectrum.omega_max);
    f("spectrum.omega_step", spectrum.omega_step);
    let kind = match profile {
        DetuningProfile::Zero => "zero",
        DetuningProfile::Constant { .. } => "constant",
        DetuningProfile::Sinusoidal { .. } => "sinusoidal",
    };
    m.insert("model.n_max".into(), Value::Integer(model.n_max as i64));
    m.insert("profile.kind".into(), Value::String(kind.into()));
    m.insert(
        "integrator.n_samples".into(),
        Value::Integer(integrator.n_samples as i64),
    );
    m.insert(
        "observables.renormalize".into(),
        Value::Boolean(observables.renormalize),
    );
    m.insert("spectrum.enabled".into(), Value::Boolean(spectrum.enabled));
    m.insert(
        "spectrum.subtract_mean".into(),
        Value::Boolean(spectrum.options.subtract_mean),
    );
    m.insert(
        "output.dir".into(),
        Value::String(output.dir.to_string_lossy().into_owned()),
    );
    m.insert("output.stem".into(), Value::String(output.stem.clone()));
    m
}

impl RunConfig {
    /// The resolved configuration as a config document. Parsing it back
    /// yields the same numerics without needing the preset.
    pub fn to_document(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.resolved {
            out.push_str(&format!("{k} = {}\n", render_value(v)));
        }
        out
    }

    /// Soft warnings about the configured regime.
    pub fn warnings(&self) -> Vec<String> {
        self.profile.warnings(&self.model)
    }
}

/// TOML rendering that round-trips floats exactly.
pub fn render_value(v: &Value) -> String {
    match v {
        Value::Float(x) => {
            let s = format!("{x:?}");
            if s.contains(['.', 'e', 'E']) || s.contains("inf") || s.contains("NaN") {
                s
            } else {
                format!("{s}.0")
            }
        }
        other => other.to_string(),
    }
}
