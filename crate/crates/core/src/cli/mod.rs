//! Configured runs, parameter sweeps and their file outputs.
//!
//! A run writes, inside `output.dir`:
//!
//! * `<stem>_observables.csv` with header `tau,entropy,inversion,norm2`;
//! * `<stem>_spectrum.csv` with header `omega,ps_re,ps_im,ps_abs,ps_norm`
//!   when `spectrum.enabled = true`;
//! * `<stem>_manifest.txt`, the resolved configuration as a config document
//!   preceded by `#` comment lines carrying the tool version, preset, applied
//!   defaults and SHA-256 checksums of the CSV files.
//!
//! `<stem>` defaults to the preset name, or `run` without a preset.
//!
//! Numbers are written with 17 significant digits (`{:.16e}`) and `\n` line
//! endings, so identical configurations give byte-identical files.

pub mod config;
pub mod presets;

use std::fmt::Write as _;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};
use thiserror::Error;
use toml::Value;

pub use config::{parse_config, resolve, ConfigError, ConfigSource, RunConfig};

use crate::dynamics::{evolve_state, IntegrationError};
use crate::model::{cat_coefficients, ModelError};
use crate::observables::{series_with, ObservableError, ObservableSeries};
use crate::spectrum::{power_spectrum_of, SpectrumError, SpectrumResult};

pub const TOOL: &str = concat!("cpbnr ", env!("CARGO_PKG_VERSION"));

/// Slack allowed on `|I| ≤ 1` and `N² ≤ 1` before a run is declared
/// inconsistent.
pub const CONSISTENCY_SLACK: f64 = 1e-9;

#[derive(Debug, Error)]
pub enum RunError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Integration(#[from] IntegrationError),
    #[error(transparent)]
    Observable(#[from] ObservableError),
    #[error(transparent)]
    Spectrum(#[from] SpectrumError),
    #[error("internal consistency check failed: {0}")]
    Consistency(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
}

fn io_err(path: &Path) -> impl FnOnce(io::Error) -> RunError + '_ {
    move |source| RunError::Io {
        path: path.to_path_buf(),
        source,
    }
}

/// Result of [`run`].
#[derive(Debug, Clone)]
pub struct RunReport {
    pub series: ObservableSeries,
    pub spectrum: Option<SpectrumResult>,
    pub observables_path: PathBuf,
    pub spectrum_path: Option<PathBuf>,
    pub manifest_path: PathBuf,
    pub warnings: Vec<String>,
}

/// Evolves the configured system and returns its observables, without
/// touching the filesystem.
pub fn simulate(cfg: &RunConfig) -> Result<(ObservableSeries, Option<SpectrumResult>), RunError> {
    let cat = cat_coefficients(cfg.model.alpha, cfg.model.n_max)?;
    let states = evolve_state(&cfg.model, &cfg.profile, &cfg.integrator, &cat)?;
    let series = series_with(&states, cfg.observables)?;
    check_consistency(&series)?;
    let spectrum = if cfg.spectrum.enabled {
        Some(power_spectrum_of(
            &series.tau,
            &series.entropy,
            &cfg.spectrum.grid(),
            cfg.spectrum.options,
        )?)
    } else {
        None
    };
    Ok((series, spectrum))
}

fn check_consistency(series: &ObservableSeries) -> Result<(), RunError> {
    for (k, &tau) in series.tau.iter().enumerate() {
        let (s, i, n) = (series.entropy[k], series.inversion[k], series.norm2[k]);
        if !(0.0..=std::f64::consts::LN_2).contains(&s) {
            return Err(RunError::Consistency(format!("entropy {s} out of range at tau = {tau}")));
        }
        if !(i.abs() <= 1.0 + CONSISTENCY_SLACK) {
            return Err(RunError::Consistency(format!("inversion {i} out of range at tau = {tau}")));
        }
        if !(n > 0.0 && n <= 1.0 + CONSISTENCY_SLACK) {
            return Err(RunError::Consistency(format!("squared norm {n} out of range at tau = {tau}")));
        }
    }
    Ok(())
}

pub fn observables_csv(series: &ObservableSeries) -> String {
    let mut out = String::from("tau,entropy,inversion,norm2\n");
    for k in 0..series.len() {
        let _ = writeln!(
            out,
            "{:.16e},{:.16e},{:.16e},{:.16e}",
            series.tau[k], series.entropy[k], series.inversion[k], series.norm2[k]
        );
    }
    out
}

pub fn spectrum_csv(spectrum: &SpectrumResult) -> String {
    let mut out = String::from("omega,ps_re,ps_im,ps_abs,ps_norm\n");
    for k in 0..spectrum.omega_grid.len() {
        let z = spectrum.ps_complex[k];
        let _ = writeln!(
            out,
            "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}",
            spectrum.omega_grid[k], z.re, z.im, spectrum.ps_abs[k], spectrum.ps_normalized[k]
        );
    }
    out
}

fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

fn write_file(path: &Path, contents: &str) -> Result<(), RunError> {
    fs::write(path, contents).map_err(io_err(path))
}

/// Manifest text for a run whose outputs have the given `(file, sha256)`.
pub fn manifest_text(cfg: &RunConfig, outputs: &[(String, String)], warnings: &[String]) -> String {
    let mut m = String::new();
    let _ = writeln!(m, "# cpbnr run manifest");
    let _ = writeln!(m, "# tool: {TOOL}");
    if let Some(name) = &cfg.preset {
        let caption = presets::find(name).map(|p| p.caption).unwrap_or("");
        let _ = writeln!(m, "# preset: {name} ({caption})");
    }
    for o in &cfg.preset_overrides {
        let _ = writeln!(m, "# preset override: {o}");
    }
    if !cfg.defaulted.is_empty() {
        let _ = writeln!(m, "# defaults applied: {}", cfg.defaulted.join(", "));
    }
    for w in warnings {
        let _ = writeln!(m, "# warning: {w}");
    }
    for (file, sum) in outputs {
        let _ = writeln!(m, "# output: {file} sha256={sum}");
    }
    m.push_str(&cfg.to_document());
    m
}

/// Runs the simulation and writes the CSV files and manifest.
pub fn run(cfg: &RunConfig) -> Result<RunReport, RunError> {
    let warnings = cfg.warnings();
    let (series, spectrum) = simulate(cfg)?;

    let dir = &cfg.output.dir;
    fs::create_dir_all(dir).map_err(io_err(dir))?;
    let stem = &cfg.output.stem;
    let mut outputs = Vec::new();

    let obs_name = format!("{stem}_observables.csv");
    let observables_path = dir.join(&obs_name);
    let text = observables_csv(&series);
    write_file(&observables_path, &text)?;
    outputs.push((obs_name, sha256_hex(text.as_bytes())));

    let spectrum_path = match &spectrum {
        Some(ps) => {
            let name = format!("{stem}_spectrum.csv");
            let path = dir.join(&name);
            let text = spectrum_csv(ps);
            write_file(&path, &text)?;
            outputs.push((name, sha256_hex(text.as_bytes())));
            Some(path)
        }
        None => None,
    };

    let manifest_path = dir.join(format!("{stem}_manifest.txt"));
    write_file(&manifest_path, &manifest_text(cfg, &outputs, &warnings))?;

    Ok(RunReport {
        series,
        spectrum,
        observables_path,
        spectrum_path,
        manifest_path,
        warnings,
    })
}

/// One point of a sweep.
#[derive(Debug)]
pub struct SweepPoint {
    pub value: Value,
    pub dir: PathBuf,
    pub outcome: Result<RunReport, RunError>,
}

#[derive(Debug)]
pub struct SweepReport {
    pub axis: String,
    pub points: Vec<SweepPoint>,
    pub manifest_path: PathBuf,
}

impl SweepReport {
    pub fn failures(&self) -> usize {
        self.points.iter().filter(|p| p.outcome.is_err()).count()
    }
}

/// Checks that `axis` names a numeric key and returns its full path.
pub fn sweep_axis(axis: &str) -> Result<String, ConfigError> {
    let key = config::canonical_key(axis)?;
    match config::KEYS.iter().find(|(k, _)| *k == key) {
        Some((_, config::Kind::Float | config::Kind::Integer)) => Ok(key),
        _ => Err(ConfigError::Invalid {
            key,
            reason: "sweep axis must be a numeric key".into(),
        }),
    }
}

/// Runs `base` once per value of `axis`, each in its own subdirectory of
/// `base.output.dir`, and writes `sweep_manifest.txt` indexing all points.
/// A failing point is recorded and does not stop the remaining ones.
pub fn sweep(base: &RunConfig, axis: &str, values: &[Value]) -> Result<SweepReport, RunError> {
    let axis = sweep_axis(axis)?;
    let root = base.output.dir.clone();
    fs::create_dir_all(&root).map_err(io_err(&root))?;

    let mut points = Vec::with_capacity(values.len());
    for value in values {
        let label = format!("{axis}={}", config::render_value(value));
        let dir = root.join(&label);
        let outcome = base
            .source
            .clone()
            .with_override(&axis, value.clone())
            .and_then(|s| s.with_override("output.dir", Value::String(dir.to_string_lossy().into_owned())))
            .and_then(|s| resolve(&s))
            .map_err(RunError::from)
            .and_then(|cfg| run(&cfg));
        points.push(SweepPoint {
            value: value.clone(),
            dir,
            outcome,
        });
    }

    let mut m = String::new();
    let _ = writeln!(m, "# cpbnr sweep manifest");
    let _ = writeln!(m, "# tool: {TOOL}");
    let _ = writeln!(m, "# axis: {axis}");
    let failed = points.iter().filter(|p| p.outcome.is_err()).count();
    let _ = writeln!(m, "# points: {}, failed: {failed}", points.len());
    for (i, p) in points.iter().enumerate() {
        let v = config::render_value(&p.value);
        match &p.outcome {
            Ok(r) => {
                let rel = r
                    .manifest_path
                    .strip_prefix(&root)
                    .unwrap_or(&r.manifest_path)
                    .to_string_lossy()
                    .into_owned();
                let _ = writeln!(m, "# point {i}: {axis} = {v} ok {rel}");
            }
            Err(e) => {
                let _ = writeln!(m, "# point {i}: {axis} = {v} FAILED {e}");
            }
        }
    }
    m.push_str(&base.to_document());
    let manifest_path = root.join("sweep_manifest.txt");
    write_file(&manifest_path, &m)?;
    Ok(SweepReport {
        axis,
        points,
        manifest_path,
    })
}

/// Runs `f` on a dedicated rayon pool with `threads` workers.
pub fn with_threads<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> T {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .expect("thread pool")
        .install(f)
}
