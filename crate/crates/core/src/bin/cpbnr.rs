use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use toml::Value;

use cpbnr::cli::{self, config, presets, ConfigSource, RunConfig};

#[derive(Parser)]
#[command(version, about = "Damped Jaynes-Cummings simulator for a Cooper pair box and a nanomechanical resonator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one simulation and write CSV outputs plus a manifest.
    Run(Common),
    /// Run once per value of one numeric key.
    Sweep {
        #[command(flatten)]
        common: Common,
        /// Key to vary, e.g. `model.gamma` or just `gamma`.
        #[arg(long)]
        axis: String,
        /// Comma-separated values; may be empty.
        #[arg(long, default_value = "", allow_hyphen_values = true)]
        values: String,
    },
    /// List the embedded figure presets.
    Presets,
    /// Parse and validate a configuration, then print it resolved.
    Validate(Common),
}

#[derive(Args)]
struct Common {
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    preset: Option<String>,
    #[arg(long)]
    threads: Option<usize>,
    /// Override one key, `key=value`; repeatable.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    sets: Vec<String>,
}

impl Common {
    fn load(&self) -> Result<RunConfig, String> {
        let mut source = match &self.config {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| format!("{}: {e}", path.display()))?;
                ConfigSource::from_document(&text).map_err(|e| e.to_string())?
            }
            None => ConfigSource::default(),
        };
        source.preset = self.preset.clone();
        for spec in &self.sets {
            let (k, v) = config::parse_override(spec).map_err(|e| e.to_string())?;
            source.overrides.push((k, v));
        }
        if let Some(out) = &self.out {
            source.overrides.push((
                "output.dir".into(),
                Value::String(out.to_string_lossy().into_owned()),
            ));
        }
        cli::resolve(&source).map_err(|e| e.to_string())
    }

    fn threads(&self) -> usize {
        self.threads
            .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
            .max(1)
    }
}

fn parse_values(text: &str) -> Vec<Value> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(config::parse_scalar)
        .collect()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Presets => {
            for p in presets::PRESETS {
                println!("{:<6} {}", p.name, p.caption);
            }
            Ok(())
        }
        Command::Validate(common) => common.load().map(|cfg| {
            for w in cfg.warnings() {
                eprintln!("warning: {w}");
            }
            print!("{}", cli::manifest_text(&cfg, &[], &[]));
        }),
        Command::Run(common) => common.load().and_then(|cfg| {
            let report = cli::with_threads(common.threads(), || cli::run(&cfg));
            let report = report.map_err(|e| e.to_string())?;
            for w in &report.warnings {
                eprintln!("warning: {w}");
            }
            println!("{}", report.manifest_path.display());
            Ok(())
        }),
        Command::Sweep {
            common,
            axis,
            values,
        } => common.load().and_then(|cfg| {
            let values = parse_values(&values);
            let report = cli::with_threads(common.threads(), || cli::sweep(&cfg, &axis, &values))
                .map_err(|e| e.to_string())?;
            for p in &report.points {
                if let Err(e) = &p.outcome {
                    eprintln!("{} = {}: {e}", report.axis, config::render_value(&p.value));
                }
            }
            println!("{}", report.manifest_path.display());
            match report.failures() {
                0 => Ok(()),
                n => Err(format!("{n} of {} sweep points failed", report.points.len())),
            }
        }),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
