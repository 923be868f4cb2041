//! Config-driven runs: a preset, a TOML document and a damping sweep, all
//! written under one output directory.
//!
//! cargo run --release --example figure_sweep -- /tmp/cpbnr-figures

use std::path::PathBuf;

use toml::Value;

use cpbnr::cli::{self, presets, ConfigSource};

fn main() {
    let root: PathBuf = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| std::env::temp_dir().join("cpbnr-figures"));
    let dir = |sub: &str| Value::String(root.join(sub).to_string_lossy().into_owned());

    for p in presets::PRESETS.iter().take(3) {
        println!("{:<6} {}", p.name, p.caption);
    }

    let source = ConfigSource {
        preset: Some("fig6a".into()),
        ..ConfigSource::default()
    }
    .with_override("output.dir", dir("fig6a"))
    .unwrap();
    let report = cli::run(&cli::resolve(&source).unwrap()).unwrap();
    println!("wrote {}", report.manifest_path.display());

    let doc = r#"
        [model]
        gamma = 0.05

        [profile]
        kind = "sinusoidal"
        c = 20
        omega_prime = 0.5

        [integrator]
        tau_max = 60
        n_samples = 1201
    "#;
    let base = cli::resolve(
        &ConfigSource::from_document(doc)
            .unwrap()
            .with_override("output.dir", dir("sweep"))
            .unwrap(),
    )
    .unwrap();
    let values: Vec<Value> = [0.0, 0.01, 0.05].into_iter().map(Value::Float).collect();
    let sweep = cli::with_threads(2, || cli::sweep(&base, "gamma", &values)).unwrap();
    for point in &sweep.points {
        match &point.outcome {
            Ok(r) => {
                let last = r.series.len() - 1;
                println!("  gamma {}: N2(end) = {:.6}", point.value, r.series.norm2[last]);
            }
            Err(e) => println!("  gamma {}: {e}", point.value),
        }
    }
    println!("wrote {}", sweep.manifest_path.display());
}
