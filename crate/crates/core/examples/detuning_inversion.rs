//! Inversion under constant and sinusoidal NR detuning.

use cpbnr::{
    cat_coefficients, evolve_state, series, DetuningProfile, IntegratorConfig, ModelParams,
};

fn main() {
    let params = ModelParams::with_default_truncation(2000.0, 2000.0, 0.05, 5.0).unwrap();
    let cat = cat_coefficients(params.alpha, params.n_max).unwrap();
    let cfg = IntegratorConfig {
        n_samples: 401,
        ..IntegratorConfig::default()
    };
    let profiles = [
        ("constant delta=10", DetuningProfile::constant(10.0).unwrap()),
        ("constant delta=20", DetuningProfile::constant(20.0).unwrap()),
        ("sinusoidal c=20 w'=0.5", DetuningProfile::sinusoidal(20.0, 0.5).unwrap()),
        ("sinusoidal c=60 w'=20", DetuningProfile::sinusoidal(60.0, 20.0).unwrap()),
    ];
    for (label, profile) in &profiles {
        for w in profile.warnings(&params) {
            eprintln!("warning: {w}");
        }
        let states = evolve_state(&params, profile, &cfg, &cat).unwrap();
        let obs = series(&states).unwrap();
        println!("{label}");
        for k in (0..obs.len()).step_by(40) {
            println!("    tau {:>5.1}  I {:+.6}", obs.tau[k], obs.inversion[k]);
        }
    }
}
