//! Single-excitation Rabi oscillation: with the NR in its ground state only
//! the n = 0 block is populated and I(t) = cos(2λ₀t) at resonance.

use cpbnr::{cat_coefficients, evolve_state, inversion, DetuningProfile, IntegratorConfig, ModelParams};

fn main() {
    let params = ModelParams::new(2000.0, 2000.0, 0.0, 0.0, 10).unwrap();
    let cat = cat_coefficients(0.0, params.n_max).unwrap();
    let cfg = IntegratorConfig {
        t_max: 20.0,
        n_samples: 41,
        ..IntegratorConfig::default()
    };
    let states = evolve_state(&params, &DetuningProfile::Zero, &cfg, &cat).unwrap();

    let mut worst: f64 = 0.0;
    println!("{:>6} {:>12} {:>12}", "tau", "I", "cos(2 tau)");
    for s in &states {
        let (i, want) = (inversion(s), (2.0 * s.t).cos());
        worst = worst.max((i - want).abs());
        println!("{:>6.2} {i:>12.8} {want:>12.8}", s.t);
    }
    println!("max deviation {worst:.2e}");
}
