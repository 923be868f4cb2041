//! Numerical block evolution against the closed-form amplitudes for
//! constant detuning.

use num_complex::Complex64;

use cpbnr::{analytic_block, cat_coefficients, evolve_block, DetuningProfile, IntegratorConfig, ModelParams};

fn main() {
    let params = ModelParams::with_default_truncation(2000.0, 2000.0, 0.05, 5.0).unwrap();
    let cat = cat_coefficients(params.alpha, params.n_max).unwrap();
    let cfg = IntegratorConfig::default();

    for delta in [0.0, 10.0, 20.0] {
        let profile = DetuningProfile::constant(delta).unwrap();
        let mut worst: f64 = 0.0;
        let mut steps = 0;
        for (n, &f) in cat.coeffs.iter().enumerate().filter(|(_, f)| **f != 0.0) {
            let f = Complex64::new(f, 0.0);
            let sol = evolve_block(n, &params, &profile, &cfg, f).unwrap();
            steps += sol.stats.accepted;
            for &(t, ce, cg) in &sol.samples {
                let (ae, ag) = analytic_block(n, &params, delta, t, f);
                worst = worst.max((ce - ae).norm()).max((cg - ag).norm());
            }
        }
        println!("delta = {delta:>4}: max |numeric - analytic| = {worst:.3e} ({steps} accepted steps)");
    }
}
