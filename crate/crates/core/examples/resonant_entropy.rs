//! Entropy of the CPB at resonance for three damping rates, the
//! collapse/revival of the inversion, and the loss of norm under decay.

use cpbnr::{
    cat_coefficients, evolve_state, series, DetuningProfile, IntegratorConfig, ModelParams,
};

fn main() {
    let cfg = IntegratorConfig::default();
    for gamma in [0.0, 0.01, 0.05] {
        let params = ModelParams::with_default_truncation(2000.0, 2000.0, gamma, 5.0).unwrap();
        let cat = cat_coefficients(params.alpha, params.n_max).unwrap();
        let states = evolve_state(&params, &DetuningProfile::Zero, &cfg, &cat).unwrap();
        let obs = series(&states).unwrap();

        let max_s = obs.entropy.iter().copied().fold(0.0, f64::max);
        let mean_s = obs.entropy.iter().sum::<f64>() / obs.len() as f64;
        let last = obs.len() - 1;
        println!(
            "gamma = {gamma:<5} max S = {max_s:.6}  mean S = {mean_s:.6}  N2(100) = {:.6}",
            obs.norm2[last]
        );
        for k in (0..obs.len()).step_by(200) {
            println!(
                "    tau {:>5.1}  S {:.6}  I {:+.6}",
                obs.tau[k], obs.entropy[k], obs.inversion[k]
            );
        }
    }
    println!("ln 2 = {:.6}", std::f64::consts::LN_2);
}
