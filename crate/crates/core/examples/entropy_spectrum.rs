//! Power spectrum of the entropy series and its strongest non-zero peak.

use cpbnr::spectrum::frequency_grid;
use cpbnr::{
    cat_coefficients, evolve_state, power_spectrum, series, DetuningProfile, IntegratorConfig,
    ModelParams,
};

fn main() {
    let params = ModelParams::with_default_truncation(2000.0, 2000.0, 0.05, 5.0).unwrap();
    let cat = cat_coefficients(params.alpha, params.n_max).unwrap();
    let states = evolve_state(
        &params,
        &DetuningProfile::Zero,
        &IntegratorConfig::default(),
        &cat,
    )
    .unwrap();
    let obs = series(&states).unwrap();

    let grid = frequency_grid(0.0, 2.0, 0.005).unwrap();
    let ps = power_spectrum(&obs, &grid).unwrap();
    let (k, _) = ps.peak().unwrap();
    println!("global maximum at omega = {:.3}", grid[k]);

    // skip the zero-frequency lobe, whose width is about 2π/τ_max
    let lobe = 2.0 * std::f64::consts::PI / obs.tau[obs.len() - 1];
    let (j, v) = ps
        .ps_normalized
        .iter()
        .enumerate()
        .filter(|(i, _)| grid[*i] > lobe)
        .fold((0, 0.0), |best, (i, &v)| if v > best.1 { (i, v) } else { best });
    println!("strongest peak above omega = {lobe:.3}: omega = {:.3}, normalized {v:.4}", grid[j]);
    for i in (0..grid.len()).step_by(20) {
        println!("{:>6.3} {:.6}", grid[i], ps.ps_normalized[i]);
    }
}
