//! Fock-basis expansion of the even cat state and its truncation.
//!
//! cargo run --example cat_state -- 5

use cpbnr::cat_coefficients;
use cpbnr::model::{cat_tail_weight, default_n_max, minimal_n_max};

fn main() {
    let alpha: f64 = std::env::args()
        .nth(1)
        .map(|a| a.parse().expect("alpha must be a number"))
        .unwrap_or(5.0);
    let n_max = default_n_max(alpha);
    let cat = cat_coefficients(alpha, n_max).expect("default truncation is valid");

    println!("alpha = {alpha}, eta = {:.12}", cat.eta);
    println!("n_max = {n_max} (minimal {})", minimal_n_max(alpha));
    println!("sum F_n^2 = {:.15}", cat.norm_squared());
    println!("dropped tail = {:.3e}", cat_tail_weight(alpha, n_max));
    println!();
    println!("{:>4} {:>22}", "n", "F_n");
    for (n, f) in cat.coeffs.iter().enumerate().step_by(2) {
        if *f > 1e-6 {
            println!("{n:>4} {f:>22.15e}");
        }
    }
}
