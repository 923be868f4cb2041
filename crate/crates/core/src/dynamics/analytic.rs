//! Closed-form block amplitudes for zero or constant detuning.

use num_complex::Complex64;

use crate::model::ModelParams;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Below this value of `|ζ|·t` the quotient `(e^{ζt/4} − e^{−ζt/4})/ζ` is
/// replaced by its Taylor series.
pub const ZETA_SERIES_THRESHOLD: f64 = 1e-8;

/// `(C_{e,n}(t), C_{g,n+1}(t))` for constant detuning `delta`, starting
/// from `(f_n, 0)`.
///
/// With constant detuning the block equations are those of a detuning-free
/// model whose NR frequency is `ω + Δ` and whose coupling is `λ₀(1 + Δ/ω)`,
/// so the closed forms are evaluated with those effective values.
pub fn analytic_block(
    n: usize,
    params: &ModelParams,
    delta: f64,
    t: f64,
    f_n: Complex64,
) -> (Complex64, Complex64) {
    let omega = params.omega + delta;
    let lambda = params.lambda0 * (1.0 + delta / params.omega);
    analytic_amplitudes(n, omega, params.omega0, lambda, params.gamma, t, f_n)
}

/// Closed-form solution with explicit `ω`, `ω₀`, `λ`, `γ`:
///
/// ```text
/// δ = γ + 2iω(1 + 2n)
/// ζ = [γ(γ + 4i(ω₀ − ω)) − 4(ω² + ω₀²) − 16λ²(1 + n) + 8ωω₀]^{1/2}
/// C_{g,n+1} = −(2iλ/ζ) e^{−δt/4} (e^{ζt/4} − e^{−ζt/4}) √(n+1) f_n
/// C_{e,n}   = (i/2ζ) e^{−δt/4} [e^{ζt/4}(iγ + 2ω − iζ − 2ω₀)
///                               − e^{−ζt/4}(iγ + 2ω + iζ − 2ω₀)] f_n
/// ```
///
/// `ζ²` is evaluated as `(γ + 2i(ω₀ − ω))² − 16λ²(1 + n)`, and
/// `C_{e,n}` in the equivalent form
/// `e^{−δt/4}[cosh(ζt/4) + ½ i(iγ + 2ω − 2ω₀) D] f_n` with
/// `D = (e^{ζt/4} − e^{−ζt/4})/ζ`, which stays finite as `ζ → 0`.
pub fn analytic_amplitudes(
    n: usize,
    omega: f64,
    omega0: f64,
    lambda: f64,
    gamma: f64,
    t: f64,
    f_n: Complex64,
) -> (Complex64, Complex64) {
    let np1 = (n + 1) as f64;
    let delta = Complex64::new(gamma, 2.0 * omega * (1.0 + 2.0 * n as f64));
    // γ(γ + 4i(ω₀ − ω)) − 4(ω² + ω₀²) + 8ωω₀ = (γ + 2i(ω₀ − ω))²; the
    // expanded form cancels terms of size ω² and loses γ² entirely
    let shift = Complex64::new(gamma, 2.0 * (omega0 - omega));
    let zeta_sq = shift * shift - 16.0 * lambda * lambda * np1;
    let zeta = zeta_sq.sqrt();
    let x = zeta * (t / 4.0);

    let (d, cosh) = if zeta.norm() * t.abs() < ZETA_SERIES_THRESHOLD {
        let x2 = x * x;
        (t / 2.0 * (1.0 + x2 / 6.0), 1.0 + x2 / 2.0)
    } else {
        let ep = x.exp();
        let em = (-x).exp();
        ((ep - em) / zeta, (ep + em) / 2.0)
    };
    let envelope = (-delta * (t / 4.0)).exp();
    let a = Complex64::new(2.0 * (omega - omega0), gamma);

    let cg = -2.0 * I * lambda * envelope * d * np1.sqrt() * f_n;
    let ce = envelope * (cosh + 0.5 * I * a * d) * f_n;
    (ce, cg)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn initial_condition() {
        let p = ModelParams::new(2000.0, 2000.0, 0.05, 5.0, 75).unwrap();
        for n in [0, 3, 40] {
            let (ce, cg) = analytic_block(n, &p, 10.0, 0.0, c(0.3, -0.1));
            assert!((ce - c(0.3, -0.1)).norm() < 1e-15);
            assert_eq!(cg.norm(), 0.0);
        }
    }

    #[test]
    fn resonant_single_excitation() {
        let p = ModelParams::new(2000.0, 2000.0, 0.0, 0.0, 4).unwrap();
        for &t in &[0.1, 0.7, 1.3, 5.0] {
            let (ce, cg) = analytic_block(0, &p, 0.0, t, c(1.0, 0.0));
            let phase = Complex64::from_polar(1.0, -2000.0 * t / 2.0);
            let want_cg = -I * t.sin() * phase;
            let want_ce = t.cos() * phase;
            assert!((cg - want_cg).norm() < 1e-10, "t={t}");
            assert!((ce - want_ce).norm() < 1e-10, "t={t}");
        }
    }

    #[test]
    fn matches_two_exponential_form() {
        // direct transcription of the two-exponential form, at frequencies
        // where the expanded ζ² does not cancel
        let (n, w, w0, l, g, t) = (4usize, 13.0, 10.0, 1.1, 0.05, 3.3);
        let f = c(0.2, 0.1);
        let np1 = (n + 1) as f64;
        let delta = c(g, 2.0 * w * (1.0 + 2.0 * n as f64));
        let zeta = (c(g, 0.0) * c(g, 4.0 * (w0 - w)) - 4.0 * (w * w + w0 * w0)
            - 16.0 * l * l * np1
            + 8.0 * w * w0)
            .sqrt();
        let env = (-delta * t / 4.0).exp();
        let ep = (zeta * t / 4.0).exp();
        let em = (-zeta * t / 4.0).exp();
        let cg = (1.0 / zeta) * (-2.0 * I * l * env * (ep - em) * np1.sqrt() * f);
        let ce = (1.0 / (2.0 * zeta))
            * (I * env
                * (ep * (I * g + 2.0 * w - I * zeta - 2.0 * w0)
                    - em * (I * g + 2.0 * w + I * zeta - 2.0 * w0))
                * f);
        let (ce2, cg2) = analytic_amplitudes(n, w, w0, l, g, t, f);
        assert!((ce - ce2).norm() < 1e-12);
        assert!((cg - cg2).norm() < 1e-12);
    }

    #[test]
    fn decoupled_limit_decays() {
        let g = 0.05;
        for &t in &[0.0, 1.0, 10.0, 100.0] {
            let (ce, cg) = analytic_amplitudes(7, 2000.0, 2000.0, 0.0, g, t, c(0.4, 0.0));
            assert!((ce.norm() - 0.4 * (-g * t / 2.0).exp()).abs() < 1e-12, "t={t} {ce}");
            assert_eq!(cg.norm(), 0.0);
        }
    }

    #[test]
    fn degenerate_zeta_is_finite() {
        // λ = 0, γ = 0, ω = ω₀ makes ζ exactly zero
        let (ce, cg) = analytic_amplitudes(2, 5.0, 5.0, 0.0, 0.0, 2.0, c(1.0, 0.0));
        assert!(ce.is_finite() && cg.is_finite());
        assert!((ce.norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn norm_conserved_without_damping() {
        let p = ModelParams::new(2000.0, 2000.0, 0.0, 5.0, 75).unwrap();
        for n in [0, 10, 30] {
            for &t in &[0.5, 17.0, 99.0] {
                let (ce, cg) = analytic_block(n, &p, 0.0, t, c(0.3, 0.0));
                assert!((ce.norm_sqr() + cg.norm_sqr() - 0.09).abs() < 1e-12);
            }
        }
    }
}
