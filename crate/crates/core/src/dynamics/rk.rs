//! Dormand–Prince 5(4) with PI step-size control and the continuous
//! fourth-order extension for dense output.
//!
//! The state is a fixed-size array of complex numbers. The error norm uses
//! the modulus of each component, so step selection is unchanged when the
//! state is multiplied by a global phase.

use num_complex::Complex64;

const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;

const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const A71: f64 = 35.0 / 384.0;
const A73: f64 = 500.0 / 1113.0;
const A74: f64 = 125.0 / 192.0;
const A75: f64 = -2187.0 / 6784.0;
const A76: f64 = 11.0 / 84.0;

// fifth-order solution minus embedded fourth-order solution
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

const D1: f64 = -12715105075.0 / 11282082432.0;
const D3: f64 = 87487479700.0 / 32700410799.0;
const D4: f64 = -10690763975.0 / 1880347072.0;
const D5: f64 = 701980252875.0 / 199316789632.0;
const D6: f64 = -1453857185.0 / 822651844.0;
const D7: f64 = 69997945.0 / 29380423.0;

const SAFETY: f64 = 0.9;
const BETA: f64 = 0.04;
const EXPO: f64 = 0.2 - BETA * 0.75;
const FAC_MIN: f64 = 0.2;
const FAC_MAX: f64 = 10.0;

/// Tolerances for [`integrate_on_grid`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub rel: f64,
    pub abs: f64,
}

/// Reason an integration stopped early.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepFailure {
    pub t: f64,
    pub h: f64,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Stats {
    pub accepted: usize,
    pub rejected: usize,
    pub rhs_evals: usize,
}

type State<const N: usize> = [Complex64; N];

#[inline]
fn lin<const N: usize>(y: &State<N>, h: f64, terms: &[(f64, &State<N>)]) -> State<N> {
    let mut out = *y;
    for (i, o) in out.iter_mut().enumerate() {
        let mut acc = Complex64::new(0.0, 0.0);
        for &(c, k) in terms {
            acc += k[i] * c;
        }
        *o += acc * h;
    }
    out
}

fn error_norm<const N: usize>(
    err: &State<N>,
    y0: &State<N>,
    y1: &State<N>,
    tol: Tolerances,
) -> f64 {
    let mut sum = 0.0;
    for i in 0..N {
        let sc = tol.abs + tol.rel * y0[i].norm().max(y1[i].norm());
        let e = err[i].norm() / sc;
        sum += e * e;
    }
    (sum / N as f64).sqrt()
}

fn max_abs<const N: usize>(y: &State<N>) -> f64 {
    y.iter().map(|z| z.re.abs().max(z.im.abs())).fold(0.0, f64::max)
}

/// Hairer–Wanner starting step heuristic.
fn initial_step<const N: usize, F>(
    rhs: &mut F,
    t0: f64,
    y0: &State<N>,
    f0: &State<N>,
    tol: Tolerances,
    span: f64,
    stats: &mut Stats,
) -> f64
where
    F: FnMut(f64, &State<N>) -> State<N>,
{
    let scale = |y: &State<N>| tol.abs + tol.rel * max_abs(y);
    let d0 = max_abs(y0) / scale(y0);
    let d1 = max_abs(f0) / scale(y0);
    let h0 = if d0 < 1e-5 || d1 < 1e-5 {
        1e-6
    } else {
        0.01 * d0 / d1
    }
    .min(span);
    let y1 = lin(y0, h0, &[(1.0, f0)]);
    let f1 = rhs(t0 + h0, &y1);
    stats.rhs_evals += 1;
    let mut diff = [Complex64::new(0.0, 0.0); N];
    for i in 0..N {
        diff[i] = f1[i] - f0[i];
    }
    let d2 = max_abs(&diff) / scale(y0) / h0;
    let h1 = if d1.max(d2) <= 1e-15 {
        (h0 * 1e-3).max(1e-6)
    } else {
        (0.01 / d1.max(d2)).powf(0.2)
    };
    (100.0 * h0).min(h1).min(span)
}

/// Integrates `y' = rhs(t, y)` from `grid[0]` to the last grid point and
/// returns the solution at every grid point, evaluated by dense output.
///
/// `grid` must be strictly increasing. Steps are never forced onto grid
/// points except the final one.
pub fn integrate_on_grid<const N: usize, F>(
    mut rhs: F,
    y0: State<N>,
    grid: &[f64],
    tol: Tolerances,
) -> Result<(Vec<State<N>>, Stats), StepFailure>
where
    F: FnMut(f64, &State<N>) -> State<N>,
{
    let mut stats = Stats::default();
    let mut out = Vec::with_capacity(grid.len());
    let Some(&t0) = grid.first() else {
        return Ok((out, stats));
    };
    let t_end = *grid.last().unwrap();
    out.push(y0);
    let mut next = 1;
    if grid.len() == 1 {
        return Ok((out, stats));
    }

    let mut t = t0;
    let mut y = y0;
    let mut k1 = rhs(t, &y);
    stats.rhs_evals += 1;
    let span = t_end - t0;
    let mut h = initial_step(&mut rhs, t, &y, &k1, tol, span, &mut stats);
    let mut fac_old: f64 = 1e-4;
    let mut last_rejected = false;

    while next < grid.len() {
        let h_min = 16.0 * f64::EPSILON * t.abs().max(1.0);
        if !(h >= h_min) || !h.is_finite() {
            return Err(StepFailure { t, h });
        }
        let mut last = false;
        if t + h >= t_end || t_end - (t + h) < h_min {
            h = t_end - t;
            last = true;
        }

        let k2 = rhs(t + C2 * h, &lin(&y, h, &[(A21, &k1)]));
        let k3 = rhs(t + C3 * h, &lin(&y, h, &[(A31, &k1), (A32, &k2)]));
        let k4 = rhs(
            t + C4 * h,
            &lin(&y, h, &[(A41, &k1), (A42, &k2), (A43, &k3)]),
        );
        let k5 = rhs(
            t + C5 * h,
            &lin(&y, h, &[(A51, &k1), (A52, &k2), (A53, &k3), (A54, &k4)]),
        );
        let k6 = rhs(
            t + h,
            &lin(
                &y,
                h,
                &[(A61, &k1), (A62, &k2), (A63, &k3), (A64, &k4), (A65, &k5)],
            ),
        );
        let y_new = lin(
            &y,
            h,
            &[(A71, &k1), (A73, &k3), (A74, &k4), (A75, &k5), (A76, &k6)],
        );
        let t_new = if last { t_end } else { t + h };
        let k7 = rhs(t_new, &y_new);
        stats.rhs_evals += 6;

        let mut err = [Complex64::new(0.0, 0.0); N];
        for i in 0..N {
            err[i] = (k1[i] * E1 + k3[i] * E3 + k4[i] * E4 + k5[i] * E5 + k6[i] * E6 + k7[i] * E7)
                * h;
        }
        let err_norm = error_norm(&err, &y, &y_new, tol);
        if !err_norm.is_finite() {
            h *= FAC_MIN;
            stats.rejected += 1;
            last_rejected = true;
            continue;
        }

        let fac11 = err_norm.powf(EXPO);
        let fac = (fac11 / fac_old.powf(BETA) / SAFETY).clamp(1.0 / FAC_MAX, 1.0 / FAC_MIN);
        let mut h_new = h / fac;

        if err_norm <= 1.0 {
            stats.accepted += 1;
            fac_old = err_norm.max(1e-4);

            // continuous extension coefficients
            let mut r2 = [Complex64::new(0.0, 0.0); N];
            let mut r3 = r2;
            let mut r4 = r2;
            let mut r5 = r2;
            for i in 0..N {
                let ydiff = y_new[i] - y[i];
                let bspl = k1[i] * h - ydiff;
                r2[i] = ydiff;
                r3[i] = bspl;
                r4[i] = ydiff - k7[i] * h - bspl;
                r5[i] = (k1[i] * D1 + k3[i] * D3 + k4[i] * D4 + k5[i] * D5 + k6[i] * D6
                    + k7[i] * D7)
                    * h;
            }
            while next < grid.len() && grid[next] <= t_new {
                if grid[next] == t_new {
                    out.push(y_new);
                } else {
                    let theta = (grid[next] - t) / h;
                    let theta1 = 1.0 - theta;
                    let mut ys = y;
                    for i in 0..N {
                        ys[i] += (r2[i]
                            + (r3[i] + (r4[i] + r5[i] * theta1) * theta) * theta1)
                            * theta;
                    }
                    out.push(ys);
                }
                next += 1;
            }

            if last_rejected {
                h_new = h_new.min(h);
            }
            last_rejected = false;
            t = t_new;
            y = y_new;
            k1 = k7;
            h = h_new;
        } else {
            stats.rejected += 1;
            last_rejected = true;
            h /= (fac11 / SAFETY).min(1.0 / FAC_MIN);
        }
    }
    Ok((out, stats))
}
