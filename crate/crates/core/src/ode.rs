//! Adaptive Dormand–Prince 5(4) integrator for small complex linear systems.

use num_complex::Complex64;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OdeOptions {
    pub rtol: f64,
    pub atol: f64,
    pub max_steps: usize,
    pub min_step: f64,
}

impl Default for OdeOptions {
    fn default() -> Self {
        Self {
            rtol: 1e-10,
            atol: 1e-300,
            max_steps: 2_000_000,
            min_step: 1e-14,
        }
    }
}

// Dormand–Prince tableau.
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
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;
// b - b̂ (5th order minus embedded 4th order).
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

type State<const N: usize> = [Complex64; N];

fn axpy<const N: usize>(y: &State<N>, h: f64, terms: &[(f64, &State<N>)]) -> State<N> {
    let mut out = *y;
    for (coef, k) in terms {
        let s = h * coef;
        for i in 0..N {
            out[i] += k[i] * s;
        }
    }
    out
}

/// Integrates `y' = f(x, y)` from `x0` through each point of `outputs` (which
/// must be monotone in one direction away from `x0`), returning the state at
/// every output point.
pub fn solve<const N: usize, F>(
    mut f: F,
    x0: f64,
    y0: State<N>,
    outputs: &[f64],
    opts: &OdeOptions,
) -> Result<Vec<State<N>>>
where
    F: FnMut(f64, &State<N>) -> State<N>,
{
    let Some(&last) = outputs.last() else {
        return Ok(Vec::new());
    };
    let dir = if last >= x0 { 1.0 } else { -1.0 };
    let span = (last - x0).abs();
    let mut x = x0;
    let mut y = y0;
    let mut k1 = f(x, &y);
    let mut h = initial_step(span, &y, &k1, opts) * dir;
    let mut steps = 0usize;
    let mut out = Vec::with_capacity(outputs.len());

    for &target in outputs {
        if (target - x) * dir < 0.0 {
            return Err(Error::InvalidParameter("output points must be monotone".into()));
        }
        while (target - x) * dir > 0.0 {
            let remaining = target - x;
            let mut last_step = false;
            if (h * dir) >= (remaining * dir) {
                h = remaining;
                last_step = true;
            }
            let k2 = f(x + C2 * h, &axpy(&y, h, &[(A21, &k1)]));
            let k3 = f(x + C3 * h, &axpy(&y, h, &[(A31, &k1), (A32, &k2)]));
            let k4 = f(x + C4 * h, &axpy(&y, h, &[(A41, &k1), (A42, &k2), (A43, &k3)]));
            let k5 = f(
                x + C5 * h,
                &axpy(&y, h, &[(A51, &k1), (A52, &k2), (A53, &k3), (A54, &k4)]),
            );
            let k6 = f(
                x + h,
                &axpy(&y, h, &[(A61, &k1), (A62, &k2), (A63, &k3), (A64, &k4), (A65, &k5)]),
            );
            let y_new = axpy(&y, h, &[(B1, &k1), (B3, &k3), (B4, &k4), (B5, &k5), (B6, &k6)]);
            let x_new = if last_step { target } else { x + h };
            let k7 = f(x_new, &y_new);

            let mut err_sq = 0.0;
            for i in 0..N {
                let e = (k1[i] * E1 + k3[i] * E3 + k4[i] * E4 + k5[i] * E5 + k6[i] * E6 + k7[i] * E7) * h;
                let scale = opts.atol + opts.rtol * y[i].norm().max(y_new[i].norm());
                err_sq += (e.norm() / scale).powi(2);
            }
            let err = (err_sq / N as f64).sqrt();

            steps += 1;
            if steps > opts.max_steps {
                return Err(Error::TooManySteps(opts.max_steps));
            }
            if !err.is_finite() && !(y_new.iter().all(|z| z.re.is_finite() && z.im.is_finite())) {
                return Err(Error::StepSizeUnderflow { at: x, step: h.abs() });
            }

            let factor = if err == 0.0 {
                5.0
            } else if err.is_finite() {
                (0.9 * err.powf(-0.2)).clamp(0.2, 5.0)
            } else {
                0.2
            };
            if err <= 1.0 {
                x = x_new;
                y = y_new;
                k1 = k7;
                if !last_step {
                    h *= factor;
                } else {
                    // Keep the pre-clamp step size for the next interval.
                    h = (h * factor).abs().max(opts.min_step) * dir;
                }
            } else {
                h *= factor.min(1.0);
                if h.abs() < opts.min_step * x.abs().max(1.0) {
                    return Err(Error::StepSizeUnderflow { at: x, step: h.abs() });
                }
            }
        }
        out.push(y);
    }
    Ok(out)
}

fn initial_step<const N: usize>(span: f64, y: &State<N>, dy: &State<N>, opts: &OdeOptions) -> f64 {
    let ny: f64 = y.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let nd: f64 = dy.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let mut h = if nd > 0.0 && ny > 0.0 {
        0.1 * opts.rtol.powf(0.2) * ny / nd
    } else {
        1e-6 * span.max(1e-12)
    };
    if !(h.is_finite() && h > 0.0) {
        h = 1e-6 * span.max(1e-12);
    }
    h.min(span.max(1e-300))
}
