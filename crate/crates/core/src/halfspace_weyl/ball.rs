//! The ball-model integral `∫₀¹ (1 − r²)^e r^k dr`, `e = −k − 1 + kp/2`,
//! which decides whether the constant spinor pulled back by the conformal
//! factor `2/(1 − |x|²)` lies in `L^p`.
//!
//! With `u = 1 − r = e^w` the integrand becomes
//! `e^{w(e+1)} (2 − u)^e (1 − u)^k dw` on `(−∞, 0]`. Refinement level `j`
//! integrates down to `w = −2^j`; the integral is declared divergent when
//! the last three levels each grow by more than 5%, and finite when the
//! last level changes the value by at most 1%.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::quadrature::{integrate, QuadOptions};

pub const DEFAULT_REFINEMENT: usize = 10;

const DIVERGENCE_GROWTH: f64 = 0.05;
const STABILITY: f64 = 0.01;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "classification", rename_all = "snake_case")]
pub enum BallOutcome {
    Finite { value: f64 },
    Divergent,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BallIntegral {
    pub k: u32,
    pub p: f64,
    pub exponent: f64,
    /// Endpoint exponent read off the integrand's log-log slope at `r → 1`.
    pub estimated_exponent: f64,
    /// Truncated integrals, one per refinement level.
    pub levels: Vec<f64>,
    #[serde(flatten)]
    pub outcome: BallOutcome,
}

impl BallIntegral {
    pub fn is_finite(&self) -> bool {
        matches!(self.outcome, BallOutcome::Finite { .. })
    }

    pub fn value(&self) -> Option<f64> {
        match self.outcome {
            BallOutcome::Finite { value } => Some(value),
            BallOutcome::Divergent => None,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("ball integral serializes")
    }
}

fn integrand_u(u: f64, e: f64, k: u32) -> f64 {
    (u * (2.0 - u)).powf(e) * (1.0 - u).powi(k as i32)
}

pub fn ball_harmonic_integral(k: u32, p: f64, refinement: usize) -> Result<BallIntegral> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be positive".into()));
    }
    if !(p >= 1.0 && p.is_finite()) {
        return Err(Error::InvalidParameter(format!("p must lie in [1, ∞), got {p}")));
    }
    if refinement < 4 {
        return Err(Error::InvalidParameter(format!("refinement must be at least 4, got {refinement}")));
    }
    let kf = f64::from(k);
    let e = -kf - 1.0 + kf * p / 2.0;

    let (u1, u2) = (1e-10, 1e-12);
    let estimated_exponent =
        (integrand_u(u1, e, k).ln() - integrand_u(u2, e, k).ln()) / (u1.ln() - u2.ln());

    let f = |w: f64| {
        let u = w.exp();
        (w * (e + 1.0) + e * (2.0 - u).ln()).exp() * (1.0 - u).powi(k as i32)
    };
    let opts = QuadOptions { rtol: 1e-13, atol: 0.0, max_intervals: 2000 };
    let mut levels = Vec::with_capacity(refinement);
    let mut total = 0.0;
    let mut upper = 0.0;
    for j in 0..refinement {
        let lower = -(2f64.powi(j as i32));
        let r = integrate(f, lower, upper, &opts);
        total += r.value;
        upper = lower;
        levels.push(total);
        if !total.is_finite() {
            break;
        }
    }

    let n = levels.len();
    let growth = |i: usize| {
        let (a, b) = (levels[i - 1], levels[i]);
        if b.is_finite() { (b - a) / a.abs() } else { f64::INFINITY }
    };
    let diverging = n >= 4 && (n - 3..n).all(|i| growth(i) > DIVERGENCE_GROWTH);
    let outcome = if diverging || !levels[n - 1].is_finite() {
        BallOutcome::Divergent
    } else if growth(n - 1).abs() <= STABILITY {
        BallOutcome::Finite { value: levels[n - 1] }
    } else {
        return Err(Error::QuadratureTolerance { value: levels[n - 1], error: levels[n - 1] - levels[n - 2] });
    };
    Ok(BallIntegral { k, p, exponent: e, estimated_exponent, levels, outcome })
}
