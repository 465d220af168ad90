//! `L^p` norms of the test spinors and their residuals.
//!
//! Every field here has a pointwise norm of the form
//!
//! ```text
//! |F(x, e^z)|² = e^{2z Re α} · Σ_j a_j(z) f_j(x),   f = [(Δb)², bΔb, b², |∇b|²],
//! ```
//!
//! so `‖F‖_p^p = ∫∫ e^{z(p Re α − k)} (a(z)·f(x))^{p/2} dx dz` against
//! `dvol = e^{−kz} dx dz`. The `x`-integral over `[−1, 1]^k` is reduced by
//! evenness and the plateau of `b` to ramp boxes `[1/2, 1]^j`.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::quadrature::{integrate, integrate_pieces, pairwise_sum, QuadOptions};
use crate::spectral_region::Exponent;

use super::profiles::{bump_1d, bump_from_factors, Cutoff, SMOOTHSTEP5_MAX_CURVATURE, SMOOTHSTEP5_MAX_SLOPE};
use super::{dirac_residual, ResidualDecomposition, WeylConfig};

/// Relative accuracy demanded of every `L^p` norm.
const NORM_RTOL: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Field {
    TestSpinor,
    Residual,
    ResidualSquared,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct WeylRatio {
    pub ratio: f64,
    pub analytic_bound: f64,
    pub residual_norm: f64,
    pub spinor_norm: f64,
    /// Change of the ratio under grid doubling (sup norms only).
    pub refinement_change: Option<f64>,
}

type Features = [f64; 4];

fn features(q: &[(f64, f64, f64)]) -> Features {
    let b = bump_from_factors(q);
    [b.laplacian * b.laplacian, b.value * b.laplacian, b.value * b.value, b.grad_sq]
}

fn dot(a: &Features, f: &Features) -> f64 {
    // Rounding can push an exact zero slightly negative.
    (a[0] * f[0] + a[1] * f[1] + a[2] * f[2] + a[3] * f[3]).max(0.0)
}

/// `a(z)` for the given field (without the `e^{2z Re α}` factor).
fn z_coefficients(field: Field, r: &ResidualDecomposition, cutoff: &Cutoff, z: f64) -> Features {
    let (c, d1, d2) = cutoff.eval(z);
    let e2 = (2.0 * z).exp();
    match field {
        Field::TestSpinor => [0.0, 0.0, c * c, 0.0],
        Field::Residual => {
            let s = r.cutoff_coefficient * d1 + r.eigen_coefficient * c;
            [0.0, 0.0, s.norm_sqr(), e2 * c * c * r.gradient_coefficient.norm_sqr()]
        }
        Field::ResidualSquared => {
            let q: Complex64 = d2 + r.squared_first_order_coefficient * d1 + r.squared_eigen_coefficient * c;
            [
                e2 * e2 * c * c,
                2.0 * e2 * c * q.re,
                q.norm_sqr(),
                e2 * c * c * r.squared_gradient_coefficient.norm_sqr(),
            ]
        }
    }
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// `∫_{[−1,1]^k} g(features(x)) dx` for `g` vanishing outside `supp b`.
/// Each ramp box `[1/2, 1]^j` is reduced to its sorted simplex.
fn bump_integral(k: usize, rtol: f64, g: &mut dyn FnMut(&Features) -> f64) -> Result<f64> {
    let mut terms = Vec::with_capacity(k + 1);
    for j in 0..=k {
        let mut buf = vec![(1.0, 0.0, 0.0); j];
        let simplex = ramp_simplex(0, 0.5, &mut buf, rtol, g)?;
        let factorial: f64 = (1..=j).map(|i| i as f64).product();
        terms.push(binomial(k, j) * 0.5f64.powi((k - j) as i32) * factorial * simplex);
    }
    Ok(2f64.powi(k as i32) * pairwise_sum(&terms))
}

fn ramp_simplex(
    level: usize,
    lower: f64,
    buf: &mut Vec<(f64, f64, f64)>,
    rtol: f64,
    g: &mut dyn FnMut(&Features) -> f64,
) -> Result<f64> {
    if level == buf.len() {
        return Ok(g(&features(buf)));
    }
    let opts = QuadOptions { rtol, atol: 0.0, max_intervals: 200 };
    let mut failure = None;
    let r = integrate(
        |x| {
            buf[level] = bump_1d(x);
            match ramp_simplex(level + 1, x, buf, rtol, g) {
                Ok(v) => v,
                Err(e) => {
                    failure.get_or_insert(e);
                    0.0
                }
            }
        },
        lower,
        1.0,
        &opts,
    );
    if let Some(e) = failure {
        return Err(e);
    }
    check(r.value, r.error, r.converged)
}

fn check(value: f64, error: f64, converged: bool) -> Result<f64> {
    if !value.is_finite() {
        return Err(Error::NonIntegrable(format!("integral evaluated to {value}")));
    }
    if !converged && error > NORM_RTOL * value.abs() {
        return Err(Error::QuadratureTolerance { value, error });
    }
    Ok(value)
}

/// `‖F‖_p^p` for finite `p`.
fn lp_norm_pow(config: &WeylConfig, field: Field, r: &ResidualDecomposition, p: f64) -> Result<f64> {
    let cutoff = config.cutoff();
    let breaks = cutoff.breakpoints();
    let w = config.weight_exponent();
    let zopts = QuadOptions { rtol: config.quadrature.rtol, atol: 0.0, max_intervals: 400 };
    let xrtol = config.quadrature.rtol * 100.0;

    if field == Field::TestSpinor {
        // Separable: (∫ b^p) (∫ c^p e^{wz}).
        let bx = bump_integral(config.k as usize, xrtol, &mut |f| f[2].powf(p / 2.0))?;
        let cz = cutoff_norm_pow(config.n, p, 0, w)?;
        return Ok(bx * cz);
    }

    let mut failure = None;
    let value = bump_integral(config.k as usize, xrtol, &mut |f| {
        let zr = integrate_pieces(
            |z| {
                let a = z_coefficients(field, r, &cutoff, z);
                (w * z).exp() * dot(&a, f).powf(p / 2.0)
            },
            &breaks,
            &zopts,
        );
        match check(zr.value, zr.error, zr.converged) {
            Ok(v) => v,
            Err(e) => {
                failure.get_or_insert(e);
                0.0
            }
        }
    })?;
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(value)
}

/// `∫ |c_n^{(order)}(z)|^p e^{wz} dz` over the support of the cutoff.
pub fn cutoff_norm_pow(n: u32, p: f64, order: usize, weight_exponent: f64) -> Result<f64> {
    if order > 2 {
        return Err(Error::InvalidParameter(format!("cutoff derivative order {order} > 2")));
    }
    if !(p >= 1.0 && p.is_finite()) {
        return Err(Error::InvalidParameter(format!("p must lie in [1, ∞), got {p}")));
    }
    let cutoff = Cutoff::new(f64::from(n));
    let opts = QuadOptions { rtol: 1e-12, atol: 0.0, max_intervals: 400 };
    let r = integrate_pieces(
        |z| {
            let d = cutoff.eval(z);
            let v = [d.0, d.1, d.2][order].abs();
            v.powf(p) * (weight_exponent * z).exp()
        },
        &cutoff.breakpoints(),
        &opts,
    );
    check(r.value, r.error, r.converged)
}

/// Sorted `k`-tuples from `grid` (the features are symmetric in `x`).
fn sorted_tuples(grid: &[f64], k: usize) -> Vec<Vec<f64>> {
    let mut out = Vec::new();
    let mut idx = vec![0usize; k];
    loop {
        out.push(idx.iter().map(|&i| grid[i]).collect());
        let mut pos = k;
        while pos > 0 && idx[pos - 1] == grid.len() - 1 {
            pos -= 1;
        }
        if pos == 0 {
            return out;
        }
        let v = idx[pos - 1] + 1;
        for slot in idx.iter_mut().skip(pos - 1) {
            *slot = v;
        }
    }
}

fn grid(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    (0..points).map(|i| lo + (hi - lo) * i as f64 / (points - 1) as f64).collect()
}

/// Grid supremum of `|F|` over `[1/2, 1]^k × supp c_n`; `x = 1/2` stands in
/// for the plateau of `b`.
fn sup_norm_on_grid(
    config: &WeylConfig,
    field: Field,
    r: &ResidualDecomposition,
    points_x: usize,
    points_z: usize,
) -> f64 {
    let k = config.k as usize;
    let feats: Vec<Features> = sorted_tuples(&grid(0.5, 1.0, points_x.max(2)), k)
        .iter()
        .map(|x| features(&x.iter().map(|&xi| bump_1d(xi)).collect::<Vec<_>>()))
        .collect();
    let cutoff = config.cutoff();
    let br = cutoff.breakpoints();
    let mut best = 0.0f64;
    for piece in br.windows(2) {
        for z in grid(piece[0], piece[1], points_z.max(2)) {
            let a = z_coefficients(field, r, &cutoff, z);
            let m = feats.iter().map(|f| dot(&a, f)).fold(0.0, f64::max);
            best = best.max((config.alpha.re * z).exp() * m.sqrt());
        }
    }
    best
}

/// `‖F‖_p` for the given field.
pub fn lp_norm(config: &WeylConfig, field: Field) -> Result<f64> {
    let r = dirac_residual(config)?;
    match config.p {
        Exponent::Finite(p) => Ok(lp_norm_pow(config, field, &r, p)?.powf(1.0 / p)),
        Exponent::Infinity => {
            let q = config.quadrature;
            Ok(sup_norm_on_grid(config, field, &r, q.sup_points_x, q.sup_points_z))
        }
    }
}

fn ratio_for(config: &WeylConfig, field: Field, bound: f64) -> Result<WeylRatio> {
    let r = dirac_residual(config)?;
    match config.p {
        Exponent::Finite(p) => {
            let num = lp_norm_pow(config, field, &r, p)?.powf(1.0 / p);
            let den = lp_norm_pow(config, Field::TestSpinor, &r, p)?.powf(1.0 / p);
            Ok(WeylRatio {
                ratio: num / den,
                analytic_bound: bound,
                residual_norm: num,
                spinor_norm: den,
                refinement_change: None,
            })
        }
        Exponent::Infinity => {
            let q = config.quadrature;
            let coarse = sup_norm_on_grid(config, field, &r, q.sup_points_x, q.sup_points_z)
                / sup_norm_on_grid(config, Field::TestSpinor, &r, q.sup_points_x, q.sup_points_z);
            let fx = 2 * q.sup_points_x - 1;
            let fz = 2 * q.sup_points_z - 1;
            let num = sup_norm_on_grid(config, field, &r, fx, fz);
            let den = sup_norm_on_grid(config, Field::TestSpinor, &r, fx, fz);
            let ratio = num / den;
            Ok(WeylRatio {
                ratio,
                analytic_bound: bound,
                residual_norm: num,
                spinor_norm: den,
                refinement_change: Some((ratio - coarse).abs() / ratio.abs().max(f64::MIN_POSITIVE)),
            })
        }
    }
}

/// Constants of the frozen bump: `C₁ = ‖∇b‖_p/‖b‖_p` and the upper bound
/// `C_Δ = k ‖q''‖_p/‖q‖_p ≥ ‖Δb‖_p/‖b‖_p`.
pub fn bump_constants(k: u32, p: Exponent) -> Result<(f64, f64)> {
    let kf = f64::from(k);
    let k = k as usize;
    match p {
        Exponent::Finite(p) => {
            let rtol = 1e-9;
            let b = bump_integral(k, rtol, &mut |f| f[2].powf(p / 2.0))?;
            let g = bump_integral(k, rtol, &mut |f| f[3].powf(p / 2.0))?;
            let opts = QuadOptions { rtol, atol: 0.0, max_intervals: 2000 };
            let q = integrate(|x| bump_1d(x).0.powf(p), 0.5, 1.0, &opts);
            let q2 = integrate(|x| bump_1d(x).2.abs().powf(p), 0.5, 1.0, &opts);
            let q = check(0.5 + q.value, q.error, q.converged)?;
            let q2 = check(q2.value, q2.error, q2.converged)?;
            Ok(((g / b).powf(1.0 / p), kf * (q2 / q).powf(1.0 / p)))
        }
        Exponent::Infinity => {
            let points = if k <= 3 { 129 } else { 33 };
            let g = sorted_tuples(&grid(0.5, 1.0, points), k)
                .iter()
                .map(|x| features(&x.iter().map(|&xi| bump_1d(xi)).collect::<Vec<_>>())[3])
                .fold(0.0, f64::max)
                .sqrt();
            let q2 = grid(0.5, 1.0, 100_001).iter().map(|&x| bump_1d(x).2.abs()).fold(0.0, f64::max);
            Ok((g, kf * q2))
        }
    }
}

fn two_pow_inv_p(p: Exponent) -> f64 {
    2f64.powf(p.reciprocal())
}

/// `‖(D − μ)Φ_n‖_p / ‖Φ_n‖_p` with the bound
/// `C₁ e^{−n} + 2^{1/p} (15/8)/n` (`C₁ = ‖∇b‖_p/‖b‖_p`), plus `|E|` when
/// `α` does not cancel the zeroth-order term.
pub fn weyl_ratio(config: &WeylConfig) -> Result<WeylRatio> {
    let r = dirac_residual(config)?;
    let (c1, _) = bump_constants(config.k, config.p)?;
    let n = f64::from(config.n);
    let bound = c1 * (-n).exp() + two_pow_inv_p(config.p) * SMOOTHSTEP5_MAX_SLOPE / n + r.eigen_coefficient.norm();
    ratio_for(config, Field::Residual, bound)
}

/// `‖(D² − μ²)Φ_n‖_p / ‖Φ_n‖_p` with the bound
/// `C_Δ e^{−2n} + C₁ e^{−n} + 2^{1/p} (M₂/n² + |2α − k| M₁/n)`.
pub fn weyl_ratio_squared(config: &WeylConfig) -> Result<WeylRatio> {
    let r = dirac_residual(config)?;
    let (c1, cl) = bump_constants(config.k, config.p)?;
    let n = f64::from(config.n);
    let bound = cl * (-2.0 * n).exp()
        + c1 * (-n).exp()
        + two_pow_inv_p(config.p)
            * (SMOOTHSTEP5_MAX_CURVATURE / (n * n) + r.squared_first_order_coefficient.norm() * SMOOTHSTEP5_MAX_SLOPE / n)
        + r.squared_eigen_coefficient.norm();
    ratio_for(config, Field::ResidualSquared, bound)
}

/// CSV sweep report with columns `n,p,s,sign,ratio,analytic_bound`.
pub fn sweep_csv(rows: &[(WeylConfig, WeylRatio)]) -> String {
    let mut out = String::from("n,p,s,sign,ratio,analytic_bound\n");
    for (c, w) in rows {
        out.push_str(&format!("{},{},{},{},{:.12e},{:.12e}\n", c.n, c.p, c.s, c.sign, w.ratio, w.analytic_bound));
    }
    out
}
