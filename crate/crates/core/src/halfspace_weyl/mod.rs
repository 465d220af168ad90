//! Weyl sequences on the half-space model of `H^{k+1}`.
//!
//! With `g = y^{−2}(dx² + dy²)`, orthonormal frame `e_i = y∂_i`, `e_y = y∂_y`,
//! the Dirac operator acts on frame components as
//!
//! ```text
//! D φ = Σ_i y e_i·∂_i φ + y e_y·∂_y φ − (k/2) e_y·φ.
//! ```
//!
//! The test spinors are `Φ_n = b(x) c_n(log y) y^α ψ₀` with `e_y·ψ₀ = σ i ψ₀`,
//! `μ = s + σ i k(1/p − 1/2)` on the boundary of the strip and
//! `α = k/p − σ i s`, which kills the zeroth-order term of `(D − μ)Φ_n` and
//! makes the volume weight `y^{p Re α − k − 1}` collapse to `dz` in `z = log y`.

mod ball;
mod norms;
pub mod profiles;

pub use ball::{ball_harmonic_integral, BallIntegral, BallOutcome, DEFAULT_REFINEMENT};
pub use norms::{
    bump_constants, cutoff_norm_pow, lp_norm, sweep_csv, weyl_ratio, weyl_ratio_squared, Field, WeylRatio,
};

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::clifford::{build_rep, CliffordRep, Spinor};
use crate::error::{Error, Result};
use crate::spectral_region::Exponent;

use profiles::{bump, bump_gradient, Cutoff};

pub const MAX_K: u32 = 6;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Quadrature and grid resolution for the Weyl-ratio computations.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct QuadratureSpec {
    /// Relative tolerance of the innermost (z) integrals.
    pub rtol: f64,
    /// Grid points per ramp coordinate for sup norms.
    pub sup_points_x: usize,
    /// Grid points per cutoff piece for sup norms.
    pub sup_points_z: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self { rtol: 1e-10, sup_points_x: 17, sup_points_z: 401 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct WeylConfig {
    pub k: u32,
    pub p: Exponent,
    pub s: f64,
    pub sign: i8,
    pub n: u32,
    pub alpha: Complex64,
    pub quadrature: QuadratureSpec,
}

impl WeylConfig {
    /// Boundary point `μ = s + σ i k(1/p − 1/2)` with the cancelling
    /// exponent `α = k/p − σ i s`.
    pub fn new(k: u32, p: Exponent, s: f64, sign: i8, n: u32) -> Result<Self> {
        if k == 0 || k > MAX_K {
            return Err(Error::InvalidParameter(format!("k must lie in 1..={MAX_K}, got {k}")));
        }
        if sign != 1 && sign != -1 {
            return Err(Error::InvalidParameter(format!("sign must be ±1, got {sign}")));
        }
        if n == 0 {
            return Err(Error::InvalidParameter("cutoff scale n must be positive".into()));
        }
        if !s.is_finite() {
            return Err(Error::InvalidParameter(format!("s must be finite, got {s}")));
        }
        let kf = f64::from(k);
        let alpha = Complex64::new(kf * p.reciprocal(), -f64::from(sign) * s);
        Ok(Self { k, p, s, sign, n, alpha, quadrature: QuadratureSpec::default() })
    }

    /// Replaces `α`; the residual then keeps a zeroth-order term.
    pub fn with_alpha(self, alpha: Complex64) -> Self {
        Self { alpha, ..self }
    }

    pub fn with_n(self, n: u32) -> Self {
        Self { n, ..self }
    }

    pub fn with_quadrature(self, quadrature: QuadratureSpec) -> Self {
        Self { quadrature, ..self }
    }

    pub fn mu(&self) -> Complex64 {
        let kf = f64::from(self.k);
        Complex64::new(self.s, f64::from(self.sign) * kf * (self.p.reciprocal() - 0.5))
    }

    pub fn cutoff(&self) -> Cutoff {
        Cutoff::new(f64::from(self.n))
    }

    /// `p Re α − k`: exponent of the `z`-weight `e^{z(p Re α − k)}` (0 for
    /// the cancelling choice, `p < ∞`).
    pub fn weight_exponent(&self) -> f64 {
        match self.p {
            Exponent::Finite(p) => p * self.alpha.re - f64::from(self.k),
            Exponent::Infinity => 0.0,
        }
    }
}

/// Coefficients of the three terms of `(D − μ)Φ_n`,
///
/// ```text
/// y^α [ y c_n Σ ∂_i b · e_i·ψ₀  +  σ i b c_n' ψ₀  +  (σ i α − σ i k/2 − μ) b c_n ψ₀ ],
/// ```
///
/// and of `(D² − μ²)Φ_n`,
///
/// ```text
/// −y^α [ y² c_n Δb ψ₀ + σ i y c_n Σ ∂_i b · e_i·ψ₀
///        + b (c_n'' + (2α − k) c_n' + (α(α−1) − (k−1)α + k²/4 + μ²) c_n) ψ₀ ],
/// ```
///
/// together with the spinors `ψ₀, e_i·ψ₀` realised in a concrete Clifford
/// module (`e_y = γ_1`, `e_i = γ_{i+1}`).
#[derive(Clone, Debug)]
pub struct ResidualDecomposition {
    pub k: u32,
    pub sign: i8,
    pub mu: Complex64,
    pub alpha: Complex64,
    pub cutoff: Cutoff,
    pub rep: CliffordRep,
    pub psi0: Spinor,
    pub e_psi0: Vec<Spinor>,
    pub gradient_coefficient: Complex64,
    pub cutoff_coefficient: Complex64,
    pub eigen_coefficient: Complex64,
    pub squared_gradient_coefficient: Complex64,
    pub squared_first_order_coefficient: Complex64,
    pub squared_eigen_coefficient: Complex64,
    /// Gram matrix of `(ψ₀, e_1·ψ₀, …, e_k·ψ₀)`.
    pub gram: DMatrix<Complex64>,
}

pub fn dirac_residual(config: &WeylConfig) -> Result<ResidualDecomposition> {
    let k = config.k as usize;
    let rep = build_rep(k + 1)?;
    let psi0 = rep.eigenspinor(1, config.sign)?;
    let e_psi0: Vec<Spinor> = (2..=k + 1)
        .map(|i| Ok(Spinor(rep.gamma(i)? * &psi0.0)))
        .collect::<Result<_>>()?;

    let mut basis = vec![psi0.clone()];
    basis.extend(e_psi0.iter().cloned());
    let gram = DMatrix::from_fn(k + 1, k + 1, |a, b| basis[a].dot(&basis[b]));

    let sigma_i = I * f64::from(config.sign);
    let alpha = config.alpha;
    let mu = config.mu();
    let kf = f64::from(config.k);
    Ok(ResidualDecomposition {
        k: config.k,
        sign: config.sign,
        mu,
        alpha,
        cutoff: config.cutoff(),
        rep,
        psi0,
        e_psi0,
        gradient_coefficient: Complex64::new(1.0, 0.0),
        cutoff_coefficient: sigma_i,
        eigen_coefficient: sigma_i * alpha - sigma_i * (kf / 2.0) - mu,
        squared_gradient_coefficient: sigma_i,
        squared_first_order_coefficient: alpha * 2.0 - kf,
        squared_eigen_coefficient: alpha * (alpha - 1.0) - (kf - 1.0) * alpha + kf * kf / 4.0 + mu * mu,
        gram,
    })
}

impl ResidualDecomposition {
    /// Largest deviation of the real part of the Gram matrix from the
    /// identity. The `e_i·ψ₀` only enter with a common complex factor times
    /// real weights, so the pointwise norms need just the real part.
    pub fn gram_defect(&self) -> f64 {
        let n = self.gram.nrows();
        let mut worst = 0.0f64;
        for a in 0..n {
            for b in 0..n {
                let target = if a == b { 1.0 } else { 0.0 };
                worst = worst.max((self.gram[(a, b)].re - target).abs());
            }
            if a > 0 {
                worst = worst.max(self.gram[(0, a)].norm());
            }
        }
        worst
    }

    fn combine(&self, scalar: Complex64, grad_coeffs: &[Complex64]) -> Spinor {
        let mut v = &self.psi0.0 * scalar;
        for (e, c) in self.e_psi0.iter().zip(grad_coeffs) {
            v += &e.0 * *c;
        }
        Spinor(v)
    }

    /// `Φ_n(x, e^z)` as a spinor.
    pub fn field_at(&self, x: &[f64], z: f64) -> Spinor {
        let (c, _, _) = self.cutoff.eval(z);
        let ya = (self.alpha * z).exp();
        Spinor(&self.psi0.0 * (ya * bump(x).value * c))
    }

    /// `(D − μ)Φ_n` at `(x, y = e^z)`, assembled from the three terms.
    pub fn residual_at(&self, x: &[f64], z: f64) -> Spinor {
        let (c, d1, _) = self.cutoff.eval(z);
        let b = bump(x).value;
        let grad = bump_gradient(x);
        let y = z.exp();
        let ya = (self.alpha * z).exp();
        let scalar = ya * b * (self.cutoff_coefficient * d1 + self.eigen_coefficient * c);
        let g: Vec<Complex64> = grad.iter().map(|gi| ya * self.gradient_coefficient * (y * c * gi)).collect();
        self.combine(scalar, &g)
    }

    /// `(D² − μ²)Φ_n` at `(x, y = e^z)`.
    pub fn residual_squared_at(&self, x: &[f64], z: f64) -> Spinor {
        let (c, d1, d2) = self.cutoff.eval(z);
        let bp = bump(x);
        let grad = bump_gradient(x);
        let y = z.exp();
        let ya = (self.alpha * z).exp();
        let q = d2 + self.squared_first_order_coefficient * d1 + self.squared_eigen_coefficient * c;
        let scalar = -ya * (y * y * c * bp.laplacian + bp.value * q);
        let g: Vec<Complex64> = grad
            .iter()
            .map(|gi| -ya * self.squared_gradient_coefficient * (y * c * gi))
            .collect();
        self.combine(scalar, &g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn config(k: u32, p: f64, s: f64, sign: i8, n: u32) -> WeylConfig {
        WeylConfig::new(k, Exponent::new(p).unwrap(), s, sign, n).unwrap()
    }

    /// Applies `D` from its frame formula with central differences in `(x, y)`.
    fn fd_dirac(rep: &CliffordRep, f: &dyn Fn(&[f64], f64) -> Spinor, x: &[f64], y: f64, h: f64) -> Spinor {
        let k = x.len();
        let gy = rep.gamma(1).unwrap();
        let phi = f(x, y);
        let dy = (&f(x, y + h).0 - &f(x, y - h).0) / Complex64::new(2.0 * h, 0.0);
        let mut out = gy * (dy * Complex64::new(y, 0.0)) - gy * (&phi.0 * Complex64::new(k as f64 / 2.0, 0.0));
        for i in 0..k {
            let mut xp = x.to_vec();
            let mut xm = x.to_vec();
            xp[i] += h;
            xm[i] -= h;
            let di = (&f(&xp, y).0 - &f(&xm, y).0) / Complex64::new(2.0 * h, 0.0);
            out += rep.gamma(i + 2).unwrap() * (di * Complex64::new(y, 0.0));
        }
        Spinor(out)
    }

    #[test]
    fn cancelling_alpha_kills_zeroth_order_term() {
        for k in 1..=MAX_K {
            for p in [1.0, 1.5, 2.0, 3.0, f64::INFINITY] {
                for s in [-1.3, 0.0, 0.7] {
                    for sign in [1, -1] {
                        let cfg = config(k, p, s, sign, 2);
                        let r = dirac_residual(&cfg).unwrap();
                        assert!(r.eigen_coefficient.norm() < 1e-12);
                        assert!(r.squared_eigen_coefficient.norm() < 1e-12);
                        assert!(r.gram_defect() < 1e-12);
                        if let Exponent::Finite(pv) = cfg.p {
                            assert!((pv * cfg.alpha.re - f64::from(k)).abs() < 1e-14);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn plateau_residual_vanishes() {
        let cfg = config(3, 1.0, 0.4, 1, 2);
        let r = dirac_residual(&cfg).unwrap();
        let x = [0.1, -0.3, 0.45];
        for z in [-6.0, -5.0, -4.2] {
            let scale = r.field_at(&x, z).norm();
            assert!(r.residual_at(&x, z).norm() <= 1e-14 * scale);
            assert!(r.residual_squared_at(&x, z).norm() <= 1e-14 * scale);
        }
    }

    #[test]
    fn residual_matches_finite_differences() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for (k, p, s, sign) in [(3, 1.0, 0.0, 1), (2, 1.5, 0.8, -1), (1, 3.0, -0.5, 1), (3, f64::INFINITY, 1.0, -1)] {
            let cfg = config(k, p, s, sign, 1);
            let r = dirac_residual(&cfg).unwrap();
            let mu = r.mu;
            let field = |x: &[f64], y: f64| r.field_at(x, y.ln());
            for _ in 0..10 {
                let x: Vec<f64> = (0..k).map(|_| rng.gen_range(-0.95..0.95)).collect();
                let z: f64 = rng.gen_range(-3.9..-1.1);
                let y = z.exp();
                let want = r.residual_at(&x, z);
                let scale = want.norm().max(r.field_at(&x, z).norm()).max(1e-300);
                let mut errs = Vec::new();
                for h in [1e-3 * y.min(0.05), 0.5e-3 * y.min(0.05)] {
                    let d = fd_dirac(&r.rep, &field, &x, y, h);
                    let got = &d.0 - &(&r.field_at(&x, z).0 * mu);
                    errs.push((got - &want.0).norm() / scale);
                }
                assert!(errs[1] < 1e-5, "k={k} err={errs:?}");
                // second order: halving h cuts the error roughly fourfold
                if errs[0] > 1e-9 {
                    assert!(errs[0] / errs[1] > 3.0, "{errs:?}");
                }
            }
        }
    }

    #[test]
    fn squared_residual_matches_iterated_finite_differences() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for (k, p, s, sign) in [(3, 1.0, 1.0, 1), (2, 4.0, -0.3, -1), (1, 1.0, 0.0, -1)] {
            let cfg = config(k, p, s, sign, 1);
            let r = dirac_residual(&cfg).unwrap();
            let mu = r.mu;
            for _ in 0..10 {
                let x: Vec<f64> = (0..k).map(|_| rng.gen_range(-0.95..0.95)).collect();
                let z: f64 = rng.gen_range(-3.9..-1.1);
                let y = z.exp();
                let h = 1e-4 * y.min(0.05);
                let field = |x: &[f64], y: f64| r.field_at(x, y.ln());
                let d_field = |x: &[f64], y: f64| fd_dirac(&r.rep, &field, x, y, h);
                let dd = fd_dirac(&r.rep, &d_field, &x, y, h);
                let got = &dd.0 - &(&r.field_at(&x, z).0 * (mu * mu));
                let want = r.residual_squared_at(&x, z);
                let scale = want.norm().max(r.field_at(&x, z).norm());
                assert!((got - &want.0).norm() / scale < 1e-4, "k={k} x={x:?} z={z}");
            }
        }
    }

    #[test]
    fn pointwise_norm_is_orthogonal_sum() {
        let cfg = config(3, 1.0, 0.5, -1, 1);
        let r = dirac_residual(&cfg).unwrap();
        let x = [0.6, 0.8, -0.7];
        let z = -3.6;
        let (c, d1, _) = r.cutoff.eval(z);
        let bp = bump(&x);
        let y = z.exp();
        let w = (cfg.alpha.re * z).exp();
        let expect = w * (y * y * c * c * bp.grad_sq + bp.value * bp.value * d1 * d1).sqrt();
        assert!((r.residual_at(&x, z).norm() - expect).abs() < 1e-12 * expect);
    }
}
