//! Radial mode equation of the Dirac operator on `H_c^{k+1} × N`.
//!
//! On a mode with `D^N`-eigenvalue `λ` and spherical parameter `ρ`, the
//! eigenvalue equation `Dφ = μφ` becomes the 4×4 linear system
//!
//! ```text
//! Φ'(r) = (A − (k/2) coth_c(r) I + ρ / sinh_c(r) B) Φ(r)
//! ```
//!
//! with `A² = κ² I`, `κ = √(λ² − μ²)`, and `AB + BA = 0`. Solutions behave like
//! `e^{(−ck/2 ± Re κ) r}` (or `r^{−k/2} e^{± Re κ r}` for `c = 0`).
//!
//! Three integration routes are provided:
//! * [`integrate`]: the system as written, in `r`;
//! * [`integrate_hat`]: after `t = e^{−cr}`, for `Φ̂ = e^{−h(t)} t^{A/c} Φ̃`,
//!   started at the regular singular point `t = 0` (`c ≠ 0`);
//! * [`integrate_hat_radial`]: `Φ̂ = sinh_c(r)^{k/2} e^{−Ar} Φ` started at a
//!   far radius and integrated inward (any `c`, including the flat case).
//!
//! The hat routes run in eigen-coordinates of `A`, with the growing component
//! rescaled so no `t^{±2κ/c}` factor is ever formed explicitly.

use std::fmt::Write as _;

use nalgebra::{DMatrix, DVector, Matrix2, Matrix4, Vector4};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::ode::{self, OdeOptions};

pub type CMatrix4 = Matrix4<Complex64>;
pub type CVector4 = Vector4<Complex64>;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Default start of the transformed integration near `t = 0`.
pub const T_EPSILON: f64 = 1e-8;

/// `sinh_c(r) = sinh(cr)/c`, or `r` when `c = 0`.
pub fn sinh_c(r: f64, c: f64) -> Result<f64> {
    check_radius(r)?;
    Ok(if c == 0.0 { r } else { (c * r).sinh() / c })
}

/// `coth_c(r) = c coth(cr)`, or `1/r` when `c = 0`.
pub fn coth_c(r: f64, c: f64) -> Result<f64> {
    check_radius(r)?;
    Ok(if c == 0.0 { 1.0 / r } else { c / (c * r).tanh() })
}

fn check_radius(r: f64) -> Result<()> {
    if r > 0.0 && r.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("radius must be positive, got {r}")))
    }
}

/// `h(t) = (k/2)(log t − log(1+t) − log(1−t))` and its derivative
/// `h'(t) = k(1+t²) / (2(t − t³))`.
pub fn h_func(t: f64, k: u32) -> Result<(f64, f64)> {
    if !(t > 0.0 && t < 1.0) {
        return Err(Error::InvalidParameter(format!("h(t) needs t in (0, 1), got {t}")));
    }
    let kh = f64::from(k) / 2.0;
    let value = kh * (t.ln() - t.ln_1p() - (-t).ln_1p());
    let deriv = f64::from(k) * (1.0 + t * t) / (2.0 * (t - t * t * t));
    Ok((value, deriv))
}

/// `(−2a) e^{2a d}` for `a = Re κ_λ < 0`, `d = r − r̃₀`.
///
/// Decreasing in `|a|` only once `d ≥ 1/(2|a|)`.
pub fn tail_weight(re_kappa: f64, d: f64) -> f64 {
    -2.0 * re_kappa * (2.0 * re_kappa * d).exp()
}

#[derive(Clone, Debug)]
pub struct ModeSystem {
    pub lambda: Complex64,
    pub mu: Complex64,
    pub rho: f64,
    pub c: f64,
    pub k: u32,
    pub a: CMatrix4,
    pub b: CMatrix4,
    /// `√(λ² − μ²)` with `Re κ ≥ 0`.
    pub kappa: Complex64,
    pub warnings: Vec<String>,
}

/// Eigen-coordinates of `A`: columns `v₊¹, v₊², v₋¹, v₋²` for `+κ, +κ, −κ, −κ`.
#[derive(Clone, Debug)]
pub struct EigenBasis {
    pub vectors: CMatrix4,
    pub inverse: CMatrix4,
    /// `B` in eigen-coordinates restricted to the off-diagonal blocks.
    pub b_plus_minus: Matrix2<Complex64>,
    pub b_minus_plus: Matrix2<Complex64>,
}

pub fn build_system(lambda: Complex64, mu: Complex64, rho: f64, c: f64, k: u32) -> Result<ModeSystem> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be positive".into()));
    }
    if !(c.is_finite() && c >= 0.0) {
        return Err(Error::InvalidParameter(format!("c must be finite and >= 0, got {c}")));
    }
    if !(rho.is_finite() && rho >= 0.0) {
        return Err(Error::InvalidParameter(format!("rho must be finite and >= 0, got {rho}")));
    }
    let mut a = CMatrix4::zeros();
    a[(0, 1)] = lambda + mu;
    a[(1, 0)] = lambda - mu;
    a[(2, 3)] = -lambda + mu;
    a[(3, 2)] = -lambda - mu;
    let mut b = CMatrix4::zeros();
    for i in 0..4 {
        b[(i, 3 - i)] = ONE;
    }
    let kappa = (lambda * lambda - mu * mu).sqrt();

    let mut warnings = Vec::new();
    let offset = rho - f64::from(k) / 2.0;
    if offset < 0.0 || (offset - offset.round()).abs() > 1e-12 {
        warnings.push(format!("rho = {rho} is not of the form k/2 + n (n = 0, 1, 2, ...)"));
    }
    if kappa == ZERO {
        warnings.push("kappa = 0: A is nilpotent and has no eigenbasis".into());
    }
    Ok(ModeSystem { lambda, mu, rho, c, k, a, b, kappa, warnings })
}

impl ModeSystem {
    /// System in the lowest spherical mode `ρ = k/2`.
    pub fn spherical(lambda: Complex64, mu: Complex64, c: f64, k: u32) -> Result<Self> {
        build_system(lambda, mu, f64::from(k) / 2.0, c, k)
    }

    pub fn is_degenerate(&self) -> bool {
        self.kappa == ZERO
    }

    /// `f(A) = (f(κ)+f(−κ))/2 I + (f(κ)−f(−κ))/(2κ) A`, valid since `A² = κ² I`.
    pub fn function_of_a(&self, f: impl Fn(Complex64) -> Complex64) -> Result<CMatrix4> {
        if self.is_degenerate() {
            return Err(Error::DegenerateKappa);
        }
        let fp = f(self.kappa);
        let fm = f(-self.kappa);
        Ok(CMatrix4::identity() * ((fp + fm) * 0.5) + self.a * ((fp - fm) / (self.kappa * 2.0)))
    }

    /// `exp(A s)`; the degenerate case reduces to `I + A s`.
    pub fn exp_a(&self, s: f64) -> CMatrix4 {
        let x = self.kappa * s;
        let sinhc = if x.norm() < 1e-8 { ONE + x * x / 6.0 } else { x.sinh() / x };
        CMatrix4::identity() * x.cosh() + self.a * (sinhc * s)
    }

    /// `t^{A/c}` for `t > 0`, `c ≠ 0`.
    pub fn t_power(&self, t: f64) -> Result<CMatrix4> {
        if self.c == 0.0 {
            return Err(Error::InvalidParameter("t^(A/c) needs c != 0".into()));
        }
        let lt = t.ln() / self.c;
        self.function_of_a(|z| (z * lt).exp())
    }

    pub fn eigenbasis(&self) -> Result<EigenBasis> {
        if self.is_degenerate() {
            return Err(Error::DegenerateKappa);
        }
        let p = self.lambda + self.mu;
        let m = self.lambda - self.mu;
        let kp = self.kappa;
        let cols = [
            CVector4::new(p, kp, ZERO, ZERO),
            CVector4::new(ZERO, ZERO, -m, kp),
            CVector4::new(p, -kp, ZERO, ZERO),
            CVector4::new(ZERO, ZERO, -m, -kp),
        ];
        let cols: Vec<CVector4> = cols.iter().map(|v| v / Complex64::new(v.norm(), 0.0)).collect();
        let vectors = CMatrix4::from_columns(&cols);
        let inverse = vectors.try_inverse().ok_or(Error::DegenerateKappa)?;
        let bt = inverse * self.b * vectors;
        Ok(EigenBasis {
            vectors,
            inverse,
            b_plus_minus: bt.fixed_view::<2, 2>(0, 2).into_owned(),
            b_minus_plus: bt.fixed_view::<2, 2>(2, 0).into_owned(),
        })
    }

    /// Unit eigenvector of `A` for `−κ` (`which ∈ {0, 1}`): the decaying branch.
    pub fn decaying_eigenvector(&self, which: usize) -> Result<CVector4> {
        Ok(self.eigenbasis()?.vectors.column(2 + which.min(1)).into_owned())
    }

    /// Unit eigenvector of `A` for `+κ`: the growing branch.
    pub fn growing_eigenvector(&self, which: usize) -> Result<CVector4> {
        Ok(self.eigenbasis()?.vectors.column(which.min(1)).into_owned())
    }

    /// Predicted exponential rates `(−ck/2 − Re κ, −ck/2 + Re κ)`.
    pub fn predicted_rates(&self) -> (f64, f64) {
        let base = -self.c * f64::from(self.k) / 2.0;
        (base - self.kappa.re, base + self.kappa.re)
    }

    /// Right-hand-side matrix of the radial system at `r`.
    pub fn coefficient(&self, r: f64) -> Result<CMatrix4> {
        let damp = f64::from(self.k) / 2.0 * coth_c(r, self.c)?;
        let coupling = self.rho / sinh_c(r, self.c)?;
        Ok(self.a - CMatrix4::identity() * Complex64::new(damp, 0.0) + self.b * Complex64::new(coupling, 0.0))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Trajectory {
    pub c: f64,
    pub grid: Vec<f64>,
    pub states: Vec<CVector4>,
    pub log_norm: Vec<f64>,
}

impl Trajectory {
    fn new(c: f64, grid: Vec<f64>, states: Vec<CVector4>) -> Result<Self> {
        if grid.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidParameter("trajectory grid must be strictly increasing".into()));
        }
        if states.iter().any(|s| s.iter().any(|z| !(z.re.is_finite() && z.im.is_finite()))) {
            return Err(Error::InvalidParameter("non-finite state in trajectory".into()));
        }
        let log_norm = states.iter().map(|s| s.norm().ln()).collect();
        Ok(Self { c, grid, states, log_norm })
    }

    /// Linear interpolation of `log|Φ|` at `r` inside the grid.
    pub fn log_norm_at(&self, r: f64) -> Option<f64> {
        let i = self.grid.partition_point(|&g| g < r);
        if i == 0 {
            return (self.grid[0] == r).then_some(self.log_norm[0]);
        }
        if i >= self.grid.len() {
            return None;
        }
        let (g0, g1) = (self.grid[i - 1], self.grid[i]);
        let w = (r - g0) / (g1 - g0);
        Some(self.log_norm[i - 1] * (1.0 - w) + self.log_norm[i] * w)
    }

    /// CSV with columns `r, re1, im1, …, re4, im4, log_norm`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("r,re_phi1,im_phi1,re_phi2,im_phi2,re_phi3,im_phi3,re_phi4,im_phi4,log_norm\n");
        for ((r, s), l) in self.grid.iter().zip(&self.states).zip(&self.log_norm) {
            let _ = write!(out, "{r}");
            for z in s.iter() {
                let _ = write!(out, ",{},{}", z.re, z.im);
            }
            let _ = writeln!(out, ",{l}");
        }
        out
    }
}

/// Trajectory of the transformed variable together with its back-transform.
#[derive(Clone, Debug)]
pub struct HatTrajectory {
    /// Transformed independent variable (`t` for [`integrate_hat`], `r` for
    /// [`integrate_hat_radial`]), in integration order.
    pub variable: Vec<f64>,
    pub phi_hat: Vec<CVector4>,
    pub phi_hat_start: CVector4,
    /// `Φ(r)` on an increasing `r` grid.
    pub trajectory: Trajectory,
}

fn to_array(v: &CVector4) -> [Complex64; 4] {
    [v[0], v[1], v[2], v[3]]
}

fn from_array(a: &[Complex64; 4]) -> CVector4 {
    CVector4::new(a[0], a[1], a[2], a[3])
}

/// Integrates the radial system from `r0` through the points of `outputs`
/// (monotone, either direction).
pub fn integrate_path(system: &ModeSystem, r0: f64, phi0: CVector4, outputs: &[f64], opts: &OdeOptions) -> Result<Vec<CVector4>> {
    check_radius(r0)?;
    for &r in outputs {
        check_radius(r)?;
    }
    let k_half = f64::from(system.k) / 2.0;
    let c = system.c;
    let a = system.a;
    let rho = system.rho;
    let rhs = |r: f64, y: &[Complex64; 4]| -> [Complex64; 4] {
        let (damp, coupling) = if c == 0.0 {
            (k_half / r, rho / r)
        } else {
            (k_half * c / (c * r).tanh(), rho * c / (c * r).sinh())
        };
        let mut out = [ZERO; 4];
        for i in 0..4 {
            let mut acc = -y[i] * damp + y[3 - i] * coupling;
            for j in 0..4 {
                acc += a[(i, j)] * y[j];
            }
            out[i] = acc;
        }
        out
    };
    let states = ode::solve(rhs, r0, to_array(&phi0), outputs, opts)?;
    Ok(states.iter().map(from_array).collect())
}

/// Integrates `Φ' = (A − (k/2)coth_c r + ρ/sinh_c r B) Φ` on `[r0, r1]`,
/// sampled at `steps + 1` uniformly spaced radii.
pub fn integrate(system: &ModeSystem, r0: f64, r1: f64, phi0: CVector4, steps: usize, opts: &OdeOptions) -> Result<Trajectory> {
    if !(r0 > 0.0 && r1 > r0) {
        return Err(Error::InvalidParameter(format!("need 0 < r0 < r1, got r0 = {r0}, r1 = {r1}")));
    }
    if steps == 0 {
        return Err(Error::InvalidParameter("steps must be positive".into()));
    }
    let grid = crate::spectral_region::uniform_grid(r0, r1, steps + 1)?;
    let mut states = vec![phi0];
    states.extend(integrate_path(system, r0, phi0, &grid[1..], opts)?);
    Trajectory::new(system.c, grid, states)
}

/// Transformed integration from the regular singular point `t = 0`.
///
/// `phi_hat0` is `Φ̂` at `t = ε` (taken as `Φ̂(0)`); the solution is returned
/// on `samples` radii uniformly spaced in `[−log(t0)/c, −log(ε)/c]`. Requires
/// `c ≠ 0` and `κ ≠ 0`.
pub fn integrate_hat(
    system: &ModeSystem,
    t0: f64,
    phi_hat0: CVector4,
    samples: usize,
    epsilon: f64,
    opts: &OdeOptions,
) -> Result<HatTrajectory> {
    let c = system.c;
    if c == 0.0 {
        return Err(Error::InvalidParameter("integrate_hat needs c != 0; use integrate_hat_radial".into()));
    }
    if !(t0 > epsilon && t0 < 1.0 && epsilon > 0.0) {
        return Err(Error::InvalidParameter(format!("need 0 < epsilon < t0 < 1, got epsilon = {epsilon}, t0 = {t0}")));
    }
    let basis = system.eigenbasis()?;
    let kappa = system.kappa;
    let two_k_c = kappa * 2.0 / c;
    let k = system.k;
    let rho = system.rho;

    // Eigen-coordinates (a₊, a₋) with v₊ = t^{−2κ/c} a₊.
    let coords = basis.inverse * phi_hat0;
    let scale = (-two_k_c * epsilon.ln()).exp();
    let y0 = [coords[0] * scale, coords[1] * scale, coords[2], coords[3]];

    let bpm = basis.b_plus_minus;
    let bmp = basis.b_minus_plus;
    let rhs = |t: f64, y: &[Complex64; 4]| -> [Complex64; 4] {
        let f = 2.0 * rho / (1.0 - t * t);
        let (vp0, vp1, am0, am1) = (y[0], y[1], y[2], y[3]);
        [
            -two_k_c / t * vp0 - (bpm[(0, 0)] * am0 + bpm[(0, 1)] * am1) * f,
            -two_k_c / t * vp1 - (bpm[(1, 0)] * am0 + bpm[(1, 1)] * am1) * f,
            -(bmp[(0, 0)] * vp0 + bmp[(0, 1)] * vp1) * f,
            -(bmp[(1, 0)] * vp0 + bmp[(1, 1)] * vp1) * f,
        ]
    };

    let r_lo = -t0.ln() / c;
    let r_hi = -epsilon.ln() / c;
    let r_grid = crate::spectral_region::uniform_grid(r_lo, r_hi, samples)?;
    // Integration runs in increasing t, i.e. decreasing r.
    let t_out: Vec<f64> = r_grid.iter().rev().skip(1).map(|&r| (-c * r).exp()).collect();
    let sol = ode::solve(rhs, epsilon, y0, &t_out, opts)?;

    let mut t_all = Vec::with_capacity(samples);
    let mut y_all = Vec::with_capacity(samples);
    t_all.push(epsilon);
    y_all.push(y0);
    t_all.extend(t_out.iter().copied());
    y_all.extend(sol);

    let mut phi_hat = Vec::with_capacity(samples);
    let mut phi = Vec::with_capacity(samples);
    for (&t, y) in t_all.iter().zip(&y_all) {
        let growth = (two_k_c * t.ln()).exp();
        let hat_coords = CVector4::new(y[0] * growth, y[1] * growth, y[2], y[3]);
        phi_hat.push(basis.vectors * hat_coords);
        let (h, _) = h_func(t, k)?;
        let prefactor = (kappa / c * t.ln() + h).exp();
        phi.push(basis.vectors * from_array(y) * prefactor);
    }
    phi_hat[0] = phi_hat0;
    phi.reverse();
    let trajectory = Trajectory::new(c, r_grid, phi)?;
    Ok(HatTrajectory { variable: t_all, phi_hat, phi_hat_start: phi_hat0, trajectory })
}

/// Transformed integration in `r`: `Φ̂ = sinh_c(r)^{k/2} e^{−Ar} Φ` with
/// `dΦ̂/dr = ρ/sinh_c(r) e^{−2Ar} B Φ̂`, started at `r_far` with `Φ̂(r_far) =
/// phi_hat_far` and integrated inward to `r_near`. For `c = 0` this is the flat
/// branch `Φ̂ = r^{k/2} e^{−Ar} Φ`.
pub fn integrate_hat_radial(
    system: &ModeSystem,
    r_near: f64,
    r_far: f64,
    phi_hat_far: CVector4,
    samples: usize,
    opts: &OdeOptions,
) -> Result<HatTrajectory> {
    if !(r_near > 0.0 && r_far > r_near) {
        return Err(Error::InvalidParameter(format!("need 0 < r_near < r_far, got {r_near}, {r_far}")));
    }
    let basis = system.eigenbasis()?;
    let kappa = system.kappa;
    let c = system.c;
    let rho = system.rho;
    let k_half = f64::from(system.k) / 2.0;

    // (w₊, a₋) with w₊ = e^{2κr} a₊.
    let coords = basis.inverse * phi_hat_far;
    let g = (kappa * 2.0 * r_far).exp();
    let y0 = [coords[0] * g, coords[1] * g, coords[2], coords[3]];
    let bpm = basis.b_plus_minus;
    let bmp = basis.b_minus_plus;
    let rhs = |r: f64, y: &[Complex64; 4]| -> [Complex64; 4] {
        let f = if c == 0.0 { rho / r } else { rho * c / (c * r).sinh() };
        [
            kappa * 2.0 * y[0] + (bpm[(0, 0)] * y[2] + bpm[(0, 1)] * y[3]) * f,
            kappa * 2.0 * y[1] + (bpm[(1, 0)] * y[2] + bpm[(1, 1)] * y[3]) * f,
            (bmp[(0, 0)] * y[0] + bmp[(0, 1)] * y[1]) * f,
            (bmp[(1, 0)] * y[0] + bmp[(1, 1)] * y[1]) * f,
        ]
    };
    let r_grid = crate::spectral_region::uniform_grid(r_near, r_far, samples)?;
    let r_out: Vec<f64> = r_grid.iter().rev().skip(1).copied().collect();
    let sol = ode::solve(rhs, r_far, y0, &r_out, opts)?;

    let mut r_all = vec![r_far];
    r_all.extend(r_out.iter().copied());
    let mut y_all = vec![y0];
    y_all.extend(sol);

    let mut phi_hat = Vec::with_capacity(samples);
    let mut phi = Vec::with_capacity(samples);
    for (&r, y) in r_all.iter().zip(&y_all) {
        let decay = (-kappa * 2.0 * r).exp();
        phi_hat.push(basis.vectors * CVector4::new(y[0] * decay, y[1] * decay, y[2], y[3]));
        let s = sinh_c(r, c)?;
        let prefactor = (-kappa * r - k_half * s.ln()).exp();
        phi.push(basis.vectors * from_array(y) * prefactor);
    }
    phi_hat[0] = phi_hat_far;
    phi.reverse();
    let trajectory = Trajectory::new(c, r_grid, phi)?;
    Ok(HatTrajectory { variable: r_all, phi_hat, phi_hat_start: phi_hat_far, trajectory })
}

/// Fitted asymptotic decay of `log|Φ|`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum DecayFit {
    /// `log|Φ| ≈ slope·r + const` (curved case).
    Exponential { slope: f64 },
    /// `log|Φ| ≈ β log r + γ r + const` (flat case).
    PowerExponential { beta: f64, gamma: f64 },
}

/// Least-squares decay fit over grid points in `[ra, rb]`; the model follows
/// the trajectory's curvature (`c ≠ 0`: exponential, `c = 0`: power times
/// exponential).
pub fn decay_exponent(trajectory: &Trajectory, window: (f64, f64)) -> Result<DecayFit> {
    if trajectory.c == 0.0 {
        let (beta, gamma) = fit_power_exponential(trajectory, window)?;
        Ok(DecayFit::PowerExponential { beta, gamma })
    } else {
        Ok(DecayFit::Exponential { slope: fit_slope(trajectory, window)? })
    }
}

fn window_points(trajectory: &Trajectory, (ra, rb): (f64, f64)) -> Result<(Vec<f64>, Vec<f64>)> {
    let lo = trajectory.grid[0];
    let hi = *trajectory.grid.last().unwrap_or(&lo);
    let slack = 1e-9 * hi.abs().max(1.0);
    if !(ra < rb) || ra < lo - slack || rb > hi + slack {
        return Err(Error::FitWindow { ra, rb, lo, hi });
    }
    let (rs, ls): (Vec<f64>, Vec<f64>) = trajectory
        .grid
        .iter()
        .zip(&trajectory.log_norm)
        .filter(|(&r, _)| r >= ra - slack && r <= rb + slack)
        .map(|(&r, &l)| (r, l))
        .unzip();
    if rs.len() < 3 {
        return Err(Error::FitWindow { ra, rb, lo, hi });
    }
    Ok((rs, ls))
}

fn least_squares(columns: &[Vec<f64>], rhs: &[f64]) -> Result<Vec<f64>> {
    let rows = rhs.len();
    let design = DMatrix::from_fn(rows, columns.len(), |i, j| columns[j][i]);
    let b = DVector::from_column_slice(rhs);
    let sol = design
        .svd(true, true)
        .solve(&b, 1e-14)
        .map_err(|e| Error::InvalidParameter(format!("least squares failed: {e}")))?;
    Ok(sol.iter().copied().collect())
}

pub fn fit_slope(trajectory: &Trajectory, window: (f64, f64)) -> Result<f64> {
    let (rs, ls) = window_points(trajectory, window)?;
    let ones = vec![1.0; rs.len()];
    Ok(least_squares(&[rs, ones], &ls)?[0])
}

pub fn fit_power_exponential(trajectory: &Trajectory, window: (f64, f64)) -> Result<(f64, f64)> {
    let (rs, ls) = window_points(trajectory, window)?;
    if rs[0] <= 0.0 {
        return Err(Error::FitWindow { ra: window.0, rb: window.1, lo: rs[0], hi: rs[rs.len() - 1] });
    }
    let logs: Vec<f64> = rs.iter().map(|r| r.ln()).collect();
    let ones = vec![1.0; rs.len()];
    let sol = least_squares(&[logs, rs, ones], &ls)?;
    Ok((sol[0], sol[1]))
}
