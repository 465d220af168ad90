//! Frozen bump and cutoff profiles for the half-space test spinors.

/// Degree-5 smoothstep `6u⁵ − 15u⁴ + 10u³` on `[0, 1]`, clamped outside;
/// returns value, first and second derivative.
pub fn smoothstep5(u: f64) -> (f64, f64, f64) {
    if u <= 0.0 {
        return (0.0, 0.0, 0.0);
    }
    if u >= 1.0 {
        return (1.0, 0.0, 0.0);
    }
    let u2 = u * u;
    let u3 = u2 * u;
    (
        u3 * (10.0 + u * (-15.0 + 6.0 * u)),
        30.0 * u2 * (1.0 - u) * (1.0 - u),
        60.0 * u * (1.0 - u) * (1.0 - 2.0 * u),
    )
}

/// Degree-7 smoothstep `35u⁴ − 84u⁵ + 70u⁶ − 20u⁷` on `[0, 1]` (C³ joins).
pub fn smoothstep7(u: f64) -> (f64, f64, f64) {
    if u <= 0.0 {
        return (0.0, 0.0, 0.0);
    }
    if u >= 1.0 {
        return (1.0, 0.0, 0.0);
    }
    let u2 = u * u;
    let u3 = u2 * u;
    let u4 = u3 * u;
    let v = u4 * (35.0 + u * (-84.0 + u * (70.0 - 20.0 * u)));
    let om = 1.0 - u;
    let d1 = 140.0 * u3 * om * om * om;
    let d2 = 420.0 * u2 * om * om * (1.0 - 2.0 * u);
    (v, d1, d2)
}

/// Sup of `|smoothstep5'|`, attained at `u = 1/2`.
pub const SMOOTHSTEP5_MAX_SLOPE: f64 = 15.0 / 8.0;

/// Sup of `|smoothstep5''|`, attained at `u = (3 ± √3)/6`: `10/√3`.
pub const SMOOTHSTEP5_MAX_CURVATURE: f64 = 5.773_502_691_896_258;

/// Cutoff `c_n` on the `z = log y` axis: ramps of width `n` up on
/// `[−4n, −3n]` and down on `[−2n, −n]`, identically 1 on `[−3n, −2n]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Cutoff {
    pub n: f64,
}

impl Cutoff {
    pub fn new(n: f64) -> Self {
        assert!(n > 0.0, "cutoff scale must be positive");
        Self { n }
    }

    /// `(c_n, c_n', c_n'')` at `z`.
    pub fn eval(&self, z: f64) -> (f64, f64, f64) {
        let n = self.n;
        if z <= -4.0 * n || z >= -n {
            (0.0, 0.0, 0.0)
        } else if z < -3.0 * n {
            let (v, d1, d2) = smoothstep5((z + 4.0 * n) / n);
            (v, d1 / n, d2 / (n * n))
        } else if z <= -2.0 * n {
            (1.0, 0.0, 0.0)
        } else {
            let (v, d1, d2) = smoothstep5((-n - z) / n);
            (v, -d1 / n, d2 / (n * n))
        }
    }

    /// Piece boundaries `[−4n, −3n, −2n, −n]`.
    pub fn breakpoints(&self) -> [f64; 4] {
        let n = self.n;
        [-4.0 * n, -3.0 * n, -2.0 * n, -n]
    }

    pub fn max_slope(&self) -> f64 {
        SMOOTHSTEP5_MAX_SLOPE / self.n
    }

    pub fn max_curvature(&self) -> f64 {
        SMOOTHSTEP5_MAX_CURVATURE / (self.n * self.n)
    }
}

/// One-dimensional bump `q`: 1 on `[−1/2, 1/2]`, degree-7 smoothstep ramps
/// to 0 at `±1`. The test bump is `b(x) = ∏ q(x_i)`.
pub fn bump_1d(x: f64) -> (f64, f64, f64) {
    let a = x.abs();
    if a <= 0.5 {
        return (1.0, 0.0, 0.0);
    }
    if a >= 1.0 {
        return (0.0, 0.0, 0.0);
    }
    // q(x) = S7((1 − |x|)/(1/2)), so d/dx = −2 sgn(x) S7'.
    let (v, d1, d2) = smoothstep7(2.0 * (1.0 - a));
    (v, -2.0 * x.signum() * d1, 4.0 * d2)
}

/// Pointwise data of `b(x) = ∏ q(x_i)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BumpPoint {
    pub value: f64,
    pub grad_sq: f64,
    pub laplacian: f64,
}

/// `(b, |∇b|², Δb)` at `x`.
pub fn bump(x: &[f64]) -> BumpPoint {
    let q: Vec<(f64, f64, f64)> = x.iter().map(|&xi| bump_1d(xi)).collect();
    bump_from_factors(&q)
}

pub fn bump_gradient(x: &[f64]) -> Vec<f64> {
    let q: Vec<(f64, f64, f64)> = x.iter().map(|&xi| bump_1d(xi)).collect();
    (0..q.len())
        .map(|i| {
            q.iter()
                .enumerate()
                .map(|(j, f)| if i == j { f.1 } else { f.0 })
                .product()
        })
        .collect()
}

pub(crate) fn bump_from_factors(q: &[(f64, f64, f64)]) -> BumpPoint {
    let value: f64 = q.iter().map(|f| f.0).product();
    let mut grad_sq = 0.0;
    let mut laplacian = 0.0;
    for i in 0..q.len() {
        let others: f64 = q.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, f)| f.0).product();
        grad_sq += (q[i].1 * others).powi(2);
        laplacian += q[i].2 * others;
    }
    BumpPoint { value, grad_sq, laplacian }
}
