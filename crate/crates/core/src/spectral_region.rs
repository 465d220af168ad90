//! Closed-form `L^p` spectral regions of the Dirac operator on
//! `H_c^{k+1} × N`.
//!
//! The region is
//!
//! ```text
//! σ_p = { μ ∈ C : μ² = λ₀² + κ², |Im κ| ≤ t(p) },   t(p) = c·k·|1/p − 1/2|
//! ```
//!
//! so its boundary is traced by `κ = s + i t(p)`, `s ∈ R`, and the image of
//! the region under squaring is the parabolic region of `D²`.

use std::fmt;

use num_complex::Complex64;
use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const DEFAULT_TOL: f64 = 1e-9;

/// Lebesgue exponent `p ∈ [1, ∞]`, with `∞` kept symbolic.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Exponent {
    Finite(f64),
    Infinity,
}

impl Exponent {
    pub fn new(p: f64) -> Result<Self> {
        if p.is_infinite() && p > 0.0 {
            return Ok(Exponent::Infinity);
        }
        if !(p.is_finite() && p >= 1.0) {
            return Err(Error::InvalidParameter(format!("exponent p must lie in [1, inf], got {p}")));
        }
        Ok(Exponent::Finite(p))
    }

    /// `1/p`, with `1/∞ = 0`.
    pub fn reciprocal(self) -> f64 {
        match self {
            Exponent::Finite(p) => 1.0 / p,
            Exponent::Infinity => 0.0,
        }
    }

    /// Hölder conjugate `p*` with `1/p + 1/p* = 1`.
    pub fn conjugate(self) -> Self {
        match self {
            Exponent::Infinity => Exponent::Finite(1.0),
            Exponent::Finite(p) if p == 1.0 => Exponent::Infinity,
            Exponent::Finite(p) => Exponent::Finite(p / (p - 1.0)),
        }
    }

    /// `|1/p − 1/2|`.
    pub fn distance_from_two(self) -> f64 {
        (self.reciprocal() - 0.5).abs()
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Exponent::Infinity)
    }

    pub fn value(self) -> f64 {
        match self {
            Exponent::Finite(p) => p,
            Exponent::Infinity => f64::INFINITY,
        }
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Finite(p) => write!(f, "{p}"),
            Exponent::Infinity => f.write_str("inf"),
        }
    }
}

impl std::str::FromStr for Exponent {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if matches!(t.to_ascii_lowercase().as_str(), "inf" | "infinity" | "∞") {
            return Ok(Exponent::Infinity);
        }
        let p: f64 = t
            .parse()
            .map_err(|_| Error::InvalidParameter(format!("cannot parse exponent {s:?}")))?;
        Exponent::new(p)
    }
}

impl Serialize for Exponent {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Exponent::Finite(p) => serializer.serialize_f64(*p),
            Exponent::Infinity => serializer.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Exponent {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Str(String),
        }
        match Raw::deserialize(deserializer)? {
            Raw::Num(p) => Exponent::new(p).map_err(de::Error::custom),
            Raw::Str(s) => s.parse().map_err(de::Error::custom),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectralRegion {
    pub c: f64,
    pub k: u32,
    pub lambda0: f64,
    pub p: Exponent,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CaseTag {
    L,
    M,
    R,
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CaseTag::L => "L",
            CaseTag::M => "M",
            CaseTag::R => "R",
        };
        f.write_str(s)
    }
}

/// Shape class of a region and its landmark on the axes.
///
/// `L`: `λ₀ = 0`, strip of half-width `t(p)`.
/// `M`: `0 < λ₀ ≤ t(p)`, region meets the imaginary axis in `[-i x_M, i x_M]`.
/// `R`: `λ₀ > t(p)`, region meets the real axis at `±x_R` and omits `0`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegionCase {
    pub tag: CaseTag,
    pub landmark: f64,
}

/// Result of checking the point and conjugation symmetries at one `μ`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SymmetryReport {
    pub mu: Complex64,
    pub contains: bool,
    pub contains_negated: bool,
    pub contains_conjugate: bool,
    pub square_in_d_squared: bool,
    pub contains_dual_exponent: bool,
}

impl SymmetryReport {
    pub fn consistent(&self) -> bool {
        let c = self.contains;
        c == self.contains_negated
            && c == self.contains_conjugate
            && (self.contains || self.contains_negated) == self.square_in_d_squared
            && c == self.contains_dual_exponent
    }
}

impl SpectralRegion {
    pub fn new(c: f64, k: u32, lambda0: f64, p: Exponent) -> Result<Self> {
        if !(c.is_finite() && c >= 0.0) {
            return Err(Error::InvalidParameter(format!("curvature scale c must be finite and >= 0, got {c}")));
        }
        if k == 0 {
            return Err(Error::InvalidParameter("sphere dimension k must be positive".into()));
        }
        if !(lambda0.is_finite() && lambda0 >= 0.0) {
            return Err(Error::InvalidParameter(format!("lambda0 must be finite and >= 0, got {lambda0}")));
        }
        Ok(Self { c, k, lambda0, p })
    }

    /// `t(p) = c k |1/p − 1/2|`.
    pub fn threshold(&self) -> f64 {
        self.c * f64::from(self.k) * self.p.distance_from_two()
    }

    /// `|Im √(μ² − λ₀²)|`; branch independent since the two roots differ by sign.
    pub fn kappa_imag(&self, mu: Complex64) -> f64 {
        (mu * mu - self.lambda0 * self.lambda0).sqrt().im.abs()
    }

    pub fn contains(&self, mu: Complex64, tol: f64) -> bool {
        self.kappa_imag(mu) <= self.threshold() + tol
    }

    pub fn with_exponent(&self, p: Exponent) -> Self {
        Self { p, ..*self }
    }

    /// Boundary points for `s` on a uniform grid of `samples` points in
    /// `[s_min, s_max]`. Each `s` contributes `±√(λ₀² + (s + i t)²)` and the
    /// two conjugates, in that order.
    pub fn boundary(&self, s_min: f64, s_max: f64, samples: usize) -> Result<Vec<Complex64>> {
        let grid = uniform_grid(s_min, s_max, samples)?;
        let t = self.threshold();
        let l2 = self.lambda0 * self.lambda0;
        let mut out = Vec::with_capacity(4 * grid.len());
        for s in grid {
            let kappa = Complex64::new(s, t);
            let mu = (kappa * kappa + l2).sqrt();
            out.extend([mu, -mu, mu.conj(), -mu.conj()]);
        }
        Ok(out)
    }

    /// One boundary branch `μ(s) = √(λ₀² + (s + i t)²)` (principal root).
    pub fn boundary_branch(&self, s: f64) -> Complex64 {
        let kappa = Complex64::new(s, self.threshold());
        (kappa * kappa + self.lambda0 * self.lambda0).sqrt()
    }

    pub fn classify(&self) -> RegionCase {
        let t = self.threshold();
        let l = self.lambda0;
        if l == 0.0 {
            RegionCase { tag: CaseTag::L, landmark: t }
        } else if l <= t {
            RegionCase {
                tag: CaseTag::M,
                landmark: (t * t - l * l).max(0.0).sqrt(),
            }
        } else {
            RegionCase {
                tag: CaseTag::R,
                landmark: (l * l - t * t).sqrt(),
            }
        }
    }

    /// `D − μ` has a bounded inverse on `L^p` exactly when `0 ∉ σ_p`.
    pub fn is_invertible(&self) -> bool {
        self.classify().tag == CaseTag::R
    }

    /// Boundary of the `D²` region: `λ₀² − t² + s² + 2 i s t`.
    pub fn d_squared_boundary(&self, s_grid: &[f64]) -> Vec<Complex64> {
        let t = self.threshold();
        let l2 = self.lambda0 * self.lambda0;
        s_grid
            .iter()
            .map(|&s| Complex64::new(l2 - t * t + s * s, 2.0 * s * t))
            .collect()
    }

    /// Whether `ν` lies in the closed parabolic region of `D²`.
    pub fn d_squared_contains(&self, nu: Complex64, tol: f64) -> bool {
        (nu - self.lambda0 * self.lambda0)
            .sqrt().im.abs() <= self.threshold() + tol
    }

    pub fn symmetry_transforms(&self, mu: Complex64, tol: f64) -> SymmetryReport {
        SymmetryReport {
            mu,
            contains: self.contains(mu, tol),
            contains_negated: self.contains(-mu, tol),
            contains_conjugate: self.contains(mu.conj(), tol),
            square_in_d_squared: self.d_squared_contains(mu * mu, tol),
            contains_dual_exponent: self.with_exponent(self.p.conjugate()).contains(mu, tol),
        }
    }

    pub fn to_json(&self, boundary: &[Complex64]) -> serde_json::Value {
        let case = self.classify();
        serde_json::json!({
            "c": self.c,
            "k": self.k,
            "lambda0": self.lambda0,
            "p": self.p,
            "case": case.tag.to_string(),
            "landmark": case.landmark,
            "boundary": boundary.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>(),
        })
    }
}

/// Boundary of the `L^p` region of the Laplacian on `H^{k+1}` (unit
/// curvature): `k²(1/p)(1 − 1/p) + s² + 2 i s k (1/2 − 1/p)`.
pub fn laplacian_boundary(k: u32, p: Exponent, s_grid: &[f64]) -> Vec<Complex64> {
    let kf = f64::from(k);
    let q = p.reciprocal();
    let vertex = kf * kf * q * (1.0 - q);
    s_grid
        .iter()
        .map(|&s| Complex64::new(vertex + s * s, 2.0 * s * kf * (0.5 - q)))
        .collect()
}

/// Real shift between the Laplacian region and the `D²` region (`λ₀ = 0`,
/// `c = 1`): `k²/p (1 − 1/p) + k²(1/p − 1/2)²`, identically `k²/4`.
pub fn laplacian_shift(k: u32, p: Exponent) -> f64 {
    let kf = f64::from(k);
    let q = p.reciprocal();
    kf * kf * q * (1.0 - q) + kf * kf * (q - 0.5) * (q - 0.5)
}

pub fn uniform_grid(lo: f64, hi: f64, samples: usize) -> Result<Vec<f64>> {
    if samples < 2 {
        return Err(Error::InvalidParameter(format!("need at least 2 samples, got {samples}")));
    }
    if !(lo < hi) {
        return Err(Error::InvalidParameter(format!("empty interval [{lo}, {hi}]")));
    }
    let step = (hi - lo) / (samples - 1) as f64;
    Ok((0..samples)
        .map(|i| if i + 1 == samples { hi } else { lo + step * i as f64 })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn region(c: f64, k: u32, lambda0: f64, p: f64) -> SpectralRegion {
        SpectralRegion::new(c, k, lambda0, Exponent::new(p).unwrap()).unwrap()
    }

    fn cx(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn threshold_values() {
        assert_eq!(region(1.0, 3, 0.0, 2.0).threshold(), 0.0);
        assert_eq!(region(2.0, 3, 0.0, 1.0).threshold(), 3.0);
        let r = SpectralRegion::new(2.0, 3, 0.0, Exponent::Infinity).unwrap();
        assert_eq!(r.threshold(), 3.0);
    }

    #[test]
    fn l2_rays() {
        let r = region(1.0, 2, 1.0, 2.0);
        assert!(r.contains(cx(1.5, 0.0), DEFAULT_TOL));
        assert!(!r.contains(cx(0.5, 0.0), DEFAULT_TOL));
        assert!(r.contains(cx(-1.0, 0.0), DEFAULT_TOL));
        assert!(r.contains(cx(1.0, 0.0), 0.0));
    }

    #[test]
    fn origin_when_lambda0_zero() {
        for p in [1.0, 1.5, 2.0, 7.0] {
            assert!(region(0.3, 4, 0.0, p).contains(cx(0.0, 0.0), 0.0));
        }
    }

    #[test]
    fn boundary_landmarks() {
        // λ₀ = 0, t = 1 → μ = ±i at s = 0
        let r = region(1.0, 2, 0.0, 1.0);
        let b = r.boundary(0.0, 1.0, 2).unwrap();
        assert!((b[0] - cx(0.0, 1.0)).norm() < 1e-15 || (b[0] - cx(0.0, -1.0)).norm() < 1e-15);

        let r = region(1.0, 2, 2.0, 1.0);
        assert!((r.boundary_branch(0.0) - cx(3f64.sqrt(), 0.0)).norm() < 1e-12);
        assert_eq!(r.classify(), RegionCase { tag: CaseTag::R, landmark: 3f64.sqrt() });

        let r = region(1.0, 2, 0.5, 1.0);
        let mu = r.boundary_branch(0.0);
        assert!(mu.re.abs() < 1e-15 && (mu.im.abs() - 0.75f64.sqrt()).abs() < 1e-12);
        assert_eq!(r.classify().tag, CaseTag::M);
    }

    #[test]
    fn classification() {
        assert_eq!(region(1.0, 2, 0.0, 1.0).classify(), RegionCase { tag: CaseTag::L, landmark: 1.0 });
        assert_eq!(region(1.0, 2, 1.0, 1.0).classify(), RegionCase { tag: CaseTag::M, landmark: 0.0 });
        assert!(region(1.0, 2, 1.0, 2.0).is_invertible());
        assert!(!region(1.0, 2, 0.5, 1.0).is_invertible());
    }

    #[test]
    fn boundary_is_genuine() {
        for (c, k, l0, p) in [(1.0, 2, 0.0, 1.0), (1.0, 2, 0.5, 1.5), (0.7, 3, 2.0, 4.0), (1.0, 1, 1.0, 2.0)] {
            let r = region(c, k, l0, p);
            for mu in r.boundary(-5.0, 5.0, 41).unwrap() {
                assert!(r.contains(mu, 1e-9), "{mu}");
                assert!(!r.contains(mu, -1e-6), "{mu}");
            }
        }
    }

    #[test]
    fn d_squared_and_laplacian() {
        let r = region(1.0, 3, 0.0, 2.0);
        let s: Vec<f64> = (-10..=10).map(f64::from).collect();
        for z in r.d_squared_boundary(&s) {
            assert_eq!(z.im, 0.0);
            assert!(z.re >= 0.0);
        }
        let r = region(1.0, 3, 0.0, 1.0);
        assert!((r.d_squared_boundary(&[0.0])[0] - cx(-2.25, 0.0)).norm() < 1e-15);

        assert!((laplacian_boundary(3, Exponent::Finite(2.0), &[0.0])[0] - cx(2.25, 0.0)).norm() < 1e-15);
        assert_eq!(laplacian_boundary(3, Exponent::Finite(1.0), &[0.0])[0], cx(0.0, 0.0));
        for p in [1.0, 1.3, 2.0, 3.0, 10.0] {
            for k in 1..6 {
                assert!((laplacian_shift(k, Exponent::Finite(p)) - f64::from(k * k) / 4.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn squared_boundary_matches_parabola() {
        let r = region(1.3, 2, 0.8, 1.2);
        let s = uniform_grid(-4.0, 4.0, 33).unwrap();
        let para = r.d_squared_boundary(&s);
        let b = r.boundary(-4.0, 4.0, 33).unwrap();
        for (i, z) in para.iter().enumerate() {
            assert!((b[4 * i] * b[4 * i] - z).norm() < 1e-9);
            assert!((b[4 * i + 1] * b[4 * i + 1] - z).norm() < 1e-9);
        }
    }

    #[test]
    fn exponent_parsing_and_conjugates() {
        assert_eq!("inf".parse::<Exponent>().unwrap(), Exponent::Infinity);
        assert_eq!("1.5".parse::<Exponent>().unwrap(), Exponent::Finite(1.5));
        assert!("0.5".parse::<Exponent>().is_err());
        assert_eq!(Exponent::Finite(1.0).conjugate(), Exponent::Infinity);
        assert_eq!(Exponent::Finite(4.0).conjugate(), Exponent::Finite(4.0 / 3.0));
        assert_eq!(Exponent::Finite(2.0).conjugate(), Exponent::Finite(2.0));
    }

    #[test]
    fn json_layout() {
        let r = SpectralRegion::new(1.0, 2, 2.0, Exponent::Infinity).unwrap();
        let v = r.to_json(&[cx(1.0, 2.0)]);
        assert_eq!(v["p"], "inf");
        assert_eq!(v["case"], "R");
        assert_eq!(v["boundary"][0][1], 2.0);
        let back: SpectralRegion = serde_json::from_value(v).unwrap();
        assert_eq!(back, r);
    }
}
