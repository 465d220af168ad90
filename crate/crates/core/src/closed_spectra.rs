//! Dirac spectra of closed flat factors `N` and the resulting `λ₀`.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::spectral_region::{Exponent, SpectralRegion};

pub const DEFAULT_CUTOFF: usize = 64;
pub const MAX_TORUS_DIM: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpinStructure {
    /// Periodic spinors, `δ = 0`.
    Trivial,
    /// Antiperiodic spinors, `δ = 1/2`.
    Nontrivial,
}

impl SpinStructure {
    pub fn offset(self) -> f64 {
        match self {
            SpinStructure::Trivial => 0.0,
            SpinStructure::Nontrivial => 0.5,
        }
    }
}

/// Closed factor `N`, e.g. `{"type":"circle","L":6.28,"structure":"nontrivial"}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum FactorDescriptor {
    Point,
    Circle {
        #[serde(rename = "L")]
        length: f64,
        structure: SpinStructure,
    },
    /// Flat torus `R^d/Λ`; `lattice` lists the generators of `Λ`, `spin` the
    /// structure along each generator.
    Torus {
        lattice: Vec<Vec<f64>>,
        spin: Vec<SpinStructure>,
    },
}

impl FactorDescriptor {
    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::InvalidParameter(format!("factor descriptor: {e}")))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClosedSpectrum {
    pub manifold: FactorDescriptor,
    /// Sorted, with multiplicity.
    pub eigenvalues: Vec<f64>,
    pub lambda0: f64,
    pub cutoff: usize,
}

impl ClosedSpectrum {
    fn from_values(manifold: FactorDescriptor, mut eigenvalues: Vec<f64>, cutoff: usize) -> Self {
        eigenvalues.sort_by(f64::total_cmp);
        let lambda0 = eigenvalues.iter().map(|l| l.abs()).fold(f64::INFINITY, f64::min);
        Self { manifold, eigenvalues, lambda0, cutoff }
    }

    /// Whether the multiset is invariant under `λ ↦ −λ` to within `tol`.
    pub fn is_symmetric(&self, tol: f64) -> bool {
        let n = self.eigenvalues.len();
        (0..n).all(|i| (self.eigenvalues[i] + self.eigenvalues[n - 1 - i]).abs() <= tol)
    }

    /// The smallest `count` values of `|λ|`, sorted.
    pub fn smallest_abs(&self, count: usize) -> Vec<f64> {
        let mut a: Vec<f64> = self.eigenvalues.iter().map(|l| l.abs()).collect();
        a.sort_by(f64::total_cmp);
        a.truncate(count);
        a
    }
}

/// `(2π/L)(m + δ)` for the `2·cutoff` (nontrivial) or `2·cutoff + 1`
/// (trivial) modes closest to zero.
pub fn circle_spectrum(length: f64, structure: SpinStructure, cutoff: usize) -> Result<ClosedSpectrum> {
    if !(length.is_finite() && length > 0.0) {
        return Err(Error::InvalidParameter(format!("circle length must be positive, got {length}")));
    }
    let scale = 2.0 * PI / length;
    let c = cutoff as i64;
    let values: Vec<f64> = match structure {
        SpinStructure::Trivial => (-c..=c).map(|m| scale * m as f64).collect(),
        SpinStructure::Nontrivial => (-c..c).map(|m| scale * (m as f64 + 0.5)).collect(),
    };
    Ok(ClosedSpectrum::from_values(FactorDescriptor::Circle { length, structure }, values, cutoff))
}

fn invert(basis: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    basis
        .clone()
        .try_inverse()
        .ok_or_else(|| Error::InvalidParameter("torus lattice generators are linearly dependent".into()))
}

/// Spectrum of a flat torus: `±2π|ξ + δ*|` for `ξ` in the dual lattice and
/// `δ* = Σ δ_j b_j*`, each sign with multiplicity `2^{⌊d/2⌋}/2` (`d ≥ 2`).
/// All eigenvalues with `|λ| ≤ 2π·cutoff·s_min` are kept, `s_min` the
/// smallest singular value of the dual basis.
pub fn torus_spectrum(lattice: &[Vec<f64>], spin: &[SpinStructure], cutoff: usize) -> Result<ClosedSpectrum> {
    let d = lattice.len();
    if d == 0 || d > MAX_TORUS_DIM {
        return Err(Error::InvalidParameter(format!("torus dimension must lie in 1..={MAX_TORUS_DIM}, got {d}")));
    }
    if spin.len() != d || lattice.iter().any(|v| v.len() != d) {
        return Err(Error::InvalidParameter("torus lattice must be d vectors of length d with d spin labels".into()));
    }
    if lattice.iter().flatten().any(|x| !x.is_finite()) {
        return Err(Error::InvalidParameter("torus lattice entries must be finite".into()));
    }
    // Columns are the generators; dual basis B* = (B^{-1})^T.
    let basis = DMatrix::from_fn(d, d, |i, j| lattice[j][i]);
    let dual = invert(&basis)?.transpose();
    let s_min = dual.singular_values().min();
    let radius = cutoff as f64 * s_min;
    let offset = &dual * nalgebra::DVector::from_iterator(d, spin.iter().map(|s| s.offset()));

    // |B* m| ≥ s_min |m|, so |m_j| ≤ (radius + |δ*|)/s_min covers the ball.
    let bound = ((radius + offset.norm()) / s_min).ceil() as i64 + 1;
    let mut values = Vec::new();
    let mut m = vec![-bound; d];
    let spinor_dim = 1usize << (d / 2);
    let mult = (spinor_dim / 2).max(1);
    loop {
        let mv = nalgebra::DVector::from_iterator(d, m.iter().map(|&x| x as f64));
        let xi = &dual * mv + &offset;
        let r = xi.norm();
        if r <= radius * (1.0 + 1e-12) {
            if d == 1 {
                values.push(2.0 * PI * xi[0]);
            } else if r == 0.0 {
                values.extend(std::iter::repeat(0.0).take(spinor_dim));
            } else {
                values.extend(std::iter::repeat(2.0 * PI * r).take(mult));
                values.extend(std::iter::repeat(-2.0 * PI * r).take(mult));
            }
        }
        let mut pos = 0;
        while pos < d {
            m[pos] += 1;
            if m[pos] <= bound {
                break;
            }
            m[pos] = -bound;
            pos += 1;
        }
        if pos == d {
            break;
        }
    }
    let manifold = FactorDescriptor::Torus { lattice: lattice.to_vec(), spin: spin.to_vec() };
    Ok(ClosedSpectrum::from_values(manifold, values, cutoff))
}

pub fn spectrum(descriptor: &FactorDescriptor, cutoff: usize) -> Result<ClosedSpectrum> {
    match descriptor {
        FactorDescriptor::Point => Ok(ClosedSpectrum::from_values(FactorDescriptor::Point, vec![0.0], cutoff)),
        FactorDescriptor::Circle { length, structure } => circle_spectrum(*length, *structure, cutoff),
        FactorDescriptor::Torus { lattice, spin } => torus_spectrum(lattice, spin, cutoff),
    }
}

/// `(−∞, −λ₀] ∪ [λ₀, ∞)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RayPair {
    pub lambda0: f64,
}

impl RayPair {
    pub fn contains(&self, mu: Complex64, tol: f64) -> bool {
        mu.im.abs() <= tol && mu.re.abs() >= self.lambda0 - tol
    }

    pub fn is_whole_line(&self) -> bool {
        self.lambda0 == 0.0
    }
}

pub fn product_l2_spectrum(lambda0: f64) -> Result<RayPair> {
    if !(lambda0.is_finite() && lambda0 >= 0.0) {
        return Err(Error::InvalidParameter(format!("lambda0 must be finite and >= 0, got {lambda0}")));
    }
    Ok(RayPair { lambda0 })
}

/// `λ₀` of the factor. For tori the truncation radius is raised until it
/// covers `|δ*|`, which bounds `λ₀/2π` from above.
pub fn lambda0_of(descriptor: &FactorDescriptor) -> Result<f64> {
    let cutoff = match descriptor {
        FactorDescriptor::Torus { lattice, spin } => {
            let d = lattice.len();
            if d == 0 || lattice.iter().any(|v| v.len() != d) || spin.len() != d {
                return Err(Error::InvalidParameter("torus lattice must be d vectors of length d with d spin labels".into()));
            }
            let basis = DMatrix::from_fn(d, d, |i, j| lattice[j][i]);
            let dual = invert(&basis)?.transpose();
            let offset = &dual * nalgebra::DVector::from_iterator(d, spin.iter().map(|s| s.offset()));
            let s_min = dual.singular_values().min();
            ((offset.norm() / s_min).ceil() as usize + 1).max(2)
        }
        _ => 2,
    };
    Ok(spectrum(descriptor, cutoff)?.lambda0)
}

pub fn make_region(descriptor: &FactorDescriptor, c: f64, k: u32, p: Exponent) -> Result<SpectralRegion> {
    SpectralRegion::new(c, k, lambda0_of(descriptor)?, p)
}

/// `|λ|` of the 3-point finite-difference square `−d²/dt²` on `points`
/// equispaced nodes of the circle of length `L`, with periodic or
/// antiperiodic wrap-around, sorted ascending.
pub fn discretized_circle_abs_spectrum(length: f64, structure: SpinStructure, points: usize) -> Result<Vec<f64>> {
    if points < 3 {
        return Err(Error::InvalidParameter(format!("need at least 3 grid points, got {points}")));
    }
    if !(length.is_finite() && length > 0.0) {
        return Err(Error::InvalidParameter(format!("circle length must be positive, got {length}")));
    }
    let h = length / points as f64;
    let inv = 1.0 / (h * h);
    let wrap = match structure {
        SpinStructure::Trivial => -inv,
        SpinStructure::Nontrivial => inv,
    };
    let mut a = DMatrix::<f64>::zeros(points, points);
    for i in 0..points {
        a[(i, i)] = 2.0 * inv;
        if i + 1 < points {
            a[(i, i + 1)] = -inv;
            a[(i + 1, i)] = -inv;
        }
    }
    a[(0, points - 1)] = wrap;
    a[(points - 1, 0)] = wrap;
    let mut out: Vec<f64> = SymmetricEigen::new(a).eigenvalues.iter().map(|l| l.max(0.0).sqrt()).collect();
    out.sort_by(f64::total_cmp);
    Ok(out)
}
