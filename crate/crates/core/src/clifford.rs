//! Complex spinor representations of the Clifford algebra of `R^m`.
//!
//! Gamma matrices follow the skew convention `γ_i γ_j + γ_j γ_i = -2 δ_ij I`.
//! The basis is built from Pauli strings (Jordan-Wigner layout):
//!
//! ```text
//! Γ_{2j-1} = Z ⊗ … ⊗ Z ⊗ X ⊗ I ⊗ … ⊗ I
//! Γ_{2j}   = Z ⊗ … ⊗ Z ⊗ Y ⊗ I ⊗ … ⊗ I
//! Γ_m      = Z ⊗ … ⊗ Z                      (m odd)
//! ```
//!
//! with `γ_i = i Γ_i`. For odd `m` the sign of the last generator is chosen so
//! that the volume element acts as `+I`. Nothing downstream depends on this
//! particular basis beyond the algebraic relations.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type CMatrix = DMatrix<Complex64>;

pub const MAX_DIM: usize = 12;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// A spinor: element of `C^{2^⌊m/2⌋}`.
#[derive(Clone, Debug, PartialEq)]
pub struct Spinor(pub DVector<Complex64>);

impl Spinor {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn norm(&self) -> f64 {
        self.0.norm()
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// Hermitian inner product, antilinear in `self`.
    pub fn dot(&self, other: &Spinor) -> Complex64 {
        self.0.dotc(&other.0)
    }
}

#[derive(Clone, Debug)]
pub struct CliffordRep {
    dim: usize,
    gammas: Vec<CMatrix>,
}

fn pauli() -> [CMatrix; 3] {
    let z = Complex64::new(0.0, 0.0);
    let o = Complex64::new(1.0, 0.0);
    [
        CMatrix::from_row_slice(2, 2, &[z, o, o, z]),
        CMatrix::from_row_slice(2, 2, &[z, -I, I, z]),
        CMatrix::from_row_slice(2, 2, &[o, z, z, -o]),
    ]
}

fn kron_all(factors: &[&CMatrix]) -> CMatrix {
    factors
        .iter()
        .fold(CMatrix::identity(1, 1), |acc, f| acc.kronecker(f))
}

/// `i^e` for a non-negative integer exponent.
fn i_pow(e: usize) -> Complex64 {
    match e % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => I,
        2 => Complex64::new(-1.0, 0.0),
        _ => -I,
    }
}

/// Builds the complex spinor representation of `Cl(R^m)`, `1 <= m <= 12`.
pub fn build_rep(m: usize) -> Result<CliffordRep> {
    if m == 0 || m > MAX_DIM {
        return Err(Error::CliffordDimension(m));
    }
    let n = m / 2;
    let [x, y, z] = pauli();
    let id = CMatrix::identity(2, 2);

    let mut gammas = Vec::with_capacity(m);
    for j in 0..n {
        for middle in [&x, &y] {
            let factors: Vec<&CMatrix> = (0..n)
                .map(|pos| match pos.cmp(&j) {
                    std::cmp::Ordering::Less => &z,
                    std::cmp::Ordering::Equal => middle,
                    std::cmp::Ordering::Greater => &id,
                })
                .collect();
            gammas.push(kron_all(&factors) * I);
        }
    }
    if m % 2 == 1 {
        let factors: Vec<&CMatrix> = (0..n).map(|_| &z).collect();
        gammas.push(kron_all(&factors) * I);
    }

    let mut rep = CliffordRep { dim: m, gammas };
    if m % 2 == 1 {
        // Odd m: ω is ±I (central); pick the representation with ω = +I.
        let omega = rep.volume_element();
        if omega[(0, 0)].re < 0.0 {
            let last = m - 1;
            rep.gammas[last] *= Complex64::new(-1.0, 0.0);
        }
    }
    Ok(rep)
}

impl CliffordRep {
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Size of the spinor module, `2^⌊m/2⌋`.
    pub fn spinor_dim(&self) -> usize {
        1 << (self.dim / 2)
    }

    pub fn gammas(&self) -> &[CMatrix] {
        &self.gammas
    }

    /// Generator `γ_index` with 1-based index.
    pub fn gamma(&self, index: usize) -> Result<&CMatrix> {
        if index == 0 || index > self.dim {
            return Err(Error::DirectionIndex {
                index,
                dim: self.dim,
            });
        }
        Ok(&self.gammas[index - 1])
    }

    /// Clifford multiplication by the vector `v ∈ R^m`.
    pub fn clifford_mul(&self, v: &[f64], spinor: &Spinor) -> Spinor {
        assert_eq!(v.len(), self.dim, "vector dimension mismatch");
        let mut out = DVector::zeros(self.spinor_dim());
        for (g, &coef) in self.gammas.iter().zip(v) {
            if coef != 0.0 {
                out += (g * &spinor.0) * Complex64::new(coef, 0.0);
            }
        }
        Spinor(out)
    }

    /// `ω = i^⌊(m+1)/2⌋ γ_1 ⋯ γ_m`.
    pub fn volume_element(&self) -> CMatrix {
        let s = self.spinor_dim();
        let prod = self
            .gammas
            .iter()
            .fold(CMatrix::identity(s, s), |acc, g| acc * g);
        prod * i_pow((self.dim + 1) / 2)
    }

    /// Unit spinor `ψ₀` with `γ_index ψ₀ = sign · i ψ₀`.
    ///
    /// For `m = 1` the single generator is the scalar `−i`, so only
    /// `sign = −1` has an eigenspinor.
    ///
    /// Projects the first standard basis vector with a non-negligible image
    /// under `(I - sign·i·γ)/2` and normalizes it.
    pub fn eigenspinor(&self, direction_index: usize, sign: i8) -> Result<Spinor> {
        let g = self.gamma(direction_index)?;
        if sign != 1 && sign != -1 {
            return Err(Error::InvalidParameter(format!("sign must be ±1, got {sign}")));
        }
        let s = self.spinor_dim();
        let proj = (CMatrix::identity(s, s) - g * (I * f64::from(sign))) * Complex64::new(0.5, 0.0);
        for j in 0..s {
            let col = proj.column(j).into_owned();
            let nrm = col.norm();
            if nrm > 1e-8 {
                return Ok(Spinor(col / Complex64::new(nrm, 0.0)));
            }
        }
        // Only m = 1 has a one-sided spectrum.
        Err(Error::EmptyEigenspace { index: direction_index, sign })
    }
}
