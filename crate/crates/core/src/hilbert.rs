//! Finite complex coordinate vectors standing in for truncated Hilbert-space
//! elements, the Hermitian inner product, and unitary matrices.
//!
//! The inner product is linear in its first argument and conjugate-linear in
//! its second: `inner(u, v) = Σ u_k · conj(v_k)`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};

/// Default per-entry tolerance for `UᴴU = I`.
pub const TAU_UNITARY: f64 = 1e-12;

/// Default bound on the condition estimate accepted by [`solve`].
pub const KAPPA_MAX: f64 = 1e8;

/// A complex coordinate vector of fixed dimension with finite entries.
#[derive(Clone, PartialEq)]
pub struct CVector(DVector<Complex64>);

impl CVector {
    pub fn new(entries: Vec<Complex64>) -> Result<Self> {
        if entries.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(CVector(DVector::from_vec(entries)))
    }

    pub fn from_real(entries: &[f64]) -> Result<Self> {
        Self::new(entries.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn from_dvector(v: DVector<Complex64>) -> Result<Self> {
        Self::new(v.as_slice().to_vec())
    }

    pub fn zeros(n: usize) -> Self {
        CVector(DVector::zeros(n))
    }

    /// Standard basis vector `e_k` (zero-based `k`).
    pub fn basis(n: usize, k: usize) -> Self {
        let mut v = DVector::zeros(n);
        v[k] = Complex64::new(1.0, 0.0);
        CVector(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[Complex64] {
        self.0.as_slice()
    }

    pub fn as_dvector(&self) -> &DVector<Complex64> {
        &self.0
    }

    pub fn into_vec(self) -> Vec<Complex64> {
        self.0.as_slice().to_vec()
    }

    pub fn get(&self, k: usize) -> Complex64 {
        self.0[k]
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|c| c.re.is_finite() && c.im.is_finite())
    }

    pub fn scale(&self, c: Complex64) -> CVector {
        CVector(&self.0 * c)
    }

    pub fn scale_real(&self, x: f64) -> CVector {
        self.scale(Complex64::new(x, 0.0))
    }

    /// `‖u‖²`, summed as `Σ |u_k|²`.
    pub fn norm_sq(&self) -> f64 {
        self.0.iter().map(|c| c.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    /// Largest absolute entry.
    pub fn max_abs(&self) -> f64 {
        self.0.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    fn check_dim(&self, other: &CVector) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &CVector) -> Result<CVector> {
        self.check_dim(other)?;
        Ok(CVector(&self.0 + &other.0))
    }

    pub fn try_sub(&self, other: &CVector) -> Result<CVector> {
        self.check_dim(other)?;
        Ok(CVector(&self.0 - &other.0))
    }

    /// Concatenates `self` with a trailing scalar.
    pub fn push(&self, c: Complex64) -> CVector {
        let mut entries = self.as_slice().to_vec();
        entries.push(c);
        CVector(DVector::from_vec(entries))
    }
}

impl fmt::Debug for CVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.0.iter()).finish()
    }
}

impl<'a> Add<&'a CVector> for &'a CVector {
    type Output = CVector;

    /// Panics on dimension mismatch; use [`CVector::try_add`] otherwise.
    fn add(self, rhs: &'a CVector) -> CVector {
        self.try_add(rhs).expect("CVector dimension mismatch")
    }
}

impl<'a> Sub<&'a CVector> for &'a CVector {
    type Output = CVector;

    fn sub(self, rhs: &'a CVector) -> CVector {
        self.try_sub(rhs).expect("CVector dimension mismatch")
    }
}

impl Mul<Complex64> for &CVector {
    type Output = CVector;

    fn mul(self, rhs: Complex64) -> CVector {
        self.scale(rhs)
    }
}

impl Neg for &CVector {
    type Output = CVector;

    fn neg(self) -> CVector {
        CVector(-&self.0)
    }
}

/// `⟨u, v⟩ = Σ u_k · conj(v_k)`.
pub fn inner(u: &CVector, v: &CVector) -> Result<Complex64> {
    u.check_dim(v)?;
    Ok(u.0.iter().zip(v.0.iter()).map(|(a, b)| a * b.conj()).sum())
}

pub fn norm(u: &CVector) -> f64 {
    u.norm()
}

/// An `n × n` matrix with `UᴴU = I` to within a per-entry tolerance.
#[derive(Clone, PartialEq)]
pub struct UnitaryMatrix(DMatrix<Complex64>);

impl UnitaryMatrix {
    /// Checks `UᴴU = I` entrywise to `tol`.
    pub fn new(m: DMatrix<Complex64>, tol: f64) -> Result<Self> {
        if !m.is_square() || m.nrows() == 0 {
            return Err(Error::InvalidDimension(m.nrows()));
        }
        if m.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        let defect = unitarity_defect(&m);
        if defect > tol {
            return Err(Error::NotUnitary { defect });
        }
        Ok(UnitaryMatrix(m))
    }

    pub fn identity(n: usize) -> Self {
        UnitaryMatrix(DMatrix::identity(n, n))
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.0
    }

    pub fn adjoint(&self) -> UnitaryMatrix {
        UnitaryMatrix(self.0.adjoint())
    }

    /// `self · other`. Unitarity is closed under products, so no re-check.
    pub fn compose(&self, other: &UnitaryMatrix) -> Result<UnitaryMatrix> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(UnitaryMatrix(&self.0 * &other.0))
    }

    pub fn apply(&self, v: &CVector) -> Result<CVector> {
        if self.dim() != v.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: v.dim(),
            });
        }
        Ok(CVector(&self.0 * v.as_dvector()))
    }

    /// Max entry of `|UᴴU − I|`.
    pub fn defect(&self) -> f64 {
        unitarity_defect(&self.0)
    }
}

impl fmt::Debug for UnitaryMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UnitaryMatrix{}", self.0)
    }
}

/// Max entry of `|MᴴM − I|`.
pub fn unitarity_defect(m: &DMatrix<Complex64>) -> f64 {
    let gram = m.adjoint() * m;
    let n = gram.nrows();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((gram[(i, j)] - target).norm());
        }
    }
    worst
}

/// Largest singular value.
pub fn operator_norm(m: &DMatrix<Complex64>) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    m.clone()
        .svd(false, false)
        .singular_values
        .iter()
        .cloned()
        .fold(0.0, f64::max)
}

/// `σ_max / σ_min`; infinite for singular matrices.
pub fn condition_estimate(m: &DMatrix<Complex64>) -> f64 {
    let sv = m.clone().svd(false, false).singular_values;
    let max = sv.iter().cloned().fold(0.0, f64::max);
    let min = sv.iter().cloned().fold(f64::INFINITY, f64::min);
    if min <= 0.0 || !min.is_finite() {
        f64::INFINITY
    } else {
        max / min
    }
}

/// Standard complex Gaussian `(N(0,1) + i N(0,1)) / √2`.
pub fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

/// Haar-distributed unitary: QR of a complex Gaussian matrix, with the
/// phases of `R`'s diagonal folded back into `Q`.
pub fn haar_unitary_with<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<UnitaryMatrix> {
    if n == 0 {
        return Err(Error::InvalidDimension(0));
    }
    let g = DMatrix::from_fn(n, n, |_, _| complex_gaussian(rng));
    let qr = g.qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..n {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 {
            d / d.norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        for i in 0..n {
            q[(i, j)] *= phase;
        }
    }
    UnitaryMatrix::new(q, TAU_UNITARY)
}

pub fn haar_unitary(n: usize, seed: u64) -> Result<UnitaryMatrix> {
    haar_unitary_with(n, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// Solves `A x = b` with an LU factorization, rejecting matrices whose
/// condition estimate exceeds `kappa_max`.
pub fn solve_with(a: &DMatrix<Complex64>, b: &CVector, kappa_max: f64) -> Result<CVector> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch {
            expected: a.nrows(),
            found: a.ncols(),
        });
    }
    if a.nrows() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.nrows(),
            found: b.dim(),
        });
    }
    let condition = condition_estimate(a);
    if !(condition <= kappa_max) {
        return Err(Error::NotInvertible { condition });
    }
    let x = a
        .clone()
        .lu()
        .solve(b.as_dvector())
        .ok_or(Error::NotInvertible { condition })?;
    CVector::from_dvector(x)
}

pub fn solve(a: &DMatrix<Complex64>, b: &CVector) -> Result<CVector> {
    solve_with(a, b, KAPPA_MAX)
}
