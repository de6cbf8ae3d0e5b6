//! Ball and Siegel coordinates, the Cayley transform between them, and the
//! signed defect functions whose zero sets are the two boundaries.
//!
//! The distinguished boundary point is `P = e_n`. A ball point `Z ∈ ℂⁿ` splits
//! as `Z = (ζ, η)` with `η` its last coordinate; a Siegel point is
//! `(z, w) ∈ ℂⁿ⁻¹ × ℂ`. The Cayley transform
//!
//! ```text
//! (z, w) = (ζ / (1 + η), i (1 − η) / (1 + η))
//! (ζ, η) = (2i z / (i + w), (i − w) / (i + w))
//! ```
//!
//! sends the sphere minus `−P` onto `Im w = ‖z‖²` and the open ball onto
//! `Im w > ‖z‖²`.

use num_complex::Complex64;
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hilbert::{complex_gaussian, CVector};
use crate::EPS_DENOM;

const I: Complex64 = Complex64::new(0.0, 1.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Default classification tolerance for defect reports.
pub const DEFECT_TOL: f64 = 1e-12;

/// A point of `ℂⁿ` in ball coordinates, `Z = (ζ, η)` with `η = ⟨Z, e_n⟩`.
#[derive(Debug, Clone, PartialEq)]
pub struct BallPoint {
    coords: CVector,
}

impl BallPoint {
    pub fn new(coords: CVector) -> Result<Self> {
        if coords.dim() < 1 {
            return Err(Error::InvalidDimension(coords.dim()));
        }
        Ok(BallPoint { coords })
    }

    pub fn from_parts(zeta: &CVector, eta: Complex64) -> Result<Self> {
        BallPoint::new(zeta.push(eta))
    }

    /// The distinguished boundary point `P = e_n`.
    pub fn pole_point(n: usize) -> Self {
        BallPoint {
            coords: CVector::basis(n, n - 1),
        }
    }

    pub fn dim(&self) -> usize {
        self.coords.dim()
    }

    pub fn coords(&self) -> &CVector {
        &self.coords
    }

    /// Component orthogonal to `P`.
    pub fn zeta(&self) -> CVector {
        let n = self.dim();
        CVector::new(self.coords.as_slice()[..n - 1].to_vec()).expect("finite by construction")
    }

    pub fn eta(&self) -> Complex64 {
        self.coords.get(self.dim() - 1)
    }
}

/// A point `(z, w)` in Siegel (normal) coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct SiegelPoint {
    pub z: CVector,
    pub w: Complex64,
}

impl SiegelPoint {
    pub fn new(z: CVector, w: Complex64) -> Result<Self> {
        if !w.re.is_finite() || !w.im.is_finite() {
            return Err(Error::NonFinite);
        }
        Ok(SiegelPoint { z, w })
    }

    pub fn origin(z_dim: usize) -> Self {
        SiegelPoint {
            z: CVector::zeros(z_dim),
            w: Complex64::new(0.0, 0.0),
        }
    }

    pub fn z_dim(&self) -> usize {
        self.z.dim()
    }

    /// `sqrt(‖z‖² + |w|²)`.
    pub fn norm(&self) -> f64 {
        (self.z.norm_sq() + self.w.norm_sqr()).sqrt()
    }

    /// Euclidean distance in `ℂⁿ⁻¹ × ℂ`.
    pub fn distance(&self, other: &SiegelPoint) -> Result<f64> {
        let dz = self.z.try_sub(&other.z)?;
        Ok((dz.norm_sq() + (self.w - other.w).norm_sqr()).sqrt())
    }

    pub fn is_finite(&self) -> bool {
        self.z.is_finite() && self.w.re.is_finite() && self.w.im.is_finite()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Region {
    Boundary,
    Interior,
    Exterior,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DefectReport {
    pub value: f64,
    pub region: Region,
    pub tolerance: f64,
}

impl DefectReport {
    /// `interior_sign` is the sign the defect takes strictly inside.
    fn classify(value: f64, tolerance: f64, interior_sign: f64) -> Self {
        let region = if value.abs() <= tolerance {
            Region::Boundary
        } else if value * interior_sign > 0.0 {
            Region::Interior
        } else {
            Region::Exterior
        };
        DefectReport {
            value,
            region,
            tolerance,
        }
    }
}

pub fn cayley(p: &BallPoint) -> Result<SiegelPoint> {
    let eta = p.eta();
    let denom = ONE + eta;
    if denom.norm() <= EPS_DENOM {
        return Err(Error::CayleyPole {
            modulus: denom.norm(),
        });
    }
    let z = p.zeta().scale(ONE / denom);
    let w = I * (ONE - eta) / denom;
    SiegelPoint::new(z, w)
}

pub fn inverse_cayley(p: &SiegelPoint) -> Result<BallPoint> {
    let denom = I + p.w;
    if denom.norm() <= EPS_DENOM {
        return Err(Error::CayleyPole {
            modulus: denom.norm(),
        });
    }
    let zeta = p.z.scale(2.0 * I / denom);
    let eta = (I - p.w) / denom;
    BallPoint::from_parts(&zeta, eta)
}

/// `Im w − ‖z‖²`: positive inside `ℍ₊`, zero on `ℍ`.
pub fn siegel_defect_value(p: &SiegelPoint) -> f64 {
    p.w.im - p.z.norm_sq()
}

pub fn siegel_defect_with(p: &SiegelPoint, tol: f64) -> DefectReport {
    DefectReport::classify(siegel_defect_value(p), tol, 1.0)
}

pub fn siegel_defect(p: &SiegelPoint) -> DefectReport {
    siegel_defect_with(p, DEFECT_TOL)
}

/// `‖Z‖² − 1`: negative inside the ball.
pub fn ball_defect_value(p: &BallPoint) -> f64 {
    p.coords.norm_sq() - 1.0
}

pub fn ball_defect_with(p: &BallPoint, tol: f64) -> DefectReport {
    DefectReport::classify(ball_defect_value(p), tol, -1.0)
}

pub fn ball_defect(p: &BallPoint) -> DefectReport {
    ball_defect_with(p, DEFECT_TOL)
}

/// Bounds for the Siegel samplers: `‖z‖ ≤ rho_max`, `|Re w| ≤ t_max`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SamplerBounds {
    pub rho_max: f64,
    pub t_max: f64,
}

impl Default for SamplerBounds {
    fn default() -> Self {
        SamplerBounds {
            rho_max: 1.0,
            t_max: 1.0,
        }
    }
}

/// Uniform point of the closed ball of radius `radius` in `ℂⁿ`.
pub fn sample_in_ball<R: Rng + ?Sized>(n: usize, radius: f64, rng: &mut R) -> CVector {
    let dir = sample_unit_vector(n, rng);
    // radial law r^(2n-1) for the real 2n-dimensional ball
    let u: f64 = rng.gen();
    dir.scale_real(radius * u.powf(1.0 / (2 * n) as f64))
}

/// Uniform point of the unit sphere in `ℂⁿ`.
pub fn sample_unit_vector<R: Rng + ?Sized>(n: usize, rng: &mut R) -> CVector {
    loop {
        let v = CVector::new((0..n).map(|_| complex_gaussian(rng)).collect())
            .expect("gaussian samples are finite");
        let r = v.norm();
        if r > 1e-8 {
            return v.scale_real(1.0 / r);
        }
    }
}

/// Points of `ℍ`: `w = t + i‖z‖²`, so the defect is zero in construction
/// arithmetic.
pub fn sample_siegel_boundary<R: Rng + ?Sized>(
    n: usize,
    count: usize,
    bounds: SamplerBounds,
    rng: &mut R,
) -> Result<Vec<SiegelPoint>> {
    if n < 2 {
        return Err(Error::InvalidDimension(n));
    }
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let z = sample_in_ball(n - 1, bounds.rho_max, rng);
        let t = rng.gen_range(-bounds.t_max..=bounds.t_max);
        let w = Complex64::new(t, z.norm_sq());
        out.push(SiegelPoint { z, w });
    }
    Ok(out)
}

/// Points of `ℍ₊` with defect in `(0, 1]`, strictly interior.
pub fn sample_siegel_interior<R: Rng + ?Sized>(
    n: usize,
    count: usize,
    bounds: SamplerBounds,
    rng: &mut R,
) -> Result<Vec<SiegelPoint>> {
    let mut pts = sample_siegel_boundary(n, count, bounds, rng)?;
    for p in &mut pts {
        let lift: f64 = rng.gen_range(1e-3..=1.0);
        p.w += Complex64::new(0.0, lift);
    }
    Ok(pts)
}

/// Unit-sphere points with `|1 + η| > min_pole_distance`.
pub fn sample_sphere<R: Rng + ?Sized>(
    n: usize,
    count: usize,
    min_pole_distance: f64,
    rng: &mut R,
) -> Result<Vec<BallPoint>> {
    if n < 1 {
        return Err(Error::InvalidDimension(n));
    }
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let p = BallPoint::new(sample_unit_vector(n, rng))?;
        if (ONE + p.eta()).norm() > min_pole_distance {
            out.push(p);
        }
    }
    Ok(out)
}

/// Open-ball points with `‖Z‖ ≤ max_radius < 1` and `|1 + η| > min_pole_distance`.
pub fn sample_ball_interior<R: Rng + ?Sized>(
    n: usize,
    count: usize,
    max_radius: f64,
    min_pole_distance: f64,
    rng: &mut R,
) -> Result<Vec<BallPoint>> {
    if n < 1 {
        return Err(Error::InvalidDimension(n));
    }
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let p = BallPoint::new(sample_in_ball(n, max_radius, rng))?;
        if (ONE + p.eta()).norm() > min_pole_distance {
            out.push(p);
        }
    }
    Ok(out)
}
