//! The origin-fixing automorphisms of the Siegel hypersurface `Im w = ‖z‖²`.
//!
//! Each one is the linear-fractional map
//!
//! ```text
//! H(z, w) = ( s U (z + a w) / D , s² w / D ),   D = 1 − 2i⟨z, a⟩ + (R − i‖a‖²) w
//! ```
//!
//! and factors as `ω_{U,s} ∘ φ_a ∘ H_R` with
//!
//! ```text
//! ω_{U,s}(z, w) = (s U z, s² w)
//! φ_a(z, w)     = ((z + w a) / E, w / E),   E = 1 − 2i⟨z, a⟩ − i w ‖a‖²
//! H_R(z, w)     = (z / (1 + R w), w / (1 + R w))
//! ```
//!
//! Composition and inversion are computed through jet extraction and
//! parameter recovery, so they exercise the same path that reads `(U, s, a, R)`
//! off an arbitrary map.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;

use crate::error::{Error, Result};
use crate::geometry::{cayley, inverse_cayley, sample_in_ball, BallPoint, SiegelPoint};
use crate::hilbert::{haar_unitary_with, inner, operator_norm, CVector, UnitaryMatrix};
use crate::jets::{extract_jet2, recover_params, DiffConfig, CHECK_TOL};
use crate::EPS_DENOM;

const I: Complex64 = Complex64::new(0.0, 1.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// A holomorphic self-map of a neighbourhood of the origin in `ℂⁿ⁻¹ × ℂ`.
///
/// `evaluate` must be deterministic and holomorphic on the bidisc
/// `{‖z‖ < r, |w| < r}` with `r = domain_radius()`.
pub trait HoloMap {
    fn z_dim(&self) -> usize;

    fn domain_radius(&self) -> f64;

    fn evaluate(&self, p: &SiegelPoint) -> Result<SiegelPoint>;
}

impl<T: HoloMap + ?Sized> HoloMap for &T {
    fn z_dim(&self) -> usize {
        (**self).z_dim()
    }

    fn domain_radius(&self) -> f64 {
        (**self).domain_radius()
    }

    fn evaluate(&self, p: &SiegelPoint) -> Result<SiegelPoint> {
        (**self).evaluate(p)
    }
}

/// Wraps a closure as a [`HoloMap`].
pub struct FnMap<F> {
    z_dim: usize,
    radius: f64,
    f: F,
}

impl<F> FnMap<F>
where
    F: Fn(&SiegelPoint) -> Result<SiegelPoint>,
{
    pub fn new(z_dim: usize, radius: f64, f: F) -> Self {
        FnMap { z_dim, radius, f }
    }
}

impl<F> HoloMap for FnMap<F>
where
    F: Fn(&SiegelPoint) -> Result<SiegelPoint>,
{
    fn z_dim(&self) -> usize {
        self.z_dim
    }

    fn domain_radius(&self) -> f64 {
        self.radius
    }

    fn evaluate(&self, p: &SiegelPoint) -> Result<SiegelPoint> {
        (self.f)(p)
    }
}

/// Sampling ranges for random automorphism parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParamRanges {
    pub a_max: f64,
    pub r_max: f64,
    pub s_min: f64,
    pub s_max: f64,
}

impl Default for ParamRanges {
    fn default() -> Self {
        ParamRanges {
            a_max: 1.0,
            r_max: 2.0,
            s_min: 0.5,
            s_max: 2.0,
        }
    }
}

/// The parameters `(U, s, a, R)` of an origin-fixing automorphism.
#[derive(Debug, Clone, PartialEq)]
pub struct AutParams {
    u: UnitaryMatrix,
    s: f64,
    a: CVector,
    r: f64,
}

impl AutParams {
    pub fn new(u: UnitaryMatrix, s: f64, a: CVector, r: f64) -> Result<Self> {
        if !(s > 0.0) || !s.is_finite() {
            return Err(Error::InvalidParameter(format!("s must be positive, got {s}")));
        }
        if !r.is_finite() {
            return Err(Error::InvalidParameter("R must be finite".into()));
        }
        if u.dim() != a.dim() {
            return Err(Error::DimensionMismatch {
                expected: u.dim(),
                found: a.dim(),
            });
        }
        Ok(AutParams { u, s, a, r })
    }

    pub fn identity(z_dim: usize) -> Self {
        AutParams {
            u: UnitaryMatrix::identity(z_dim),
            s: 1.0,
            a: CVector::zeros(z_dim),
            r: 0.0,
        }
    }

    /// Parameters of `ω_{U,s}`.
    pub fn omega(u: UnitaryMatrix, s: f64) -> Result<Self> {
        let m = u.dim();
        AutParams::new(u, s, CVector::zeros(m), 0.0)
    }

    /// Parameters of `φ_a`.
    pub fn phi(a: CVector) -> Result<Self> {
        AutParams::new(UnitaryMatrix::identity(a.dim()), 1.0, a, 0.0)
    }

    /// Parameters of `H_R`.
    pub fn h_r(z_dim: usize, r: f64) -> Result<Self> {
        AutParams::new(UnitaryMatrix::identity(z_dim), 1.0, CVector::zeros(z_dim), r)
    }

    pub fn random<G: Rng + ?Sized>(z_dim: usize, ranges: ParamRanges, rng: &mut G) -> Result<Self> {
        let u = haar_unitary_with(z_dim, rng)?;
        let s = rng.gen_range(ranges.s_min..=ranges.s_max);
        let a = sample_in_ball(z_dim, ranges.a_max, rng);
        let r = rng.gen_range(-ranges.r_max..=ranges.r_max);
        AutParams::new(u, s, a, r)
    }

    pub fn u(&self) -> &UnitaryMatrix {
        &self.u
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    pub fn a(&self) -> &CVector {
        &self.a
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn z_dim(&self) -> usize {
        self.u.dim()
    }

    /// `R − i‖a‖²`, the coefficient of `w` in the denominator.
    fn w_coefficient(&self) -> Complex64 {
        Complex64::new(self.r, -self.a.norm_sq())
    }

    /// Max of `‖ΔU‖_op`, `|Δs|`, `‖Δa‖`, `|ΔR|`.
    pub fn distance(&self, other: &AutParams) -> Result<f64> {
        if self.z_dim() != other.z_dim() {
            return Err(Error::DimensionMismatch {
                expected: self.z_dim(),
                found: other.z_dim(),
            });
        }
        let du = operator_norm(&(self.u.matrix() - other.u.matrix()));
        let da = self.a.try_sub(&other.a)?.norm();
        Ok(du
            .max((self.s - other.s).abs())
            .max(da)
            .max((self.r - other.r).abs()))
    }
}

impl HoloMap for AutParams {
    fn z_dim(&self) -> usize {
        self.u.dim()
    }

    /// `|D − 1| ≤ r (2‖a‖ + |R − i‖a‖²|)` on the bidisc of radius `r`.
    fn domain_radius(&self) -> f64 {
        1.0 / (2.0 * self.a.norm() + self.w_coefficient().norm())
    }

    fn evaluate(&self, p: &SiegelPoint) -> Result<SiegelPoint> {
        apply(self, p)
    }
}

fn check_dim(params_dim: usize, p: &SiegelPoint) -> Result<()> {
    if p.z_dim() != params_dim {
        return Err(Error::DimensionMismatch {
            expected: params_dim,
            found: p.z_dim(),
        });
    }
    Ok(())
}

fn guard(d: Complex64) -> Result<()> {
    if !(d.norm() > EPS_DENOM) {
        return Err(Error::AutomorphismPole { modulus: d.norm() });
    }
    Ok(())
}

/// `D = 1 − 2i⟨z, a⟩ + (R − i‖a‖²) w`.
pub fn denominator(params: &AutParams, p: &SiegelPoint) -> Result<Complex64> {
    check_dim(params.z_dim(), p)?;
    Ok(ONE - 2.0 * I * inner(&p.z, &params.a)? + params.w_coefficient() * p.w)
}

/// The closed-form automorphism `(s U (z + a w) / D, s² w / D)`.
pub fn apply(params: &AutParams, p: &SiegelPoint) -> Result<SiegelPoint> {
    let d = denominator(params, p)?;
    guard(d)?;
    let shifted = p.z.try_add(&params.a.scale(p.w))?;
    let z = params.u.apply(&shifted)?.scale(params.s / d);
    let w = params.s * params.s * p.w / d;
    SiegelPoint::new(z, w)
}

/// `ω_{U,s}(z, w) = (s U z, s² w)`.
pub fn omega_apply(u: &UnitaryMatrix, s: f64, p: &SiegelPoint) -> Result<SiegelPoint> {
    let z = u.apply(&p.z)?.scale_real(s);
    SiegelPoint::new(z, s * s * p.w)
}

/// `φ_a(z, w) = ((z + w a) / E, w / E)` with `E = 1 − 2i⟨z, a⟩ − i w ‖a‖²`.
pub fn phi_a_apply(a: &CVector, p: &SiegelPoint) -> Result<SiegelPoint> {
    check_dim(a.dim(), p)?;
    let e = ONE - 2.0 * I * inner(&p.z, a)? - I * p.w * a.norm_sq();
    guard(e)?;
    let z = p.z.try_add(&a.scale(p.w))?.scale(ONE / e);
    SiegelPoint::new(z, p.w / e)
}

/// `H_R(z, w) = (z / (1 + R w), w / (1 + R w))`.
pub fn h_r_apply(r: f64, p: &SiegelPoint) -> Result<SiegelPoint> {
    let d = ONE + r * p.w;
    guard(d)?;
    SiegelPoint::new(p.z.scale(ONE / d), p.w / d)
}

/// `ω_{U,s} ∘ φ_a ∘ H_R`, evaluated stage by stage.
pub fn factor_apply(params: &AutParams, p: &SiegelPoint) -> Result<SiegelPoint> {
    check_dim(params.z_dim(), p)?;
    let q = h_r_apply(params.r, p)?;
    let q = phi_a_apply(&params.a, &q)?;
    omega_apply(&params.u, params.s, &q)
}

/// `outer ∘ inner` as a map, with a certified holomorphy radius.
struct Composite<'a> {
    outer: &'a AutParams,
    inner: &'a AutParams,
}

impl HoloMap for Composite<'_> {
    fn z_dim(&self) -> usize {
        self.inner.z_dim()
    }

    // On the half-radius bidisc of `inner`, |D| ≥ 1/2, so ‖f‖ ≤ 2 s (1 + ‖a‖) r
    // and |g| ≤ 2 s² r; keep both inside the bidisc of `outer`.
    fn domain_radius(&self) -> f64 {
        let inner_r = self.inner.domain_radius();
        let s = self.inner.s;
        let growth = 2.0 * (s * (1.0 + self.inner.a.norm())).max(s * s);
        (0.5 * inner_r).min(self.outer.domain_radius() / growth)
    }

    fn evaluate(&self, p: &SiegelPoint) -> Result<SiegelPoint> {
        apply(self.outer, &apply(self.inner, p)?)
    }
}

/// Inverse of an automorphism, evaluated by solving the linear-fractional
/// relation for `(z, w)` given the image point.
struct Inverse<'a> {
    params: &'a AutParams,
}

impl Inverse<'_> {
    /// `(x, y) = (Uᴴ z' / s, w' / s²)`.
    fn normalized(&self, p: &SiegelPoint) -> Result<(CVector, Complex64)> {
        let s = self.params.s;
        let x = self.params.u.adjoint().apply(&p.z)?.scale_real(1.0 / s);
        Ok((x, p.w / (s * s)))
    }
}

impl HoloMap for Inverse<'_> {
    fn z_dim(&self) -> usize {
        self.params.z_dim()
    }

    fn domain_radius(&self) -> f64 {
        let p = self.params;
        let c = Complex64::new(p.r, p.a.norm_sq());
        1.0 / (2.0 * p.a.norm() / p.s + c.norm() / (p.s * p.s))
    }

    // With z + a w = D x and w = D y, the denominator satisfies
    // D (1 + 2i⟨x, a⟩ − (R + i‖a‖²) y) = 1.
    fn evaluate(&self, p: &SiegelPoint) -> Result<SiegelPoint> {
        check_dim(self.params.z_dim(), p)?;
        let (x, y) = self.normalized(p)?;
        let a = &self.params.a;
        let e = ONE + 2.0 * I * inner(&x, a)? - Complex64::new(self.params.r, a.norm_sq()) * y;
        guard(e)?;
        let z = x.try_sub(&a.scale(y))?.scale(ONE / e);
        SiegelPoint::new(z, y / e)
    }
}

fn recover_from_map<H: HoloMap>(map: &H) -> Result<AutParams> {
    let cfg = DiffConfig::fitted(map.domain_radius());
    let jet = extract_jet2(map, &cfg)?;
    recover_params(&jet, CHECK_TOL)
}

/// Parameters of `outer ∘ inner`, read off the composite's 2-jet.
pub fn compose(outer: &AutParams, inner: &AutParams) -> Result<AutParams> {
    if outer.z_dim() != inner.z_dim() {
        return Err(Error::DimensionMismatch {
            expected: outer.z_dim(),
            found: inner.z_dim(),
        });
    }
    recover_from_map(&Composite { outer, inner })
}

/// Parameters of the inverse automorphism, read off the 2-jet of the
/// explicit inverse map.
pub fn invert(params: &AutParams) -> Result<AutParams> {
    recover_from_map(&Inverse { params })
}

/// Evaluates the explicit inverse map at `p`.
pub fn apply_inverse(params: &AutParams, p: &SiegelPoint) -> Result<SiegelPoint> {
    Inverse { params }.evaluate(p)
}

/// The automorphism conjugated back to ball coordinates:
/// `inverse_cayley ∘ apply ∘ cayley`.
pub fn ball_automorphism(params: &AutParams, p: &BallPoint) -> Result<BallPoint> {
    if p.dim() != params.z_dim() + 1 {
        return Err(Error::DimensionMismatch {
            expected: params.z_dim() + 1,
            found: p.dim(),
        });
    }
    inverse_cayley(&apply(params, &cayley(p)?)?)
}

/// Matrix form of `s U`, i.e. `f_z(0)` of the automorphism.
pub fn linear_part(params: &AutParams) -> DMatrix<Complex64> {
    params.u.matrix().scale(params.s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{
        ball_defect_value, sample_siegel_boundary, sample_sphere, siegel_defect_value,
        SamplerBounds,
    };
    use crate::hilbert::haar_unitary;
    use rand_chacha::rand_core::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn pt(z: &[Complex64], w: Complex64) -> SiegelPoint {
        SiegelPoint::new(CVector::new(z.to_vec()).unwrap(), w).unwrap()
    }

    /// Closed-form inverse `(Uᴴ, 1/s, −U a / s, −R / s²)`, derived by hand.
    fn inverse_by_hand(p: &AutParams) -> AutParams {
        let a = p.u().apply(p.a()).unwrap().scale_real(-1.0 / p.s());
        AutParams::new(p.u().adjoint(), 1.0 / p.s(), a, -p.r() / (p.s() * p.s())).unwrap()
    }

    #[test]
    fn denominator_examples() {
        let p = pt(&[c(0.3, -0.2), c(1.0, 0.5)], c(0.7, 0.1));
        assert_eq!(denominator(&AutParams::identity(2), &p).unwrap(), ONE);

        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let q = AutParams::random(2, ParamRanges::default(), &mut rng).unwrap();
        assert_eq!(denominator(&q, &SiegelPoint::origin(2)).unwrap(), ONE);

        let a = AutParams::phi(CVector::basis(1, 0)).unwrap();
        let d = denominator(&a, &pt(&[c(1.0, 0.0)], c(0.0, 0.0))).unwrap();
        assert!((d - c(1.0, -2.0)).norm() < 1e-15);
    }

    #[test]
    fn apply_examples() {
        let p = pt(&[c(0.3, -0.2), c(1.0, 0.5)], c(0.7, 0.1));
        assert_eq!(apply(&AutParams::identity(2), &p).unwrap(), p);

        let scaled = AutParams::omega(UnitaryMatrix::identity(2), 2.0).unwrap();
        let img = apply(&scaled, &p).unwrap();
        assert!((&img.z - &p.z.scale_real(2.0)).norm() < 1e-15);
        assert!((img.w - 4.0 * p.w).norm() < 1e-15);
    }

    #[test]
    fn apply_pole_is_an_error() {
        // a = e₁, R = 0, z = 0: D = 1 − i w, zero at w = −i
        let q = AutParams::phi(CVector::basis(1, 0)).unwrap();
        let err = apply(&q, &pt(&[c(0.0, 0.0)], c(0.0, -1.0))).unwrap_err();
        assert!(matches!(err, Error::AutomorphismPole { .. }));
    }

    #[test]
    fn apply_preserves_hypersurface() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let bounds = SamplerBounds::default();
        for _ in 0..200 {
            let q = AutParams::random(3, ParamRanges::default(), &mut rng).unwrap();
            let p = &sample_siegel_boundary(4, 1, bounds, &mut rng).unwrap()[0];
            if denominator(&q, p).unwrap().norm() <= 0.1 {
                continue;
            }
            let img = apply(&q, p).unwrap();
            let tol = 1e-10 * (1.0 + p.w.norm_sqr());
            assert!(siegel_defect_value(&img).abs() <= tol);
        }
    }

    #[test]
    fn omega_examples() {
        let p = pt(&[c(0.3, 0.4)], c(-0.2, 0.6));
        assert_eq!(omega_apply(&UnitaryMatrix::identity(1), 1.0, &p).unwrap(), p);

        let u = haar_unitary(3, 4).unwrap();
        let p = pt(&[c(0.3, 0.4), c(0.1, 0.0), c(-0.5, 0.2)], c(-0.2, 0.6));
        let img = omega_apply(&u, 1.7, &p).unwrap();
        let lhs = siegel_defect_value(&img);
        assert!((lhs - 1.7f64.powi(2) * siegel_defect_value(&p)).abs() < 1e-14);

        let q = AutParams::omega(u.clone(), 1.7).unwrap();
        assert!(apply(&q, &p).unwrap().distance(&img).unwrap() < 1e-15);
    }

    #[test]
    fn phi_examples() {
        let p = pt(&[c(0.3, 0.4), c(0.1, -0.1)], c(-0.2, 0.6));
        assert_eq!(phi_a_apply(&CVector::zeros(2), &p).unwrap(), p);
        let a = CVector::new(vec![c(0.4, -0.3), c(0.2, 0.9)]).unwrap();
        let origin = SiegelPoint::origin(2);
        assert_eq!(phi_a_apply(&a, &origin).unwrap(), origin);

        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for p in sample_siegel_boundary(3, 100, SamplerBounds::default(), &mut rng).unwrap() {
            let a = sample_in_ball(2, 1.0, &mut rng);
            if let Ok(img) = phi_a_apply(&a, &p) {
                assert!(siegel_defect_value(&img).abs() <= 1e-10 * (1.0 + p.w.norm_sqr()));
            }
        }
    }

    #[test]
    fn h_r_examples() {
        let p = pt(&[c(0.3, 0.4)], c(-0.2, 0.6));
        assert_eq!(h_r_apply(0.0, &p).unwrap(), p);
        let flat = pt(&[c(0.3, 0.4)], c(0.0, 0.0));
        assert_eq!(h_r_apply(1.3, &flat).unwrap(), flat);

        // Im g − ‖f‖² = (Im w − ‖z‖²) / |1 + R w|²
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..200 {
            let z = sample_in_ball(2, 1.0, &mut rng);
            let w = c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            let r: f64 = rng.gen_range(-2.0..2.0);
            let p = SiegelPoint::new(z, w).unwrap();
            let d = ONE + r * w;
            if d.norm() < 0.1 {
                continue;
            }
            let img = h_r_apply(r, &p).unwrap();
            let expected = siegel_defect_value(&p) / d.norm_sqr();
            assert!((siegel_defect_value(&img) - expected).abs() <= 1e-12);
        }
    }

    #[test]
    fn factorization_matches_closed_form() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let id = AutParams::identity(2);
        let p = pt(&[c(0.3, 0.4), c(0.0, 0.1)], c(-0.2, 0.6));
        assert!(factor_apply(&id, &p).unwrap().distance(&p).unwrap() < 1e-16);

        let mut worst = 0.0f64;
        for _ in 0..1000 {
            let q = AutParams::random(3, ParamRanges::default(), &mut rng).unwrap();
            let z = sample_in_ball(3, 0.5, &mut rng);
            let w = c(rng.gen_range(-0.3..0.3), rng.gen_range(-0.3..0.3));
            let p = SiegelPoint::new(z, w).unwrap();
            if let (Ok(x), Ok(y)) = (apply(&q, &p), factor_apply(&q, &p)) {
                worst = worst.max(x.distance(&y).unwrap());
            }
        }
        assert!(worst <= 1e-12, "{worst}");
    }

    #[test]
    fn compose_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let q = AutParams::random(2, ParamRanges::default(), &mut rng).unwrap();
        let c1 = compose(&AutParams::identity(2), &q).unwrap();
        assert!(c1.distance(&q).unwrap() <= 1e-10, "{:?}", c1.distance(&q));

        let u = haar_unitary(2, 1).unwrap();
        let v = haar_unitary(2, 2).unwrap();
        let outer = AutParams::omega(u.clone(), 1.5).unwrap();
        let inner_ = AutParams::omega(v.clone(), 0.7).unwrap();
        let expected = AutParams::omega(u.compose(&v).unwrap(), 1.05).unwrap();
        assert!(compose(&outer, &inner_).unwrap().distance(&expected).unwrap() <= 1e-10);
    }

    #[test]
    fn compose_is_pointwise_composition() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..5 {
            let outer = AutParams::random(3, ParamRanges::default(), &mut rng).unwrap();
            let inner_ = AutParams::random(3, ParamRanges::default(), &mut rng).unwrap();
            let comp = compose(&outer, &inner_).unwrap();
            for _ in 0..100 {
                let z = sample_in_ball(3, 0.05, &mut rng);
                let w = c(rng.gen_range(-0.05..0.05), rng.gen_range(-0.05..0.05));
                let p = SiegelPoint::new(z, w).unwrap();
                let direct = apply(&outer, &apply(&inner_, &p).unwrap()).unwrap();
                assert!(apply(&comp, &p).unwrap().distance(&direct).unwrap() <= 1e-9);
            }
        }
    }

    #[test]
    fn invert_examples() {
        let inv = invert(&AutParams::identity(3)).unwrap();
        assert!(inv.distance(&AutParams::identity(3)).unwrap() <= 1e-10);

        let u = haar_unitary(3, 8).unwrap();
        let om = AutParams::omega(u.clone(), 1.8).unwrap();
        let expected = AutParams::omega(u.adjoint(), 1.0 / 1.8).unwrap();
        assert!(invert(&om).unwrap().distance(&expected).unwrap() <= 1e-10);
    }

    #[test]
    fn invert_matches_hand_derivation_and_roundtrips() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..10 {
            let q = AutParams::random(2, ParamRanges::default(), &mut rng).unwrap();
            let inv = invert(&q).unwrap();
            assert!(inv.distance(&inverse_by_hand(&q)).unwrap() <= 1e-9);
            let back = compose(&q, &inv).unwrap();
            assert!(back.distance(&AutParams::identity(2)).unwrap() <= 1e-9);
            for _ in 0..20 {
                let z = sample_in_ball(2, 0.05, &mut rng);
                let p = SiegelPoint::new(z, c(0.01, 0.02)).unwrap();
                let there = apply(&q, &p).unwrap();
                assert!(apply(&inv, &there).unwrap().distance(&p).unwrap() <= 1e-9);
                assert!(apply_inverse(&q, &there).unwrap().distance(&p).unwrap() <= 1e-12);
            }
        }
    }

    #[test]
    fn ball_automorphism_preserves_sphere() {
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        let id = AutParams::identity(2);
        let pole = BallPoint::pole_point(3);
        let img = ball_automorphism(&id, &pole).unwrap();
        assert!((&img.coords().clone() - pole.coords()).norm() < 1e-15);

        for _ in 0..300 {
            let q = AutParams::random(2, ParamRanges::default(), &mut rng).unwrap();
            let img = ball_automorphism(&q, &pole).unwrap();
            assert!(ball_defect_value(&img).abs() <= 1e-10);
            let p = &sample_sphere(3, 1, 0.1, &mut rng).unwrap()[0];
            match ball_automorphism(&q, p) {
                Ok(img) => assert!(ball_defect_value(&img).abs() <= 1e-9),
                Err(e) => assert!(e.is_pole()),
            }
        }
    }

    #[test]
    fn params_reject_invalid_scale() {
        let u = UnitaryMatrix::identity(1);
        assert!(AutParams::new(u.clone(), 0.0, CVector::zeros(1), 0.0).is_err());
        assert!(AutParams::new(u, 1.0, CVector::zeros(2), 0.0).is_err());
    }
}
