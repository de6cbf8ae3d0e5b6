//! Second-order jets of holomorphic maps at the origin, computed with the
//! trapezoidal rule on Cauchy's integral, and recovery of `(U, s, a, R)`.
//!
//! For `φ` holomorphic on `|t| ≤ ρ`,
//!
//! ```text
//! φ⁽ᵏ⁾(0) ≈ k! / (M ρᵏ) · Σ_{m<M} φ(ρ e^{2πim/M}) e^{−2πikm/M}
//! ```
//!
//! which is exact for polynomials of degree below `M` (aliasing only pulls in
//! coefficients of degree `k + M`, `k + 2M`, …) and converges geometrically
//! for analytic `φ`.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::autgroup::{AutParams, HoloMap};
use crate::error::{Error, Result};
use crate::geometry::SiegelPoint;
use crate::hilbert::{condition_estimate, inner, solve, unitarity_defect, CVector, UnitaryMatrix, KAPPA_MAX};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Tolerance for identity checks on extracted jets.
pub const CHECK_TOL: f64 = 1e-9;

/// `|H(0,0)|` above this is rejected as not origin-fixing.
pub const ORIGIN_TOL: f64 = 1e-12;

/// Circle radius and node count for Cauchy differentiation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiffConfig {
    pub radius: f64,
    pub nodes: usize,
}

impl Default for DiffConfig {
    fn default() -> Self {
        DiffConfig {
            radius: 0.1,
            nodes: 32,
        }
    }
}

impl DiffConfig {
    pub fn new(radius: f64, nodes: usize) -> Result<Self> {
        let cfg = DiffConfig { radius, nodes };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Default settings with the radius shrunk to a quarter of `domain_radius`
    /// when the map's domain is small.
    pub fn fitted(domain_radius: f64) -> Self {
        let base = DiffConfig::default();
        DiffConfig {
            radius: base.radius.min(0.25 * domain_radius),
            ..base
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.radius > 0.0) || !self.radius.is_finite() {
            return Err(Error::Config(format!("radius must be positive, got {}", self.radius)));
        }
        if self.nodes < 8 || !self.nodes.is_power_of_two() {
            return Err(Error::Config(format!(
                "nodes must be a power of two ≥ 8, got {}",
                self.nodes
            )));
        }
        Ok(())
    }
}

fn factorial(k: usize) -> f64 {
    (1..=k).map(|j| j as f64).product()
}

/// Derivatives of orders `orders` at `0` of a vector-valued `φ`, sharing one
/// pass of evaluations over the circle. Sums are taken in node order.
pub fn cauchy_derivatives<F>(phi: F, orders: &[usize], cfg: &DiffConfig) -> Result<Vec<Vec<Complex64>>>
where
    F: Fn(Complex64) -> Result<Vec<Complex64>>,
{
    cfg.validate()?;
    let m = cfg.nodes;
    if let Some(&k) = orders.iter().find(|&&k| k > m / 2) {
        return Err(Error::Config(format!("order {k} exceeds nodes/2 = {}", m / 2)));
    }
    let mut acc: Vec<Vec<Complex64>> = vec![Vec::new(); orders.len()];
    for j in 0..m {
        let theta = 2.0 * std::f64::consts::PI * j as f64 / m as f64;
        let t = Complex64::from_polar(cfg.radius, theta);
        let values = phi(t)?;
        for (slot, &k) in acc.iter_mut().zip(orders) {
            // e^{−ikθ}, reduced mod M to keep the angle small
            let twiddle = Complex64::from_polar(
                1.0,
                -2.0 * std::f64::consts::PI * ((k * j) % m) as f64 / m as f64,
            );
            if slot.is_empty() {
                slot.resize(values.len(), Complex64::new(0.0, 0.0));
            }
            if slot.len() != values.len() {
                return Err(Error::DimensionMismatch {
                    expected: slot.len(),
                    found: values.len(),
                });
            }
            for (s, v) in slot.iter_mut().zip(&values) {
                *s += v * twiddle;
            }
        }
    }
    for (slot, &k) in acc.iter_mut().zip(orders) {
        let scale = factorial(k) / (m as f64 * cfg.radius.powi(k as i32));
        for s in slot.iter_mut() {
            *s *= scale;
        }
    }
    Ok(acc)
}

/// `φ⁽ᵏ⁾(0)` for scalar `φ`.
pub fn cauchy_derivative<F>(phi: F, k: usize, cfg: &DiffConfig) -> Result<Complex64>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    let out = cauchy_derivatives(|t| phi(t).map(|v| vec![v]), &[k], cfg)?;
    Ok(out[0][0])
}

/// First and second derivatives at the origin of `H = (f, g)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Jet2 {
    pub f_z: DMatrix<Complex64>,
    pub f_w: CVector,
    pub g_z: CVector,
    pub g_w: Complex64,
    pub g_w2: Complex64,
    /// `f_zw[(i, k)] = ∂²f_i / ∂z_k ∂w`.
    pub f_zw: DMatrix<Complex64>,
    pub f_w2: CVector,
}

impl Jet2 {
    pub fn z_dim(&self) -> usize {
        self.f_w.dim()
    }

    pub fn is_finite(&self) -> bool {
        let finite = |c: &Complex64| c.re.is_finite() && c.im.is_finite();
        self.f_z.iter().all(finite)
            && self.f_zw.iter().all(finite)
            && self.f_w.is_finite()
            && self.g_z.is_finite()
            && self.f_w2.is_finite()
            && finite(&self.g_w)
            && finite(&self.g_w2)
    }

    /// Max entry of `|conj(g_w) δ_ij − ⟨f_z e_i, f_z e_j⟩|`.
    pub fn levi2_residual(&self) -> f64 {
        let gram = self.f_z.adjoint() * &self.f_z;
        let n = gram.nrows();
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                let lhs = if i == j { self.g_w.conj() } else { Complex64::new(0.0, 0.0) };
                // ⟨f_z e_i, f_z e_j⟩ = (f_zᴴ f_z)_{ji}
                worst = worst.max((lhs - gram[(j, i)]).norm());
            }
        }
        worst
    }

    /// `R` before its imaginary part is checked and discarded:
    /// `(−g_{w²}/2 + i‖f_w‖²) / g_w`.
    pub fn complex_r(&self) -> Complex64 {
        (-0.5 * self.g_w2 + I * self.f_w.norm_sq()) / self.g_w
    }
}

fn flatten(p: SiegelPoint) -> Vec<Complex64> {
    let mut v = p.z.into_vec();
    v.push(p.w);
    v
}

fn point(z: CVector, w: Complex64) -> SiegelPoint {
    SiegelPoint { z, w }
}

/// Extracts the 2-jet of `h` at the origin by Cauchy integrals along the
/// coordinate axes; `f_zw` comes from nested loops (the `w`-derivative of the
/// `z_k`-directional derivative).
pub fn extract_jet2<H: HoloMap + ?Sized>(h: &H, cfg: &DiffConfig) -> Result<Jet2> {
    cfg.validate()?;
    let m = h.z_dim();
    if !(cfg.radius < h.domain_radius()) {
        return Err(Error::Config(format!(
            "differentiation radius {} not inside domain radius {}",
            cfg.radius,
            h.domain_radius()
        )));
    }
    let at_origin = h.evaluate(&SiegelPoint::origin(m))?;
    let offset = at_origin.norm();
    if !(offset <= ORIGIN_TOL) {
        return Err(Error::NotOriginFixing { offset });
    }

    let zero = Complex64::new(0.0, 0.0);
    let mut f_z = DMatrix::zeros(m, m);
    let mut g_z = vec![zero; m];
    for k in 0..m {
        let e_k = CVector::basis(m, k);
        let d = cauchy_derivatives(|t| h.evaluate(&point(e_k.scale(t), zero)).map(flatten), &[1], cfg)?;
        for i in 0..m {
            f_z[(i, k)] = d[0][i];
        }
        g_z[k] = d[0][m];
    }

    let d = cauchy_derivatives(
        |t| h.evaluate(&point(CVector::zeros(m), t)).map(flatten),
        &[1, 2],
        cfg,
    )?;
    let f_w = CVector::new(d[0][..m].to_vec())?;
    let g_w = d[0][m];
    let f_w2 = CVector::new(d[1][..m].to_vec())?;
    let g_w2 = d[1][m];

    let mut f_zw = DMatrix::zeros(m, m);
    for k in 0..m {
        let e_k = CVector::basis(m, k);
        let directional = |t: Complex64| -> Result<Vec<Complex64>> {
            let inner = cauchy_derivatives(
                |s| h.evaluate(&point(e_k.scale(s), t)).map(flatten),
                &[1],
                cfg,
            )?;
            Ok(inner.into_iter().next().unwrap_or_default())
        };
        let d = cauchy_derivatives(directional, &[1], cfg)?;
        for i in 0..m {
            f_zw[(i, k)] = d[0][i];
        }
    }

    let jet = Jet2 {
        f_z,
        f_w,
        g_z: CVector::new(g_z)?,
        g_w,
        g_w2,
        f_zw,
        f_w2,
    };
    if !jet.is_finite() {
        return Err(Error::NonFinite);
    }
    Ok(jet)
}

/// Central-difference 2-jet with step `h`. Only used to cross-check
/// [`extract_jet2`].
pub fn finite_difference_jet2<H: HoloMap + ?Sized>(h: &H, step: f64) -> Result<Jet2> {
    let m = h.z_dim();
    let zero = Complex64::new(0.0, 0.0);
    let step_c = Complex64::new(step, 0.0);
    let eval = |z: CVector, w: Complex64| h.evaluate(&point(z, w)).map(flatten);
    let diff = |a: &[Complex64], b: &[Complex64]| -> Vec<Complex64> {
        a.iter().zip(b).map(|(x, y)| x - y).collect()
    };

    let mut f_z = DMatrix::zeros(m, m);
    let mut g_z = vec![zero; m];
    let mut f_zw = DMatrix::zeros(m, m);
    for k in 0..m {
        let e_k = CVector::basis(m, k);
        let plus = eval(e_k.scale(step_c), zero)?;
        let minus = eval(e_k.scale(-step_c), zero)?;
        let d = diff(&plus, &minus);
        for i in 0..m {
            f_z[(i, k)] = d[i] / (2.0 * step);
        }
        g_z[k] = d[m] / (2.0 * step);

        let pp = eval(e_k.scale(step_c), step_c)?;
        let pm = eval(e_k.scale(step_c), -step_c)?;
        let mp = eval(e_k.scale(-step_c), step_c)?;
        let mm = eval(e_k.scale(-step_c), -step_c)?;
        for i in 0..m {
            f_zw[(i, k)] = (pp[i] - pm[i] - mp[i] + mm[i]) / (4.0 * step * step);
        }
    }

    let plus = eval(CVector::zeros(m), step_c)?;
    let minus = eval(CVector::zeros(m), -step_c)?;
    let center = eval(CVector::zeros(m), zero)?;
    let first: Vec<_> = diff(&plus, &minus).into_iter().map(|d| d / (2.0 * step)).collect();
    let second: Vec<_> = (0..=m)
        .map(|i| (plus[i] - 2.0 * center[i] + minus[i]) / (step * step))
        .collect();

    Ok(Jet2 {
        f_z,
        f_w: CVector::new(first[..m].to_vec())?,
        g_z: CVector::new(g_z)?,
        g_w: first[m],
        g_w2: second[m],
        f_zw,
        f_w2: CVector::new(second[..m].to_vec())?,
    })
}

/// Largest entrywise difference between two jets.
pub fn jet_distance(a: &Jet2, b: &Jet2) -> Result<f64> {
    if a.z_dim() != b.z_dim() {
        return Err(Error::DimensionMismatch {
            expected: a.z_dim(),
            found: b.z_dim(),
        });
    }
    let mat = |x: &DMatrix<Complex64>, y: &DMatrix<Complex64>| {
        (x - y).iter().map(|c| c.norm()).fold(0.0, f64::max)
    };
    Ok(mat(&a.f_z, &b.f_z)
        .max(mat(&a.f_zw, &b.f_zw))
        .max(a.f_w.try_sub(&b.f_w)?.max_abs())
        .max(a.g_z.try_sub(&b.g_z)?.max_abs())
        .max(a.f_w2.try_sub(&b.f_w2)?.max_abs())
        .max((a.g_w - b.g_w).norm())
        .max((a.g_w2 - b.g_w2).norm()))
}

/// Reads `(U, s, a, R)` off a 2-jet:
///
/// ```text
/// U = f_z(0) / √g_w(0)    s = √g_w(0)
/// a = f_z(0)⁻¹ f_w(0)     R = (−g_{w²}(0)/2 + i‖f_w(0)‖²) / g_w(0)
/// ```
///
/// Each hypothesis is checked against `tol` first, and a failure names the
/// identity that broke.
pub fn recover_params(jet: &Jet2, tol: f64) -> Result<AutParams> {
    let g_w = jet.g_w;
    if !(g_w.re > tol) || !(g_w.im.abs() <= tol) {
        return Err(Error::GwNotPositiveReal {
            re: g_w.re,
            im: g_w.im,
        });
    }
    let g_z = jet.g_z.max_abs();
    if !(g_z <= tol) {
        return Err(Error::GzNonzero { residual: g_z });
    }
    let condition = condition_estimate(&jet.f_z);
    if !(condition <= KAPPA_MAX) {
        return Err(Error::DerivativeNotOnto { condition });
    }
    let s = g_w.re.sqrt();
    let u = jet.f_z.unscale(s);
    let defect = unitarity_defect(&u);
    if !(defect <= tol) {
        return Err(Error::NormalizedFzNotUnitary { defect });
    }
    let u = UnitaryMatrix::new(u, tol).map_err(|_| Error::NormalizedFzNotUnitary { defect })?;
    let a = solve(&jet.f_z, &jet.f_w).map_err(|e| match e {
        Error::NotInvertible { condition } => Error::DerivativeNotOnto { condition },
        other => other,
    })?;
    let r = jet.complex_r();
    if !(r.im.abs() <= tol) {
        return Err(Error::RNotReal { im: r.im });
    }
    AutParams::new(u, s, a, r.re)
}

/// Max over samples of
/// `|conj(g_w(0)) ⟨z, u⟩ − ⟨f(z, 0), f_z(0) u + 2i ⟨u, z⟩ f_w(0)⟩|`.
pub fn check_levi<H: HoloMap + ?Sized>(
    h: &H,
    cfg: &DiffConfig,
    samples: &[(CVector, CVector)],
) -> Result<f64> {
    let jet = extract_jet2(h, cfg)?;
    let mut worst = 0.0f64;
    for (z, u) in samples {
        let f = h.evaluate(&point(z.clone(), Complex64::new(0.0, 0.0)))?.z;
        let fz_u = CVector::from_dvector(&jet.f_z * u.as_dvector())?;
        let probe = fz_u.try_add(&jet.f_w.scale(2.0 * I * inner(u, z)?))?;
        let lhs = jet.g_w.conj() * inner(z, u)?;
        let rhs = inner(&f, &probe)?;
        worst = worst.max((lhs - rhs).norm());
    }
    Ok(worst)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarizationReport {
    pub max_residual: f64,
    pub evaluated: usize,
    pub skipped: usize,
}

/// Checks `g(z,w) − conj(g(χ,τ)) = 2i ⟨f(z,w), f(χ,τ)⟩` on the complexified
/// set `w = conj(τ) + 2i ⟨z, χ⟩`. Samples `(z, χ, τ)` that hit a pole or the
/// edge of the domain are skipped.
pub fn check_polarization<H: HoloMap + ?Sized>(
    h: &H,
    samples: &[(CVector, CVector, Complex64)],
) -> Result<PolarizationReport> {
    let mut worst = 0.0f64;
    let mut evaluated = 0;
    let mut skipped = 0;
    for (z, chi, tau) in samples {
        let w = tau.conj() + 2.0 * I * inner(z, chi)?;
        let left = h.evaluate(&point(z.clone(), w));
        let right = h.evaluate(&point(chi.clone(), *tau));
        match (left, right) {
            (Ok(l), Ok(r)) => {
                let residual = (l.w - r.w.conj() - 2.0 * I * inner(&l.z, &r.z)?).norm();
                worst = worst.max(residual);
                evaluated += 1;
            }
            (Err(e), _) | (_, Err(e)) if e.is_pole() || matches!(e, Error::Domain(_)) => {
                log::warn!("polarization sample skipped: {e}");
                skipped += 1;
            }
            (Err(e), _) | (_, Err(e)) => return Err(e),
        }
    }
    if evaluated == 0 {
        return Err(Error::Domain("every polarization sample was skipped".into()));
    }
    Ok(PolarizationReport {
        max_residual: worst,
        evaluated,
        skipped,
    })
}
