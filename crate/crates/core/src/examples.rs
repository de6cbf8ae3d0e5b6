//! Two families of sphere-to-sphere polynomial maps whose derivative is never
//! onto at the boundary: the homogeneous-sum map and the generalized Whitney
//! map. Both live in ball coordinates, `Z ∈ ℂⁿ ↦ W ∈ ℂᴺ` with `N > n`.
//!
//! Multi-indices and variable labels are zero-based here; `z₁` in the usual
//! notation is `z[0]`.

use std::collections::HashMap;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::hilbert::CVector;
use crate::jets::{cauchy_derivatives, DiffConfig};

/// A polynomial map between ball coordinates of different dimensions.
pub trait BallMap {
    fn input_dim(&self) -> usize;

    fn output_dim(&self) -> usize;

    fn eval(&self, z: &CVector) -> Result<CVector>;

    /// Complex Jacobian at `z`, one Cauchy derivative per input direction.
    fn jacobian(&self, z: &CVector, cfg: &DiffConfig) -> Result<DMatrix<Complex64>> {
        let n = self.input_dim();
        let mut jac = DMatrix::zeros(self.output_dim(), n);
        for k in 0..n {
            let e_k = CVector::basis(n, k);
            let d = cauchy_derivatives(
                |t| Ok(self.eval(&z.try_add(&e_k.scale(t))?)?.into_vec()),
                &[1],
                cfg,
            )?;
            for (i, v) in d[0].iter().enumerate() {
                jac[(i, k)] = *v;
            }
        }
        Ok(jac)
    }
}

/// Numerical rank: singular values above `tol · σ_max`.
pub fn numerical_rank(m: &DMatrix<Complex64>, tol: f64) -> usize {
    let sv = m.clone().svd(false, false).singular_values;
    let max = sv.iter().cloned().fold(0.0, f64::max);
    sv.iter().filter(|&&s| s > tol * max).count()
}

fn check_input(expected: usize, z: &CVector) -> Result<()> {
    if z.dim() != expected {
        return Err(Error::DimensionMismatch {
            expected,
            found: z.dim(),
        });
    }
    Ok(())
}

/// All multi-indices `α ∈ {0..n}ᵏ`, `1 ≤ k ≤ K`, each with its slot `φ(α)`.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiIndexTable {
    vars: usize,
    degree_cap: usize,
    indices: Vec<Vec<usize>>,
    slots: HashMap<Vec<usize>, usize>,
}

impl MultiIndexTable {
    /// Graded lexicographic order: by length, then lexicographically.
    pub fn graded_lex(vars: usize, degree_cap: usize) -> Result<Self> {
        if vars == 0 {
            return Err(Error::InvalidDimension(0));
        }
        let mut indices = Vec::new();
        for k in 1..=degree_cap {
            // base-`vars` digits of 0..vars^k, most significant first
            for code in 0..vars.pow(k as u32) {
                let mut alpha = vec![0usize; k];
                let mut rest = code;
                for slot in alpha.iter_mut().rev() {
                    *slot = rest % vars;
                    rest /= vars;
                }
                indices.push(alpha);
            }
        }
        Ok(Self::from_order(vars, degree_cap, indices))
    }

    fn from_order(vars: usize, degree_cap: usize, indices: Vec<Vec<usize>>) -> Self {
        let slots = indices
            .iter()
            .enumerate()
            .map(|(i, a)| (a.clone(), i))
            .collect();
        MultiIndexTable {
            vars,
            degree_cap,
            indices,
            slots,
        }
    }

    /// Same index set, slots assigned by a random permutation.
    pub fn shuffled<R: Rng + ?Sized>(&self, rng: &mut R) -> Self {
        let mut order = self.indices.clone();
        order.shuffle(rng);
        Self::from_order(self.vars, self.degree_cap, order)
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn degree_cap(&self) -> usize {
        self.degree_cap
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn indices(&self) -> &[Vec<usize>] {
        &self.indices
    }

    pub fn slot(&self, alpha: &[usize]) -> Option<usize> {
        self.slots.get(alpha).copied()
    }
}

/// Coefficients `λ_1, …, λ_K` (stored zero-based: `coeffs[k-1] = λ_k`).
#[derive(Debug, Clone, PartialEq)]
pub struct LambdaSeq {
    coeffs: Vec<Complex64>,
}

impl LambdaSeq {
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(LambdaSeq { coeffs })
    }

    /// Rescales so that `Σ |λ_k|² = 1`.
    pub fn normalized(coeffs: Vec<Complex64>) -> Result<Self> {
        let total: f64 = coeffs.iter().map(|c| c.norm_sqr()).sum();
        if !(total > 0.0) {
            return Err(Error::InvalidParameter("λ must not vanish identically".into()));
        }
        let scale = total.sqrt().recip();
        LambdaSeq::new(coeffs.into_iter().map(|c| c * scale).collect())
    }

    /// `λ_k` for `k ≥ 1`; zero past the stored length.
    pub fn get(&self, k: usize) -> Complex64 {
        k.checked_sub(1)
            .and_then(|i| self.coeffs.get(i))
            .copied()
            .unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn mass(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }

    pub fn is_normalized(&self, tol: f64) -> bool {
        (self.mass() - 1.0).abs() <= tol
    }

    /// Largest `k` with `λ_k ≠ 0`.
    pub fn support_degree(&self) -> usize {
        self.coeffs
            .iter()
            .rposition(|c| c.norm() > 0.0)
            .map_or(0, |i| i + 1)
    }
}

/// `w_{φ(α)} = λ_{|α|} z_{α_1} ⋯ z_{α_k}`.
#[derive(Debug, Clone)]
pub struct HomogSumMap {
    lambda: LambdaSeq,
    table: MultiIndexTable,
}

impl HomogSumMap {
    pub fn new(lambda: LambdaSeq, table: MultiIndexTable) -> Self {
        HomogSumMap { lambda, table }
    }

    pub fn lambda(&self) -> &LambdaSeq {
        &self.lambda
    }

    pub fn table(&self) -> &MultiIndexTable {
        &self.table
    }

    /// `Σ_{k ≤ K} |λ_k|² rᵏ`, so that `‖H(Z)‖² = radius_function(‖Z‖²)`.
    pub fn radius_function(&self, r: f64) -> f64 {
        (1..=self.table.degree_cap)
            .map(|k| self.lambda.get(k).norm_sqr() * r.powi(k as i32))
            .sum()
    }
}

impl BallMap for HomogSumMap {
    fn input_dim(&self) -> usize {
        self.table.vars
    }

    fn output_dim(&self) -> usize {
        self.table.len()
    }

    fn eval(&self, z: &CVector) -> Result<CVector> {
        check_input(self.table.vars, z)?;
        let entries = self
            .table
            .indices
            .iter()
            .map(|alpha| {
                let monomial: Complex64 = alpha.iter().map(|&j| z.get(j)).product();
                self.lambda.get(alpha.len()) * monomial
            })
            .collect();
        CVector::new(entries)
    }
}

pub fn homog_sum_map(lambda: LambdaSeq, table: MultiIndexTable) -> HomogSumMap {
    HomogSumMap::new(lambda, table)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WhitneyOrder {
    Finite(usize),
    /// `p = ∞`, truncated to powers `q ≤ truncation`.
    Infinite { truncation: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WhitneySpec {
    pub order: WhitneyOrder,
    pub vars: usize,
}

impl WhitneySpec {
    pub fn new(order: WhitneyOrder, vars: usize) -> Result<Self> {
        if vars < 2 {
            return Err(Error::InvalidDimension(vars));
        }
        match order {
            WhitneyOrder::Finite(0) => Err(Error::InvalidParameter("p must be ≥ 1".into())),
            WhitneyOrder::Infinite { truncation: 0 } => {
                Err(Error::InvalidParameter("truncation Q must be ≥ 1".into()))
            }
            _ => Ok(WhitneySpec { order, vars }),
        }
    }

    /// Highest power `q` of `z₁` paired with the other variables.
    fn max_q(&self) -> usize {
        match self.order {
            WhitneyOrder::Finite(p) => p - 1,
            WhitneyOrder::Infinite { truncation } => truncation,
        }
    }
}

/// Coordinates `z₁^q z_k` for `k = 2..n` and `q` up to `p − 1` (or `Q`), plus
/// `z₁^p` when `p` is finite; ordered by `q`, then `k`, then the pure power.
#[derive(Debug, Clone)]
pub struct WhitneyMap {
    spec: WhitneySpec,
}

impl WhitneyMap {
    pub fn spec(&self) -> WhitneySpec {
        self.spec
    }
}

impl BallMap for WhitneyMap {
    fn input_dim(&self) -> usize {
        self.spec.vars
    }

    fn output_dim(&self) -> usize {
        let paired = (self.spec.max_q() + 1) * (self.spec.vars - 1);
        match self.spec.order {
            WhitneyOrder::Finite(_) => paired + 1,
            WhitneyOrder::Infinite { .. } => paired,
        }
    }

    fn eval(&self, z: &CVector) -> Result<CVector> {
        check_input(self.spec.vars, z)?;
        let z1 = z.get(0);
        let mut out = Vec::with_capacity(self.output_dim());
        let mut power = Complex64::new(1.0, 0.0);
        for _ in 0..=self.spec.max_q() {
            for k in 1..self.spec.vars {
                out.push(power * z.get(k));
            }
            power *= z1;
        }
        if let WhitneyOrder::Finite(_) = self.spec.order {
            // power is now z₁^p
            out.push(power);
        }
        CVector::new(out)
    }
}

pub fn whitney_map(spec: WhitneySpec) -> WhitneyMap {
    WhitneyMap { spec }
}

/// `(‖H(Z)‖² by summation, closed form)`. For finite `p` the closed form is
/// `(1 − |z₁|^{2p}) / (1 − |z₁|²) · (‖Z‖² − |z₁|²) + |z₁|^{2p}`; for the
/// truncated `p = ∞` map it is the partial sum
/// `(1 − |z₁|^{2Q+2}) / (1 − |z₁|²) · (‖Z‖² − |z₁|²)`.
pub fn whitney_norm_identity(spec: WhitneySpec, z: &CVector) -> Result<(f64, f64)> {
    check_input(spec.vars, z)?;
    let x = z.get(0).norm_sqr();
    if !(x < 1.0) {
        return Err(Error::Domain(format!("|z₁| = {} is not below 1", x.sqrt())));
    }
    let lhs = whitney_map(spec).eval(z)?.norm_sq();
    let rest = z.norm_sq() - x;
    let rhs = match spec.order {
        WhitneyOrder::Finite(p) => geometric(x, p) * rest + x.powi(p as i32),
        WhitneyOrder::Infinite { truncation } => geometric(x, truncation + 1) * rest,
    };
    Ok((lhs, rhs))
}

/// `(1 − x^terms) / (1 − x) = Σ_{j<terms} x^j`, summed directly to stay
/// accurate near `x = 1`.
fn geometric(x: f64, terms: usize) -> f64 {
    let mut sum = 0.0;
    let mut term = 1.0;
    for _ in 0..terms {
        sum += term;
        term *= x;
    }
    sum
}

/// `Z ↦ (0, z₁, …, z_n)`: an isometry onto a proper subspace.
#[derive(Debug, Clone, Copy)]
pub struct ShiftMap {
    pub vars: usize,
}

impl BallMap for ShiftMap {
    fn input_dim(&self) -> usize {
        self.vars
    }

    fn output_dim(&self) -> usize {
        self.vars + 1
    }

    fn eval(&self, z: &CVector) -> Result<CVector> {
        check_input(self.vars, z)?;
        let mut out = vec![Complex64::new(0.0, 0.0)];
        out.extend_from_slice(z.as_slice());
        CVector::new(out)
    }
}
