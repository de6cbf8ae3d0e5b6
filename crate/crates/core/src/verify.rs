//! Seeded verification harness: a registry of named residual checks grouped
//! into suites, a runner, and a JSON-lines report.
//!
//! Every check draws from its own generator seeded by
//! `(master seed, check name, dimension)`, so results do not depend on which
//! other checks run or on thread scheduling.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::autgroup::{
    apply, ball_automorphism, compose, denominator, factor_apply, h_r_apply, invert, omega_apply,
    phi_a_apply, AutParams, FnMap, HoloMap, ParamRanges,
};
use crate::error::{Error, Result};
use crate::examples::{
    homog_sum_map, whitney_map, whitney_norm_identity, BallMap, LambdaSeq, MultiIndexTable,
    WhitneyOrder, WhitneySpec,
};
use crate::geometry::{
    ball_defect_value, cayley, inverse_cayley, sample_in_ball, sample_siegel_boundary,
    sample_siegel_interior, sample_sphere, sample_unit_vector, siegel_defect_value,
    BallPoint, SamplerBounds, SiegelPoint,
};
use crate::hilbert::{complex_gaussian, CVector};
use crate::jets::{
    cauchy_derivatives, check_levi, check_polarization, extract_jet2, finite_difference_jet2,
    recover_params, DiffConfig, CHECK_TOL,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    Geometry,
    Autgroup,
    Jets,
    Examples,
}

impl Suite {
    pub const ALL: [Suite; 4] = [Suite::Geometry, Suite::Autgroup, Suite::Jets, Suite::Examples];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Geometry => "geometry",
            Suite::Autgroup => "autgroup",
            Suite::Jets => "jets",
            Suite::Examples => "examples",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown suite `{s}`")))
    }
}

/// Expands suite names, accepting `all`.
pub fn parse_suites<S: AsRef<str>>(names: &[S]) -> Result<BTreeSet<Suite>> {
    let mut out = BTreeSet::new();
    for name in names {
        match name.as_ref() {
            "all" => out.extend(Suite::ALL),
            other => {
                out.insert(other.parse()?);
            }
        }
    }
    if out.is_empty() {
        out.extend(Suite::ALL);
    }
    Ok(out)
}

/// Parses `name=value`.
pub fn parse_tol_override(s: &str) -> Result<(String, f64)> {
    let (name, value) = s
        .split_once('=')
        .ok_or_else(|| Error::Config(format!("tolerance override `{s}` is not name=value")))?;
    let value: f64 = value
        .trim()
        .parse()
        .map_err(|_| Error::Config(format!("tolerance `{value}` is not a number")))?;
    Ok((name.trim().to_string(), value))
}

pub const DEFAULT_DIMS: [usize; 3] = [2, 4, 8];

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub dims: Vec<usize>,
    pub seed: u64,
    pub samples: usize,
    /// Keyed by base check name (`jets.levi1`) or full name (`jets.levi1[n=4]`).
    pub tol_overrides: BTreeMap<String, f64>,
    pub suites: BTreeSet<Suite>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            dims: DEFAULT_DIMS.to_vec(),
            seed: 0,
            samples: 1000,
            tol_overrides: BTreeMap::new(),
            suites: Suite::ALL.into_iter().collect(),
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.dims.is_empty() {
            return Err(Error::Config("no dimensions selected".into()));
        }
        if let Some(&n) = self.dims.iter().find(|&&n| n < 2) {
            return Err(Error::Config(format!("dimension must be ≥ 2, got {n}")));
        }
        if self.samples < 1 {
            return Err(Error::Config("samples must be ≥ 1".into()));
        }
        for (name, &tol) in &self.tol_overrides {
            let base = name.split('[').next().unwrap_or(name);
            if !CHECKS.iter().any(|c| c.name == base) {
                return Err(Error::Config(format!("unknown check `{name}` in tolerance override")));
            }
            if !(tol >= 0.0) {
                return Err(Error::Config(format!("tolerance for `{name}` must be ≥ 0")));
            }
        }
        Ok(())
    }

    fn tolerance(&self, check: &Check, full_name: &str) -> f64 {
        self.tol_overrides
            .get(full_name)
            .or_else(|| self.tol_overrides.get(check.name))
            .copied()
            .unwrap_or(check.tol)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub status: Status,
    /// `None` when the check itself raised an error.
    pub residual: Option<f64>,
    pub tol: f64,
    pub samples: usize,
    pub ms: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl CheckResult {
    fn new(name: String, outcome: Result<f64>, tol: f64, samples: usize, ms: f64) -> Self {
        let (residual, error) = match outcome {
            Ok(r) => (Some(r), None),
            Err(e) => (None, Some(e.to_string())),
        };
        let status = match residual {
            Some(r) if r <= tol => Status::Pass,
            _ => Status::Fail,
        };
        CheckResult {
            name,
            status,
            residual,
            tol,
            samples,
            ms,
            error,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub name: String,
    pub status: Status,
    pub checks: usize,
    pub failed: usize,
}

pub fn summarize(results: &[CheckResult]) -> Summary {
    let failed = results.iter().filter(|r| r.status == Status::Fail).count();
    Summary {
        name: "summary".into(),
        status: if failed == 0 { Status::Pass } else { Status::Fail },
        checks: results.len(),
        failed,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunOutcome {
    pub results: Vec<CheckResult>,
    pub exit_code: i32,
}

type CheckFn = fn(&mut ChaCha8Rng, usize, usize) -> Result<f64>;

/// A residual check: `run(rng, dim, samples)` returns the max residual.
pub struct Check {
    pub name: &'static str,
    pub suite: Suite,
    pub tol: f64,
    /// Cap on samples for expensive checks.
    pub sample_cap: Option<usize>,
    run: CheckFn,
}

impl Check {
    pub fn samples(&self, requested: usize) -> usize {
        self.sample_cap.map_or(requested, |cap| requested.min(cap))
    }
}

macro_rules! check {
    ($name:literal, $suite:ident, $tol:expr, $cap:expr, $f:path) => {
        Check {
            name: $name,
            suite: Suite::$suite,
            tol: $tol,
            sample_cap: $cap,
            run: $f,
        }
    };
}

pub static CHECKS: &[Check] = &[
    check!("geometry.cayley_roundtrip_boundary", Geometry, 1e-12, None, cayley_roundtrip_boundary),
    check!("geometry.cayley_roundtrip_interior", Geometry, 1e-12, None, cayley_roundtrip_interior),
    check!("geometry.boundary_correspondence", Geometry, 1e-12, None, boundary_correspondence),
    check!("geometry.interior_correspondence", Geometry, 0.0, None, interior_correspondence),
    check!("geometry.slice_holomorphy", Geometry, 1e-6, None, slice_holomorphy),
    check!("autgroup.boundary_invariance", Autgroup, 1e-10, None, boundary_invariance),
    check!("autgroup.origin_fixing", Autgroup, 0.0, None, origin_fixing),
    check!("autgroup.factorization", Autgroup, 1e-12, None, factorization),
    check!("autgroup.h_r_defect", Autgroup, 1e-12, None, h_r_defect),
    check!("autgroup.ball_sphere", Autgroup, 1e-9, None, ball_sphere),
    check!("autgroup.compose_pointwise", Autgroup, 1e-9, Some(20), compose_pointwise),
    check!("autgroup.invert_two_sided", Autgroup, 1e-8, Some(20), invert_two_sided),
    check!("autgroup.associativity", Autgroup, 1e-8, Some(10), associativity),
    check!("jets.param_recovery", Jets, 1e-8, Some(100), param_recovery),
    check!("jets.im_r", Jets, 1e-9, Some(100), im_r),
    check!("jets.levi2", Jets, 1e-9, Some(100), levi2),
    check!("jets.levi1", Jets, 1e-9, None, levi1),
    check!("jets.polarization", Jets, 1e-9, None, polarization),
    check!("jets.fd_consistency", Jets, 1e-4, Some(20), fd_consistency),
    check!("jets.normalized_f_w2", Jets, 1e-9, Some(50), normalized_f_w2),
    check!("examples.homog_sum_norm", Examples, 1e-12, None, homog_sum_norm),
    check!("examples.homog_sum_sphere", Examples, 1e-12, None, homog_sum_sphere),
    check!("examples.enumeration_invariance", Examples, 1e-12, None, enumeration_invariance),
    check!("examples.whitney_norm", Examples, 1e-12, None, whitney_norm),
    check!("examples.whitney_infinite", Examples, 1e-12, None, whitney_infinite),
    check!("examples.whitney_sphere", Examples, 1e-12, None, whitney_sphere),
];

pub fn check_names() -> impl Iterator<Item = &'static str> {
    CHECKS.iter().map(|c| c.name)
}

/// FNV-1a, so seeds are stable across toolchains.
fn fnv1a(bytes: &[u8]) -> u64 {
    bytes.iter().fold(0xcbf2_9ce4_8422_2325, |h, &b| {
        (h ^ b as u64).wrapping_mul(0x0000_0100_0000_01b3)
    })
}

pub fn check_rng(seed: u64, check: &str, dim: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(fnv1a(format!("{seed}/{check}/{dim}").as_bytes()))
}

fn run_one(cfg: &RunConfig, check: &Check, dim: usize) -> CheckResult {
    let full = format!("{}[n={dim}]", check.name);
    let samples = check.samples(cfg.samples);
    let mut rng = check_rng(cfg.seed, check.name, dim);
    let start = Instant::now();
    let outcome = (check.run)(&mut rng, dim, samples);
    let ms = start.elapsed().as_secs_f64() * 1e3;
    CheckResult::new(full.clone(), outcome, cfg.tolerance(check, &full), samples, ms)
}

/// Runs the selected suites, one thread per suite. Configuration errors are
/// returned before any check runs.
pub fn run(cfg: &RunConfig) -> Result<RunOutcome> {
    cfg.validate()?;
    let per_suite: Vec<Vec<CheckResult>> = std::thread::scope(|scope| {
        let handles: Vec<_> = cfg
            .suites
            .iter()
            .map(|&suite| {
                scope.spawn(move || {
                    let mut out = Vec::new();
                    for check in CHECKS.iter().filter(|c| c.suite == suite) {
                        for &dim in &cfg.dims {
                            out.push(run_one(cfg, check, dim));
                        }
                    }
                    out
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("suite thread panicked"))
            .collect()
    });
    let results: Vec<CheckResult> = per_suite.into_iter().flatten().collect();
    let exit_code = if results.iter().all(|r| r.status == Status::Pass) { 0 } else { 1 };
    Ok(RunOutcome { results, exit_code })
}

/// One JSON object per line: each check, then the summary.
pub fn report(results: &[CheckResult]) -> String {
    let mut out = String::new();
    for r in results {
        out.push_str(&serde_json::to_string(r).expect("check result serializes"));
        out.push('\n');
    }
    out.push_str(&serde_json::to_string(&summarize(results)).expect("summary serializes"));
    out.push('\n');
    out
}

// ---------------------------------------------------------------------------
// geometry

fn rel_dist(a: &CVector, b: &CVector) -> f64 {
    (a - b).norm() / b.norm().max(1.0)
}

fn siegel_rel_dist(a: &SiegelPoint, b: &SiegelPoint) -> Result<f64> {
    Ok(a.distance(b)? / b.norm().max(1.0))
}

/// Roundtrips both ways on sphere points and on their Siegel images.
fn cayley_roundtrip_boundary(rng: &mut ChaCha8Rng, n: usize, samples: usize) -> Result<f64> {
    let mut worst = 0.0f64;
    for p in sample_sphere(n, samples, 0.1, rng)? {
        let s = cayley(&p)?;
        worst = worst.max(rel_dist(inverse_cayley(&s)?.coords(), p.coords()));
        worst = worst.max(siegel_rel_dist(&cayley(&inverse_cayley(&s)?)?, &s)?);
    }
    for s in sample_siegel_boundary(n, samples, SamplerBounds::default(), rng)? {
        worst = worst.max(siegel_rel_dist(&cayley(&inverse_cayley(&s)?)?, &s)?);
    }
    Ok(worst)
}

fn cayley_roundtrip_interior(rng: &mut ChaCha8Rng, n: usize, samples: usize) -> Result<f64> {
    let mut worst = 0.0f64;
    for p in crate::geometry::sample_ball_interior(n, samples, 0.999, 0.1, rng)? {
        worst = worst.max(rel_dist(inverse_cayley(&cayley(&p)?)?.coords(), p.coords()));
    }
    for s in sample_siegel_interior(n, samples, SamplerBounds::default(), rng)? {
        worst = worst.max(siegel_rel_dist(&cayley(&inverse_cayley(&s)?)?, &s)?);
    }
    Ok(worst)
}

fn boundary_correspondence(rng: &mut ChaCha8Rng, n: usize, samples: usize) -> Result<f64> {
    let mut worst = 0.0f64;
    for p in sample_sphere(n, samples, 0.1, rng)? {
        worst = worst.max(siegel_defect_value(&cayley(&p)?).abs());
    }
    Ok(worst)
}

/// Number of samples where the ball and Siegel defects disagree in sign.
fn interior_correspondence(rng: &mut ChaCha8Rng, n: usize, samples: usize) -> Result<f64> {
    let mut mismatches = 0usize;
    for _ in 0..samples {
        let radius = rng.gen_range(0.0..1.5);
        let z = sample_unit_vector(n, rng).scale_real(radius);
        let p = BallPoint::new(z)?;
        if (p.eta() + 1.0).norm() < 0.1 || (radius - 1.0).abs() < 1e-6 {
            continue;
        }
        let inside_ball = ball_defect_value(&p) < 0.0;
        let inside_siegel = siegel_defect_value(&cayley(&p)?) > 0.0;
        if inside_ball != inside_siegel {
            mismatches += 1;
        }
    }
    Ok(mismatches as f64)
}

/// Cayley along a complex line: Cauchy derivative vs central differences.
fn slice_holomorphy(rng: &mut ChaCha8Rng, n: usize, samples: usize) -> Result<f64> {
    let h = 1e-5;
    let cfg = DiffConfig::new(0.05, 32)?;
    let mut worst = 0.0f64;
    for _ in 0..samples.min(200) {
        let base = sample_in_ball(n, 0.5, rng);
        let dir = sample_unit_vector(n, rng);
        let along = |t: Complex64| -> Result<Vec<Complex64>> {
            let p = BallPoint::new(base.try_add(&dir.scale(t))?)?;
            let s = cayley(&p)?;
            let mut v = s.z.into_vec();
            v.push(s.w);
            Ok(v)
        };
        let spectral = &cauchy_derivatives(along, &[1], &cfg)?[0];
        let plus = along(Complex64::new(h, 0.0))?;
        let minus = along(Complex64::new(-h, 0.0))?;
        for ((d, p), m) in spectral.iter().zip(&plus).zip(&minus) {
            worst = worst.max((d - (p - m) / (2.0 * h)).norm());
        }
    }
    Ok(worst)
}

// ---------------------------------------------------------------------------
// autgroup

fn random_params(rng: &mut ChaCha8Rng, n: usize) -> Result<AutParams> {
    AutParams::random(n - 1, ParamRanges::default(), rng)
}

/// Random point of the bidisc of radius `r` in `ℂⁿ⁻¹ × ℂ`.
fn small_point(rng: &mut ChaCha8Rng, n: usize, r: f64) -> SiegelPoint {
    let z = sample_in_ball(n - 1, r, rng);
    let w = complex_gaussian(rng);
    let w = w * (r * rng.gen::<f64>() / w.norm().max(1e-300));
    SiegelPoint { z, w }
}

fn boundary_invariance(rng: &mut ChaCha8Rng, n: usize, samples: usize) -> Result<f64> {
    let mut worst = 0.0f64;
    let mut used = 0;
    while used < samples {
        let q = random_params(rng, n)?;
        let p = sample_siegel_boundary(n, 1, SamplerBounds::default(), rng)?.remove(0);
        if denominator(&q, &p)?.norm() <= 0.1 {
            continue;
        }
        let img = apply(&q, &p)?;
        worst = worst.max(siegel_defect_value(&img).abs() / (1.0 + p.w.norm_sqr()));
        used += 1;
    }
    Ok(worst)
}

fn origin_fixing(rng: &mut ChaCha8Rng, n: usize, samples: usize) -> Result<f64> {
    let mut worst = 0.0f64;
    for _ in 0..samples {
        let q = random_params(rng, n)?;
        worst = worst.max(apply(&q, &SiegelPoint::origin(n - 1))?.norm());
    }
    Ok(worst)
}

fn factorization(rng: &mut ChaCha8Rng, n: usize, samples: usize) -> Result<f64> {
    let mut worst = 0.0f64;
    let mut used = 0;
    while used < samples {
        let q = random_params(rng, n)?;
        let p = small_point(rng, n, 0.5);
        match (apply(&q, &p), factor_apply(&q, &p)) {
            (Ok(x), Ok(y)) => {
                worst = worst.max(x.distance(&y)?);
                used += 1;
            }
            (Err(e), _) | (_, Err(e)) if e.is_pole() => continue,
            (Err(e), _) | (_, Err(e)) => return Err(e),
        }
    }
    Ok(worst)
}

fn h_r_defect(rng: &mut ChaCha8Rng, n: usize, samples: usize) -> Result<f64> {
    let mut worst = 0.0f64;
    let mut used = 0;
    while used < samples {
        let r = rng.gen_range(-2.0..=2.0);
        let p = small_point(rng, n, 1.0);
        let d = 1.0 + r * p.w;
        if d.norm() < 0.1 {
            continue;
        }
        let img = h_r_apply(r, &p)?;
        let expected = siegel_defect_value(&p) / d.norm_sqr();
        worst = worst.max((siegel_defect_value(&img) - expected).abs());
        used += 1;
    }
    Ok(worst)
}

fn ball_sphere(rng: &mut ChaCha8Rng, n: usize, samples: usize) -> Result<f64> {
    let mut worst = 0.0f64;
    let mut used = 0;
    while used < samples {
        let q = random_params(rng, n)?;
        let p = sample_sphere(n, 1, 0.1, rng)?.remove(0);
        match ball_automorphism(&q, &p) {
            Ok(img) => {
                worst = worst.max(ball_defect_value(&img).abs());
                used += 1;
            }
            Err(e) if e.is_pole() => continue,
            Err(e) => return Err(e),
        }
    }
    Ok(worst)
}

fn compose_pointwise(rng: &mut ChaCha8Rng, n: usize, samples: usize) -> Result<f64> {
    let mut worst = 0.0f64;
    for _ in 0..samples {
        let outer = random_params(rng, n)?;
        let inner = random_params(rng, n)?;
        let comp = compose(&outer, &inner)?;
        let r = 0.25 * comp.domain_radius().min(inner.domain_radius()).min(1.0);
        for _ in 0..10 {
            let p = small_point(rng, n, r);
            let direct = apply(&outer, &apply(&inner, &p)?)?;
            worst = worst.max(apply(&comp, &p)?.distance(&direct)?);
        }
    }
    Ok(worst)
}

fn invert_two_sided(rng: &mut ChaCha8Rng, n: usize, samples: usize) -> Result<f64> {
    let id = AutParams::identity(n - 1);
    let mut worst = 0.0f64;
    for _ in 0..samples {
        let q = random_params(rng, n)?;
        let inv = invert(&q)?;
        worst = worst.max(compose(&q, &inv)?.distance(&id)?);
        worst = worst.max(compose(&inv, &q)?.distance(&id)?);
    }
    Ok(worst)
}

fn associativity(rng: &mut ChaCha8Rng, n: usize, samples: usize) -> Result<f64> {
    let mut worst = 0.0f64;
    for _ in 0..samples {
        let a = random_params(rng, n)?;
        let b = random_params(rng, n)?;
        let c = random_params(rng, n)?;
        let left = compose(&compose(&a, &b)?, &c)?;
        let right = compose(&a, &compose(&b, &c)?)?;
        worst = worst.max(left.distance(&right)?);
    }
    Ok(worst)
}

// ---------------------------------------------------------------------------
// jets

fn recovered(q: &AutParams) -> Result<(crate::jets::Jet2, AutParams)> {
    let jet = extract_jet2(q, &DiffConfig::fitted(q.domain_radius()))?;
    let back = recover_params(&jet, CHECK_TOL)?;
    Ok((jet, back))
}

fn param_recovery(rng: &mut ChaCha8Rng, n: usize, samples: usize) -> Result<f64> {
    let mut worst = 0.0f64;
    for _ in 0..samples {
        let q = random_params(rng, n)?;
        worst = worst.max(recovered(&q)?.1.distance(&q)?);
    }
    Ok(worst)
}

fn im_r(rng: &mut ChaCha8Rng, n: usize, samples: usize) -> Result<f64> {
    let mut worst = 0.0f64;
    for _ in 0..samples {
        let q = random_params(rng, n)?;
        let jet = extract_jet2(&q, &DiffConfig::fitted(q.domain_radius()))?;
        worst = worst.max(jet.complex_r().im.abs());
    }
    Ok(worst)
}

/// Unitarity of `f_z / √g_w`, via `conj(g_w) ⟨u, v⟩ = ⟨f_z u, f_z v⟩` scaled
/// by `1 / g_w`.
fn levi2(rng: &mut ChaCha8Rng, n: usize, samples: usize) -> Result<f64> {
    let mut worst = 0.0f64;
    for _ in 0..samples {
        let q = random_params(rng, n)?;
        let jet = extract_jet2(&q, &DiffConfig::fitted(q.domain_radius()))?;
        worst = worst.max(jet.levi2_residual() / jet.g_w.norm());
    }
    Ok(worst)
}

/// Samples spread over ten random automorphisms.
fn levi1(rng: &mut ChaCha8Rng, n: usize, samples: usize) -> Result<f64> {
    let maps = samples.min(10);
    let mut worst = 0.0f64;
    for i in 0..maps {
        let q = random_params(rng, n)?;
        let count = samples / maps + usize::from(i < samples % maps);
        let r = 0.25 * q.domain_radius().min(1.0);
        let pairs: Vec<_> = (0..count)
            .map(|_| (sample_in_ball(n - 1, r, rng), sample_in_ball(n - 1, 1.0, rng)))
            .collect();
        worst = worst.max(check_levi(&q, &DiffConfig::fitted(q.domain_radius()), &pairs)?);
    }
    Ok(worst)
}

fn polarization(rng: &mut ChaCha8Rng, n: usize, samples: usize) -> Result<f64> {
    let maps = samples.min(10);
    let mut worst = 0.0f64;
    for i in 0..maps {
        let q = random_params(rng, n)?;
        let count = samples / maps + usize::from(i < samples % maps);
        let r = 0.25 * q.domain_radius().min(1.0);
        let triples: Vec<_> = (0..count)
            .map(|_| {
                let p = small_point(rng, n, r);
                (sample_in_ball(n - 1, r, rng), p.z, p.w)
            })
            .collect();
        worst = worst.max(check_polarization(&q, &triples)?.max_residual);
    }
    Ok(worst)
}

/// Spectral jets of the generator maps against central differences.
fn fd_consistency(rng: &mut ChaCha8Rng, n: usize, samples: usize) -> Result<f64> {
    let m = n - 1;
    let mut worst = 0.0f64;
    for _ in 0..samples {
        let q = random_params(rng, n)?;
        let u = q.u().clone();
        let s = q.s();
        let a = q.a().clone();
        let r = q.r();
        let omega = FnMap::new(m, f64::INFINITY, |p: &SiegelPoint| omega_apply(&u, s, p));
        let phi = FnMap::new(m, 1.0 / (2.0 * a.norm() + a.norm_sq()), |p: &SiegelPoint| {
            phi_a_apply(&a, p)
        });
        let h_r = FnMap::new(m, 1.0 / r.abs(), |p: &SiegelPoint| h_r_apply(r, p));
        let maps: [&dyn HoloMap; 4] = [&omega, &phi, &h_r, &q];
        for map in maps {
            let cfg = DiffConfig::fitted(map.domain_radius());
            let spectral = extract_jet2(map, &cfg)?;
            let fd = finite_difference_jet2(map, 1e-5)?;
            worst = worst.max(crate::jets::jet_distance(&spectral, &fd)?);
        }
    }
    Ok(worst)
}

/// `φ_{−a} ∘ ω_{Uᴴ, 1/s} ∘ H` is `H_R`, whose `f_{w²}(0)` vanishes.
fn normalized_f_w2(rng: &mut ChaCha8Rng, n: usize, samples: usize) -> Result<f64> {
    let mut worst = 0.0f64;
    for _ in 0..samples {
        let q = random_params(rng, n)?;
        let adj = q.u().adjoint();
        let neg_a = -q.a();
        let map = FnMap::new(n - 1, 0.5 * q.domain_radius(), |p: &SiegelPoint| {
            let x = apply(&q, p)?;
            let x = omega_apply(&adj, 1.0 / q.s(), &x)?;
            phi_a_apply(&neg_a, &x)
        });
        let jet = extract_jet2(&map, &DiffConfig::fitted(map.domain_radius()))?;
        worst = worst.max(jet.f_w2.norm());
    }
    Ok(worst)
}

// ---------------------------------------------------------------------------
// examples

fn random_lambda(rng: &mut ChaCha8Rng, k: usize, normalized: bool) -> Result<LambdaSeq> {
    let coeffs: Vec<_> = (0..k).map(|_| complex_gaussian(rng)).collect();
    if normalized {
        LambdaSeq::normalized(coeffs)
    } else {
        LambdaSeq::new(coeffs)
    }
}

fn homog_vars(n: usize) -> usize {
    n.min(4)
}

fn homog_sum_norm(rng: &mut ChaCha8Rng, n: usize, samples: usize) -> Result<f64> {
    let vars = homog_vars(n);
    let mut worst = 0.0f64;
    for cap in 1..=4 {
        let h = homog_sum_map(random_lambda(rng, cap, false)?, MultiIndexTable::graded_lex(vars, cap)?);
        for _ in 0..samples.div_ceil(4) {
            let z = sample_in_ball(vars, 0.9, rng);
            let lhs = h.eval(&z)?.norm_sq();
            worst = worst.max((lhs - h.radius_function(z.norm_sq())).abs());
        }
    }
    Ok(worst)
}

fn homog_sum_sphere(rng: &mut ChaCha8Rng, n: usize, samples: usize) -> Result<f64> {
    let vars = homog_vars(n);
    let mut worst = 0.0f64;
    for cap in 1..=4 {
        let h = homog_sum_map(random_lambda(rng, cap, true)?, MultiIndexTable::graded_lex(vars, cap)?);
        for _ in 0..samples.div_ceil(4) {
            let z = sample_unit_vector(vars, rng);
            worst = worst.max((h.eval(&z)?.norm_sq() - 1.0).abs());
        }
    }
    Ok(worst)
}

fn enumeration_invariance(rng: &mut ChaCha8Rng, n: usize, samples: usize) -> Result<f64> {
    let vars = homog_vars(n);
    let table = MultiIndexTable::graded_lex(vars, 3)?;
    let lambda = random_lambda(rng, 3, true)?;
    let h = homog_sum_map(lambda.clone(), table.clone());
    let hs = homog_sum_map(lambda, table.shuffled(rng));
    let mut worst = 0.0f64;
    for _ in 0..samples {
        let z = sample_in_ball(vars, 1.0, rng);
        worst = worst.max((h.eval(&z)?.norm_sq() - hs.eval(&z)?.norm_sq()).abs());
    }
    Ok(worst)
}

const WHITNEY_ORDERS: [usize; 4] = [1, 2, 3, 5];

fn whitney_norm(rng: &mut ChaCha8Rng, n: usize, samples: usize) -> Result<f64> {
    let mut worst = 0.0f64;
    for p in WHITNEY_ORDERS {
        let spec = WhitneySpec::new(WhitneyOrder::Finite(p), n)?;
        for _ in 0..samples.div_ceil(WHITNEY_ORDERS.len()) {
            let z = sample_in_ball(n, 0.999, rng);
            let (lhs, rhs) = whitney_norm_identity(spec, &z)?;
            worst = worst.max((lhs - rhs).abs());
        }
    }
    Ok(worst)
}

/// Truncated `p = ∞` map, `Q = 40`, `|z₁| ≤ 0.5`.
fn whitney_infinite(rng: &mut ChaCha8Rng, n: usize, samples: usize) -> Result<f64> {
    let spec = WhitneySpec::new(WhitneyOrder::Infinite { truncation: 40 }, n)?;
    let mut worst = 0.0f64;
    let mut used = 0;
    while used < samples {
        let z = sample_in_ball(n, 1.0, rng);
        if z.get(0).norm() > 0.5 {
            continue;
        }
        let (lhs, rhs) = whitney_norm_identity(spec, &z)?;
        worst = worst.max((lhs - rhs).abs());
        used += 1;
    }
    Ok(worst)
}

fn whitney_sphere(rng: &mut ChaCha8Rng, n: usize, samples: usize) -> Result<f64> {
    let mut worst = 0.0f64;
    for p in WHITNEY_ORDERS {
        let map = whitney_map(WhitneySpec::new(WhitneyOrder::Finite(p), n)?);
        for _ in 0..samples.div_ceil(WHITNEY_ORDERS.len()) {
            let z = sample_unit_vector(n, rng);
            worst = worst.max((map.eval(&z)?.norm_sq() - 1.0).abs());
        }
    }
    Ok(worst)
}
