//! Sampling harness for the subordination inequalities.
//!
//! Subordinates are always built as `g = f∘w` from an explicitly constructed
//! Schwarz function, so class membership never has to be tested. Every check
//! returns a *margin* `LHS − RHS`; a margin at or below the configured
//! tolerance is a pass. Moduli `|·|` over `|z| = r` are maximised on a uniform
//! angular grid that includes the positive real axis, where the extremal
//! cases attain equality.

use std::collections::BTreeMap;
use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::families::{coeffs_c, f_alpha_series, f_alpha_tail, k_p_series, k_p_tail};
use crate::par::{map_indexed, Execution};
use crate::radius::{find_radius, h_sum_enclosure, RadiusProblem, VanishingOrderSpec, Variant, DEFAULT_TOL};
use crate::series::{schwarz_sample, SchwarzFunction, TruncatedSeries};
use crate::{Error, Order, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct CertificationConfig {
    pub samples: usize,
    pub seed: u64,
    /// Angles sampled on `|z| = r` when maximising a modulus.
    pub theta_grid: usize,
    /// Radii probed between 0 and the test radius for the extremal functional.
    pub radius_grid: usize,
    /// Slack added to every inequality.
    pub tolerance: f64,
    /// Truncation order of composed series.
    pub order: usize,
    /// Upper limit on Blaschke factors per sampled Schwarz function.
    pub max_factors: usize,
    pub execution: Execution,
}

impl Default for CertificationConfig {
    fn default() -> Self {
        Self {
            samples: 100,
            seed: 42,
            theta_grid: 64,
            radius_grid: 16,
            tolerance: 1e-9,
            order: crate::DEFAULT_ORDER,
            max_factors: 3,
            execution: Execution::default(),
        }
    }
}

impl CertificationConfig {
    pub fn validate(&self) -> Result<()> {
        if self.samples == 0 {
            return Err(Error::InvalidParameter("samples must be >= 1".into()));
        }
        if self.theta_grid < 8 {
            return Err(Error::InvalidParameter("theta grid needs at least 8 angles".into()));
        }
        if !(self.tolerance >= 0.0) {
            return Err(Error::InvalidParameter("tolerance must be >= 0".into()));
        }
        if self.order == 0 {
            return Err(Error::InvalidParameter("series order must be >= 1".into()));
        }
        Ok(())
    }

    fn circle(&self, r: f64) -> impl Iterator<Item = Complex64> + '_ {
        let k = self.theta_grid;
        (0..k).map(move |j| Complex64::from_polar(r, TAU * j as f64 / k as f64))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Violation {
    pub check: String,
    pub params: String,
    pub margin: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub checks_run: usize,
    pub violations: Vec<Violation>,
    pub worst_margin: f64,
    pub passed: bool,
    pub worst_by_check: BTreeMap<String, f64>,
}

impl Default for VerificationReport {
    fn default() -> Self {
        Self {
            checks_run: 0,
            violations: Vec::new(),
            worst_margin: f64::NEG_INFINITY,
            passed: true,
            worst_by_check: BTreeMap::new(),
        }
    }
}

impl VerificationReport {
    pub fn record(&mut self, check: &str, params: String, margin: f64, tolerance: f64) {
        self.checks_run += 1;
        self.worst_margin = self.worst_margin.max(margin);
        let worst = self.worst_by_check.entry(check.to_string()).or_insert(f64::NEG_INFINITY);
        *worst = worst.max(margin);
        if !(margin <= tolerance) {
            self.violations.push(Violation { check: check.to_string(), params, margin });
            self.passed = false;
        }
    }

    pub fn merge(&mut self, other: VerificationReport) {
        self.checks_run += other.checks_run;
        self.worst_margin = self.worst_margin.max(other.worst_margin);
        for (k, v) in other.worst_by_check {
            let worst = self.worst_by_check.entry(k).or_insert(f64::NEG_INFINITY);
            *worst = worst.max(v);
        }
        self.passed &= other.passed;
        self.violations.extend(other.violations);
    }
}

/// `Σ_{n=N}^{T} |b_n| r^n`.
fn abs_tail(series: &TruncatedSeries, n: usize, r: f64) -> f64 {
    series.coeffs().iter().enumerate().skip(n).rev().map(|(k, b)| b.norm() * r.powi(k as i32)).sum()
}

fn check_radius(r: f64, upper: f64) -> Result<()> {
    if r >= 0.0 && r < upper {
        Ok(())
    } else {
        Err(Error::Domain(format!("radius {r} outside [0, {upper})")))
    }
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidParameter("N must be >= 1".into()));
    }
    Ok(())
}

/// `w₀(z)`, with `None` standing for the `m₀ = ∞` limit `w₀ ≡ 0`.
fn eval_opt(w: Option<&SchwarzFunction>, z: Complex64) -> Complex64 {
    w.map_or(Complex64::new(0.0, 0.0), |w| w.eval(z))
}

/// Tail domination for `g = f_α∘w`:
/// `Σ_{n=N}^{T}|b_n| r^n − Σ_{n=N}^{T} A_n r^n`.
pub fn check_tail_domination(
    alpha: f64,
    w: &SchwarzFunction,
    n: usize,
    r: f64,
    cfg: &CertificationConfig,
) -> Result<f64> {
    check_n(n)?;
    if !(0.0..=1.0 / 3.0 + 1e-15).contains(&r) {
        return Err(Error::Domain(format!("tail domination needs 0 <= r <= 1/3, got {r}")));
    }
    let f = f_alpha_series(alpha, cfg.order)?;
    let g = f.compose(&w.to_series(cfg.order))?;
    Ok(abs_tail(&g, n, r) - abs_tail(&f, n, r))
}

/// `max_θ |g(w₀(re^{iθ}))| + Σ_{n≥N}|b_n| r^n − 1/(2α)` for `g = f_α∘w`.
///
/// The coefficient sum beyond the truncation order is bounded by the tail
/// of `f_α` (valid by tail domination for `r ≤ 1/3`).
pub fn check_subordinate_inequality(
    alpha: f64,
    w0: Option<&SchwarzFunction>,
    w: &SchwarzFunction,
    n: usize,
    r: f64,
    cfg: &CertificationConfig,
) -> Result<f64> {
    check_n(n)?;
    check_radius(r, 1.0)?;
    let f = f_alpha_series(alpha, cfg.order)?;
    let g = f.compose(&w.to_series(cfg.order))?;
    let modulus = cfg.circle(r).map(|z| g.eval(eval_opt(w0, z)).norm()).fold(0.0, f64::max);
    let remainder = f_alpha_tail(alpha, r, cfg.order + 1)?;
    Ok(modulus + abs_tail(&g, n, r) + remainder - 0.5 / alpha)
}

/// `max_θ [|f(w₀)| + |f′(w₁)||w₂|] + Σ_{n≥N} A_n r^{h(n)} − 1/(2α)` for
/// `f = f_α` and `w*_n(z) = z^{h(n)}`. `None` stands for an infinite order.
#[allow(clippy::too_many_arguments)]
pub fn check_distortion_inequality(
    alpha: f64,
    w0: Option<&SchwarzFunction>,
    w1: Option<&SchwarzFunction>,
    w2: Option<&SchwarzFunction>,
    h: &VanishingOrderSpec,
    n: usize,
    r: f64,
    cfg: &CertificationConfig,
) -> Result<f64> {
    check_n(n)?;
    check_radius(r, 1.0)?;
    let f = f_alpha_series(alpha, cfg.order)?;
    let df = f.derivative();
    let lhs = cfg
        .circle(r)
        .map(|z| {
            let value = f.eval(eval_opt(w0, z)).norm();
            let slope = match w2 {
                None => 0.0,
                Some(w2) => df.eval(eval_opt(w1, z)).norm() * w2.eval(z).norm(),
            };
            value + slope
        })
        .fold(0.0, f64::max);
    let sum = h_sum_enclosure(alpha, n, h, r, cfg.order.max(1) * 16)?.hi;
    Ok(lhs + sum - 0.5 / alpha)
}

/// `max_θ |g(w₀(re^{iθ}))| + Σ_{n≥N}|b_n| r^n − p/(1+p)²` for `g = k_p∘w`, `r < p`.
pub fn check_pole_subordinate_inequality(
    p: f64,
    w0: Option<&SchwarzFunction>,
    w: &SchwarzFunction,
    n: usize,
    r: f64,
    cfg: &CertificationConfig,
) -> Result<f64> {
    check_n(n)?;
    check_radius(r, p)?;
    let k = k_p_series(p, cfg.order)?;
    let g = k.compose(&w.to_series(cfg.order))?;
    let modulus = cfg.circle(r).map(|z| g.eval(eval_opt(w0, z)).norm()).fold(0.0, f64::max);
    let remainder = k_p_tail(p, r, cfg.order + 1)?;
    Ok(modulus + abs_tail(&g, n, r) + remainder - p / ((1.0 + p) * (1.0 + p)))
}

/// `max_{n ≤ n_max} |b_n|/c_n(p)` for `g = k_p∘w`.
pub fn check_coeff_bound_pole(p: f64, w: &SchwarzFunction, n_max: usize, cfg: &CertificationConfig) -> Result<f64> {
    if n_max == 0 || n_max > cfg.order {
        return Err(Error::InvalidParameter(format!("n_max = {n_max} must lie in [1, {}]", cfg.order)));
    }
    let k = k_p_series(p, n_max)?;
    let g = k.compose(&w.to_series(n_max))?;
    let c = coeffs_c(p, n_max)?;
    Ok((1..=n_max).map(|i| g.coeff(i).norm() / c[i]).fold(0.0, f64::max))
}

fn monomial_or_limit(m: Order) -> Option<SchwarzFunction> {
    m.as_finite().map(SchwarzFunction::monomial)
}

/// The inequality's margin for the extremal map and monomial Schwarz functions.
pub fn extremal_margin(problem: &RadiusProblem, r: f64, cfg: &CertificationConfig) -> Result<f64> {
    problem.validate()?;
    let w0 = monomial_or_limit(problem.m0);
    let identity = SchwarzFunction::monomial(1);
    match problem.variant {
        Variant::Subordinate => {
            check_subordinate_inequality(problem.alpha().unwrap(), w0.as_ref(), &identity, problem.n, r, cfg)
        }
        Variant::Distortion => {
            let w1 = monomial_or_limit(problem.m1);
            let w2 = monomial_or_limit(problem.m2);
            check_distortion_inequality(
                problem.alpha().unwrap(),
                w0.as_ref(),
                w1.as_ref(),
                w2.as_ref(),
                &problem.h,
                problem.n,
                r,
                cfg,
            )
        }
        Variant::PoleSubordinate => {
            check_pole_subordinate_inequality(problem.p().unwrap(), w0.as_ref(), &identity, problem.n, r, cfg)
        }
    }
}

/// Extremal margins at `root − ε` and `root + ε`.
pub fn sharpness_scan(problem: &RadiusProblem, epsilon: f64) -> Result<(f64, f64)> {
    sharpness_scan_with(problem, epsilon, &CertificationConfig::default())
}

pub fn sharpness_scan_with(problem: &RadiusProblem, epsilon: f64, cfg: &CertificationConfig) -> Result<(f64, f64)> {
    if !(epsilon >= 0.0) {
        return Err(Error::InvalidParameter("epsilon must be >= 0".into()));
    }
    let root = find_radius(problem, DEFAULT_TOL)?.root;
    if root - epsilon < 0.0 || root + epsilon >= problem.domain_max() {
        return Err(Error::Domain(format!("root {root} ± {epsilon} leaves the domain")));
    }
    Ok((extremal_margin(problem, root - epsilon, cfg)?, extremal_margin(problem, root + epsilon, cfg)?))
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Independent seed per (run seed, check stream, sample index).
pub fn sample_seed(seed: u64, stream: u64, index: u64) -> u64 {
    splitmix64(seed ^ splitmix64(stream.wrapping_mul(0xD6E8_FEB8_6659_FD93) ^ splitmix64(index)))
}

fn draw_schwarz(rng: &mut ChaCha8Rng, m: u32, cfg: &CertificationConfig) -> SchwarzFunction {
    let factors = rng.gen_range(0..=cfg.max_factors);
    schwarz_sample(m, factors, rng.gen())
}

fn draw_opt(rng: &mut ChaCha8Rng, m: Order, cfg: &CertificationConfig) -> Option<SchwarzFunction> {
    m.as_finite().map(|m| draw_schwarz(rng, m, cfg))
}

struct Sample {
    check: &'static str,
    params: String,
    margin: f64,
}

fn collect(samples: Vec<Result<Sample>>, tolerance: f64) -> Result<VerificationReport> {
    let mut report = VerificationReport::default();
    for s in samples {
        let s = s?;
        report.record(s.check, s.params, s.margin, tolerance);
    }
    Ok(report)
}

const TAIL_STREAM: u64 = 1;
const POLE_STREAM: u64 = 2;
const PROBLEM_STREAM: u64 = 3;

/// Random tail-domination instances: `α ∈ {1, 1.5, 2}`, `N ∈ {1, 2, 3}`,
/// `r ∈ {0.1, 0.2, 1/3}`, `w` of order `m ≤ 3`.
pub fn tail_domination_suite(count: usize, cfg: &CertificationConfig) -> Result<VerificationReport> {
    cfg.validate()?;
    let samples = map_indexed(count, cfg.execution, |i| {
        let seed = sample_seed(cfg.seed, TAIL_STREAM, i as u64);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let alpha = [1.0, 1.5, 2.0][rng.gen_range(0..3)];
        let n = rng.gen_range(1..=3);
        let r = [0.1, 0.2, 1.0 / 3.0][rng.gen_range(0..3)];
        let m = rng.gen_range(1..=3);
        let w = draw_schwarz(&mut rng, m, cfg);
        let margin = check_tail_domination(alpha, &w, n, r, cfg)?;
        Ok(Sample { check: "tail_domination", params: format!("alpha={alpha} N={n} r={r} m={m} seed={seed}"), margin })
    });
    collect(samples, cfg.tolerance)
}

/// Random subordinates of `k_p`, `p ∈ {0.3, 0.5, 0.7}`; margin is `ratio − 1`.
pub fn pole_coeff_suite(count: usize, n_max: usize, cfg: &CertificationConfig) -> Result<VerificationReport> {
    cfg.validate()?;
    let samples = map_indexed(count, cfg.execution, |i| {
        let seed = sample_seed(cfg.seed, POLE_STREAM, i as u64);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = [0.3, 0.5, 0.7][rng.gen_range(0..3)];
        let m = rng.gen_range(1..=3);
        let w = draw_schwarz(&mut rng, m, cfg);
        let ratio = check_coeff_bound_pole(p, &w, n_max, cfg)?;
        Ok(Sample {
            check: "pole_coeff_bound",
            params: format!("p={p} m={m} n_max={n_max} seed={seed}"),
            margin: ratio - 1.0,
        })
    });
    collect(samples, cfg.tolerance)
}

fn problem_label(problem: &RadiusProblem) -> String {
    let fam = match (problem.alpha(), problem.p()) {
        (Some(a), _) => format!("alpha={a}"),
        (_, Some(p)) => format!("p={p}"),
        _ => unreachable!(),
    };
    match problem.variant {
        Variant::Distortion => format!(
            "distortion {fam} N={} m0={} m1={} m2={} h={}",
            problem.n, problem.m0, problem.m1, problem.m2, problem.h
        ),
        v => format!("{} {fam} N={} m0={}", v.id(), problem.n, problem.m0),
    }
}

/// One random evaluation of the problem's inequality at radius `r`.
pub fn random_problem_margin(problem: &RadiusProblem, r: f64, seed: u64, cfg: &CertificationConfig) -> Result<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let w0 = draw_opt(&mut rng, problem.m0, cfg);
    match problem.variant {
        Variant::Subordinate => {
            let m = rng.gen_range(1..=3);
            let w = draw_schwarz(&mut rng, m, cfg);
            check_subordinate_inequality(problem.alpha().unwrap(), w0.as_ref(), &w, problem.n, r, cfg)
        }
        Variant::Distortion => {
            let w1 = draw_opt(&mut rng, problem.m1, cfg);
            let w2 = draw_opt(&mut rng, problem.m2, cfg);
            let alpha = problem.alpha().unwrap();
            check_distortion_inequality(alpha, w0.as_ref(), w1.as_ref(), w2.as_ref(), &problem.h, problem.n, r, cfg)
        }
        Variant::PoleSubordinate => {
            let m = rng.gen_range(1..=3);
            let w = draw_schwarz(&mut rng, m, cfg);
            check_pole_subordinate_inequality(problem.p().unwrap(), w0.as_ref(), &w, problem.n, r, cfg)
        }
    }
}

/// Checks a radius problem at `r = radius_factor × reported radius`:
/// the extremal functional on a radial grid up to `r`, then `count` random
/// Schwarz configurations at `r`.
pub fn problem_suite(
    problem: &RadiusProblem,
    count: usize,
    radius_factor: f64,
    cfg: &CertificationConfig,
) -> Result<VerificationReport> {
    cfg.validate()?;
    let radius = find_radius(problem, DEFAULT_TOL)?.reported_radius;
    let r = radius_factor * radius;
    let label = problem_label(problem);
    let random_id = problem.variant.id();
    let extremal_id = format!("{random_id}_extremal");
    let grid = cfg.radius_grid.max(1);
    let mut report = VerificationReport::default();
    for j in 1..=grid {
        let rj = r * j as f64 / grid as f64;
        let margin = extremal_margin(problem, rj, cfg)?;
        report.record(&extremal_id, format!("{label} r={rj}"), margin, cfg.tolerance);
    }
    let stream =
        PROBLEM_STREAM ^ splitmix64(label.bytes().fold(0u64, |h, b| h.wrapping_mul(131).wrapping_add(b as u64)));
    let samples = map_indexed(count, cfg.execution, |i| {
        let seed = sample_seed(cfg.seed, stream, i as u64);
        let margin = random_problem_margin(problem, r, seed, cfg)?;
        Ok(Sample { check: random_id, params: format!("{label} r={r} seed={seed}"), margin })
    });
    report.merge(collect(samples, cfg.tolerance)?);
    Ok(report)
}

/// Twelve parameter combinations spanning the three inequalities, finite and
/// infinite orders, and both the identity and `2n+1` vanishing orders.
pub fn standard_problems() -> Vec<RadiusProblem> {
    use Order::{Finite as F, Infinite as I};
    let id = VanishingOrderSpec::Identity;
    let affine = VanishingOrderSpec::Affine { slope: 2, offset: 1 };
    vec![
        RadiusProblem::subordinate(1.0, 1, I),
        RadiusProblem::subordinate(1.5, 2, F(1)),
        RadiusProblem::subordinate(2.0, 1, F(2)),
        RadiusProblem::subordinate(1.25, 2, I),
        RadiusProblem::distortion(1.0, 1, F(1), F(1), F(1), id.clone()),
        RadiusProblem::distortion(1.5, 2, F(2), F(1), I, affine.clone()),
        RadiusProblem::distortion(2.0, 1, I, F(2), F(1), affine),
        RadiusProblem::distortion(1.75, 2, I, F(1), I, id),
        RadiusProblem::pole_subordinate(0.25, 1, I),
        RadiusProblem::pole_subordinate(0.5, 2, F(1)),
        RadiusProblem::pole_subordinate(0.75, 1, F(2)),
        RadiusProblem::pole_subordinate(0.5, 1, I),
    ]
    .into_iter()
    .map(|p| p.expect("standard problems are valid"))
    .collect()
}

/// Default certification run: tail domination, pole coefficient bounds and
/// every standard problem at 90% of its radius, `cfg.samples` draws each.
pub fn run_default_suite(cfg: &CertificationConfig) -> Result<VerificationReport> {
    cfg.validate()?;
    let mut report = tail_domination_suite(cfg.samples, cfg)?;
    report.merge(pole_coeff_suite(cfg.samples, 30, cfg)?);
    for problem in standard_problems() {
        report.merge(problem_suite(&problem, cfg.samples, 0.9, cfg)?);
    }
    Ok(report)
}
