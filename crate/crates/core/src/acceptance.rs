//! The exit-criteria battery.
//!
//! Each criterion is a self-contained function returning a
//! [`CriterionOutcome`]; [`Battery::run_all`] runs them in order. The battery
//! backs both the `acceptance` test target and the `selftest` CLI command.
//! Expected values come from independent routes (quadratic formula,
//! binomial convolution) rather than from the code under test.

use serde::Serialize;

use crate::families::coeff_a;
use crate::radius::{
    classical_br_radius, closed_form_radius, eval_F, eval_G, eval_K, find_radius, EnclosureOptions, RadiusProblem,
    VanishingOrderSpec, DEFAULT_TOL,
};
use crate::verify::{
    pole_coeff_suite, problem_suite, sharpness_scan_with, standard_problems, tail_domination_suite, CertificationConfig,
};
use crate::{Order, Result};

pub const RADIUS_TOL: f64 = 1e-10;
pub const COEFF_REL_TOL: f64 = 1e-12;
pub const SHARPNESS_EPSILON: f64 = 1e-6;
pub const SHARPNESS_GAP: f64 = 1e-9;
pub const MARGIN_TOL: f64 = 1e-9;
pub const MONOTONE_SLACK: f64 = 1e-13;
pub const TAIL_SAMPLES: usize = 500;
pub const POLE_SAMPLES: usize = 200;
pub const POLE_N_MAX: usize = 30;
pub const PROBLEM_SAMPLES: usize = 100;
pub const PROBLEM_RADIUS_FACTOR: f64 = 0.9;
pub const MONOTONE_GRID: usize = 200;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriterionOutcome {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl std::fmt::Display for CriterionOutcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "[{status}] {:>2}. {:<34} {}", self.id, self.name, self.detail)
    }
}

/// Source of the opening-angle coefficients `A_n`, swappable for fault injection.
pub type CoeffSource = fn(f64, usize) -> Result<f64>;

#[derive(Debug, Clone)]
pub struct Battery {
    coeff_source: CoeffSource,
    cfg: CertificationConfig,
}

impl Default for Battery {
    fn default() -> Self {
        Self { coeff_source: coeff_a, cfg: CertificationConfig::default() }
    }
}

fn outcome(id: u8, name: &'static str, result: Result<(bool, String)>) -> CriterionOutcome {
    match result {
        Ok((passed, detail)) => CriterionOutcome { id, name, passed, detail },
        Err(e) => CriterionOutcome { id, name, passed: false, detail: format!("error: {e}") },
    }
}

/// `A_n` from `(1+z)^α·(1−z)^{−α}` by generalized binomial coefficients.
pub fn binomial_oracle(alpha: f64, n_max: usize) -> Vec<f64> {
    let mut plus = vec![1.0; n_max + 1];
    let mut minus = vec![1.0; n_max + 1];
    for k in 1..=n_max {
        plus[k] = plus[k - 1] * (alpha - k as f64 + 1.0) / k as f64;
        minus[k] = minus[k - 1] * (alpha + k as f64 - 1.0) / k as f64;
    }
    (0..=n_max)
        .map(|n| {
            if n == 0 {
                return 0.0;
            }
            let g: f64 = (0..=n).map(|k| plus[k] * minus[n - k]).sum();
            g / (2.0 * alpha)
        })
        .collect()
}

/// Smaller root of `p·r² − 2(p² + 1 + p)·r + p = 0`.
pub fn pole_quadratic_root(p: f64) -> f64 {
    let b = 2.0 * (p * p + 1.0 + p);
    2.0 * p / (b + (b * b - 4.0 * p * p).sqrt())
}

impl Battery {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_coeff_source(mut self, source: CoeffSource) -> Self {
        self.coeff_source = source;
        self
    }

    pub fn with_config(mut self, cfg: CertificationConfig) -> Self {
        self.cfg = cfg;
        self
    }

    pub fn run_all(&self) -> Vec<CriterionOutcome> {
        vec![
            self.closed_form_radii(),
            self.pole_closed_form(),
            self.classical_radius(),
            self.coefficient_oracle(),
            self.sharpness_crossings(),
            self.tail_domination_property(),
            self.pole_coefficient_bound(),
            self.problem_inequalities(),
            self.monotonicity_grids(),
        ]
    }

    /// 1. `|r(Subordinate, N=1, m₀=∞) − (2^{1/α}−1)/(2^{1/α}+1)| ≤ 1e-10`.
    pub fn closed_form_radii(&self) -> CriterionOutcome {
        outcome(
            1,
            "closed-form radii (opening angle)",
            (|| {
                let mut worst: f64 = 0.0;
                for &alpha in &[1.0, 1.1, 1.25, 1.5, 1.75, 2.0] {
                    let prob = RadiusProblem::subordinate(alpha, 1, Order::Infinite)?;
                    let r = find_radius(&prob, DEFAULT_TOL)?.reported_radius;
                    let t = 2f64.powf(1.0 / alpha);
                    worst = worst.max((r - (t - 1.0) / (t + 1.0)).abs());
                    if alpha == 1.0 {
                        worst = worst.max((r - 1.0 / 3.0).abs());
                    }
                    if alpha == 2.0 {
                        worst = worst.max((r - (3.0 - 2.0 * 2f64.sqrt())).abs());
                    }
                }
                Ok((worst <= RADIUS_TOL, format!("max error {worst:.2e} (tol {RADIUS_TOL:.0e})")))
            })(),
        )
    }

    /// 2. Pole family radius equals the smaller quadratic root and stays below `p`.
    pub fn pole_closed_form(&self) -> CriterionOutcome {
        outcome(
            2,
            "closed-form radii (pole)",
            (|| {
                let mut worst: f64 = 0.0;
                let mut below_pole = true;
                for &p in &[0.25, 0.5, 0.75] {
                    let prob = RadiusProblem::pole_subordinate(p, 1, Order::Infinite)?;
                    let root = find_radius(&prob, DEFAULT_TOL)?.root;
                    worst = worst.max((root - pole_quadratic_root(p)).abs());
                    if let Some(c) = closed_form_radius(&prob) {
                        worst = worst.max((root - c).abs());
                    }
                    below_pole &= root < p;
                }
                Ok((worst <= RADIUS_TOL && below_pole, format!("max error {worst:.2e}, root < p: {below_pole}")))
            })(),
        )
    }

    /// 3. Classical radius for `N = 1` is `√5 − 2`.
    pub fn classical_radius(&self) -> CriterionOutcome {
        outcome(
            3,
            "classical radius N=1",
            (|| {
                let err = (classical_br_radius(1)? - (5f64.sqrt() - 2.0)).abs();
                Ok((err <= RADIUS_TOL, format!("error {err:.2e}")))
            })(),
        )
    }

    /// 4. Recurrence coefficients against the binomial-convolution oracle.
    pub fn coefficient_oracle(&self) -> CriterionOutcome {
        let source = self.coeff_source;
        outcome(
            4,
            "coefficient oracle",
            (|| {
                let mut worst_rel: f64 = 0.0;
                for &alpha in &[1.0, 1.25, 1.5, 1.75, 2.0] {
                    let oracle = binomial_oracle(alpha, 60);
                    for (n, &expect) in oracle.iter().enumerate().skip(1) {
                        let got = source(alpha, n)?;
                        worst_rel = worst_rel.max((got - expect).abs() / expect.abs());
                    }
                }
                let mut worst_exact: f64 = 0.0;
                for n in 1..=60 {
                    worst_exact = worst_exact.max((source(1.0, n)? - 1.0).abs());
                    worst_exact = worst_exact.max((source(2.0, n)? - n as f64).abs() / n as f64);
                }
                let passed = worst_rel <= COEFF_REL_TOL && worst_exact <= COEFF_REL_TOL;
                Ok((passed, format!("oracle rel {worst_rel:.2e}, closed cases {worst_exact:.2e}")))
            })(),
        )
    }

    /// 5. Extremal functional changes sign across every standard radius.
    pub fn sharpness_crossings(&self) -> CriterionOutcome {
        outcome(
            5,
            "sharpness crossings",
            (|| {
                let mut worst_below = f64::NEG_INFINITY;
                let mut worst_above = f64::INFINITY;
                for prob in standard_problems() {
                    let (below, above) = sharpness_scan_with(&prob, SHARPNESS_EPSILON, &self.cfg)?;
                    worst_below = worst_below.max(below);
                    worst_above = worst_above.min(above);
                }
                let passed = worst_below < -SHARPNESS_GAP && worst_above > SHARPNESS_GAP;
                Ok((passed, format!("max below {worst_below:.3e}, min above {worst_above:.3e}")))
            })(),
        )
    }

    /// 6. Tail domination on 500 seeded subordinates.
    pub fn tail_domination_property(&self) -> CriterionOutcome {
        outcome(
            6,
            "tail domination (500 samples)",
            (|| {
                let r = tail_domination_suite(TAIL_SAMPLES, &self.cfg)?;
                let passed = r.checks_run == TAIL_SAMPLES && r.worst_margin <= MARGIN_TOL;
                Ok((passed, format!("{} checks, worst margin {:.3e}", r.checks_run, r.worst_margin)))
            })(),
        )
    }

    /// 7. `|b_n| ≤ c_n(p)` on 200 seeded subordinates of `k_p`.
    pub fn pole_coefficient_bound(&self) -> CriterionOutcome {
        outcome(
            7,
            "pole coefficient bound (200)",
            (|| {
                let r = pole_coeff_suite(POLE_SAMPLES, POLE_N_MAX, &self.cfg)?;
                let passed = r.checks_run == POLE_SAMPLES && r.worst_margin <= MARGIN_TOL;
                Ok((passed, format!("{} checks, worst ratio 1{:+.3e}", r.checks_run, r.worst_margin)))
            })(),
        )
    }

    /// 8. Random inequality instances at 90% of each standard radius.
    pub fn problem_inequalities(&self) -> CriterionOutcome {
        outcome(
            8,
            "inequalities at 0.9 x radius",
            (|| {
                let mut runs = 0;
                let mut worst = f64::NEG_INFINITY;
                for prob in standard_problems() {
                    let r = problem_suite(&prob, PROBLEM_SAMPLES, PROBLEM_RADIUS_FACTOR, &self.cfg)?;
                    runs += r.checks_run;
                    worst = worst.max(r.worst_margin);
                }
                Ok((worst <= MARGIN_TOL, format!("{runs} checks, worst margin {worst:.3e}")))
            })(),
        )
    }

    /// 9. `F`, `G`, `K` strictly increasing on 200-point grids of their domains.
    pub fn monotonicity_grids(&self) -> CriterionOutcome {
        outcome(
            9,
            "monotonicity grids",
            (|| {
                let (grids, worst) = monotonicity_sweep()?;
                Ok((worst > -MONOTONE_SLACK, format!("{grids} grids, min successive difference {worst:.3e}")))
            })(),
        )
    }
}

/// Runs the sweep `α ∈ {1, 1.5, 2}`, `p ∈ {0.25, 0.5, 0.75}`, `N ∈ {1, 2, 5}`,
/// `m ∈ {1, 2, ∞}` and returns the number of grids and the smallest
/// successive difference seen.
pub fn monotonicity_sweep() -> Result<(usize, f64)> {
    let orders = [Order::Finite(1), Order::Finite(2), Order::Infinite];
    let opts = EnclosureOptions::default();
    let mut worst = f64::INFINITY;
    let mut grids = 0;
    let mut scan = |top: f64, f: &mut dyn FnMut(f64) -> Result<f64>| -> Result<()> {
        let mut prev = f(0.0)?;
        for i in 1..MONOTONE_GRID {
            let v = f(top * i as f64 / (MONOTONE_GRID - 1) as f64)?;
            worst = worst.min(v - prev);
            prev = v;
        }
        grids += 1;
        Ok(())
    };
    for &n in &[1usize, 2, 5] {
        for &m0 in &orders {
            for &alpha in &[1.0, 1.5, 2.0] {
                let top = RadiusProblem::subordinate(alpha, n, m0)?.domain_max();
                scan(top, &mut |x| eval_F(alpha, n, m0, x))?;
                for &m1 in &orders {
                    for &m2 in &orders {
                        let h = VanishingOrderSpec::Identity;
                        scan(top, &mut |x| Ok(eval_K(alpha, n, m0, m1, m2, &h, x, &opts)?.mid()))?;
                    }
                }
            }
            for &p in &[0.25, 0.5, 0.75] {
                let top = RadiusProblem::pole_subordinate(p, n, m0)?.domain_max();
                scan(top, &mut |x| eval_G(p, n, m0, x))?;
            }
        }
    }
    Ok((grids, worst))
}
