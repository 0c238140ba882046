//! Radius functions and their certified roots.
//!
//! * `F(x) = Σ_{n≥N} A_n x^n + f_α(x^{m₀}) − 1/(2α)` (opening angle, `g∘w₀`)
//! * `K(x) = Σ_{n≥N} A_n x^{h(n)} + f_α(x^{m₀}) + x^{m₂}u(x^{m₁}) − 1/(2α)`
//!   with `u(t) = (1+t)^{α−1}/(1−t)^{α+1}` (opening angle, derivative form)
//! * `G(x) = Σ_{n≥N} c_n(p) x^n + k_p(x^{m₀}) − p/(1+p)²` (pole family)
//!
//! Each is strictly increasing, negative at 0 and unbounded towards the end of
//! its domain, so bisection on the sign gives the unique root.

mod bisect;
mod vanishing;

use serde::Serialize;

pub use bisect::{bisect, Bracket};
pub use vanishing::VanishingOrderSpec;

use crate::families::{
    self, check_alpha, check_p, coeffs_a, distortion_term, f_alpha_eval, f_alpha_tail, k_p_eval, k_p_tail,
    ConcaveFamily,
};
use crate::{Error, Order, Result};

pub const DEFAULT_TOL: f64 = 1e-12;

/// Upper end of the search interval for the opening-angle family is `1 − OPENING_ANGLE_OFFSET`.
pub const OPENING_ANGLE_OFFSET: f64 = 1e-9;

/// Upper end for the pole family is `p·(1 − POLE_OFFSET)`.
pub const POLE_OFFSET: f64 = 1e-12;

/// The opening-angle inequality only holds up to `|z| = 1/3`.
pub const SUBORDINATION_CAP: f64 = 1.0 / 3.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    /// `|g(w₀(z))| + Σ|b_n|r^n` for subordinates of an opening-angle map.
    Subordinate,
    /// `|f(w₀)| + |f′(w₁)||w₂| + Σ|a_n||w*_n|` for an opening-angle map.
    Distortion,
    /// `|g(w₀(z))| + Σ|b_n|r^n` for subordinates of a pole-family map.
    PoleSubordinate,
}

impl Variant {
    /// Stable snake_case identifier, also used as a check id prefix.
    pub fn id(self) -> &'static str {
        match self {
            Variant::Subordinate => "subordinate",
            Variant::Distortion => "distortion",
            Variant::PoleSubordinate => "pole_subordinate",
        }
    }
}

/// Interval `[lo, hi]` containing a value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Enclosure {
    pub lo: f64,
    pub hi: f64,
}

impl Enclosure {
    pub fn point(v: f64) -> Self {
        Self { lo: v, hi: v }
    }

    pub fn mid(&self) -> f64 {
        self.lo + 0.5 * (self.hi - self.lo)
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    fn shift(self, by: f64) -> Self {
        Self { lo: self.lo + by, hi: self.hi + by }
    }
}

/// Term cutoff schedule for the `h`-sum in `K`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnclosureOptions {
    pub initial_cutoff: usize,
    pub max_cutoff: usize,
    /// Largest acceptable enclosure width.
    pub max_width: f64,
}

impl Default for EnclosureOptions {
    fn default() -> Self {
        Self { initial_cutoff: crate::DEFAULT_ORDER, max_cutoff: 1 << 16, max_width: DEFAULT_TOL / 10.0 }
    }
}

fn check_unit(x: f64) -> Result<()> {
    if (0.0..1.0).contains(&x) {
        Ok(())
    } else {
        Err(Error::Domain(format!("need 0 <= x < 1, got {x}")))
    }
}

#[allow(non_snake_case)]
pub fn eval_F(alpha: f64, n: usize, m0: Order, x: f64) -> Result<f64> {
    check_alpha(alpha)?;
    check_unit(x)?;
    let tail = f_alpha_tail(alpha, x, n)?;
    let inner = if m0.is_infinite() { 0.0 } else { f_alpha_eval(alpha, m0.pow(x))? };
    Ok(tail + inner - 0.5 / alpha)
}

#[allow(non_snake_case)]
pub fn eval_G(p: f64, n: usize, m0: Order, x: f64) -> Result<f64> {
    check_p(p)?;
    if !(0.0..p).contains(&x) {
        return Err(Error::Domain(format!("need 0 <= x < p = {p}, got {x}")));
    }
    let tail = k_p_tail(p, x, n)?;
    let inner = if m0.is_infinite() { 0.0 } else { k_p_eval(p, m0.pow(x))? };
    Ok(tail + inner - p / ((1.0 + p) * (1.0 + p)))
}

/// Enclosure of `Σ_{n≥N} A_n x^{h(n)}` with terms summed up to `cutoff`.
///
/// The remainder uses `h(n) ≥ β·n + γ`:
/// `Σ_{n>T} A_n x^{h(n)} ≤ x^γ·Σ_{n>T} A_n (x^β)^n`, a closed-form tail of `f_α`.
pub fn h_sum_enclosure(alpha: f64, n: usize, h: &VanishingOrderSpec, x: f64, cutoff: usize) -> Result<Enclosure> {
    check_unit(x)?;
    if n == 0 {
        return Err(Error::InvalidParameter("N must be >= 1".into()));
    }
    if let VanishingOrderSpec::Identity = h {
        return Ok(Enclosure::point(f_alpha_tail(alpha, x, n)?));
    }
    let last = h.known_until().map_or(cutoff, |k| k.min(cutoff));
    let coeffs = coeffs_a(alpha, last.max(n))?;
    let mut head = 0.0;
    for k in (n..=last).rev() {
        let hk = h.value(k).expect("h known up to `last`");
        head += coeffs[k] * pow_u64(x, hk);
    }
    let (slope, offset) = h.lower_bound();
    let y = x.powi(slope as i32);
    let from = (last + 1).max(n);
    let rest = pow_u64(x, offset as u64) * f_alpha_tail(alpha, y, from)?;
    // the closed-form remainder is a difference of rounded values
    let slack = 4.0 * f64::EPSILON * (head + pow_u64(x, offset as u64) * f_alpha_eval(alpha, y)?);
    Ok(Enclosure { lo: head, hi: head + rest + slack })
}

fn pow_u64(x: f64, e: u64) -> f64 {
    if e > i32::MAX as u64 {
        return if x < 1.0 { 0.0 } else { 1.0 };
    }
    x.powi(e as i32)
}

/// `K` at a fixed term cutoff.
pub fn eval_k_at_cutoff(
    alpha: f64,
    n: usize,
    orders: [Order; 3],
    h: &VanishingOrderSpec,
    x: f64,
    cutoff: usize,
) -> Result<Enclosure> {
    check_alpha(alpha)?;
    let [m0, m1, m2] = orders;
    let sum = h_sum_enclosure(alpha, n, h, x, cutoff)?;
    let inner = if m0.is_infinite() { 0.0 } else { f_alpha_eval(alpha, m0.pow(x))? };
    let distortion = distortion_term(alpha, x, m1, m2)?;
    Ok(sum.shift(inner + distortion - 0.5 / alpha))
}

/// Certified enclosure of `K(x)`; the cutoff doubles until the width is at
/// most `opts.max_width`.
#[allow(non_snake_case, clippy::too_many_arguments)]
pub fn eval_K(
    alpha: f64,
    n: usize,
    m0: Order,
    m1: Order,
    m2: Order,
    h: &VanishingOrderSpec,
    x: f64,
    opts: &EnclosureOptions,
) -> Result<Enclosure> {
    let mut cutoff = opts.initial_cutoff.max(1);
    loop {
        let e = eval_k_at_cutoff(alpha, n, [m0, m1, m2], h, x, cutoff)?;
        if e.width() <= opts.max_width {
            return Ok(e);
        }
        let exhausted = cutoff >= opts.max_cutoff || h.known_until().is_some_and(|k| cutoff >= k);
        if exhausted {
            return Err(Error::EnclosureTooWide { x, width: e.width(), bound: opts.max_width });
        }
        cutoff = (cutoff * 2).min(opts.max_cutoff);
    }
}

/// A radius question: which family, which inequality, and its parameters.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RadiusProblem {
    pub family: ConcaveFamily,
    pub variant: Variant,
    #[serde(rename = "N")]
    pub n: usize,
    pub m0: Order,
    pub m1: Order,
    pub m2: Order,
    pub h: VanishingOrderSpec,
}

impl RadiusProblem {
    pub fn subordinate(alpha: f64, n: usize, m0: Order) -> Result<Self> {
        let p = Self {
            family: ConcaveFamily::opening_angle(alpha)?,
            variant: Variant::Subordinate,
            n,
            m0,
            m1: Order::Infinite,
            m2: Order::Infinite,
            h: VanishingOrderSpec::Identity,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn distortion(alpha: f64, n: usize, m0: Order, m1: Order, m2: Order, h: VanishingOrderSpec) -> Result<Self> {
        let p = Self { family: ConcaveFamily::opening_angle(alpha)?, variant: Variant::Distortion, n, m0, m1, m2, h };
        p.validate()?;
        Ok(p)
    }

    pub fn pole_subordinate(p: f64, n: usize, m0: Order) -> Result<Self> {
        let prob = Self {
            family: ConcaveFamily::pole(p)?,
            variant: Variant::PoleSubordinate,
            n,
            m0,
            m1: Order::Infinite,
            m2: Order::Infinite,
            h: VanishingOrderSpec::Identity,
        };
        prob.validate()?;
        Ok(prob)
    }

    pub fn validate(&self) -> Result<()> {
        self.family.validate()?;
        if self.n == 0 {
            return Err(Error::InvalidParameter("N must be >= 1".into()));
        }
        match (self.variant, self.family) {
            (Variant::Subordinate | Variant::Distortion, ConcaveFamily::OpeningAngle { .. }) => Ok(()),
            (Variant::PoleSubordinate, ConcaveFamily::Pole { .. }) => Ok(()),
            (v, _) => Err(Error::InvalidParameter(format!("{v:?} does not apply to this family"))),
        }
    }

    /// `α` for opening-angle problems.
    pub fn alpha(&self) -> Option<f64> {
        match self.family {
            ConcaveFamily::OpeningAngle { alpha } => Some(alpha),
            ConcaveFamily::Pole { .. } => None,
        }
    }

    pub fn p(&self) -> Option<f64> {
        match self.family {
            ConcaveFamily::Pole { p } => Some(p),
            ConcaveFamily::OpeningAngle { .. } => None,
        }
    }

    /// Right end of the bracket domain.
    pub fn domain_max(&self) -> f64 {
        match self.family {
            ConcaveFamily::OpeningAngle { .. } => 1.0 - OPENING_ANGLE_OFFSET,
            ConcaveFamily::Pole { p } => p * (1.0 - POLE_OFFSET),
        }
    }

    pub fn extremal_distance(&self) -> f64 {
        families::extremal_distance(&self.family)
    }

    /// Radius function at `x` (a point enclosure except for `K` with nontrivial `h`).
    pub fn evaluate(&self, x: f64, opts: &EnclosureOptions) -> Result<Enclosure> {
        match (self.variant, self.family) {
            (Variant::Subordinate, ConcaveFamily::OpeningAngle { alpha }) => {
                Ok(Enclosure::point(eval_F(alpha, self.n, self.m0, x)?))
            }
            (Variant::Distortion, ConcaveFamily::OpeningAngle { alpha }) => {
                eval_K(alpha, self.n, self.m0, self.m1, self.m2, &self.h, x, opts)
            }
            (Variant::PoleSubordinate, ConcaveFamily::Pole { p }) => {
                Ok(Enclosure::point(eval_G(p, self.n, self.m0, x)?))
            }
            _ => Err(Error::InvalidParameter("variant does not match family".into())),
        }
    }

    /// A value at `x` whose sign is certified: enclosures are refined until
    /// they exclude zero or become narrower than `opts.max_width`.
    pub fn signed_value(&self, x: f64, opts: &EnclosureOptions) -> Result<f64> {
        let (Variant::Distortion, ConcaveFamily::OpeningAngle { alpha }) = (self.variant, self.family) else {
            return Ok(self.evaluate(x, opts)?.mid());
        };
        let mut cutoff = opts.initial_cutoff.max(1);
        loop {
            let e = eval_k_at_cutoff(alpha, self.n, [self.m0, self.m1, self.m2], &self.h, x, cutoff)?;
            if e.lo > 0.0 {
                return Ok(e.lo);
            }
            if e.hi < 0.0 {
                return Ok(e.hi);
            }
            if e.width() <= opts.max_width {
                return Ok(e.mid());
            }
            let exhausted = cutoff >= opts.max_cutoff || self.h.known_until().is_some_and(|k| cutoff >= k);
            if exhausted {
                return Err(Error::EnclosureTooWide { x, width: e.width(), bound: opts.max_width });
            }
            cutoff = (cutoff * 2).min(opts.max_cutoff);
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RadiusResult {
    pub root: f64,
    pub bracket: (f64, f64),
    pub residual: f64,
    pub iterations: u32,
    /// Opening-angle subordination only: the root certainly exceeds 1/3.
    pub capped: bool,
    pub reported_radius: f64,
}

/// Root of the problem's radius function by bisection to `tol`.
pub fn find_radius(problem: &RadiusProblem, tol: f64) -> Result<RadiusResult> {
    let opts = EnclosureOptions { max_width: tol / 10.0, ..EnclosureOptions::default() };
    find_radius_with(problem, tol, &opts)
}

pub fn find_radius_with(problem: &RadiusProblem, tol: f64, opts: &EnclosureOptions) -> Result<RadiusResult> {
    problem.validate()?;
    let f = |x: f64| problem.signed_value(x, opts);
    let b = bisect(f, 0.0, problem.domain_max(), tol)?;
    let root = b.polished_root();
    let residual = problem.signed_value(root, opts)?.abs();
    let (capped, reported_radius) = match problem.variant {
        Variant::Subordinate => (b.lo > SUBORDINATION_CAP, root.min(SUBORDINATION_CAP)),
        Variant::Distortion | Variant::PoleSubordinate => (false, root),
    };
    Ok(RadiusResult { root, bracket: (b.lo, b.hi), residual, iterations: b.iterations, capped, reported_radius })
}

/// Closed forms for `N = 1`, `m₀ = ∞`:
/// `(2^{1/α} − 1)/(2^{1/α} + 1)` for subordinates of `f_α`, and
/// `(p + 1/p + 1) − (√p + 1/√p)·√(p + 1/p)` for the pole family.
pub fn closed_form_radius(problem: &RadiusProblem) -> Option<f64> {
    if problem.n != 1 || !problem.m0.is_infinite() {
        return None;
    }
    match (problem.variant, problem.family) {
        (Variant::Subordinate, ConcaveFamily::OpeningAngle { alpha }) => {
            let t = 2f64.powf(1.0 / alpha);
            Some((t - 1.0) / (t + 1.0))
        }
        (Variant::PoleSubordinate, ConcaveFamily::Pole { p }) => {
            let s = p.sqrt();
            Some((p + 1.0 / p + 1.0) - (s + 1.0 / s) * (p + 1.0 / p).sqrt())
        }
        _ => None,
    }
}

/// Root in `(0, 1)` of `2(1+r)r^N − (1−r)²`, the Bohr–Rogosinski radius for
/// bounded analytic functions.
pub fn classical_br_radius(n: usize) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidParameter("N must be >= 1".into()));
    }
    let phi = |r: f64| Ok(classical_br_equation(n, r));
    let b = bisect(phi, 0.0, 1.0, 1e-13)?;
    Ok(b.polished_root())
}

pub fn classical_br_equation(n: usize, r: f64) -> f64 {
    2.0 * (1.0 + r) * r.powi(n as i32) - (1.0 - r) * (1.0 - r)
}
