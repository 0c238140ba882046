//! Extremal maps of the two concave families and their scalar machinery.
//!
//! Opening-angle family, `α ∈ [1, 2]`:
//! `f_α(z) = (((1+z)/(1−z))^α − 1)/(2α) = Σ_{n≥1} A_n z^n`.
//!
//! Pole family, `p ∈ (0, 1)`:
//! `k_p(z) = p·z/((p − z)(1 − p·z)) = Σ_{n≥1} c_n(p) z^n` on `|z| < p`.
//!
//! Both are normalised so that `f′(0) = 1`.

use num_complex::Complex64;
use serde::Serialize;

use crate::series::TruncatedSeries;
use crate::{Error, Order, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ConcaveFamily {
    OpeningAngle { alpha: f64 },
    Pole { p: f64 },
}

impl ConcaveFamily {
    pub fn opening_angle(alpha: f64) -> Result<Self> {
        check_alpha(alpha)?;
        Ok(Self::OpeningAngle { alpha })
    }

    pub fn pole(p: f64) -> Result<Self> {
        check_p(p)?;
        Ok(Self::Pole { p })
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            Self::OpeningAngle { alpha } => check_alpha(alpha),
            Self::Pole { p } => check_p(p),
        }
    }

    pub fn extremal(&self) -> ExtremalData {
        ExtremalData { family: *self, dist_to_boundary: extremal_distance(self), normalization: 1.0 }
    }
}

/// Distance from `f(0)` to the image boundary for the extremal map, with
/// `|f′(0)|` pinned at 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExtremalData {
    pub family: ConcaveFamily,
    pub dist_to_boundary: f64,
    pub normalization: f64,
}

pub fn check_alpha(alpha: f64) -> Result<()> {
    if (1.0..=2.0).contains(&alpha) {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("alpha = {alpha} outside [1, 2]")))
    }
}

pub fn check_p(p: f64) -> Result<()> {
    if p > 0.0 && p < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("p = {p} outside (0, 1)")))
    }
}

fn check_index(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidParameter("coefficient index must be >= 1".into()));
    }
    Ok(())
}

/// `A_0 = 0, A_1, …, A_{n_max}` from the three-term recurrence
/// `(n+1)c_{n+1} = 2α c_n + (n−1)c_{n−1}`, `c_0 = 1`, `c_1 = 2α`, `A_n = c_n/(2α)`,
/// which follows from `(1 − z²)g′ = 2αg` for `g = ((1+z)/(1−z))^α`.
pub fn coeffs_a(alpha: f64, n_max: usize) -> Result<Vec<f64>> {
    check_alpha(alpha)?;
    let two_alpha = 2.0 * alpha;
    let mut out = Vec::with_capacity(n_max + 1);
    out.push(0.0);
    let (mut prev, mut cur) = (1.0, two_alpha);
    for n in 1..=n_max {
        out.push(cur / two_alpha);
        let next = (two_alpha * cur + (n as f64 - 1.0) * prev) / (n as f64 + 1.0);
        prev = cur;
        cur = next;
    }
    Ok(out)
}

pub fn coeff_a(alpha: f64, n: usize) -> Result<f64> {
    check_index(n)?;
    Ok(coeffs_a(alpha, n)?[n])
}

/// Taylor series of `f_α` through `order`.
pub fn f_alpha_series(alpha: f64, order: usize) -> Result<TruncatedSeries> {
    TruncatedSeries::from_real(&coeffs_a(alpha, order)?)
}

pub fn f_alpha_eval(alpha: f64, x: f64) -> Result<f64> {
    check_alpha(alpha)?;
    if !(x.abs() < 1.0) {
        return Err(Error::Domain(format!("f_alpha needs |x| < 1, got {x}")));
    }
    Ok((((1.0 + x) / (1.0 - x)).powf(alpha) - 1.0) / (2.0 * alpha))
}

/// `f_α(z)` on the principal branch; `(1+z)/(1−z)` has positive real part on the disk.
pub fn f_alpha_eval_complex(alpha: f64, z: Complex64) -> Complex64 {
    let one = Complex64::new(1.0, 0.0);
    (((one + z) / (one - z)).powf(alpha) - one) / (2.0 * alpha)
}

/// `Σ_{n≥N} A_n x^n`, computed as `f_α(x)` minus the head.
pub fn f_alpha_tail(alpha: f64, x: f64, n: usize) -> Result<f64> {
    check_index(n)?;
    if !(0.0..1.0).contains(&x) {
        return Err(Error::Domain(format!("tail needs 0 <= x < 1, got {x}")));
    }
    let total = f_alpha_eval(alpha, x)?;
    let head = head_sum(&coeffs_a(alpha, n - 1)?, x);
    Ok((total - head).max(0.0))
}

/// `Σ_{k=1}^{len-1} coeffs[k] x^k`, smallest terms first.
fn head_sum(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().enumerate().skip(1).rev().map(|(k, c)| c * x.powi(k as i32)).sum()
}

/// `c_n(p) = (1 − p^{2n})/((1 − p²)p^{n−1})`.
pub fn coeff_c(p: f64, n: usize) -> Result<f64> {
    check_p(p)?;
    check_index(n)?;
    Ok(pole_coeff(p, n))
}

fn pole_coeff(p: f64, n: usize) -> f64 {
    // Σ_{k=0}^{n-1} p^{2k - n + 1}, summed without the 1 − p^{2n} cancellation.
    let e = n as i32 - 1;
    (0..n as i32).map(|k| p.powi(2 * k - e)).sum()
}

/// `c_0 = 0, c_1(p), …, c_{n_max}(p)`.
pub fn coeffs_c(p: f64, n_max: usize) -> Result<Vec<f64>> {
    check_p(p)?;
    Ok((0..=n_max).map(|n| if n == 0 { 0.0 } else { pole_coeff(p, n) }).collect())
}

/// Taylor series of `k_p` about the origin (radius of convergence `p`).
pub fn k_p_series(p: f64, order: usize) -> Result<TruncatedSeries> {
    TruncatedSeries::from_real(&coeffs_c(p, order)?)
}

pub fn k_p_eval(p: f64, x: f64) -> Result<f64> {
    check_p(p)?;
    if !(x.abs() < p) {
        return Err(Error::Domain(format!("k_p needs |x| < p = {p}, got {x}")));
    }
    Ok(p * x / ((p - x) * (1.0 - p * x)))
}

pub fn k_p_eval_complex(p: f64, z: Complex64) -> Complex64 {
    let one = Complex64::new(1.0, 0.0);
    p * z / ((p - z) * (one - p * z))
}

/// `Σ_{n≥N} c_n(p) x^n`, computed as `k_p(x)` minus the head.
pub fn k_p_tail(p: f64, x: f64, n: usize) -> Result<f64> {
    check_index(n)?;
    if x < 0.0 {
        return Err(Error::Domain(format!("tail needs 0 <= x < p, got {x}")));
    }
    let total = k_p_eval(p, x)?;
    let head = head_sum(&coeffs_c(p, n - 1)?, x);
    Ok((total - head).max(0.0))
}

/// `x^{m₂}(1 + x^{m₁})^{α−1}/(1 − x^{m₁})^{α+1}`, the distortion bound for
/// `|f′(w₁)||w₂|`. `m₂ = ∞` gives 0 and `m₁ = ∞` gives `x^{m₂}`.
pub fn distortion_term(alpha: f64, x: f64, m1: Order, m2: Order) -> Result<f64> {
    check_alpha(alpha)?;
    if !(0.0..1.0).contains(&x) {
        return Err(Error::Domain(format!("distortion term needs 0 <= x < 1, got {x}")));
    }
    if m2.is_infinite() {
        return Ok(0.0);
    }
    let y = m1.pow(x);
    Ok(m2.pow(x) * (1.0 + y).powf(alpha - 1.0) / (1.0 - y).powf(alpha + 1.0))
}

/// `1/(2α)` for the opening-angle family, `p/(1+p)²` for the pole family.
pub fn extremal_distance(family: &ConcaveFamily) -> f64 {
    match *family {
        ConcaveFamily::OpeningAngle { alpha } => 1.0 / (2.0 * alpha),
        ConcaveFamily::Pole { p } => p / ((1.0 + p) * (1.0 + p)),
    }
}
