use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::TruncatedSeries;
use crate::{Error, Result};

/// Largest modulus allowed for a Blaschke zero.
pub const MAX_FACTOR_MODULUS: f64 = 0.9;

/// Sampled damping factors lie in `[MIN_DAMPING, 1)`.
pub const MIN_DAMPING: f64 = 0.1;

/// A member of the class of Schwarz functions vanishing to order exactly `m`:
///
/// `w(z) = ρ·e^{iφ}·z^m·∏_k (μ_k − z)/(1 − conj(μ_k)·z)`
///
/// with `0 < ρ ≤ 1`, `|μ_k| ≤ 0.9` and `μ_k ≠ 0`, so `|w(z)| ≤ |z|^m` on the
/// disk and `w^{(m)}(0) ≠ 0`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SchwarzFunction {
    vanishing_order: u32,
    #[serde(serialize_with = "serialize_points")]
    factors: Vec<Complex64>,
    damping: f64,
    phase: f64,
    seed: Option<u64>,
}

fn serialize_points<S: serde::Serializer>(points: &[Complex64], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(points.len()))?;
    for p in points {
        seq.serialize_element(&[p.re, p.im])?;
    }
    seq.end()
}

impl SchwarzFunction {
    pub fn new(vanishing_order: u32, factors: Vec<Complex64>, damping: f64, phase: f64) -> Result<Self> {
        if vanishing_order == 0 {
            return Err(Error::InvalidParameter("vanishing order must be >= 1".into()));
        }
        if !(damping > 0.0 && damping <= 1.0) {
            return Err(Error::InvalidParameter(format!("damping {damping} outside (0, 1]")));
        }
        if !phase.is_finite() {
            return Err(Error::InvalidParameter("phase must be finite".into()));
        }
        for mu in &factors {
            let r = mu.norm();
            if !(r > 0.0 && r <= MAX_FACTOR_MODULUS) {
                return Err(Error::InvalidParameter(format!(
                    "Blaschke zero {mu} must satisfy 0 < |mu| <= {MAX_FACTOR_MODULUS}"
                )));
            }
        }
        Ok(Self { vanishing_order, factors, damping, phase, seed: None })
    }

    /// `w(z) = z^m`, the choice attaining equality in every sharpness argument.
    pub fn monomial(m: u32) -> Self {
        assert!(m >= 1, "vanishing order must be >= 1");
        Self { vanishing_order: m, factors: Vec::new(), damping: 1.0, phase: 0.0, seed: None }
    }

    pub fn vanishing_order(&self) -> u32 {
        self.vanishing_order
    }

    pub fn factors(&self) -> &[Complex64] {
        &self.factors
    }

    pub fn damping(&self) -> f64 {
        self.damping
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    fn normalizer(&self) -> Complex64 {
        Complex64::from_polar(self.damping, self.phase)
    }

    /// Evaluates the factored form.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        let mut w = self.normalizer() * z.powu(self.vanishing_order);
        for mu in &self.factors {
            w *= (mu - z) / (Complex64::new(1.0, 0.0) - mu.conj() * z);
        }
        w
    }

    pub fn eval_real(&self, x: f64) -> Complex64 {
        self.eval(Complex64::new(x, 0.0))
    }

    /// Taylor expansion through `order`; the first `m` coefficients are exactly 0.
    pub fn to_series(&self, order: usize) -> TruncatedSeries {
        let m = self.vanishing_order as usize;
        if m > order {
            return TruncatedSeries::zero(order);
        }
        let len = order - m;
        let mut product = TruncatedSeries::one(len);
        for mu in &self.factors {
            product = &product * &automorphism_series(*mu, len);
        }
        let scale = self.normalizer();
        let mut coeffs = vec![Complex64::new(0.0, 0.0); m];
        coeffs.extend(product.coeffs().iter().map(|c| c * scale));
        TruncatedSeries::new(coeffs).expect("bounded Blaschke coefficients are finite")
    }
}

/// `(μ − z)/(1 − conj(μ) z) = μ + Σ_{j≥1} conj(μ)^{j−1}(|μ|² − 1) z^j`.
fn automorphism_series(mu: Complex64, order: usize) -> TruncatedSeries {
    let mut coeffs = Vec::with_capacity(order + 1);
    coeffs.push(mu);
    let shrink = mu.norm_sqr() - 1.0;
    let mut power = Complex64::new(1.0, 0.0);
    for _ in 1..=order {
        coeffs.push(power * shrink);
        power *= mu.conj();
    }
    TruncatedSeries::new(coeffs).expect("finite")
}

/// Deterministic pseudo-random member of the class vanishing to order `m`.
///
/// Damping is drawn from `[0.1, 1)`, the phase uniformly, and each Blaschke
/// zero uniformly from the punctured disk `0 < |μ| ≤ 0.9`.
pub fn schwarz_sample(m: u32, num_factors: usize, seed: u64) -> SchwarzFunction {
    assert!(m >= 1, "vanishing order must be >= 1");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let damping = rng.gen_range(MIN_DAMPING..1.0);
    let phase = rng.gen_range(0.0..TAU);
    let factors = (0..num_factors)
        .map(|_| loop {
            let r = MAX_FACTOR_MODULUS * rng.gen::<f64>().sqrt();
            let t = rng.gen_range(0.0..TAU);
            if r > 1e-6 {
                break Complex64::from_polar(r, t);
            }
        })
        .collect();
    SchwarzFunction { vanishing_order: m, factors, damping, phase, seed: Some(seed) }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_series() {
        let s = SchwarzFunction::monomial(2).to_series(6);
        let re: Vec<f64> = s.coeffs().iter().map(|c| c.re).collect();
        assert_eq!(re, vec![0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn sample_is_deterministic() {
        assert_eq!(schwarz_sample(2, 3, 7), schwarz_sample(2, 3, 7));
        assert_ne!(schwarz_sample(2, 3, 7), schwarz_sample(2, 3, 8));
    }

    #[test]
    fn sample_obeys_schwarz_bound_at_half() {
        for seed in 0..50 {
            for m in 1..=3 {
                let w = schwarz_sample(m, 3, seed);
                assert!(w.eval_real(0.5).norm() <= 0.5f64.powi(m as i32));
            }
        }
    }

    #[test]
    fn real_single_factor_matches_geometric_expansion() {
        // (mu - z)/(1 - mu z) z^m expanded through the geometric series of 1/(1 - mu z)
        let mu = 0.4;
        let m = 2u32;
        let w = SchwarzFunction::new(m, vec![Complex64::new(mu, 0.0)], 1.0, 0.0).unwrap();
        let s = w.to_series(20);
        let geo: Vec<f64> = (0..=20).map(|j| mu.powi(j)).collect();
        for n in 0..=20usize {
            let expect = if n < m as usize {
                0.0
            } else {
                let k = n - m as usize;
                mu * geo[k] - if k >= 1 { geo[k - 1] } else { 0.0 }
            };
            assert!((s.coeff(n).re - expect).abs() < 1e-15, "n = {n}");
            assert_eq!(s.coeff(n).im, 0.0);
        }
    }

    #[test]
    fn series_matches_factored_form() {
        let w = schwarz_sample(1, 4, 11);
        let s = w.to_series(200);
        for &x in &[0.1, 0.3, -0.45] {
            let z = Complex64::new(x, 0.2);
            assert!((s.eval(z) - w.eval(z)).norm() < 1e-13);
        }
    }

    #[test]
    fn leading_coefficients_vanish() {
        for m in 1..=4u32 {
            let w = schwarz_sample(m, 2, 3);
            let s = w.to_series(32);
            for n in 0..m as usize {
                assert_eq!(s.coeff(n), Complex64::new(0.0, 0.0));
            }
            assert!(s.coeff(m as usize).norm() > 0.0);
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(SchwarzFunction::new(0, vec![], 1.0, 0.0).is_err());
        assert!(SchwarzFunction::new(1, vec![], 1.5, 0.0).is_err());
        assert!(SchwarzFunction::new(1, vec![Complex64::new(0.95, 0.0)], 1.0, 0.0).is_err());
        assert!(SchwarzFunction::new(1, vec![Complex64::new(0.0, 0.0)], 1.0, 0.0).is_err());
    }
}
