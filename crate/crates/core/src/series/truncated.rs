use std::ops::{Add, Mul};

use num_complex::Complex64;

use super::dd::{two_sum, CDd, Dd};
use crate::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Taylor coefficients `a_0, …, a_T` of a function analytic near the origin.
///
/// The truncation order `T` is `coeffs.len() - 1`; binary operations return a
/// series of the smaller operand order.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedSeries {
    coeffs: Vec<Complex64>,
}

impl TruncatedSeries {
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidParameter("series needs at least one coefficient".into()));
        }
        if let Some(i) = coeffs.iter().position(|c| !(c.re.is_finite() && c.im.is_finite())) {
            return Err(Error::NonFinite(i));
        }
        Ok(Self { coeffs })
    }

    pub fn from_real(coeffs: &[f64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    pub fn zero(order: usize) -> Self {
        Self { coeffs: vec![ZERO; order + 1] }
    }

    pub fn one(order: usize) -> Self {
        Self::monomial(0, order)
    }

    /// The identity map `z`.
    pub fn identity(order: usize) -> Self {
        Self::monomial(1, order)
    }

    /// `z^k` truncated at `order` (the zero series when `k > order`).
    pub fn monomial(k: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = ONE;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> Complex64 {
        self.coeffs.get(n).copied().unwrap_or(ZERO)
    }

    pub fn truncate(&self, order: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(order + 1, ZERO);
        Self { coeffs }
    }

    /// Index of the first nonzero coefficient, `None` for the zero series.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| *c != ZERO)
    }

    /// Coefficients of `self∘inner` through the common order.
    ///
    /// Horner's scheme runs in the series algebra from the highest outer
    /// coefficient down. After `k` remaining multiplications by `inner`
    /// (valuation `v`), only coefficients below `T - k·v` can still reach the
    /// result, so each intermediate product is truncated there.
    pub fn compose(&self, inner: &TruncatedSeries) -> Result<TruncatedSeries> {
        if inner.coeffs[0] != ZERO {
            return Err(Error::NonzeroInnerConstant(format!("{}", inner.coeffs[0])));
        }
        let order = self.order().min(inner.order());
        let Some(v) = inner.valuation() else {
            let mut out = Self::zero(order);
            out.coeffs[0] = self.coeffs[0];
            return Ok(out);
        };
        let top = self.order().min(order / v);
        let mut acc = vec![self.coeffs[top]];
        for k in (0..top).rev() {
            let len = order - k * v + 1;
            acc = mul_truncated(&acc, &inner.coeffs, v, len);
            acc[0] += self.coeffs[k];
        }
        acc.resize(order + 1, ZERO);
        Ok(Self { coeffs: acc })
    }

    /// `self^alpha` for a series with constant term exactly 1.
    ///
    /// Solves `P'·s = α·s'·P` coefficientwise:
    /// `n·P_n = Σ_{k=1..n} (α·k − (n − k))·s_k·P_{n−k}`.
    pub fn real_pow(&self, alpha: f64) -> Result<TruncatedSeries> {
        if self.coeffs[0] != ONE {
            return Err(Error::ConstantTermNotOne(format!("{}", self.coeffs[0])));
        }
        if !alpha.is_finite() {
            return Err(Error::InvalidParameter(format!("exponent {alpha} is not finite")));
        }
        let order = self.order();
        // Carried in double-double: the weights change sign, and rounding in
        // early coefficients is otherwise amplified along the recurrence.
        let s: Vec<CDd> = self.coeffs.iter().map(|&c| CDd::from_c64(c)).collect();
        let alpha = Dd::from_f64(alpha);
        let mut p = Vec::with_capacity(order + 1);
        p.push(CDd::from_c64(ONE));
        for n in 1..=order {
            let mut acc = CDd::default();
            for k in 1..=n {
                let weight = alpha.mul_f64(k as f64).add(Dd::from_f64(-((n - k) as f64)));
                acc = acc.add(s[k].mul(p[n - k]).scale(weight));
            }
            p.push(acc.div_f64(n as f64));
        }
        let p = p.into_iter().map(CDd::to_c64).collect();
        Self::new(p)
    }

    /// Termwise derivative; the result has order `T − 1` (order 0 stays 0).
    pub fn derivative(&self) -> TruncatedSeries {
        if self.order() == 0 {
            return Self::zero(0);
        }
        let coeffs = self.coeffs.iter().enumerate().skip(1).map(|(n, c)| c * n as f64).collect();
        Self { coeffs }
    }

    /// Horner evaluation of the degree-`T` partial sum.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(ZERO, |acc, c| acc * z + c)
    }

    pub fn eval_real(&self, x: f64) -> Complex64 {
        self.eval(Complex64::new(x, 0.0))
    }
}

/// First `len` coefficients of `a·b`, where `b` vanishes below index `v`.
/// Neumaier summation, applied to real and imaginary parts separately.
#[derive(Default)]
struct CompensatedSum {
    sum: Complex64,
    err: Complex64,
}

impl CompensatedSum {
    fn add(&mut self, x: Complex64) {
        let (re, e_re) = two_sum(self.sum.re, x.re);
        let (im, e_im) = two_sum(self.sum.im, x.im);
        self.sum = Complex64::new(re, im);
        self.err += Complex64::new(e_re, e_im);
    }

    fn total(&self) -> Complex64 {
        self.sum + self.err
    }
}

fn mul_truncated(a: &[Complex64], b: &[Complex64], v: usize, len: usize) -> Vec<Complex64> {
    let mut out = vec![ZERO; len];
    if a.is_empty() {
        return out;
    }
    for (j, slot) in out.iter_mut().enumerate().skip(v) {
        let hi = (j - v).min(a.len() - 1);
        let mut acc = CompensatedSum::default();
        for (i, ai) in a.iter().enumerate().take(hi + 1) {
            if let Some(bj) = b.get(j - i) {
                acc.add(ai * bj);
            }
        }
        *slot = acc.total();
    }
    out
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn add(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let order = self.order().min(rhs.order());
        let coeffs = self.coeffs[..=order].iter().zip(&rhs.coeffs[..=order]).map(|(a, b)| a + b).collect();
        TruncatedSeries { coeffs }
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;

    /// Cauchy product truncated at the smaller order.
    fn mul(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let order = self.order().min(rhs.order());
        let v = rhs.valuation().unwrap_or(order + 1);
        let coeffs = mul_truncated(&self.coeffs[..=order], &rhs.coeffs[..=order], v, order + 1);
        TruncatedSeries { coeffs }
    }
}

impl Add for TruncatedSeries {
    type Output = TruncatedSeries;

    fn add(self, rhs: TruncatedSeries) -> TruncatedSeries {
        &self + &rhs
    }
}

impl Mul for TruncatedSeries {
    type Output = TruncatedSeries;

    fn mul(self, rhs: TruncatedSeries) -> TruncatedSeries {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn real(coeffs: &[f64]) -> TruncatedSeries {
        TruncatedSeries::from_real(coeffs).unwrap()
    }

    fn re_parts(s: &TruncatedSeries) -> Vec<f64> {
        s.coeffs().iter().map(|c| c.re).collect()
    }

    /// `z/(1-z)` truncated at `order`.
    fn z_over_one_minus_z(order: usize) -> TruncatedSeries {
        let mut c = vec![1.0; order + 1];
        c[0] = 0.0;
        real(&c)
    }

    #[test]
    fn rejects_non_finite_and_empty() {
        assert_eq!(TruncatedSeries::from_real(&[1.0, f64::NAN]), Err(Error::NonFinite(1)));
        assert!(TruncatedSeries::new(vec![]).is_err());
    }

    #[test]
    fn add_cancels_and_has_identity() {
        let a = real(&[1.0, 1.0]);
        let b = real(&[1.0, -1.0]);
        assert_eq!(re_parts(&(&a + &b)), vec![2.0, 0.0]);
        let zero = TruncatedSeries::zero(1);
        assert_eq!(&a + &zero, a);
    }

    #[test]
    fn add_takes_min_order() {
        let a = real(&[1.0, 2.0, 3.0]);
        let b = real(&[1.0]);
        assert_eq!((&a + &b).order(), 0);
    }

    #[test]
    fn mul_difference_of_squares() {
        let p = &real(&[1.0, 1.0, 0.0]) * &real(&[1.0, -1.0, 0.0]);
        assert_eq!(re_parts(&p), vec![1.0, 0.0, -1.0]);
    }

    #[test]
    fn mul_square_of_geometric() {
        let s = z_over_one_minus_z(20);
        let sq = &s * &s;
        for n in 2..=20 {
            assert_eq!(sq.coeff(n).re, (n - 1) as f64);
        }
        assert_eq!(sq.coeff(0).re, 0.0);
        assert_eq!(sq.coeff(1).re, 0.0);
        let one = TruncatedSeries::one(20);
        assert_eq!(&s * &one, s);
    }

    #[test]
    fn compose_identity_is_bitwise() {
        let f = real(&[0.0, 1.0, 0.5, 0.25, 0.125]);
        let g = f.compose(&TruncatedSeries::identity(4)).unwrap();
        for (a, b) in f.coeffs().iter().zip(g.coeffs()) {
            assert_eq!(a.re.to_bits(), b.re.to_bits());
            assert_eq!(a.im.to_bits(), b.im.to_bits());
        }
    }

    #[test]
    fn compose_with_z_squared() {
        let f = z_over_one_minus_z(30);
        let g = f.compose(&TruncatedSeries::monomial(2, 30)).unwrap();
        for n in 0..=30 {
            let expect = if n > 0 && n % 2 == 0 { 1.0 } else { 0.0 };
            assert_eq!(g.coeff(n).re, expect, "n = {n}");
        }
    }

    #[test]
    fn compose_rejects_constant_inner() {
        let f = real(&[0.0, 1.0]);
        let inner = real(&[0.5, 1.0]);
        assert!(matches!(f.compose(&inner), Err(Error::NonzeroInnerConstant(_))));
    }

    #[test]
    fn compose_with_zero_inner_keeps_constant() {
        let f = real(&[3.0, 1.0, 1.0]);
        let g = f.compose(&TruncatedSeries::zero(2)).unwrap();
        assert_eq!(re_parts(&g), vec![3.0, 0.0, 0.0]);
    }

    #[test]
    fn compose_matches_naive_powers() {
        // naive Σ a_k w^k with full products
        let f = real(&[0.3, -1.0, 0.5, 2.0, -0.25, 1.5, 0.1, 0.0, 0.7]);
        let w = TruncatedSeries::new(
            (0..9).map(|n| if n == 0 { ZERO } else { Complex64::new(0.3 / n as f64, 0.1 * n as f64) }).collect(),
        )
        .unwrap();
        let mut naive = TruncatedSeries::zero(8);
        let mut power = TruncatedSeries::one(8);
        for k in 0..=8 {
            let term = TruncatedSeries::new(power.coeffs().iter().map(|c| c * f.coeff(k)).collect()).unwrap();
            naive = &naive + &term;
            power = &power * &w;
        }
        let fast = f.compose(&w).unwrap();
        for n in 0..=8 {
            assert!((fast.coeff(n) - naive.coeff(n)).norm() < 1e-13);
        }
    }

    #[test]
    fn real_pow_integer_and_koebe() {
        let s = real(&[1.0, 1.0, 0.0, 0.0]);
        assert_eq!(re_parts(&s.real_pow(2.0).unwrap()), vec![1.0, 2.0, 1.0, 0.0]);

        // (1+z)/(1-z) = 1 + 2z + 2z^2 + ...
        let mut c = vec![2.0; 41];
        c[0] = 1.0;
        let q = real(&c);
        let q1 = q.real_pow(1.0).unwrap();
        for (n, cn) in c.iter().enumerate() {
            assert!((q1.coeff(n).re - cn).abs() < 1e-12);
        }
        let q2 = q.real_pow(2.0).unwrap();
        for n in 1..=40 {
            assert!((q2.coeff(n).re - 4.0 * n as f64).abs() < 1e-10, "n = {n}");
        }
    }

    #[test]
    fn real_pow_rejects_bad_constant() {
        assert!(matches!(real(&[2.0, 1.0]).real_pow(0.5), Err(Error::ConstantTermNotOne(_))));
    }

    #[test]
    fn derivative_cases() {
        assert_eq!(re_parts(&TruncatedSeries::monomial(2, 3).derivative()), vec![0.0, 2.0, 0.0]);
        let koebe = real(&(0..=12).map(|n| n as f64).collect::<Vec<_>>());
        let d = koebe.derivative();
        assert_eq!(d.order(), 11);
        for n in 1..=12 {
            assert_eq!(d.coeff(n - 1).re, (n * n) as f64);
        }
        let c = real(&[5.0, 0.0, 0.0]).derivative();
        assert!(c.coeffs().iter().all(|c| *c == ZERO));
    }

    #[test]
    fn eval_cases() {
        assert_eq!(real(&[1.0, 1.0]).eval_real(0.5).re, 1.5);
        let f1 = z_over_one_minus_z(256);
        assert!((f1.eval_real(1.0 / 3.0).re - 0.5).abs() < 1e-15);
        let s = real(&[0.25, 3.0, -1.0]);
        assert_eq!(s.eval(ZERO), Complex64::new(0.25, 0.0));
    }
}
