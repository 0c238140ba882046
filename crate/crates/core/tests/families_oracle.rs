use bohr_lab::families::{coeff_a, coeffs_a, coeffs_c, f_alpha_eval, k_p_eval};
use proptest::prelude::*;

/// `A_n` by convolving the binomial expansions of `(1+z)^α` and `(1−z)^{−α}`.
fn binomial_convolution(alpha: f64, n: usize) -> f64 {
    let binom = |top: f64, k: usize| (0..k).fold(1.0, |acc, j| acc * (top - j as f64) / (j as f64 + 1.0));
    let g: f64 = (0..=n)
        .map(|k| {
            let j = n - k;
            let neg = if j.is_multiple_of(2) { 1.0 } else { -1.0 };
            binom(alpha, k) * binom(-alpha, j) * neg
        })
        .sum();
    g / (2.0 * alpha)
}

#[test]
fn recurrence_matches_binomial_convolution() {
    for &alpha in &[1.0, 1.25, 1.5, 1.75, 2.0] {
        for n in 1..=60 {
            let expect = binomial_convolution(alpha, n);
            let got = coeff_a(alpha, n).unwrap();
            assert!((got - expect).abs() <= 1e-12 * expect.abs(), "alpha {alpha} n {n}: {got} vs {expect}");
        }
    }
}

#[test]
fn frozen_coefficients_at_alpha_three_halves() {
    // A_2 = α, A_3 = (2α² + 1)/3 for f_α
    let a = coeffs_a(1.5, 3).unwrap();
    assert!((a[2] - 1.5).abs() < 1e-15);
    assert!((a[3] - (2.0 * 2.25 + 1.0) / 3.0).abs() < 1e-15);
}

proptest! {
    #[test]
    fn partial_sums_converge_to_closed_form(alpha in 1.0f64..=2.0, x in 0.0f64..0.5) {
        let a = coeffs_a(alpha, 200).unwrap();
        let partial: f64 = a.iter().enumerate().map(|(n, c)| c * x.powi(n as i32)).sum();
        prop_assert!((partial - f_alpha_eval(alpha, x).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn pole_partial_sums_converge(p in 0.05f64..0.95, t in 0.0f64..0.6) {
        let x = t * p;
        let c = coeffs_c(p, 120).unwrap();
        let partial: f64 = c.iter().enumerate().map(|(n, c)| c * x.powi(n as i32)).sum();
        let exact = k_p_eval(p, x).unwrap();
        prop_assert!((partial - exact).abs() <= 1e-10 * exact.max(1.0));
    }

    #[test]
    fn coefficients_monotone_in_alpha(a1 in 1.0f64..=2.0, a2 in 1.0f64..=2.0) {
        let (lo, hi) = if a1 <= a2 { (a1, a2) } else { (a2, a1) };
        let x = coeffs_a(lo, 60).unwrap();
        let y = coeffs_a(hi, 60).unwrap();
        for n in 1..=60 {
            prop_assert!(x[n] > 0.0 && x[n] <= y[n] * (1.0 + 1e-14));
        }
    }
}
