use bohr_lab::families::coeffs_a;
use bohr_lab::radius::{
    closed_form_radius, find_radius, EnclosureOptions, RadiusProblem, VanishingOrderSpec, DEFAULT_TOL,
    SUBORDINATION_CAP,
};
use bohr_lab::{Error, Order};

const ORDERS: [Order; 3] = [Order::Finite(1), Order::Finite(2), Order::Infinite];

fn sweep() -> Vec<RadiusProblem> {
    let mut out = Vec::new();
    for &n in &[1usize, 2, 5] {
        for &m in &ORDERS {
            for &alpha in &[1.0, 1.5, 2.0] {
                out.push(RadiusProblem::subordinate(alpha, n, m).unwrap());
                out.push(RadiusProblem::distortion(alpha, n, m, m, m, VanishingOrderSpec::Identity).unwrap());
                out.push(
                    RadiusProblem::distortion(alpha, n, m, Order::Finite(1), m, "2*n+1".parse().unwrap()).unwrap(),
                );
            }
            for &p in &[0.25, 0.5, 0.75] {
                out.push(RadiusProblem::pole_subordinate(p, n, m).unwrap());
            }
        }
    }
    out
}

#[test]
fn sign_structure_and_uniqueness() {
    let opts = EnclosureOptions::default();
    let grid_opts = EnclosureOptions { max_width: 1e-9, ..EnclosureOptions::default() };
    for prob in sweep() {
        let at_zero = prob.evaluate(0.0, &opts).unwrap().mid();
        assert!((at_zero + prob.extremal_distance()).abs() < 1e-15, "{prob:?}");
        assert!(prob.signed_value(prob.domain_max(), &opts).unwrap() > 0.0);
        let root = find_radius(&prob, DEFAULT_TOL).unwrap().root;
        // 200-point grid on [0, min(domain, 1.5 root)] where enclosures stay tight
        let top = (1.5 * root).min(0.95 * prob.domain_max());
        let vals: Vec<f64> =
            (0..200).map(|i| prob.evaluate(top * i as f64 / 199.0, &grid_opts).unwrap().mid()).collect();
        assert!(vals.windows(2).all(|w| w[1] >= w[0]), "{prob:?}");
        let changes = vals.windows(2).filter(|w| (w[0] < 0.0) != (w[1] < 0.0)).count();
        assert_eq!(changes, 1, "{prob:?}");
    }
}

#[test]
fn result_invariants() {
    for prob in sweep() {
        let r = find_radius(&prob, DEFAULT_TOL).unwrap();
        let (lo, hi) = r.bracket;
        assert!(lo < r.root && r.root < hi);
        assert!(hi - lo <= DEFAULT_TOL);
        assert!(r.residual < 1e-9, "{prob:?}: {}", r.residual);
        assert!(r.reported_radius <= r.root);
        if let Some(p) = prob.p() {
            assert!(r.root < p);
        }
        if prob.variant == bohr_lab::Variant::Subordinate {
            assert!(r.reported_radius <= SUBORDINATION_CAP);
            assert_eq!(r.capped, lo > SUBORDINATION_CAP);
            if r.root > SUBORDINATION_CAP + DEFAULT_TOL {
                assert!(r.capped);
            }
        } else {
            assert!(!r.capped);
        }
        if let Some(c) = closed_form_radius(&prob) {
            assert!((c - r.root).abs() <= 1e-10);
        }
    }
}

#[test]
fn derivative_free_limit_matches_subordination_radius() {
    // m2 = ∞ with h(n) = n is the equation for g∘w0, independent of m1
    for &alpha in &[1.0, 1.5, 2.0] {
        for &n in &[1usize, 2, 5] {
            for &m0 in &ORDERS {
                let f = find_radius(&RadiusProblem::subordinate(alpha, n, m0).unwrap(), DEFAULT_TOL).unwrap().root;
                for &m1 in &ORDERS {
                    let prob =
                        RadiusProblem::distortion(alpha, n, m0, m1, Order::Infinite, VanishingOrderSpec::Identity)
                            .unwrap();
                    let k = find_radius(&prob, DEFAULT_TOL).unwrap().root;
                    assert!((k - f).abs() <= DEFAULT_TOL, "alpha {alpha} N {n} m0 {m0} m1 {m1}");
                }
            }
        }
    }
}

#[test]
fn pure_coefficient_limit_matches_scalar_solver() {
    // m0 = m2 = ∞: Σ_{n≥N} A_n x^n = 1/(2α), solved by plain bisection on partial sums
    for &alpha in &[1.0, 1.5, 2.0] {
        for &n in &[1usize, 2, 5] {
            let a = coeffs_a(alpha, 4000).unwrap();
            let sum =
                |x: f64| a.iter().enumerate().skip(n).map(|(k, c)| c * x.powi(k as i32)).sum::<f64>() - 0.5 / alpha;
            let (mut lo, mut hi) = (0.0f64, 0.95f64);
            for _ in 0..100 {
                let mid = 0.5 * (lo + hi);
                if sum(mid) < 0.0 {
                    lo = mid
                } else {
                    hi = mid
                }
            }
            for &m1 in &ORDERS {
                let prob = RadiusProblem::distortion(
                    alpha,
                    n,
                    Order::Infinite,
                    m1,
                    Order::Infinite,
                    VanishingOrderSpec::Identity,
                )
                .unwrap();
                let k = find_radius(&prob, DEFAULT_TOL).unwrap().root;
                assert!((k - lo).abs() <= 1e-10, "alpha {alpha} N {n}: {k} vs {lo}");
            }
        }
    }
}

#[test]
fn affine_h_radius_against_explicit_sum() {
    // h(n) = 2n+1, α = 1: Σ_{n≥1} x^{2n+1} = x³/(1−x²); K = x³/(1−x²) − 1/2
    let prob =
        RadiusProblem::distortion(1.0, 1, Order::Infinite, Order::Finite(1), Order::Infinite, "2*n+1".parse().unwrap())
            .unwrap();
    let k = find_radius(&prob, DEFAULT_TOL).unwrap().root;
    let (mut lo, mut hi) = (0.0f64, 0.99f64);
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        if mid.powi(3) / (1.0 - mid * mid) < 0.5 {
            lo = mid
        } else {
            hi = mid
        }
    }
    assert!((k - lo).abs() < 1e-10);
}

#[test]
fn table_h_with_short_table_is_too_wide() {
    let h = VanishingOrderSpec::table(vec![1, 2, 3], 1, 0).unwrap();
    let prob = RadiusProblem::distortion(1.5, 1, Order::Infinite, Order::Infinite, Order::Infinite, h).unwrap();
    assert!(matches!(find_radius(&prob, DEFAULT_TOL), Err(Error::EnclosureTooWide { .. })));
}

#[test]
fn table_h_long_enough_matches_identity() {
    let values: Vec<u32> = (1..=2000).collect();
    let h = VanishingOrderSpec::table(values, 1, 0).unwrap();
    let prob = RadiusProblem::distortion(1.5, 2, Order::Finite(2), Order::Finite(1), Order::Finite(2), h).unwrap();
    let id = RadiusProblem { h: VanishingOrderSpec::Identity, ..prob.clone() };
    let a = find_radius(&prob, DEFAULT_TOL).unwrap().root;
    let b = find_radius(&id, DEFAULT_TOL).unwrap().root;
    assert!((a - b).abs() <= 2.0 * DEFAULT_TOL);
}
