use bohr_lab::families::f_alpha_series;
use bohr_lab::par::Execution;
use bohr_lab::radius::{find_radius, DEFAULT_TOL};
use bohr_lab::series::schwarz_sample;
use bohr_lab::verify::{pole_coeff_suite, problem_suite, tail_domination_suite, CertificationConfig};
use bohr_lab::{Order, RadiusProblem, VanishingOrderSpec, DEFAULT_ORDER};
use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

const EXECUTIONS: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn cfg(execution: Execution) -> CertificationConfig {
    CertificationConfig { execution, ..CertificationConfig::default() }
}

fn suites(c: &mut Criterion) {
    let mut group = c.benchmark_group("suites");
    group.sample_size(10);
    let distortion = RadiusProblem::distortion(
        1.5,
        2,
        Order::Finite(2),
        Order::Finite(1),
        Order::Infinite,
        VanishingOrderSpec::Affine { slope: 2, offset: 1 },
    )
    .unwrap();
    for (name, exec) in EXECUTIONS {
        let cfg = cfg(exec);
        group.bench_with_input(BenchmarkId::new("tail_domination_64", name), &cfg, |b, cfg| {
            b.iter(|| tail_domination_suite(64, cfg).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("pole_coeff_64", name), &cfg, |b, cfg| {
            b.iter(|| pole_coeff_suite(64, 30, cfg).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("distortion_suite_32", name), &cfg, |b, cfg| {
            b.iter(|| problem_suite(&distortion, 32, 0.9, cfg).unwrap())
        });
    }
    group.finish();
}

fn kernels(c: &mut Criterion) {
    let f = f_alpha_series(1.5, DEFAULT_ORDER).unwrap();
    let w = schwarz_sample(1, 3, 7).to_series(DEFAULT_ORDER);
    c.bench_function("compose_order_256", |b| b.iter(|| black_box(&f).compose(black_box(&w)).unwrap()));
    let problems = [
        ("subordinate", RadiusProblem::subordinate(1.5, 2, Order::Finite(1)).unwrap()),
        (
            "distortion_affine_h",
            RadiusProblem::distortion(
                2.0,
                1,
                Order::Infinite,
                Order::Finite(2),
                Order::Finite(1),
                "2*n+1".parse().unwrap(),
            )
            .unwrap(),
        ),
        ("pole_subordinate", RadiusProblem::pole_subordinate(0.5, 1, Order::Infinite).unwrap()),
    ];
    for (name, p) in problems {
        c.bench_function(&format!("find_radius_{name}"), |b| {
            b.iter(|| find_radius(black_box(&p), DEFAULT_TOL).unwrap())
        });
    }
}

criterion_group!(benches, suites, kernels);
criterion_main!(benches);
