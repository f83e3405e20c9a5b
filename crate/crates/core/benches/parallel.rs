use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use weaksol::exec;
use weaksol::quadrature::{w12_seminorm_sq, ExcisionPolicy};
use weaksol::singular_set::Point2;
use weaksol::verify::{default_battery, default_solution, weak_residual};

fn seminorm(c: &mut Criterion) {
    let sol = default_solution().unwrap();
    let mut g = c.benchmark_group("seminorm");
    for parallel in [false, true] {
        let policy = ExcisionPolicy {
            parallel,
            ..ExcisionPolicy::default()
        };
        g.bench_with_input(BenchmarkId::from_parameter(mode(parallel)), &policy, |b, p| {
            b.iter(|| w12_seminorm_sq(black_box(&sol), p).unwrap().value)
        });
    }
    g.finish();
}

fn weak_battery(c: &mut Criterion) {
    let sol = default_solution().unwrap();
    let battery = default_battery(&sol);
    let mut g = c.benchmark_group("weak_battery");
    g.sample_size(10);
    for parallel in [false, true] {
        let policy = ExcisionPolicy {
            parallel,
            ..ExcisionPolicy::default()
        };
        g.bench_function(BenchmarkId::from_parameter(mode(parallel)), |b| {
            b.iter(|| {
                exec::map(&battery, parallel, |(id, phi)| {
                    weak_residual(&sol, phi, id, &policy).unwrap().relative
                })
            })
        });
    }
    g.finish();
}

fn sampling(c: &mut Criterion) {
    let sol = default_solution().unwrap();
    let n = 256;
    let r = sol.radius();
    let grid: Vec<Point2> = (0..n * n)
        .map(|k| {
            let (i, j) = (k / n, k % n);
            Point2::new(-r + 2.0 * r * (i as f64 + 0.5) / n as f64, -r + 2.0 * r * (j as f64 + 0.5) / n as f64)
        })
        .filter(|x| x.norm() < r)
        .collect();
    let mut g = c.benchmark_group("sampling");
    for parallel in [false, true] {
        g.bench_function(BenchmarkId::from_parameter(mode(parallel)), |b| {
            b.iter(|| exec::map(&grid, parallel, |x| sol.grad_norm_sq(*x).unwrap_or(f64::NAN)))
        });
    }
    g.finish();
}

fn mode(parallel: bool) -> &'static str {
    if parallel {
        "parallel"
    } else {
        "sequential"
    }
}

criterion_group!(benches, seminorm, weak_battery, sampling);
criterion_main!(benches);
