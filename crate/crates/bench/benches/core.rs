use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use suffridge_bench::{circle, suffridge};
use suffridge_core::{robertson, roots, suffridge::closed_form_eval, univalence, SuffridgeParams};

fn evaluation(c: &mut Criterion) {
    let zs = circle(0.9, 64);
    let mut g = c.benchmark_group("eval");
    for n in [10, 40, 160] {
        let p = suffridge(n, 1);
        let params = SuffridgeParams::new(n, 1).unwrap();
        g.bench_with_input(BenchmarkId::new("horner", n), &n, |b, _| {
            b.iter(|| {
                zs.iter()
                    .map(|&z| p.eval(black_box(z)))
                    .sum::<suffridge_core::Complex64>()
            })
        });
        g.bench_with_input(BenchmarkId::new("closed_form", n), &n, |b, _| {
            b.iter(|| {
                zs.iter()
                    .map(|&z| closed_form_eval(params, black_box(z)))
                    .sum::<suffridge_core::Complex64>()
            })
        });
    }
    g.finish();
}

fn derivative_roots(c: &mut Criterion) {
    let mut g = c.benchmark_group("derivative_roots");
    for n in [10, 20, 40] {
        let d = suffridge(n, 1).derivative();
        g.bench_with_input(BenchmarkId::from_parameter(n), &d, |b, d| {
            b.iter(|| roots::roots(black_box(d)).unwrap())
        });
    }
    g.finish();
}

fn checks(c: &mut Criterion) {
    let p = suffridge(20, 5);
    c.bench_function("univalence_report_20_5", |b| {
        b.iter(|| univalence::univalence_report(black_box(&p)).unwrap())
    });
    c.bench_function("measure_table_29_7", |b| {
        let q = suffridge(29, 7);
        b.iter(|| robertson::measure_table(black_box(&q), 2001).unwrap())
    });
    c.bench_function("dk_objective_7_1", |b| {
        let q = suffridge(7, 1);
        b.iter(|| univalence::dk_objective(black_box(&q)).unwrap())
    });
}

criterion_group!(benches, evaluation, derivative_roots, checks);
criterion_main!(benches);
