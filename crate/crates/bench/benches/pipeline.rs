use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use hdisc_bench::{enumeration_host, graphs};
use hdisc_core::oracle::{discrepancy_multiset, DEFAULT_BUDGET};
use hdisc_core::q;
use hdisc_core::template::{delta0, frame_catalog, is_template};
use hdisc_core::threshold::delta_star;
use hdisc_core::witness::build_h_star;

fn bench_delta0(c: &mut Criterion) {
    let mut g = c.benchmark_group("delta0");
    for (name, h) in graphs() {
        g.bench_with_input(BenchmarkId::from_parameter(name), &h, |b, h| b.iter(|| delta0(black_box(h)).unwrap()));
    }
    g.finish();
}

fn bench_is_template(c: &mut Criterion) {
    let h = hdisc_core::families::k4_minus_edge();
    let mut g = c.benchmark_group("is_template");
    for spec in ["butterfly:1", "butterfly:3", "star:3,+"] {
        let frame = frame_catalog(&spec.parse().unwrap()).unwrap();
        g.bench_function(spec, |b| b.iter(|| is_template(black_box(&frame), &h).unwrap()));
    }
    g.finish();
}

fn bench_delta_star(c: &mut Criterion) {
    let mut g = c.benchmark_group("delta_star");
    for (name, h) in graphs() {
        g.bench_with_input(BenchmarkId::from_parameter(name), &h, |b, h| b.iter(|| delta_star(black_box(h)).unwrap()));
    }
    g.finish();
}

fn bench_h_star(c: &mut Criterion) {
    let h = hdisc_core::families::k4_minus_edge();
    c.bench_function("build_h_star/k4_minus_edge", |b| b.iter(|| build_h_star(black_box(&h), &q(1, 10)).unwrap()));
}

fn bench_enumeration(c: &mut Criterion) {
    let mut g = c.benchmark_group("oracle_enumeration");
    g.sample_size(20);
    for per_part in [2, 3, 4] {
        let (h, host) = enumeration_host(per_part);
        g.bench_with_input(BenchmarkId::from_parameter(per_part), &host, |b, host| {
            b.iter(|| discrepancy_multiset(&h, black_box(host), DEFAULT_BUDGET).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, bench_delta0, bench_is_template, bench_delta_star, bench_h_star, bench_enumeration);
criterion_main!(benches);
