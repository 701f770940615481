use std::time::Duration;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use chg_core::construct::{bad_elements, bernoulli_sample, greedy, sidon_erdos_turan};
use chg_core::search::max_chg;
use chg_core::verify::{is_chg, is_weak_chg, DEFAULT_BUDGET};
use chg_core::Params;

fn bench_verify(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify");
    for q in [101u64, 401, 1009] {
        let a = sidon_erdos_turan(q).unwrap();
        let strict = Params::strict(2, 2).unwrap();
        let weak = Params::weak(2, 2).unwrap();
        group.bench_with_input(BenchmarkId::new("is_chg_sidon", q), &a, |b, a| {
            b.iter(|| is_chg(a, &strict))
        });
        group.bench_with_input(BenchmarkId::new("is_weak_chg_sidon", q), &a, |b, a| {
            b.iter(|| is_weak_chg(a, &weak, DEFAULT_BUDGET))
        });
    }
    group.finish();
}

fn bench_construct(c: &mut Criterion) {
    let mut group = c.benchmark_group("construct");
    group.bench_function("greedy_sidon_2000", |b| {
        let p = Params::strict(2, 2).unwrap();
        b.iter(|| greedy(2000, &p, DEFAULT_BUDGET).unwrap())
    });
    group.bench_function("bad_elements_n1e5_h2g2", |b| {
        let p = Params::weak(2, 2).unwrap();
        let sample = bernoulli_sample(100_000, 1e-3, 42).unwrap();
        b.iter(|| bad_elements(&sample, &p, DEFAULT_BUDGET).unwrap())
    });
    group.finish();
}

fn bench_search(c: &mut Criterion) {
    let mut group = c.benchmark_group("search");
    group.sample_size(10);
    let p = Params::strict(2, 2).unwrap();
    group.bench_function("max_sidon_n25", |b| {
        b.iter(|| max_chg(25, &p, Duration::from_secs(60)).unwrap())
    });
    group.finish();
}

criterion_group!(benches, bench_verify, bench_construct, bench_search);
criterion_main!(benches);
