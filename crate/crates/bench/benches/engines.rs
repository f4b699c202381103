use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use frieze_bench::{long_quiddity, sample_quiddities};
use frieze_core::similarity::{canonicalize, count_types, enumerate_types, Method};
use frieze_core::supplement::{supplement, BasicSeq};
use frieze_core::tiling::{formula_window, Span};
use frieze_core::{generate_frieze, is_eta, ts_normal_form, Word};

fn quiddity_checks(c: &mut Criterion) {
    let mut g = c.benchmark_group("is_eta");
    for n in [8, 32, 128] {
        let q = long_quiddity(n);
        g.bench_with_input(BenchmarkId::from_parameter(n), &q, |b, q| {
            b.iter(|| is_eta(black_box(q.entries())).unwrap())
        });
    }
    g.finish();
}

fn friezes(c: &mut Criterion) {
    let mut g = c.benchmark_group("generate_frieze");
    for n in [8, 32, 96] {
        let q = long_quiddity(n);
        g.bench_with_input(BenchmarkId::from_parameter(n), &q, |b, q| {
            b.iter(|| generate_frieze(black_box(q.entries())).unwrap())
        });
    }
    g.finish();
}

fn similarity(c: &mut Criterion) {
    let qs = sample_quiddities(14, 500);
    c.bench_function("canonicalize 500 x n=14", |b| {
        b.iter(|| qs.iter().map(|q| canonicalize(black_box(q)).orbit_size).sum::<usize>())
    });

    let mut g = c.benchmark_group("count_types");
    g.sample_size(10);
    g.bench_function("formula n=200", |b| b.iter(|| count_types(black_box(200), Method::Formula)));
    g.bench_function("brute n=11", |b| {
        b.iter(|| count_types(black_box(11), Method::Brute { cap: 14 }))
    });
    g.bench_function("enumerate_types n=11", |b| b.iter(|| enumerate_types(black_box(11), 14)));
    g.finish();
}

fn words_and_tilings(c: &mut Criterion) {
    let w: Word = "S*T^2*U^3*T*S*U^-2*T^2*U^5*S*T".parse().unwrap();
    c.bench_function("ts_normal_form", |b| b.iter(|| ts_normal_form(&black_box(&w).eval())));

    let a = BasicSeq::new(vec![1, 3, 2, 5, 2, 2, 4, 3, 2, 6]).unwrap();
    c.bench_function("supplement", |b| b.iter(|| supplement(black_box(&a))));

    let span = Span::new(-20, 20).unwrap();
    c.bench_function("formula_window 41x41", |b| b.iter(|| formula_window(black_box(span), span)));
}

criterion_group!(benches, quiddity_checks, friezes, similarity, words_and_tilings);
criterion_main!(benches);
