use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use recon_bench::fixture;
use recon_core::characterize::classify_pair;
use recon_core::metric::{ball_intersection, deletion_ball, insertion_ball, levenshtein};
use recon_core::BallKind;

fn balls(c: &mut Criterion) {
    let mut g = c.benchmark_group("balls");
    for &(q, n, t) in &[(2u8, 12usize, 2usize), (2, 16, 3), (4, 10, 2)] {
        let x = fixture(q, n, 1);
        let id = format!("q{q}_n{n}_t{t}");
        g.bench_with_input(BenchmarkId::new("insertion", &id), &x, |b, x| b.iter(|| insertion_ball(black_box(x), t)));
        g.bench_with_input(BenchmarkId::new("deletion", &id), &x, |b, x| {
            b.iter(|| deletion_ball(black_box(x), t).unwrap())
        });
    }
    g.finish();
}

fn pairs(c: &mut Criterion) {
    let x = fixture(2, 14, 3);
    let y = fixture(2, 14, 4);
    c.bench_function("intersection_i2_n14", |b| {
        b.iter(|| ball_intersection(black_box(&x), black_box(&y), 2, BallKind::Insertion).unwrap())
    });
    c.bench_function("levenshtein_n14", |b| b.iter(|| levenshtein(black_box(&x), black_box(&y))));
    let (u, v) = (fixture(3, 12, 5), fixture(3, 12, 6));
    if levenshtein(&u, &v) >= 4 {
        c.bench_function("classify_pair_q3_n12", |b| b.iter(|| classify_pair(black_box(&u), black_box(&v)).unwrap()));
    }
}

criterion_group!(benches, balls, pairs);
criterion_main!(benches);
