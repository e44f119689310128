use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use recon_core::counting::{delta, insertion_ball_size, n_plus};

fn formulas(c: &mut Criterion) {
    c.bench_function("insertion_ball_size_n1000_t6", |b| b.iter(|| insertion_ball_size(black_box(1000), 6, 4)));
    c.bench_function("n_plus_n1000_t6", |b| b.iter(|| n_plus(black_box(1000), 6, 6, 2, 4).unwrap()));
    c.bench_function("delta_n1000_t6", |b| b.iter(|| delta(black_box(1000), 6, 4)));
}

criterion_group!(benches, formulas);
criterion_main!(benches);
