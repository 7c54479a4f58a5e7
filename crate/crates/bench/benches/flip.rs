use criterion::{black_box, criterion_group, criterion_main, Criterion};

use tropflip::enumerate::{enumerate_matroids, h_table};
use tropflip::flip::FlipEngine;
use tropflip::matroid::Matroid;
use tropflip::oracle::{oracle_flip, GenericShift};

fn bench_flip_uniform(c: &mut Criterion) {
    let m = Matroid::uniform(9, 5).unwrap();
    let n = Matroid::uniform(9, 5).unwrap();
    c.bench_function("flip_uniform_9_5_self", |b| {
        b.iter(|| {
            let engine = FlipEngine::with_defaults();
            black_box(engine.flip(black_box(&m), black_box(&n)).unwrap())
        })
    });
}

fn bench_flip_graphic(c: &mut Criterion) {
    // Six vertices, nine edges, realisation number 8.
    let g = Matroid::graphic(
        6,
        &[(0, 1), (0, 3), (1, 2), (1, 3), (2, 3), (1, 4), (4, 5), (5, 2), (2, 4)],
    )
    .unwrap();
    c.bench_function("flip_graphic_9_edges_self", |b| {
        b.iter(|| {
            let engine = FlipEngine::with_defaults();
            black_box(engine.flip(black_box(&g), black_box(&g)).unwrap())
        })
    });
}

fn bench_oracle(c: &mut Criterion) {
    let m = Matroid::uniform(5, 3).unwrap();
    let shift = GenericShift::new(17);
    c.bench_function("oracle_uniform_5_3_self", |b| {
        b.iter(|| black_box(oracle_flip(black_box(&m), black_box(&m), 0, &shift).unwrap()))
    });
}

fn bench_enumerate(c: &mut Criterion) {
    c.bench_function("enumerate_5_3", |b| {
        b.iter(|| black_box(enumerate_matroids(5, 3).unwrap().len()))
    });
}

fn bench_h_table(c: &mut Criterion) {
    c.bench_function("h_table_2_2", |b| b.iter(|| black_box(h_table(2, 2, 1).unwrap())));
}

criterion_group!(
    benches,
    bench_flip_uniform,
    bench_flip_graphic,
    bench_oracle,
    bench_enumerate,
    bench_h_table
);
criterion_main!(benches);
