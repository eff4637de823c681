use criterion::{criterion_group, criterion_main, Criterion};
use glyphgeom::corpus::{perturb, render, uppercase, CorpusConfig};
use glyphgeom::{evaluate, extract_features, thin};
use std::hint::black_box;

fn bench_thin(c: &mut Criterion) {
    let mut block = glyphgeom::BitGrid::new(48, 48);
    for r in 8..40 {
        for col in 20..28 {
            block.set(glyphgeom::Coord::new(r, col), true);
        }
    }
    c.bench_function("thin 48x48 bar", |b| b.iter(|| thin(black_box(&block))));
}

fn bench_extract(c: &mut Criterion) {
    let glyphs: Vec<_> = uppercase()
        .iter()
        .map(|t| perturb(&render(t, 24, 24).unwrap(), 1, 3, 20))
        .collect();
    c.bench_function("extract_features A-Z", |b| {
        b.iter(|| {
            for g in &glyphs {
                black_box(extract_features(g).unwrap());
            }
        })
    });
}

fn bench_eval(c: &mut Criterion) {
    let (train, test) = CorpusConfig::default().build(25, 5, 42).unwrap();
    let mut group = c.benchmark_group("knn");
    group.sample_size(10);
    group.bench_function("evaluate 650/130 k=3", |b| {
        b.iter(|| evaluate(black_box(&train), black_box(&test), 3).unwrap())
    });
    group.finish();
}

criterion_group!(benches, bench_thin, bench_extract, bench_eval);
criterion_main!(benches);
