//! Criterion benchmarks for the feature pipeline live in `benches/`.
