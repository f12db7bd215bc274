//! Criterion benchmarks for lynfib; see `benches/`.
