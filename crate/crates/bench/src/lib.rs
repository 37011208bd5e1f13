//! Criterion benchmarks for dellip-core live in `benches/`.
