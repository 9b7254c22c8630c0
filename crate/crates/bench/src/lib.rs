//! Benchmarks for `ncho-core`; see `benches/`.
