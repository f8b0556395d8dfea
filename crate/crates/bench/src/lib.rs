//! Benchmark harness for the equicolor engine; see `benches/`.
