//! Benchmark harness crate. The benchmarks live under `benches/`.
