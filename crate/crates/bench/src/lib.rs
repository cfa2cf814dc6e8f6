//! Benchmark harness for the exact kernels; see `benches/`.
