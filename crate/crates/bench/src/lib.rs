//! Criterion benchmarks for the decision procedures; run with `cargo bench -p gbs-bench`.
