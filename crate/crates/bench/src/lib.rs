//! Criterion benchmarks for the prymlab engine; see `benches/engine.rs`.
