//! Benchmarks for lampkit live in `benches/`; this crate has no library code.
