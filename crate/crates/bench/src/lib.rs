//! Benchmarks live in `benches/`; this crate intentionally has no library code.
