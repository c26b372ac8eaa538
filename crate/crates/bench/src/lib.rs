//! Criterion benchmarks for the cyclozeta core; see `benches/cyclozeta.rs`.
