//! Criterion benchmarks for the recursion engine and the brute-force oracles.
//! See `benches/`.
