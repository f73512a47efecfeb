//! Wall-time benchmarks for the verification library live in `benches/`.
