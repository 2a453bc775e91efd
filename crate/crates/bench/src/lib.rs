//! Benchmarks live in `benches/`; run them with `cargo bench -p pants-bench`.

pub use pants_core;
