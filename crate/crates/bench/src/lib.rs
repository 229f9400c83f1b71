//! Benchmark-only crate; see benches/toolkit.rs.
