//! Benchmarks are under the benches directory.
