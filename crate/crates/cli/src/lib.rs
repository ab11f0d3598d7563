//! Command-line front end: argument handling, conformance sweeps and the
//! randomized baseline.

pub mod app;
pub mod bench;
pub mod conformance;

pub use app::{execute, exit_code, Cli, Failure};
pub use bench::{bench_randomized, BenchReport};
pub use conformance::{run_conformance, Check, ConformanceReport};
