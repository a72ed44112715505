//! Tooling around `qtprod-core`: the tensor file format, the benchmark
//! harness and the verification suites behind the `qtprod` binary.

pub mod bench;
pub mod tensor_io;
pub mod verify;

pub use bench::{run_bench, BenchConfig, BenchRecord};
pub use verify::{run_verify, Suite, VerifyOptions, VerifyReport};
