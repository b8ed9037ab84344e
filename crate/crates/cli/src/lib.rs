//! Driver behind the `factorsat` binary: encoding to DIMACS, solving,
//! oracle verification and size benchmarks.

pub mod bench;
pub mod config;
pub mod encode;
pub mod error;
pub mod solve;
pub mod verify;

pub use bench::run_bench;
pub use config::{ProblemKind, RunConfig, SolverChoice};
pub use encode::{run_encode, Sidecar};
pub use error::{CliError, Status};
pub use solve::run_solve;
pub use verify::run_verify;
