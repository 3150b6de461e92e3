//! Library side of the `frameq` tool: frame files, the `check` command, the
//! timing harness and the counterexample search.

pub mod bench;
pub mod check;
pub mod error;
pub mod io;
pub mod search;

pub use bench::{run_bench, BenchConfig, BenchMethod, BenchRecord, BenchReport, SummaryRow};
pub use check::{check, CheckReport, Method};
pub use error::{exit, CliError, Result};
pub use io::{read_frame, read_witness, write_frame, write_witness, FrameFile, WitnessFile};
pub use search::{write_disagreements, ReportSummary};
