//! Benchmark harness: run configs, solver drivers, file exports and the
//! operations behind the command-line tool.

mod commands;
mod config;
mod io;
mod run;

pub use commands::{cmd_compare, cmd_plotdata, cmd_solve, CompareReport};
pub use config::{DdpSettings, Method, NlpSettings, RunConfig, WeightConfig};
pub use io::{cost_history_csv, read_csv, trajectory_csv, trajectory_from_csv, CsvTable};
pub use run::{
    run_benchmark, HarnessError, LogLevel, RunOutcome, RunReport, GPM_EXPORT_SAMPLES,
    REPORT_SCHEMA_VERSION,
};
