//! IO and experiment drivers around `sumprod-core`: set files, seeded sweeps
//! written as CSV, exhaustive small-field searches and flat JSON reports.

pub mod error;
pub mod exhaustive;
pub mod report;
pub mod setfile;
pub mod sweep;

pub use error::CliError;
pub use exhaustive::{run_exhaustive, ExhaustiveSummary};
pub use setfile::{parse_set_file, parse_set_str, ParsedSet};
pub use sweep::{mix_seed, run_sweep, write_csv, Kind, SweepConfig, SweepRow, CSV_HEADER};
