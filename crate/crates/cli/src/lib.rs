//! Config-driven front end for `lee-core`: single points, coupling sweeps,
//! arrowhead oracle validation, CSV/JSON output.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
pub mod emit;
pub mod error;
pub mod run;

pub use config::{parse_config, Format, RunConfig};
pub use emit::{emit, Record, COLUMNS};
pub use error::{CliError, ConfigError};
pub use run::{run, run_point, run_sweep, validate_oracle, Row};
