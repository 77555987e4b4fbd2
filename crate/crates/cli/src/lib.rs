//! Library side of the `sqbessel` command: configuration, evaluation and
//! CSV/JSON emission, kept separate from `main` so it can be tested in-process.

pub mod config;
pub mod output;
pub mod run;

pub use config::{config_from_toml, parse_args, Parsed, RunConfig, UsageError};
pub use run::{evaluate, execute, exit, Outcome};
