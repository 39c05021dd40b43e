//! Scenario catalog, runs, sweeps and reports for the semirelativistic solver.

pub mod config;
pub mod exponents;
pub mod plots;
pub mod run;
pub mod sweep;

pub use config::{load_config, parse_config, Check, ConfigError, InitialData, Scenario, Solver};
pub use run::{run, CheckOutcome, RunOptions, RunReport};
pub use sweep::{sweep, SweepReport, Variation};
