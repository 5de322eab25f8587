//! Suite runner for the qglab laboratory: configuration, checks and reports.

pub mod config;
pub mod report;
pub mod suites;

pub use config::{load_instances, Instance, InstanceSource, Suite, SuiteConfig, Tolerances};
pub use report::{FockSummary, Record, Relation, SuiteReport};
pub use suites::{is_fatal, run_suite};
