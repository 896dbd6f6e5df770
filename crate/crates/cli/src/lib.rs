//! File formats, reports, verification oracles and the command line for
//! Casimir friction calculations built on `casimir-core`.

// `!(x > 0.0)` is used on purpose so that NaN inputs are rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod catalog;
pub mod config;
pub mod error;
pub mod report;
pub mod verification;

pub use catalog::{Catalog, CatalogEntry};
pub use config::{Format, RunConfig};
pub use error::{CliError, CliResult};
pub use verification::OracleReport;
