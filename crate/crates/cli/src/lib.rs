//! Command-line front end for the interval-prime verification library:
//! claim sweeps, single-point witnesses, threshold queries, reference-table
//! reproduction, and onset scans, with deterministic text, json, and csv
//! reports.

mod args;
mod doc;
mod emit;
mod run;

pub use doc::{ExploreDoc, Params, ReportDoc, ThresholdDoc};
pub use run::run_to;
