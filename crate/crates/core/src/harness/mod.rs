//! Instance generation, (m × criterion) sweeps, and the reductions that turn
//! a sweep report into summary tables.

mod analysis;
mod generator;
mod report;
mod sweep;

pub use analysis::{
    best_by_criterion, criterion_share, prune_range, range_analysis, top_k, RangeResult, TopResult,
    DEFAULT_PRUNE_HIGH_DIVISOR, DEFAULT_PRUNE_LOW_DIVISOR,
};
pub use generator::{generate_instance, GenShape};
pub use report::{emit_plot_series, emit_report_csv, parse_report_csv, ReportRow, SweepReport, REPORT_CSV_HEADER};
pub use sweep::{full_m_range, sweep, SweepOptions};

use thiserror::Error;

use crate::grouping::{Criterion, GroupingError};
use crate::model::ModelError;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("invalid generator shape: {0}")]
    InvalidShape(String),
    #[error(transparent)]
    Grouping(#[from] GroupingError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("sweep needs at least one group count and one criterion")]
    EmptySweep,
    #[error("report line {line}: {message}")]
    Report { line: usize, message: String },
    #[error("malformed report CSV: {0}")]
    Csv(#[from] csv::Error),
    #[error("report has no values")]
    EmptyReport,
    #[error("row m={m}: groups {found:?} do not match the partition {expected:?} of n={n}")]
    SignatureMismatch { n: usize, m: usize, expected: String, found: String },
    #[error("top {k} requested but the report only has {cells} cells")]
    TooFewCells { k: usize, cells: usize },
    #[error("report has no {0} column values")]
    MissingCriterion(Criterion),
    #[error("pruned range [{m_lo}, {m_hi}] for n={n} is empty")]
    EmptyRange { n: usize, m_lo: usize, m_hi: usize },
    #[error("prune divisors must satisfy low > high > 0, got low={low}, high={high}")]
    InvalidDivisors { low: f64, high: f64 },
    #[error("could not start worker pool: {0}")]
    ThreadPool(String),
}
