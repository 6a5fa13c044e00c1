//! Local search strategies and the event-grouping rotation scan.
//!
//! A [`LocalSearch`] turns a fixed event order into a timetable. Strategies
//! are looked up by name in a [`Registry`]; [`egb_run_with`] drives any of
//! them through the per-group rotation scan.

mod egb;
mod greedy;
mod improve;
mod registry;

pub use egb::{egb_run, egb_run_with, emit_trace_csv, GroupTrace, RunResult, TRACE_CSV_HEADER};
pub use greedy::GreedyConstructor;
pub use improve::GreedyWithImprovement;
pub use registry::{Registry, RegistryError, SearchFactory, DEFAULT_STRATEGY};

use crate::evaluation::{EvalParams, EvalResult};
use crate::grouping::Permutation;
use crate::model::{Instance, Timetable};

/// Builds a timetable for one fixed order of events.
///
/// Implementations must be deterministic in `(inst, order, params)`: the
/// rotation scan relies on re-evaluating an order producing the same value.
pub trait LocalSearch: Send + Sync {
    /// Registry name, e.g. `greedy`.
    fn name(&self) -> &'static str;

    fn search(&self, inst: &Instance, order: &Permutation, params: &EvalParams) -> (Timetable, EvalResult);
}

/// Default constructive local search: place events in `order`, each at its
/// cheapest feasible position.
pub fn local_search(inst: &Instance, order: &Permutation, params: &EvalParams) -> (Timetable, EvalResult) {
    GreedyConstructor.search(inst, order, params)
}
