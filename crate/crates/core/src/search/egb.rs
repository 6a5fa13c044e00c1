use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::evaluation::{EvalParams, EvalResult};
use crate::grouping::{partition, sort_events, Criterion, Grouping, GroupingError, Permutation, Window};
use crate::model::{Instance, Timetable};

use super::{GreedyConstructor, LocalSearch};

/// Outcome of the rotation scan over one group.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroupTrace {
    pub group_index: usize,
    pub window: Window,
    /// Left-shift offset of the window that achieved `best_eval`.
    pub best_rotation: usize,
    pub best_eval: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunResult {
    pub m: usize,
    pub criterion: Criterion,
    pub grouping: Grouping,
    pub traces: Vec<GroupTrace>,
    pub final_permutation: Permutation,
    pub best_timetable: Timetable,
    pub evaluation: EvalResult,
    pub best_eval: f64,
    /// Local searches performed (always `n`).
    pub local_search_calls: usize,
}

/// Runs the event-grouping algorithm with the default greedy local search.
pub fn egb_run(
    inst: &Instance,
    m: usize,
    criterion: Criterion,
    params: &EvalParams,
) -> Result<RunResult, GroupingError> {
    egb_run_with(inst, m, criterion, params, &GreedyConstructor)
}

/// Sorts events by `criterion`, splits them into `m` windows, and for each
/// window in turn evaluates every cyclic left rotation of it (starting with
/// the incoming order), then fixes the cheapest rotation before moving on.
/// Equal evaluations keep the smaller rotation.
pub fn egb_run_with(
    inst: &Instance,
    m: usize,
    criterion: Criterion,
    params: &EvalParams,
    search: &dyn LocalSearch,
) -> Result<RunResult, GroupingError> {
    let grouping = partition(inst.n(), m)?;
    let mut order = sort_events(inst, criterion);
    let mut traces = Vec::with_capacity(m);
    let mut calls = 0;
    let mut best = None;

    for (group_index, &window) in grouping.windows().iter().enumerate() {
        let mut group_best: Option<(Timetable, EvalResult)> = None;
        let mut best_rotation = 0;
        for rotation in 0..window.len() {
            let (tt, eval) = search.search(inst, &order, params);
            calls += 1;
            if group_best.as_ref().is_none_or(|(_, b)| eval.total < b.total) {
                group_best = Some((tt, eval));
                best_rotation = rotation;
            }
            order.rotate_window_left(window, 1)?;
        }
        // A full cycle of single shifts leaves the window as it came in.
        order.rotate_window_left(window, best_rotation)?;
        let (tt, eval) = group_best.expect("partition windows are never empty");
        traces.push(GroupTrace { group_index, window, best_rotation, best_eval: eval.total });
        best = Some((tt, eval));
    }

    let (best_timetable, evaluation) = best.expect("partition has at least two windows");
    Ok(RunResult {
        m,
        criterion,
        grouping,
        best_eval: evaluation.total,
        traces,
        final_permutation: order,
        best_timetable,
        evaluation,
        local_search_calls: calls,
    })
}

pub const TRACE_CSV_HEADER: &str = "m,criterion,group,from,to,best_rotation,best_eval";

/// One row per group; `best_eval` to three decimals.
pub fn emit_trace_csv(run: &RunResult) -> String {
    let mut out = String::new();
    out.push_str(TRACE_CSV_HEADER);
    out.push('\n');
    for t in &run.traces {
        writeln!(
            out,
            "{},{},{},{},{},{},{:.3}",
            run.m, run.criterion, t.group_index, t.window.from, t.window.to, t.best_rotation, t.best_eval
        )
        .expect("writing to a String cannot fail");
    }
    out
}
