use crate::evaluation::{evaluate, EvalParams, EvalResult, Occupancy};
use crate::grouping::Permutation;
use crate::model::{Instance, Timetable};

use super::LocalSearch;

/// Visits events in order and places each at the feasible position with the
/// smallest cost increase, scanning (day, start slot, room)
/// lexicographically so the earliest position wins ties. Events with no
/// feasible position stay unplaced.
#[derive(Debug, Clone, Copy, Default)]
pub struct GreedyConstructor;

impl LocalSearch for GreedyConstructor {
    fn name(&self) -> &'static str {
        "greedy"
    }

    fn search(&self, inst: &Instance, order: &Permutation, params: &EvalParams) -> (Timetable, EvalResult) {
        let mut occ = Occupancy::new(inst);
        let tt = construct(inst, &mut occ, order, params);
        let eval = evaluate(inst, &tt, params).expect("constructed timetables match their instance");
        (tt, eval)
    }
}

pub(super) fn construct(
    inst: &Instance,
    occ: &mut Occupancy<'_>,
    order: &Permutation,
    params: &EvalParams,
) -> Timetable {
    let mut tt = Timetable::empty(inst.n());
    for &e in order.as_slice() {
        if let Some((pos, _)) = occ.best_position(e, params) {
            occ.place(e, pos);
            tt.assign(e, pos);
        }
    }
    tt
}
