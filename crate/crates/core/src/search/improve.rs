use crate::evaluation::{evaluate, EvalParams, EvalResult, Occupancy};
use crate::grouping::Permutation;
use crate::model::{Instance, Timetable};

use super::greedy::construct;
use super::LocalSearch;

/// Greedy construction followed by one deterministic sweep of
/// best-improvement moves: each event, in order, is lifted out and put back
/// at its cheapest feasible position if that is strictly cheaper. Unplaced
/// events get one more placement attempt.
#[derive(Debug, Clone, Copy, Default)]
pub struct GreedyWithImprovement;

impl LocalSearch for GreedyWithImprovement {
    fn name(&self) -> &'static str {
        "greedy-improve"
    }

    fn search(&self, inst: &Instance, order: &Permutation, params: &EvalParams) -> (Timetable, EvalResult) {
        let mut occ = Occupancy::new(inst);
        let mut tt = construct(inst, &mut occ, order, params);

        for &e in order.as_slice() {
            match tt.get(e) {
                Some(current) => {
                    occ.remove(e, current);
                    let stay = occ.delta(e, current.day, current.start_slot, params);
                    let target = match occ.best_position(e, params) {
                        Some((pos, delta)) if delta < stay => pos,
                        _ => current,
                    };
                    occ.place(e, target);
                    tt.assign(e, target);
                }
                None => {
                    if let Some((pos, delta)) = occ.best_position(e, params) {
                        if delta < params.unplaced_penalty {
                            occ.place(e, pos);
                            tt.assign(e, pos);
                        }
                    }
                }
            }
        }

        let eval = evaluate(inst, &tt, params).expect("constructed timetables match their instance");
        (tt, eval)
    }
}
