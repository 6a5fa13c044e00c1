//! Hard/soft constraint model and the scalar objective.
//!
//! Hard constraints:
//! - H1 no student attends two events in the same timeslot
//! - H2 no lecturer teaches two events in the same timeslot
//! - H3 no room hosts two events in the same timeslot
//! - H4 the room seats every enrolled student
//! - H5 the event lies inside one day of the grid
//!
//! Soft constraints, summed over students and normalized by the number of
//! declared students:
//! - S1 idle slots between a student's first and last occupied slot of a day
//! - S2 student-days with exactly one event
//! - S3 events occupying a day's final slot, scaled by event weight
//!
//! [`evaluate`] recomputes everything from scratch. [`Occupancy`] keeps the
//! same quantities incrementally for the constructive search.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{Instance, Position, Timetable};

#[derive(Debug, Error, PartialEq)]
pub enum EvalError {
    #[error("timetable has {got} event slots, instance has {expected} events")]
    SizeMismatch { expected: usize, got: usize },
    #[error("event {event} references room index {room}, instance has {rooms} rooms")]
    RoomIndex { event: usize, room: usize, rooms: usize },
    #[error("event {0} is already placed")]
    AlreadyPlaced(usize),
    #[error("event {event} cannot be placed at {pos:?}")]
    Infeasible { event: usize, pos: Position },
    #[error("invalid evaluation parameter {name}: {value}")]
    InvalidParam { name: &'static str, value: f64 },
}

/// Soft-constraint weights and penalty coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EvalParams {
    pub w_gap: f64,
    pub w_single: f64,
    pub w_last: f64,
    pub unplaced_penalty: f64,
    pub hard_penalty: f64,
}

impl Default for EvalParams {
    fn default() -> Self {
        Self { w_gap: 1.0, w_single: 1.0, w_last: 1.0, unplaced_penalty: 10.0, hard_penalty: 100.0 }
    }
}

impl EvalParams {
    pub fn validate(&self) -> Result<(), EvalError> {
        let non_negative = [("w_gap", self.w_gap), ("w_single", self.w_single), ("w_last", self.w_last)];
        for (name, value) in non_negative {
            if !(value.is_finite() && value >= 0.0) {
                return Err(EvalError::InvalidParam { name, value });
            }
        }
        let positive = [("unplaced_penalty", self.unplaced_penalty), ("hard_penalty", self.hard_penalty)];
        for (name, value) in positive {
            if !(value.is_finite() && value > 0.0) {
                return Err(EvalError::InvalidParam { name, value });
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct HardCounts {
    pub student_clash: u64,
    pub lecturer_clash: u64,
    pub room_clash: u64,
    pub capacity: u64,
    pub out_of_grid: u64,
}

impl HardCounts {
    pub fn total(&self) -> u64 {
        self.student_clash + self.lecturer_clash + self.room_clash + self.capacity + self.out_of_grid
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct SoftCounts {
    pub gap_slots: u64,
    pub single_event_days: u64,
    pub last_slot_weighted: f64,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct EvalResult {
    pub hard: HardCounts,
    pub soft: SoftCounts,
    pub unplaced: u64,
    pub total: f64,
}

impl EvalResult {
    pub fn compose(hard: HardCounts, soft: SoftCounts, unplaced: u64, params: &EvalParams, students: usize) -> Self {
        let soft_sum = params.w_gap * soft.gap_slots as f64
            + params.w_single * soft.single_event_days as f64
            + params.w_last * soft.last_slot_weighted;
        let total = soft_sum / students.max(1) as f64
            + params.unplaced_penalty * unplaced as f64
            + params.hard_penalty * hard.total() as f64;
        Self { hard, soft, unplaced, total }
    }

    pub fn is_feasible(&self) -> bool {
        self.hard.total() == 0
    }
}

fn check_shape(inst: &Instance, tt: &Timetable) -> Result<(), EvalError> {
    if tt.len() != inst.n() {
        return Err(EvalError::SizeMismatch { expected: inst.n(), got: tt.len() });
    }
    let rooms = inst.rooms().len();
    match tt.assignments().find(|(_, p)| p.room >= rooms) {
        Some((event, p)) => Err(EvalError::RoomIndex { event, room: p.room, rooms }),
        None => Ok(()),
    }
}

/// Slot range an event occupies on its day, clipped to the grid.
fn clipped(start: u32, duration: u32, slots_per_day: u32) -> std::ops::Range<usize> {
    let end = (start + duration).min(slots_per_day);
    (start.min(end) as usize)..(end as usize)
}

/// Scores a timetable from scratch. Hard violations are counted, not
/// rejected, so any timetable consistent with the instance can be scored.
pub fn evaluate(inst: &Instance, tt: &Timetable, params: &EvalParams) -> Result<EvalResult, EvalError> {
    check_shape(inst, tt)?;
    let grid = inst.grid();
    let days = grid.days as usize;
    let slots = grid.slots_per_day as usize;
    let n_students = inst.students().len();

    let mut student_cells = vec![0u32; n_students * days * slots];
    let mut student_day_events = vec![0u32; n_students * days];
    let mut lecturer_cells = vec![0u32; inst.lecturers().len() * days * slots];
    let mut room_cells = vec![0u32; inst.rooms().len() * days * slots];

    let mut hard = HardCounts::default();
    let mut last_slot_weighted = 0.0;

    for (e, pos) in tt.assignments() {
        let event = inst.event(e);
        if pos.day >= grid.days || pos.start_slot + event.duration > grid.slots_per_day {
            hard.out_of_grid += 1;
        }
        if (inst.rooms()[pos.room].capacity as usize) < inst.enrollment(e) {
            hard.capacity += 1;
        }
        if pos.day >= grid.days {
            continue;
        }
        let day = pos.day as usize;
        let range = clipped(pos.start_slot, event.duration, grid.slots_per_day);
        if range.end == slots && !range.is_empty() {
            last_slot_weighted += event.weight;
        }
        for &s in inst.students_of(e) {
            student_day_events[s * days + day] += 1;
            let base = (s * days + day) * slots;
            for t in range.clone() {
                student_cells[base + t] += 1;
            }
        }
        let base = (inst.lecturer_of(e) * days + day) * slots;
        for t in range.clone() {
            lecturer_cells[base + t] += 1;
        }
        let base = (pos.room * days + day) * slots;
        for t in range {
            room_cells[base + t] += 1;
        }
    }

    let excess = |cells: &[u32]| cells.iter().map(|&c| u64::from(c.saturating_sub(1))).sum::<u64>();
    hard.student_clash = excess(&student_cells);
    hard.lecturer_clash = excess(&lecturer_cells);
    hard.room_clash = excess(&room_cells);

    let mut soft = SoftCounts { last_slot_weighted, ..SoftCounts::default() };
    if slots > 0 {
        for (sd, day_slots) in student_cells.chunks(slots).enumerate() {
            let first = day_slots.iter().position(|&c| c > 0);
            let last = day_slots.iter().rposition(|&c| c > 0);
            if let (Some(first), Some(last)) = (first, last) {
                let occupied = day_slots.iter().filter(|&&c| c > 0).count();
                soft.gap_slots += (last - first + 1 - occupied) as u64;
            }
            if student_day_events[sd] == 1 {
                soft.single_event_days += 1;
            }
        }
    }

    Ok(EvalResult::compose(hard, soft, tt.unplaced_count() as u64, params, n_students))
}

/// Whether placing `event` at `pos` violates none of H1–H5 against the
/// events already placed in `tt`. Returns false if `event` is already placed.
pub fn is_feasible_position(inst: &Instance, tt: &Timetable, event: usize, pos: Position) -> bool {
    if event >= inst.n() || tt.len() != inst.n() || tt.get(event).is_some() {
        return false;
    }
    match Occupancy::from_timetable(inst, tt) {
        Ok(occ) => occ.is_feasible(event, pos),
        Err(_) => false,
    }
}

/// Change in total evaluation caused by placing `event` at `pos`, computed
/// incrementally from per-student day loads. The event's own unplaced
/// penalty is not part of the delta: the result equals the difference of the
/// two full evaluations plus `unplaced_penalty`.
pub fn placement_delta(
    inst: &Instance,
    tt: &Timetable,
    event: usize,
    pos: Position,
    params: &EvalParams,
) -> Result<f64, EvalError> {
    check_shape(inst, tt)?;
    if tt.get(event).is_some() {
        return Err(EvalError::AlreadyPlaced(event));
    }
    let occ = Occupancy::from_timetable(inst, tt)?;
    if !occ.is_feasible(event, pos) {
        return Err(EvalError::Infeasible { event, pos });
    }
    Ok(occ.delta(event, pos.day, pos.start_slot, params))
}

#[derive(Debug, Clone, Copy, Default)]
struct DayLoad {
    events: u32,
    occupied: u32,
    first: u32,
    last: u32,
}

impl DayLoad {
    fn gap(&self) -> i64 {
        if self.occupied == 0 {
            0
        } else {
            i64::from(self.last - self.first + 1) - i64::from(self.occupied)
        }
    }
}

/// Incremental occupancy of students, lecturers and rooms over the grid.
///
/// Cells hold counts rather than flags so that timetables with clashes can be
/// loaded and events removed again.
#[derive(Debug, Clone)]
pub struct Occupancy<'a> {
    inst: &'a Instance,
    days: usize,
    slots: usize,
    student_cells: Vec<u16>,
    student_days: Vec<DayLoad>,
    lecturer_cells: Vec<u16>,
    room_cells: Vec<u16>,
}

impl<'a> Occupancy<'a> {
    pub fn new(inst: &'a Instance) -> Self {
        let grid = inst.grid();
        let days = grid.days as usize;
        let slots = grid.slots_per_day as usize;
        Self {
            inst,
            days,
            slots,
            student_cells: vec![0; inst.students().len() * days * slots],
            student_days: vec![DayLoad::default(); inst.students().len() * days],
            lecturer_cells: vec![0; inst.lecturers().len() * days * slots],
            room_cells: vec![0; inst.rooms().len() * days * slots],
        }
    }

    pub fn from_timetable(inst: &'a Instance, tt: &Timetable) -> Result<Self, EvalError> {
        check_shape(inst, tt)?;
        let mut occ = Self::new(inst);
        for (e, pos) in tt.assignments() {
            occ.place(e, pos);
        }
        Ok(occ)
    }

    #[inline]
    fn cell(&self, entity: usize, day: usize, slot: usize) -> usize {
        (entity * self.days + day) * self.slots + slot
    }

    fn range_free(cells: &[u16], base: usize, start: usize, len: usize) -> bool {
        cells[base + start..base + start + len].iter().all(|&c| c == 0)
    }

    /// Students and lecturer of `event` are free for the whole duration.
    fn people_free(&self, event: usize, day: usize, start: usize, len: usize) -> bool {
        let lecturer = self.inst.lecturer_of(event);
        if !Self::range_free(&self.lecturer_cells, self.cell(lecturer, day, 0), start, len) {
            return false;
        }
        self.inst
            .students_of(event)
            .iter()
            .all(|&s| Self::range_free(&self.student_cells, self.cell(s, day, 0), start, len))
    }

    fn room_free(&self, room: usize, day: usize, start: usize, len: usize) -> bool {
        Self::range_free(&self.room_cells, self.cell(room, day, 0), start, len)
    }

    /// H1–H5 check against the current occupancy.
    pub fn is_feasible(&self, event: usize, pos: Position) -> bool {
        let duration = self.inst.event(event).duration as usize;
        let (day, start) = (pos.day as usize, pos.start_slot as usize);
        if day >= self.days || start + duration > self.slots || pos.room >= self.inst.rooms().len() {
            return false;
        }
        if (self.inst.rooms()[pos.room].capacity as usize) < self.inst.enrollment(event) {
            return false;
        }
        self.room_free(pos.room, day, start, duration) && self.people_free(event, day, start, duration)
    }

    /// Soft-cost change of placing `event` at (`day`, `start`), normalized.
    /// Assumes the students are free over the event's slots there.
    pub fn delta(&self, event: usize, day: u32, start: u32, params: &EvalParams) -> f64 {
        let duration = self.inst.event(event).duration;
        let end = start + duration - 1;
        let day = day as usize;
        let mut gap = 0i64;
        let mut single = 0i64;
        for &s in self.inst.students_of(event) {
            let load = self.student_days[s * self.days + day];
            match load.events {
                0 => single += 1,
                1 => single -= 1,
                _ => {}
            }
            if load.occupied > 0 {
                let after = DayLoad {
                    events: load.events + 1,
                    occupied: load.occupied + duration,
                    first: load.first.min(start),
                    last: load.last.max(end),
                };
                gap += after.gap() - load.gap();
            }
        }
        let last = if end as usize + 1 == self.slots { self.inst.event(event).weight } else { 0.0 };
        (params.w_gap * gap as f64 + params.w_single * single as f64 + params.w_last * last)
            / self.inst.students().len().max(1) as f64
    }

    /// Cheapest feasible position in (day, start slot, room) order, earliest
    /// winning ties, together with its soft-cost delta.
    pub fn best_position(&self, event: usize, params: &EvalParams) -> Option<(Position, f64)> {
        let duration = self.inst.event(event).duration as usize;
        let rooms = self.inst.fitting_rooms(event);
        if rooms.is_empty() || duration > self.slots {
            return None;
        }
        let mut best: Option<(Position, f64)> = None;
        for day in 0..self.days {
            for start in 0..=(self.slots - duration) {
                if !self.people_free(event, day, start, duration) {
                    continue;
                }
                let delta = self.delta(event, day as u32, start as u32, params);
                if best.is_some_and(|(_, b)| delta >= b) {
                    continue;
                }
                if let Some(&room) = rooms.iter().find(|&&r| self.room_free(r, day, start, duration)) {
                    best = Some((Position::new(day as u32, start as u32, room), delta));
                }
            }
        }
        best
    }

    /// Records `event` at `pos`. Portions outside the grid are ignored.
    pub fn place(&mut self, event: usize, pos: Position) {
        if pos.day as usize >= self.days {
            return;
        }
        let day = pos.day as usize;
        let range = clipped(pos.start_slot, self.inst.event(event).duration, self.slots as u32);
        for &s in self.inst.students_of(event) {
            let base = self.cell(s, day, 0);
            let load = &mut self.student_days[s * self.days + day];
            load.events += 1;
            for t in range.clone() {
                let cell = &mut self.student_cells[base + t];
                *cell += 1;
                if *cell == 1 {
                    if load.occupied == 0 {
                        load.first = t as u32;
                        load.last = t as u32;
                    } else {
                        load.first = load.first.min(t as u32);
                        load.last = load.last.max(t as u32);
                    }
                    load.occupied += 1;
                }
            }
        }
        let base = self.cell(self.inst.lecturer_of(event), day, 0);
        for t in range.clone() {
            self.lecturer_cells[base + t] += 1;
        }
        let base = self.cell(pos.room, day, 0);
        for t in range {
            self.room_cells[base + t] += 1;
        }
    }

    /// Reverses a previous [`Occupancy::place`] of `event` at `pos`.
    pub fn remove(&mut self, event: usize, pos: Position) {
        if pos.day as usize >= self.days {
            return;
        }
        let day = pos.day as usize;
        let range = clipped(pos.start_slot, self.inst.event(event).duration, self.slots as u32);
        for &s in self.inst.students_of(event) {
            let base = self.cell(s, day, 0);
            let mut emptied = false;
            for t in range.clone() {
                let cell = &mut self.student_cells[base + t];
                *cell -= 1;
                emptied |= *cell == 0;
            }
            let day_cells = &self.student_cells[base..base + self.slots];
            let load = &mut self.student_days[s * self.days + day];
            load.events -= 1;
            if emptied {
                load.occupied = day_cells.iter().filter(|&&c| c > 0).count() as u32;
                if let Some(first) = day_cells.iter().position(|&c| c > 0) {
                    load.first = first as u32;
                    load.last = day_cells.iter().rposition(|&c| c > 0).unwrap_or(first) as u32;
                }
            }
        }
        let base = self.cell(self.inst.lecturer_of(event), day, 0);
        for t in range.clone() {
            self.lecturer_cells[base + t] -= 1;
        }
        let base = self.cell(pos.room, day, 0);
        for t in range {
            self.room_cells[base + t] -= 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{EventDoc, Instance, InstanceDoc, RoomDoc};

    /// `n` events, each attended by one student `S0` unless stated otherwise.
    fn doc(n: usize, students: usize, rooms: &[i64], days: i64, slots: i64) -> InstanceDoc {
        InstanceDoc {
            name: "t".into(),
            days,
            slots_per_day: slots,
            rooms: rooms
                .iter()
                .enumerate()
                .map(|(i, &c)| RoomDoc { id: format!("R{i}"), capacity: c })
                .collect(),
            lecturers: (0..n).map(|l| format!("L{l}")).collect(),
            students: (0..students).map(|s| format!("S{s}")).collect(),
            events: (0..n)
                .map(|i| EventDoc {
                    id: format!("E{i}"),
                    index: i as i64,
                    weight: 1.0 + i as f64,
                    duration: 1,
                    lecturer: format!("L{i}"),
                    students: vec!["S0".into()],
                })
                .collect(),
        }
    }

    fn inst(d: InstanceDoc) -> Instance {
        Instance::from_doc(d).unwrap()
    }

    #[test]
    fn all_unplaced_costs_u_each() {
        let i = inst(doc(4, 1, &[5], 1, 4));
        let tt = Timetable::empty(i.n());
        let r = evaluate(&i, &tt, &EvalParams::default()).unwrap();
        assert_eq!(r.unplaced, 4);
        assert_eq!(r.total, 40.0);
        // Three unplaced events, as in the worked example.
        let mut tt = Timetable::empty(i.n());
        tt.assign(0, Position::new(0, 0, 0));
        let r = evaluate(&i, &tt, &EvalParams { w_single: 0.0, ..Default::default() }).unwrap();
        assert_eq!(r.unplaced, 3);
        assert_eq!(r.total, 30.0);
    }

    #[test]
    fn single_event_day() {
        let i = inst(doc(4, 3, &[5], 1, 4));
        let mut tt = Timetable::empty(i.n());
        tt.assign(0, Position::new(0, 0, 0));
        let r = evaluate(&i, &tt, &EvalParams::default()).unwrap();
        assert_eq!(r.soft, SoftCounts { gap_slots: 0, single_event_days: 1, last_slot_weighted: 0.0 });
        assert_eq!(r.total, 1.0 / 3.0 + 30.0);
    }

    #[test]
    fn room_clash_costs_at_least_h() {
        let mut d = doc(4, 2, &[5], 1, 4);
        d.events[1].students = vec!["S1".into()];
        let i = inst(d);
        let mut tt = Timetable::empty(i.n());
        tt.assign(0, Position::new(0, 1, 0));
        tt.assign(1, Position::new(0, 1, 0));
        let r = evaluate(&i, &tt, &EvalParams::default()).unwrap();
        assert_eq!(r.hard.room_clash, 1);
        assert!(r.total >= 100.0);
    }

    #[test]
    fn gaps_and_last_slot() {
        let i = inst(doc(4, 1, &[5], 1, 4));
        let mut tt = Timetable::empty(i.n());
        tt.assign(0, Position::new(0, 0, 0));
        tt.assign(1, Position::new(0, 3, 0));
        let r = evaluate(&i, &tt, &EvalParams::default()).unwrap();
        assert_eq!(r.soft.gap_slots, 2);
        assert_eq!(r.soft.single_event_days, 0);
        assert_eq!(r.soft.last_slot_weighted, 2.0);
        assert_eq!(r.total, 4.0 + 20.0);
    }

    #[test]
    fn capacity_and_grid_violations() {
        let mut d = doc(4, 2, &[1, 5], 2, 4);
        d.events[0].students = vec!["S0".into(), "S1".into()];
        d.events[2].duration = 2;
        let i = inst(d);
        let mut tt = Timetable::empty(i.n());
        tt.assign(0, Position::new(0, 0, 0));
        tt.assign(2, Position::new(1, 3, 1));
        tt.assign(3, Position::new(7, 0, 1));
        let r = evaluate(&i, &tt, &EvalParams::default()).unwrap();
        assert_eq!(r.hard.capacity, 1);
        assert_eq!(r.hard.out_of_grid, 2);
    }

    #[test]
    fn inconsistent_timetables_are_errors() {
        let i = inst(doc(4, 1, &[5], 1, 4));
        assert!(matches!(
            evaluate(&i, &Timetable::empty(3), &EvalParams::default()),
            Err(EvalError::SizeMismatch { .. })
        ));
        let mut tt = Timetable::empty(4);
        tt.assign(1, Position::new(0, 0, 9));
        assert!(matches!(evaluate(&i, &tt, &EvalParams::default()), Err(EvalError::RoomIndex { .. })));
    }

    #[test]
    fn feasibility_checks() {
        let mut d = doc(4, 2, &[5, 1], 1, 4);
        d.events[0].students = vec!["S0".into(), "S1".into()];
        d.events[1].students = vec!["S1".into()];
        let i = inst(d);
        let empty = Timetable::empty(i.n());
        assert!(is_feasible_position(&i, &empty, 0, Position::new(0, 0, 0)));
        // H4: room 1 seats one student.
        assert!(!is_feasible_position(&i, &empty, 0, Position::new(0, 0, 1)));
        // H5
        assert!(!is_feasible_position(&i, &empty, 0, Position::new(0, 4, 0)));
        assert!(!is_feasible_position(&i, &empty, 0, Position::new(1, 0, 0)));

        let mut tt = empty.clone();
        tt.assign(2, Position::new(0, 2, 0));
        // H3: room 0 busy at slot 2.
        assert!(!is_feasible_position(&i, &tt, 1, Position::new(0, 2, 0)));
        assert!(is_feasible_position(&i, &tt, 1, Position::new(0, 2, 1)));
        // H1: S0 attends event 2.
        assert!(!is_feasible_position(&i, &tt, 3, Position::new(0, 2, 1)));
        // Already placed.
        assert!(!is_feasible_position(&i, &tt, 2, Position::new(0, 0, 0)));
    }

    #[test]
    fn lecturer_clash_blocks_placement() {
        let mut d = doc(4, 2, &[5, 5], 1, 4);
        d.events[1].lecturer = "L0".into();
        d.events[1].students = vec!["S1".into()];
        let i = inst(d);
        let mut tt = Timetable::empty(i.n());
        tt.assign(0, Position::new(0, 0, 0));
        assert!(!is_feasible_position(&i, &tt, 1, Position::new(0, 0, 1)));
    }

    #[test]
    fn first_placement_delta_is_single_day() {
        let i = inst(doc(4, 1, &[5], 1, 4));
        let p = EvalParams::default();
        let tt = Timetable::empty(i.n());
        let d = placement_delta(&i, &tt, 0, Position::new(0, 0, 0), &p).unwrap();
        assert_eq!(d, p.w_single);
        // Final slot adds the weight term; event 2 has weight 3.0.
        let d = placement_delta(&i, &tt, 2, Position::new(0, 3, 0), &p).unwrap();
        assert_eq!(d, p.w_single + p.w_last * 3.0);
    }

    #[test]
    fn delta_matches_two_evaluations() {
        let i = inst(doc(4, 1, &[5], 1, 4));
        let p = EvalParams { w_gap: 0.7, w_single: 1.3, w_last: 0.4, ..Default::default() };
        let mut tt = Timetable::empty(i.n());
        tt.assign(0, Position::new(0, 0, 0));
        let before = evaluate(&i, &tt, &p).unwrap().total;
        let pos = Position::new(0, 3, 0);
        let delta = placement_delta(&i, &tt, 1, pos, &p).unwrap();
        tt.assign(1, pos);
        let after = evaluate(&i, &tt, &p).unwrap().total;
        assert!((after - before + p.unplaced_penalty - delta).abs() < 1e-12);
    }

    #[test]
    fn infeasible_delta_is_an_error() {
        let i = inst(doc(4, 1, &[5], 1, 4));
        let mut tt = Timetable::empty(i.n());
        tt.assign(0, Position::new(0, 0, 0));
        let p = EvalParams::default();
        assert!(matches!(
            placement_delta(&i, &tt, 1, Position::new(0, 0, 0), &p),
            Err(EvalError::Infeasible { .. })
        ));
        assert_eq!(placement_delta(&i, &tt, 0, Position::new(0, 1, 0), &p), Err(EvalError::AlreadyPlaced(0)));
    }

    #[test]
    fn remove_restores_loads() {
        let i = inst(doc(4, 1, &[5], 1, 4));
        let p = EvalParams::default();
        let mut occ = Occupancy::new(&i);
        occ.place(0, Position::new(0, 0, 0));
        let before = occ.delta(2, 0, 2, &p);
        occ.place(1, Position::new(0, 3, 0));
        occ.remove(1, Position::new(0, 3, 0));
        assert_eq!(occ.delta(2, 0, 2, &p), before);
    }

    #[test]
    fn params_validation() {
        assert!(EvalParams::default().validate().is_ok());
        let bad = EvalParams { unplaced_penalty: 0.0, ..Default::default() };
        assert!(bad.validate().is_err());
        let bad = EvalParams { w_gap: -1.0, ..Default::default() };
        assert!(bad.validate().is_err());
        let parsed: EvalParams = serde_json::from_str(r#"{"w_gap": 2.5}"#).unwrap();
        assert_eq!(parsed, EvalParams { w_gap: 2.5, ..Default::default() });
    }
}
