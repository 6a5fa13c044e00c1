use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::model::{
    EventDoc, Instance, InstanceDoc, RoomDoc, DEFAULT_DAYS, DEFAULT_SLOTS_PER_DAY, MIN_EVENTS,
};

use super::HarnessError;

const MIN_ENROLLMENT: usize = 3;
const MAX_DURATION: u32 = 3;
const ROOM_CAPACITY_RANGE: (usize, usize) = (4, 16);
const WEIGHT_RANGE: (f64, f64) = (0.5, 2.0);

/// Cardinalities of a generated instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GenShape {
    pub events: usize,
    pub students: usize,
    pub lecturers: usize,
    pub rooms: usize,
    pub days: u32,
    pub slots_per_day: u32,
    pub seed: u64,
}

impl GenShape {
    /// Shape on the default 5 × 8 grid.
    pub fn new(events: usize, students: usize, lecturers: usize, rooms: usize, seed: u64) -> Self {
        Self { events, students, lecturers, rooms, days: DEFAULT_DAYS, slots_per_day: DEFAULT_SLOTS_PER_DAY, seed }
    }

    pub fn with_grid(mut self, days: u32, slots_per_day: u32) -> Self {
        self.days = days;
        self.slots_per_day = slots_per_day;
        self
    }

    /// `DS_E90S175L29A18`-style dataset name.
    pub fn dataset_name(&self) -> String {
        format!("DS_E{}S{}L{}A{}", self.events, self.students, self.lecturers, self.rooms)
    }

    fn check(&self) -> Result<(), HarnessError> {
        if self.events < MIN_EVENTS {
            return Err(HarnessError::InvalidShape(format!(
                "at least {MIN_EVENTS} events required, got {}",
                self.events
            )));
        }
        let counts = [
            ("students", self.students),
            ("lecturers", self.lecturers),
            ("rooms", self.rooms),
            ("days", self.days as usize),
            ("slots_per_day", self.slots_per_day as usize),
        ];
        match counts.iter().find(|(_, v)| *v == 0) {
            Some((name, _)) => Err(HarnessError::InvalidShape(format!("{name} must be positive"))),
            None => Ok(()),
        }
    }
}

fn ids(prefix: &str, count: usize) -> Vec<String> {
    let width = count.to_string().len().max(2);
    (1..=count).map(|i| format!("{prefix}{i:0width$}")).collect()
}

/// Seeded random instance with the requested cardinalities.
///
/// Durations are drawn from 1..=3 (capped by the day length), weights
/// uniformly from [0.5, 2.0], lecturers uniformly. Enrollment is drawn
/// between 3 students (or all, if fewer exist) and the largest room
/// capacity, so at least one room fits every event.
pub fn generate_instance(shape: &GenShape) -> Result<Instance, HarnessError> {
    shape.check()?;
    let mut rng = ChaCha8Rng::seed_from_u64(shape.seed);

    let min_enrollment = MIN_ENROLLMENT.min(shape.students);
    let cap_hi = ROOM_CAPACITY_RANGE.1.min(shape.students).max(min_enrollment);
    let cap_lo = ROOM_CAPACITY_RANGE.0.min(cap_hi);
    let room_ids = ids("A", shape.rooms);
    let rooms: Vec<RoomDoc> = room_ids
        .into_iter()
        .map(|id| RoomDoc { id, capacity: rng.gen_range(cap_lo..=cap_hi) as i64 })
        .collect();
    let max_capacity = rooms.iter().map(|r| r.capacity as usize).max().unwrap_or(0);
    if max_capacity < min_enrollment {
        return Err(HarnessError::InvalidShape(format!(
            "no room can seat {min_enrollment} students"
        )));
    }

    let lecturers = ids("L", shape.lecturers);
    let students = ids("S", shape.students);
    let max_duration = MAX_DURATION.min(shape.slots_per_day);

    let events = ids("E", shape.events)
        .into_iter()
        .enumerate()
        .map(|(index, id)| {
            let duration = rng.gen_range(1..=max_duration);
            let weight = rng.gen_range(WEIGHT_RANGE.0..=WEIGHT_RANGE.1);
            let lecturer = lecturers[rng.gen_range(0..lecturers.len())].clone();
            let size = rng.gen_range(min_enrollment..=max_capacity);
            let mut picked = sample(&mut rng, students.len(), size).into_vec();
            picked.sort_unstable();
            EventDoc {
                id,
                index: index as i64,
                weight,
                duration: duration.into(),
                lecturer,
                students: picked.into_iter().map(|s| students[s].clone()).collect(),
            }
        })
        .collect();

    let doc = InstanceDoc {
        name: shape.dataset_name(),
        days: shape.days.into(),
        slots_per_day: shape.slots_per_day.into(),
        rooms,
        lecturers,
        students,
        events,
    };
    Ok(Instance::from_doc(doc)?)
}
