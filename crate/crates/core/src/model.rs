//! Problem instances, timetables, and their JSON file formats.
//!
//! An [`InstanceDoc`] is the raw document as it appears on disk. It can hold
//! anything the JSON schema admits, including broken references, so
//! [`validate_instance`] works on it directly. An [`Instance`] is only ever
//! built from a document that validates without errors, and it carries the
//! resolved integer lookups the solver needs.

use std::collections::{HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::evaluation::EvalResult;

/// Grid used by the generator when the caller does not choose one.
pub const DEFAULT_DAYS: u32 = 5;
pub const DEFAULT_SLOTS_PER_DAY: u32 = 8;

/// Smallest instance the grouping algorithm accepts: two groups of two.
pub const MIN_EVENTS: usize = 4;

#[derive(Debug, Error)]
pub enum ModelError {
    #[error("malformed JSON at {path}: {message}")]
    Json { path: String, message: String },
    #[error("invalid instance: {}", summarize(.0))]
    Invalid(Vec<Diagnostic>),
    #[error("timetable for instance {instance:?} does not match instance {expected:?}")]
    InstanceMismatch { instance: String, expected: String },
    #[error("timetable has {got} event slots, instance has {expected} events")]
    SizeMismatch { expected: usize, got: usize },
    #[error("{path}: unknown event {id:?}")]
    UnknownEvent { path: String, id: String },
    #[error("{path}: unknown room {id:?}")]
    UnknownRoom { path: String, id: String },
    #[error("{path}: event {id:?} listed more than once")]
    DuplicateEvent { path: String, id: String },
    #[error("event {id:?} is neither assigned nor unplaced")]
    MissingEvent { id: String },
    #[error("{path}: position of event {id:?} lies outside the time grid")]
    OutsideGrid { path: String, id: String },
    #[error("room index {room} out of range for event {event}")]
    RoomIndex { event: usize, room: usize },
}

fn summarize(diags: &[Diagnostic]) -> String {
    let errors: Vec<String> = diags
        .iter()
        .filter(|d| d.severity == Severity::Error)
        .map(ToString::to_string)
        .collect();
    errors.join("; ")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Warning,
    Error,
}

/// A single finding from [`validate_instance`], anchored at a JSON path such
/// as `events[3].lecturer`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagnostic {
    pub severity: Severity,
    pub path: String,
    pub message: String,
}

impl Diagnostic {
    fn error(path: impl Into<String>, message: impl Into<String>) -> Self {
        Self { severity: Severity::Error, path: path.into(), message: message.into() }
    }

    fn warning(path: impl Into<String>, message: impl Into<String>) -> Self {
        Self { severity: Severity::Warning, path: path.into(), message: message.into() }
    }

    pub fn is_error(&self) -> bool {
        self.severity == Severity::Error
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.severity {
            Severity::Warning => "warning",
            Severity::Error => "error",
        };
        write!(f, "{tag} at {}: {}", self.path, self.message)
    }
}

// ---------------------------------------------------------------------------
// Raw documents
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RoomDoc {
    pub id: String,
    pub capacity: i64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EventDoc {
    pub id: String,
    pub index: i64,
    pub weight: f64,
    pub duration: i64,
    pub lecturer: String,
    pub students: Vec<String>,
}

/// Instance file exactly as stored on disk.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceDoc {
    pub name: String,
    pub days: i64,
    pub slots_per_day: i64,
    pub rooms: Vec<RoomDoc>,
    pub lecturers: Vec<String>,
    pub students: Vec<String>,
    pub events: Vec<EventDoc>,
}

// ---------------------------------------------------------------------------
// Validated domain types
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TimeGrid {
    pub days: u32,
    pub slots_per_day: u32,
}

impl TimeGrid {
    pub fn timeslots(&self) -> u32 {
        self.days * self.slots_per_day
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Room {
    pub id: String,
    pub capacity: u32,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Event {
    pub id: String,
    pub index: usize,
    pub weight: f64,
    pub duration: u32,
    pub lecturer: String,
    pub students: Vec<String>,
}

/// A validated problem instance. Events are stored in `index` order, so an
/// event's position in [`Instance::events`] equals its ordinal index.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    name: String,
    grid: TimeGrid,
    rooms: Vec<Room>,
    lecturers: Vec<String>,
    students: Vec<String>,
    events: Vec<Event>,
    event_lecturer: Vec<usize>,
    event_students: Vec<Vec<usize>>,
    fitting_rooms: Vec<Vec<usize>>,
    event_lookup: HashMap<String, usize>,
    room_lookup: HashMap<String, usize>,
    warnings: Vec<Diagnostic>,
}

impl Instance {
    /// Validates `doc` and resolves every id reference.
    pub fn from_doc(doc: InstanceDoc) -> Result<Self, ModelError> {
        let diagnostics = validate_instance(&doc);
        if diagnostics.iter().any(Diagnostic::is_error) {
            return Err(ModelError::Invalid(diagnostics));
        }

        let grid = TimeGrid { days: doc.days as u32, slots_per_day: doc.slots_per_day as u32 };
        let rooms: Vec<Room> = doc
            .rooms
            .into_iter()
            .map(|r| Room { id: r.id, capacity: r.capacity as u32 })
            .collect();
        let lecturer_ix: HashMap<&str, usize> =
            doc.lecturers.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
        let student_ix: HashMap<&str, usize> =
            doc.students.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();

        let mut events: Vec<Event> = doc
            .events
            .into_iter()
            .map(|e| Event {
                id: e.id,
                index: e.index as usize,
                weight: e.weight,
                duration: e.duration as u32,
                lecturer: e.lecturer,
                students: e.students,
            })
            .collect();
        events.sort_by_key(|e| e.index);

        let event_lecturer = events.iter().map(|e| lecturer_ix[e.lecturer.as_str()]).collect();
        let event_students = events
            .iter()
            .map(|e| {
                let mut ix: Vec<usize> = e.students.iter().map(|s| student_ix[s.as_str()]).collect();
                ix.sort_unstable();
                ix
            })
            .collect();
        let fitting_rooms = events
            .iter()
            .map(|e| {
                rooms
                    .iter()
                    .enumerate()
                    .filter(|(_, r)| r.capacity as usize >= e.students.len())
                    .map(|(i, _)| i)
                    .collect()
            })
            .collect();
        let event_lookup = events.iter().map(|e| (e.id.clone(), e.index)).collect();
        let room_lookup = rooms.iter().enumerate().map(|(i, r)| (r.id.clone(), i)).collect();

        Ok(Self {
            name: doc.name,
            grid,
            rooms,
            lecturers: doc.lecturers,
            students: doc.students,
            events,
            event_lecturer,
            event_students,
            fitting_rooms,
            event_lookup,
            room_lookup,
            warnings: diagnostics,
        })
    }

    pub fn to_doc(&self) -> InstanceDoc {
        InstanceDoc {
            name: self.name.clone(),
            days: self.grid.days.into(),
            slots_per_day: self.grid.slots_per_day.into(),
            rooms: self
                .rooms
                .iter()
                .map(|r| RoomDoc { id: r.id.clone(), capacity: r.capacity.into() })
                .collect(),
            lecturers: self.lecturers.clone(),
            students: self.students.clone(),
            events: self
                .events
                .iter()
                .map(|e| EventDoc {
                    id: e.id.clone(),
                    index: e.index as i64,
                    weight: e.weight,
                    duration: e.duration.into(),
                    lecturer: e.lecturer.clone(),
                    students: e.students.clone(),
                })
                .collect(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn grid(&self) -> TimeGrid {
        self.grid
    }

    pub fn rooms(&self) -> &[Room] {
        &self.rooms
    }

    pub fn lecturers(&self) -> &[String] {
        &self.lecturers
    }

    pub fn students(&self) -> &[String] {
        &self.students
    }

    pub fn events(&self) -> &[Event] {
        &self.events
    }

    /// Number of events.
    pub fn n(&self) -> usize {
        self.events.len()
    }

    pub fn event(&self, index: usize) -> &Event {
        &self.events[index]
    }

    pub fn lecturer_of(&self, event: usize) -> usize {
        self.event_lecturer[event]
    }

    /// Sorted student indices enrolled in `event`.
    pub fn students_of(&self, event: usize) -> &[usize] {
        &self.event_students[event]
    }

    pub fn enrollment(&self, event: usize) -> usize {
        self.event_students[event].len()
    }

    /// Rooms (by index, ascending) whose capacity covers the event's enrollment.
    pub fn fitting_rooms(&self, event: usize) -> &[usize] {
        &self.fitting_rooms[event]
    }

    pub fn event_by_id(&self, id: &str) -> Option<usize> {
        self.event_lookup.get(id).copied()
    }

    pub fn room_by_id(&self, id: &str) -> Option<usize> {
        self.room_lookup.get(id).copied()
    }

    /// Non-fatal diagnostics collected while validating.
    pub fn warnings(&self) -> &[Diagnostic] {
        &self.warnings
    }
}

/// Checks every structural invariant of an instance document. An empty
/// result means the document is clean; warnings alone do not block
/// [`Instance::from_doc`].
pub fn validate_instance(doc: &InstanceDoc) -> Vec<Diagnostic> {
    let mut out = Vec::new();

    if doc.days < 1 {
        out.push(Diagnostic::error("days", format!("must be at least 1, got {}", doc.days)));
    }
    if doc.slots_per_day < 1 {
        out.push(Diagnostic::error(
            "slots_per_day",
            format!("must be at least 1, got {}", doc.slots_per_day),
        ));
    }

    let mut room_ids = HashSet::new();
    for (i, room) in doc.rooms.iter().enumerate() {
        if !room_ids.insert(room.id.as_str()) {
            out.push(Diagnostic::error(format!("rooms[{i}].id"), format!("duplicate room id {:?}", room.id)));
        }
        if room.capacity < 1 {
            out.push(Diagnostic::error(
                format!("rooms[{i}].capacity"),
                format!("must be at least 1, got {}", room.capacity),
            ));
        }
    }
    let max_capacity = doc.rooms.iter().map(|r| r.capacity).max().unwrap_or(0);

    let lecturers = unique_ids(&doc.lecturers, "lecturers", "lecturer", &mut out);
    let students = unique_ids(&doc.students, "students", "student", &mut out);

    let n = doc.events.len();
    if n < MIN_EVENTS {
        out.push(Diagnostic::error(
            "events",
            format!("at least {MIN_EVENTS} events are required, got {n}"),
        ));
    }

    let mut event_ids = HashSet::new();
    let mut seen_index = vec![false; n];
    for (i, ev) in doc.events.iter().enumerate() {
        let at = |field: &str| format!("events[{i}].{field}");
        if !event_ids.insert(ev.id.as_str()) {
            out.push(Diagnostic::error(at("id"), format!("duplicate event id {:?}", ev.id)));
        }
        if ev.index < 0 || ev.index as usize >= n {
            out.push(Diagnostic::error(
                at("index"),
                format!("index {} outside 0..{n}", ev.index),
            ));
        } else if std::mem::replace(&mut seen_index[ev.index as usize], true) {
            out.push(Diagnostic::error(at("index"), format!("duplicate index {}", ev.index)));
        }
        if !(ev.weight.is_finite() && ev.weight > 0.0) {
            out.push(Diagnostic::error(at("weight"), format!("must be positive, got {}", ev.weight)));
        }
        if ev.duration < 1 {
            out.push(Diagnostic::error(at("duration"), format!("must be at least 1, got {}", ev.duration)));
        } else if doc.slots_per_day >= 1 && ev.duration > doc.slots_per_day {
            out.push(Diagnostic::error(
                at("duration"),
                format!(
                    "duration {} does not fit in a day of {} slots",
                    ev.duration, doc.slots_per_day
                ),
            ));
        }
        if !lecturers.contains(ev.lecturer.as_str()) {
            out.push(Diagnostic::error(
                at("lecturer"),
                format!("dangling lecturer reference {:?}", ev.lecturer),
            ));
        }
        if ev.students.is_empty() {
            out.push(Diagnostic::error(at("students"), "event has no students"));
        }
        let mut enrolled = HashSet::new();
        for (j, s) in ev.students.iter().enumerate() {
            if !students.contains(s.as_str()) {
                out.push(Diagnostic::error(
                    format!("events[{i}].students[{j}]"),
                    format!("dangling student reference {s:?}"),
                ));
            }
            if !enrolled.insert(s.as_str()) {
                out.push(Diagnostic::error(
                    format!("events[{i}].students[{j}]"),
                    format!("student {s:?} enrolled twice"),
                ));
            }
        }
        if ev.students.len() as i64 > max_capacity {
            out.push(Diagnostic::warning(
                at("students"),
                format!(
                    "{} students exceed the largest room capacity {max_capacity}",
                    ev.students.len()
                ),
            ));
        }
    }

    out
}

fn unique_ids<'a>(
    ids: &'a [String],
    list: &str,
    what: &str,
    out: &mut Vec<Diagnostic>,
) -> HashSet<&'a str> {
    let mut set = HashSet::new();
    for (i, id) in ids.iter().enumerate() {
        if !set.insert(id.as_str()) {
            out.push(Diagnostic::error(format!("{list}[{i}]"), format!("duplicate {what} id {id:?}")));
        }
    }
    set
}

fn from_json<T: serde::de::DeserializeOwned>(text: &str) -> Result<T, ModelError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| ModelError::Json {
        path: e.path().to_string(),
        message: e.into_inner().to_string(),
    })
}

/// Parses and validates an instance document.
pub fn parse_instance(text: &str) -> Result<Instance, ModelError> {
    Instance::from_doc(from_json(text)?)
}

/// Renders an instance in the on-disk format, events in index order.
pub fn serialize_instance(inst: &Instance) -> String {
    serde_json::to_string_pretty(&inst.to_doc()).expect("instance documents always serialize")
}

// ---------------------------------------------------------------------------
// Timetables
// ---------------------------------------------------------------------------

/// Where a placed event sits. `room` is an index into [`Instance::rooms`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Position {
    pub day: u32,
    pub start_slot: u32,
    pub room: usize,
}

impl Position {
    pub fn new(day: u32, start_slot: u32, room: usize) -> Self {
        Self { day, start_slot, room }
    }
}

/// Assignment of events to positions. Indexed by event ordinal, so placed
/// and unplaced events always partition the instance's events.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Timetable {
    slots: Vec<Option<Position>>,
}

impl Timetable {
    /// A timetable for `n` events with nothing placed.
    pub fn empty(n: usize) -> Self {
        Self { slots: vec![None; n] }
    }

    pub fn len(&self) -> usize {
        self.slots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slots.is_empty()
    }

    pub fn get(&self, event: usize) -> Option<Position> {
        self.slots[event]
    }

    pub fn assign(&mut self, event: usize, pos: Position) {
        self.slots[event] = Some(pos);
    }

    pub fn unassign(&mut self, event: usize) -> Option<Position> {
        self.slots[event].take()
    }

    /// Placed events in ascending event order.
    pub fn assignments(&self) -> impl Iterator<Item = (usize, Position)> + '_ {
        self.slots.iter().enumerate().filter_map(|(e, p)| p.map(|p| (e, p)))
    }

    /// Unplaced events in ascending event order.
    pub fn unplaced(&self) -> impl Iterator<Item = usize> + '_ {
        self.slots.iter().enumerate().filter(|(_, p)| p.is_none()).map(|(e, _)| e)
    }

    pub fn placed_count(&self) -> usize {
        self.slots.iter().filter(|p| p.is_some()).count()
    }

    pub fn unplaced_count(&self) -> usize {
        self.len() - self.placed_count()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AssignmentDoc {
    pub event: String,
    pub day: u32,
    pub start_slot: u32,
    pub room: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TimetableDoc {
    pub instance: String,
    pub assignments: Vec<AssignmentDoc>,
    pub unplaced: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub evaluation: Option<EvalResult>,
}

/// Renders a timetable with its evaluation breakdown. Assignments and the
/// unplaced list are sorted by event id.
pub fn serialize_timetable(
    inst: &Instance,
    tt: &Timetable,
    ev: &EvalResult,
) -> Result<String, ModelError> {
    if tt.len() != inst.n() {
        return Err(ModelError::SizeMismatch { expected: inst.n(), got: tt.len() });
    }
    let mut assignments = Vec::with_capacity(tt.placed_count());
    for (e, pos) in tt.assignments() {
        let room = inst
            .rooms()
            .get(pos.room)
            .ok_or(ModelError::RoomIndex { event: e, room: pos.room })?;
        assignments.push(AssignmentDoc {
            event: inst.event(e).id.clone(),
            day: pos.day,
            start_slot: pos.start_slot,
            room: room.id.clone(),
        });
    }
    assignments.sort_by(|a, b| a.event.cmp(&b.event));
    let mut unplaced: Vec<String> = tt.unplaced().map(|e| inst.event(e).id.clone()).collect();
    unplaced.sort();

    let doc = TimetableDoc {
        instance: inst.name().to_string(),
        assignments,
        unplaced,
        evaluation: Some(ev.clone()),
    };
    Ok(serde_json::to_string_pretty(&doc).expect("timetable documents always serialize"))
}

/// Reads a timetable document against `inst`, resolving event and room ids.
/// Returns the embedded evaluation, if any, alongside the timetable.
pub fn parse_timetable(
    inst: &Instance,
    text: &str,
) -> Result<(Timetable, Option<EvalResult>), ModelError> {
    let doc: TimetableDoc = from_json(text)?;
    if doc.instance != inst.name() {
        return Err(ModelError::InstanceMismatch {
            instance: doc.instance,
            expected: inst.name().to_string(),
        });
    }
    let grid = inst.grid();
    let mut tt = Timetable::empty(inst.n());
    let mut seen = vec![false; inst.n()];

    for (i, a) in doc.assignments.iter().enumerate() {
        let path = format!("assignments[{i}]");
        let e = inst
            .event_by_id(&a.event)
            .ok_or_else(|| ModelError::UnknownEvent { path: path.clone(), id: a.event.clone() })?;
        let room = inst
            .room_by_id(&a.room)
            .ok_or_else(|| ModelError::UnknownRoom { path: path.clone(), id: a.room.clone() })?;
        if std::mem::replace(&mut seen[e], true) {
            return Err(ModelError::DuplicateEvent { path, id: a.event.clone() });
        }
        if a.day >= grid.days || a.start_slot + inst.event(e).duration > grid.slots_per_day {
            return Err(ModelError::OutsideGrid { path, id: a.event.clone() });
        }
        tt.assign(e, Position::new(a.day, a.start_slot, room));
    }
    for (i, id) in doc.unplaced.iter().enumerate() {
        let path = format!("unplaced[{i}]");
        let e = inst
            .event_by_id(id)
            .ok_or_else(|| ModelError::UnknownEvent { path: path.clone(), id: id.clone() })?;
        if std::mem::replace(&mut seen[e], true) {
            return Err(ModelError::DuplicateEvent { path, id: id.clone() });
        }
    }
    if let Some(e) = seen.iter().position(|s| !s) {
        return Err(ModelError::MissingEvent { id: inst.event(e).id.clone() });
    }
    Ok((tt, doc.evaluation))
}
