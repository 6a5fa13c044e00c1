//! University course timetabling by event grouping.
//!
//! Events are sorted by one of four criteria, split into `m` contiguous
//! groups whose sizes differ by at most one, and each group is searched over
//! all of its cyclic rotations with a deterministic local search. The best
//! rotation of each group is kept before moving to the next, so the best
//! evaluation never gets worse from one group to the next.
//!
//! Modules:
//! - [`model`]: instances, timetables and their JSON formats
//! - [`evaluation`]: hard/soft constraint scoring
//! - [`grouping`]: sort criteria, partitions and window rotation
//! - [`search`]: local search strategies and the rotation scan
//! - [`harness`]: instance generator, sweeps and report reductions

pub mod evaluation;
pub mod grouping;
pub mod harness;
pub mod model;
pub mod search;

pub use evaluation::{evaluate, is_feasible_position, placement_delta, EvalError, EvalParams, EvalResult};
pub use grouping::{partition, rotate_window, sort_events, Criterion, Grouping, GroupingError, Permutation, Window};
pub use harness::{generate_instance, sweep, GenShape, HarnessError, SweepOptions, SweepReport};
pub use model::{parse_instance, serialize_instance, serialize_timetable, Instance, ModelError, Position, Timetable};
pub use search::{egb_run, egb_run_with, local_search, LocalSearch, Registry, RunResult};
