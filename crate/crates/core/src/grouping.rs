//! Event orderings, commensurate partitions into contiguous windows, and
//! window rotation.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{Instance, MIN_EVENTS};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GroupingError {
    #[error("at least {MIN_EVENTS} events are required, got {0}")]
    TooFewEvents(usize),
    #[error("group count {m} out of range: must satisfy 2 <= m <= floor(n/2) = {max} for n = {n}")]
    GroupCount { n: usize, m: usize, max: usize },
    #[error("window [{from}, {to}] out of bounds for a permutation of length {len}")]
    Window { from: usize, to: usize, len: usize },
    #[error("not a permutation of 0..{0}")]
    NotAPermutation(usize),
    #[error("unknown sort criterion {0:?} (expected index, weight, number or duration)")]
    UnknownCriterion(String),
}

/// An ordering of all event indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Self((0..n).collect())
    }

    /// Checks that `order` is a bijection on `0..order.len()`.
    pub fn new(order: Vec<usize>) -> Result<Self, GroupingError> {
        let n = order.len();
        let mut seen = vec![false; n];
        for &e in &order {
            if e >= n || std::mem::replace(&mut seen[e], true) {
                return Err(GroupingError::NotAPermutation(n));
            }
        }
        Ok(Self(order))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }

    /// In-place variant of [`rotate_window`].
    pub fn rotate_window_left(&mut self, window: Window, k: usize) -> Result<(), GroupingError> {
        if window.from > window.to || window.to >= self.len() {
            return Err(GroupingError::Window { from: window.from, to: window.to, len: self.len() });
        }
        let slice = &mut self.0[window.from..=window.to];
        let len = slice.len();
        slice.rotate_left(k % len);
        Ok(())
    }
}

impl AsRef<[usize]> for Permutation {
    fn as_ref(&self) -> &[usize] {
        &self.0
    }
}

/// Key used to order events before grouping.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Criterion {
    Index,
    Weight,
    /// Enrolled-student count.
    Number,
    Duration,
}

impl Criterion {
    /// Column order used by every report.
    pub const ALL: [Criterion; 4] = [Criterion::Index, Criterion::Weight, Criterion::Number, Criterion::Duration];

    pub fn as_str(&self) -> &'static str {
        match self {
            Criterion::Index => "index",
            Criterion::Weight => "weight",
            Criterion::Number => "number",
            Criterion::Duration => "duration",
        }
    }
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Criterion {
    type Err = GroupingError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Criterion::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| GroupingError::UnknownCriterion(s.to_string()))
    }
}

/// Inclusive range of permutation positions forming one group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Window {
    pub from: usize,
    pub to: usize,
}

impl Window {
    pub fn len(&self) -> usize {
        self.to - self.from + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// `m` contiguous windows over `0..n` whose sizes differ by at most one.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Grouping {
    n: usize,
    m: usize,
    windows: Vec<Window>,
}

impl Grouping {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn windows(&self) -> &[Window] {
        &self.windows
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.windows.iter().map(Window::len).collect()
    }

    /// Compact `countxsize` rendering, larger size first, e.g. `12x7; 1x6`.
    pub fn signature(&self) -> String {
        let small = self.n / self.m;
        let large_count = self.n % self.m;
        let mut parts = Vec::with_capacity(2);
        if large_count > 0 {
            parts.push(format!("{large_count}x{}", small + 1));
        }
        if self.m > large_count {
            parts.push(format!("{}x{small}", self.m - large_count));
        }
        parts.join("; ")
    }
}

/// Largest admissible group count for `n` events.
pub fn max_groups(n: usize) -> usize {
    n / 2
}

/// Splits `0..n` into `m` contiguous windows: the first `n mod m` windows
/// hold `floor(n/m) + 1` positions, the rest `floor(n/m)`.
pub fn partition(n: usize, m: usize) -> Result<Grouping, GroupingError> {
    if n < MIN_EVENTS {
        return Err(GroupingError::TooFewEvents(n));
    }
    let max = max_groups(n);
    if m < 2 || m > max {
        return Err(GroupingError::GroupCount { n, m, max });
    }
    let size = n / m;
    let larger = n % m;
    let mut windows = Vec::with_capacity(m);
    let mut from = 0;
    for g in 0..m {
        let len = if g < larger { size + 1 } else { size };
        windows.push(Window { from, to: from + len - 1 });
        from += len;
    }
    Ok(Grouping { n, m, windows })
}

/// Shorthand for `partition(n, m)?.signature()`.
pub fn signature(n: usize, m: usize) -> Result<String, GroupingError> {
    Ok(partition(n, m)?.signature())
}

/// Orders events by criterion. Index ascends; weight, student count and
/// duration descend. Ties fall back to ascending index.
pub fn sort_events(inst: &Instance, criterion: Criterion) -> Permutation {
    let mut order: Vec<usize> = (0..inst.n()).collect();
    let events = inst.events();
    match criterion {
        Criterion::Index => {}
        Criterion::Weight => order.sort_by(|&a, &b| events[b].weight.total_cmp(&events[a].weight)),
        Criterion::Number => order.sort_by_key(|&e| std::cmp::Reverse(inst.enrollment(e))),
        Criterion::Duration => order.sort_by_key(|&e| std::cmp::Reverse(events[e].duration)),
    }
    Permutation(order)
}

/// Copy of `p` with positions `from..=to` cyclically shifted left by `k`.
pub fn rotate_window(p: &Permutation, from: usize, to: usize, k: usize) -> Result<Permutation, GroupingError> {
    let mut out = p.clone();
    out.rotate_window_left(Window { from, to }, k)?;
    Ok(out)
}
