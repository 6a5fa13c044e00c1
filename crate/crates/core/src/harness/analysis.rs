use std::collections::BTreeMap;

use serde::Serialize;

use crate::grouping::{max_groups, Criterion};

use super::{HarnessError, SweepReport};

pub const DEFAULT_PRUNE_LOW_DIVISOR: f64 = 33.3;
pub const DEFAULT_PRUNE_HIGH_DIVISOR: f64 = 6.67;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TopResult {
    pub criterion: Criterion,
    pub m: usize,
    pub value: f64,
}

/// Span of group counts among a set of top results, also expressed as
/// divisors of `floor(n/2)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RangeResult {
    pub m_low: usize,
    pub m_high: usize,
    pub m_max: usize,
    pub low_divisor: f64,
    pub high_divisor: f64,
}

/// `num / den` rounded half-up to one decimal, in exact integer arithmetic.
fn ratio_1dp(num: usize, den: usize) -> f64 {
    let tenths = (20 * num + den) / (2 * den);
    tenths as f64 / 10.0
}

/// Cheapest cell per criterion; ties go to the smaller m.
pub fn best_by_criterion(r: &SweepReport) -> BTreeMap<Criterion, TopResult> {
    let mut best: BTreeMap<Criterion, TopResult> = BTreeMap::new();
    for cell in r.cells() {
        best.entry(cell.criterion)
            .and_modify(|b| {
                if cell.value < b.value || (cell.value == b.value && cell.m < b.m) {
                    *b = cell;
                }
            })
            .or_insert(cell);
    }
    best
}

/// The `k` cheapest cells, ascending; ties by smaller m, then criterion
/// column order.
pub fn top_k(r: &SweepReport, k: usize) -> Result<Vec<TopResult>, HarnessError> {
    let mut cells: Vec<TopResult> = r.cells().collect();
    if k == 0 || k > cells.len() {
        return Err(HarnessError::TooFewCells { k, cells: cells.len() });
    }
    cells.sort_by(|a, b| {
        a.value.total_cmp(&b.value).then(a.m.cmp(&b.m)).then(a.criterion.cmp(&b.criterion))
    });
    cells.truncate(k);
    Ok(cells)
}

pub fn range_analysis(tops: &[TopResult], n: usize) -> Result<RangeResult, HarnessError> {
    let m_low = tops.iter().map(|t| t.m).min().ok_or(HarnessError::EmptyReport)?;
    let m_high = tops.iter().map(|t| t.m).max().ok_or(HarnessError::EmptyReport)?;
    let m_max = max_groups(n);
    Ok(RangeResult {
        m_low,
        m_high,
        m_max,
        low_divisor: ratio_1dp(m_max, m_low),
        high_divisor: ratio_1dp(m_max, m_high),
    })
}

/// Count and percentage of results per criterion. Every criterion is
/// present, with `(0, 0.0)` when it never appears.
pub fn criterion_share(tops: &[TopResult]) -> BTreeMap<Criterion, (usize, f64)> {
    let total = tops.len();
    Criterion::ALL
        .into_iter()
        .map(|c| {
            let count = tops.iter().filter(|t| t.criterion == c).count();
            let percent = if total == 0 { 0.0 } else { ratio_1dp(100 * count, total) };
            (c, (count, percent))
        })
        .collect()
}

/// Group counts worth sweeping: `[ceil(n/low_div), floor(n/high_div)]`
/// clamped to `[2, floor(n/2)]`.
pub fn prune_range(n: usize, low_div: f64, high_div: f64) -> Result<(usize, usize), HarnessError> {
    if !(high_div > 0.0 && low_div > high_div && low_div.is_finite()) {
        return Err(HarnessError::InvalidDivisors { low: low_div, high: high_div });
    }
    let m_lo = ((n as f64 / low_div).ceil() as usize).max(2);
    let m_hi = ((n as f64 / high_div).floor() as usize).min(max_groups(n));
    if m_lo > m_hi {
        return Err(HarnessError::EmptyRange { n, m_lo, m_hi });
    }
    Ok((m_lo, m_hi))
}
