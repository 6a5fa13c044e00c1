use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;

use crate::evaluation::EvalParams;
use crate::grouping::{max_groups, partition, Criterion};
use crate::model::Instance;
use crate::search::{egb_run_with, GreedyConstructor, LocalSearch};

use super::{HarnessError, ReportRow, SweepReport};

#[derive(Clone)]
pub struct SweepOptions {
    /// Worker threads; 0 uses rayon's default.
    pub workers: usize,
    pub search: Arc<dyn LocalSearch>,
}

impl Default for SweepOptions {
    fn default() -> Self {
        Self { workers: 0, search: Arc::new(GreedyConstructor) }
    }
}

impl std::fmt::Debug for SweepOptions {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SweepOptions")
            .field("workers", &self.workers)
            .field("search", &self.search.name())
            .finish()
    }
}

/// Every admissible group count, `2..=floor(n/2)`.
pub fn full_m_range(n: usize) -> Vec<usize> {
    (2..=max_groups(n)).collect()
}

/// One run per (m, criterion) cell. Cells execute in parallel; results are
/// gathered by position, so the report never depends on completion order.
pub fn sweep(
    inst: &Instance,
    m_set: &[usize],
    criteria: &[Criterion],
    params: &EvalParams,
    opts: &SweepOptions,
) -> Result<SweepReport, HarnessError> {
    let mut ms = m_set.to_vec();
    ms.sort_unstable();
    ms.dedup();
    let mut cs = criteria.to_vec();
    cs.sort_unstable();
    cs.dedup();
    if ms.is_empty() || cs.is_empty() {
        return Err(HarnessError::EmptySweep);
    }
    let signatures = ms
        .iter()
        .map(|&m| Ok(partition(inst.n(), m)?.signature()))
        .collect::<Result<Vec<_>, HarnessError>>()?;

    let cells: Vec<(usize, Criterion)> = ms.iter().flat_map(|&m| cs.iter().map(move |&c| (m, c))).collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.workers)
        .build()
        .map_err(|e| HarnessError::ThreadPool(e.to_string()))?;
    let values: Vec<f64> = pool.install(|| {
        cells
            .par_iter()
            .map(|&(m, c)| egb_run_with(inst, m, c, params, opts.search.as_ref()).map(|r| r.best_eval))
            .collect::<Result<Vec<_>, _>>()
    })?;

    let rows = ms
        .iter()
        .zip(signatures)
        .zip(values.chunks(cs.len()))
        .map(|((&m, signature), chunk)| ReportRow {
            m,
            signature,
            values: cs.iter().copied().zip(chunk.iter().copied()).collect::<BTreeMap<_, _>>(),
        })
        .collect();

    Ok(SweepReport { instance_name: inst.name().to_string(), n: inst.n(), rows, params: Some(*params) })
}
