//! Reference implementations shared by the integration suites. They are
//! deliberately naive and rebuild everything from first principles.

#![allow(dead_code)]

use egb_core::evaluation::{evaluate, EvalParams};
use egb_core::grouping::Criterion;
use egb_core::harness::{generate_instance, parse_report_csv, GenShape, SweepReport};
use egb_core::model::{Instance, Position, Timetable};
use egb_core::search::LocalSearch;
use rand::Rng;

pub fn fixture_text(name: &str) -> String {
    let path = format!("{}/../../fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"))
}

pub fn fixture_report(name: &str, instance: &str) -> SweepReport {
    parse_report_csv(&fixture_text(name), instance).unwrap()
}

/// `(m, groups)` columns of a fixture, read without the library parser.
pub fn fixture_signatures(name: &str) -> Vec<(usize, String)> {
    fixture_text(name)
        .lines()
        .skip(1)
        .map(|line| {
            let (m, rest) = line.split_once(',').unwrap();
            let sig = rest.trim_start_matches('"').split('"').next().unwrap();
            (m.parse().unwrap(), sig.to_string())
        })
        .collect()
}

/// Small random instance with a cramped grid, so clashes and unplaced
/// events both occur.
pub fn random_instance(rng: &mut impl Rng, events: std::ops::RangeInclusive<usize>) -> Instance {
    let n = rng.gen_range(events);
    let shape = GenShape::new(n, rng.gen_range(3..=2 * n), rng.gen_range(1..=4), rng.gen_range(1..=4), rng.gen())
        .with_grid(rng.gen_range(1..=3), rng.gen_range(3..=6));
    generate_instance(&shape).unwrap()
}

pub fn ref_sizes(n: usize, m: usize) -> Vec<usize> {
    (0..m).map(|i| n / m + usize::from(i < n % m)).collect()
}

pub fn ref_order(inst: &Instance, c: Criterion) -> Vec<usize> {
    let key = |e: usize| -> f64 {
        let ev = &inst.events()[e];
        match c {
            Criterion::Index => 0.0,
            Criterion::Weight => -ev.weight,
            Criterion::Number => -(ev.students.len() as f64),
            Criterion::Duration => -f64::from(ev.duration),
        }
    };
    let mut order: Vec<usize> = (0..inst.n()).collect();
    // insertion sort: stable by construction
    for i in 1..order.len() {
        let mut j = i;
        while j > 0 && key(order[j - 1]) > key(order[j]) {
            order.swap(j - 1, j);
            j -= 1;
        }
    }
    order
}

fn rotated(order: &[usize], from: usize, len: usize, k: usize) -> Vec<usize> {
    let mut out = order[..from].to_vec();
    for i in 0..len {
        out.push(order[from + (i + k) % len]);
    }
    out.extend_from_slice(&order[from + len..]);
    out
}

pub struct RefRun {
    pub group_evals: Vec<f64>,
    pub rotations: Vec<usize>,
    pub order: Vec<usize>,
    pub best_eval: f64,
    pub calls: usize,
}

/// Rotation scan by explicit enumeration: every rotation of every group
/// is materialized as a fresh vector and scored.
pub fn ref_egb(
    inst: &Instance,
    m: usize,
    c: Criterion,
    params: &EvalParams,
    search: &dyn LocalSearch,
) -> RefRun {
    let score = |order: &[usize]| {
        let p = egb_core::grouping::Permutation::new(order.to_vec()).unwrap();
        search.search(inst, &p, params).1.total
    };
    let mut order = ref_order(inst, c);
    let mut from = 0;
    let mut run = RefRun { group_evals: vec![], rotations: vec![], order: vec![], best_eval: 0.0, calls: 0 };
    for len in ref_sizes(inst.n(), m) {
        let scores: Vec<f64> = (0..len).map(|k| score(&rotated(&order, from, len, k))).collect();
        run.calls += len;
        let best = scores.iter().cloned().fold(f64::INFINITY, f64::min);
        let k = scores.iter().position(|&s| s == best).unwrap();
        order = rotated(&order, from, len, k);
        run.group_evals.push(best);
        run.rotations.push(k);
        from += len;
    }
    run.best_eval = score(&order);
    run.order = order;
    run
}

/// Every (day, start, room) position in lexicographic order.
pub fn all_positions(inst: &Instance) -> Vec<Position> {
    let g = inst.grid();
    let mut out = vec![];
    for day in 0..g.days {
        for start in 0..g.slots_per_day {
            for room in 0..inst.rooms().len() {
                out.push(Position::new(day, start, room));
            }
        }
    }
    out
}

/// Greedy construction that scores every candidate by a full evaluation of
/// the timetable it would produce. A candidate is feasible when it adds no
/// hard violation; the earliest of the cheapest candidates wins.
pub fn oracle_greedy(inst: &Instance, order: &[usize], params: &EvalParams) -> Timetable {
    let mut tt = Timetable::empty(inst.n());
    for &e in order {
        let mut best: Option<(Position, f64)> = None;
        for pos in all_positions(inst) {
            let mut trial = tt.clone();
            trial.assign(e, pos);
            let ev = evaluate(inst, &trial, params).unwrap();
            if ev.hard.total() > 0 {
                continue;
            }
            if best.is_none_or(|(_, b)| ev.total < b - 1e-9) {
                best = Some((pos, ev.total));
            }
        }
        if let Some((pos, _)) = best {
            tt.assign(e, pos);
        }
    }
    tt
}

pub fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
}

pub struct Published {
    pub file: &'static str,
    pub name: &'static str,
    pub n: usize,
    pub best: [(Criterion, usize, f64); 4],
    pub top5: [(Criterion, usize, f64); 5],
    /// m_low, m_high, floor(n/2), low divisor, high divisor
    pub range: (usize, usize, usize, f64, f64),
}

/// Best-per-criterion, top-five and range rows of the published results.
pub fn published() -> [Published; 3] {
    use Criterion::*;
    [
        Published {
            file: "table2.csv",
            name: "DS_E90S175L29A18",
            n: 90,
            best: [(Index, 9, 7.018), (Weight, 3, 6.530), (Number, 13, 6.759), (Duration, 2, 6.967)],
            top5: [(Weight, 3, 6.530), (Weight, 6, 6.597), (Number, 13, 6.759), (Number, 14, 6.787), (Weight, 5, 6.817)],
            range: (3, 14, 45, 15.0, 3.2),
        },
        Published {
            file: "table4.csv",
            name: "DS_E130S274L37A22",
            n: 130,
            best: [(Index, 7, 10.070), (Weight, 8, 9.158), (Number, 12, 10.239), (Duration, 12, 8.958)],
            top5: [
                (Duration, 12, 8.958),
                (Weight, 8, 9.158),
                (Duration, 19, 9.268),
                (Duration, 20, 9.307),
                (Weight, 15, 9.509),
            ],
            range: (8, 20, 65, 8.1, 3.3),
        },
        Published {
            file: "table6.csv",
            name: "DS_E273S549L62A39",
            n: 273,
            best: [(Index, 20, 26.562), (Weight, 6, 22.068), (Number, 17, 22.948), (Duration, 13, 20.978)],
            top5: [
                (Duration, 13, 20.978),
                (Duration, 8, 21.655),
                (Duration, 15, 21.672),
                (Duration, 14, 21.707),
                (Duration, 7, 21.745),
            ],
            range: (7, 15, 136, 19.4, 9.1),
        },
    ]
}

/// Compares every reduction against the published rows; returns the
/// mismatches.
pub fn check_published() -> Vec<String> {
    use egb_core::harness::{best_by_criterion, criterion_share, range_analysis, top_k, TopResult};
    let mut bad = vec![];
    let mut all_tops = vec![];
    for p in published() {
        let report = fixture_report(p.file, p.name);
        if report.n != p.n {
            bad.push(format!("{}: n={} expected {}", p.file, report.n, p.n));
        }
        let best = best_by_criterion(&report);
        for (c, m, v) in p.best {
            let want = TopResult { criterion: c, m, value: v };
            if best.get(&c) != Some(&want) {
                bad.push(format!("{}: best {c} = {:?}, expected {want:?}", p.file, best.get(&c)));
            }
        }
        let tops = top_k(&report, 5).unwrap();
        let want: Vec<TopResult> = p.top5.iter().map(|&(criterion, m, value)| TopResult { criterion, m, value }).collect();
        if tops != want {
            bad.push(format!("{}: top5 {tops:?}", p.file));
        }
        let r = range_analysis(&tops, report.n).unwrap();
        let got = (r.m_low, r.m_high, r.m_max, r.low_divisor, r.high_divisor);
        if got != p.range {
            bad.push(format!("{}: range {got:?}, expected {:?}", p.file, p.range));
        }
        all_tops.extend(tops);
    }
    let share = criterion_share(&all_tops);
    let want = [
        (Criterion::Index, (0, 0.0)),
        (Criterion::Weight, (5, 33.3)),
        (Criterion::Number, (2, 13.3)),
        (Criterion::Duration, (8, 53.3)),
    ];
    for (c, w) in want {
        if share[&c] != w {
            bad.push(format!("share {c}: {:?}, expected {w:?}", share[&c]));
        }
    }
    bad
}

/// [`oracle_greedy`] wrapped as a strategy, for reference runs that share
/// no code with the library search.
pub struct OracleSearch;

impl LocalSearch for OracleSearch {
    fn name(&self) -> &'static str {
        "oracle"
    }

    fn search(
        &self,
        inst: &Instance,
        order: &egb_core::grouping::Permutation,
        params: &EvalParams,
    ) -> (Timetable, egb_core::evaluation::EvalResult) {
        let tt = oracle_greedy(inst, order.as_slice(), params);
        let ev = evaluate(inst, &tt, params).unwrap();
        (tt, ev)
    }
}
