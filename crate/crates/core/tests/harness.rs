mod common;

use common::{check_published, fixture_report, random_instance, ref_egb};
use egb_core::evaluation::EvalParams;
use egb_core::grouping::Criterion;
use egb_core::harness::{
    emit_plot_series, emit_report_csv, full_m_range, generate_instance, parse_report_csv, prune_range, sweep,
    GenShape, HarnessError, SweepOptions,
};
use egb_core::search::{GreedyConstructor, Registry};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn published_reductions() {
    let bad = check_published();
    assert!(bad.is_empty(), "{bad:#?}");
}

#[test]
fn report_csv_round_trip() {
    for (file, name) in [("table2.csv", "a"), ("table4.csv", "b"), ("table6.csv", "c")] {
        let report = fixture_report(file, name);
        let text = emit_report_csv(&report);
        let back = parse_report_csv(&text, name).unwrap();
        assert_eq!(back, report);
        assert_eq!(emit_report_csv(&back), text);
    }
}

#[test]
fn decimal_commas_are_read() {
    let report = fixture_report("table6.csv", "c");
    let row = report.rows.iter().find(|r| r.m == 41).unwrap();
    assert_eq!(row.values[&Criterion::Index], 33.037);
    assert_eq!(row.values[&Criterion::Duration], 24.988);
}

#[test]
fn wrong_signature_is_rejected() {
    let text = "m,groups,index,weight,number,duration\n2,\"2x5\",1,1,1,1\n3,\"2x4; 1x2\",1,1,1,1\n";
    assert!(matches!(parse_report_csv(text, "x"), Err(HarnessError::SignatureMismatch { m: 3, .. })));
}

#[test]
fn plot_series_follow_the_column() {
    let report = fixture_report("table2.csv", "a");
    let series = emit_plot_series(&report, Criterion::Weight).unwrap();
    let mut lines = series.lines();
    assert_eq!(lines.next(), Some("m,value"));
    assert_eq!(lines.next(), Some("2,7.422"));
    assert_eq!(series.lines().count(), 45);
}

#[test]
fn sweep_cells_equal_independent_runs() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let params = EvalParams::default();
    for _ in 0..5 {
        let inst = random_instance(&mut rng, 8..=16);
        let report = sweep(&inst, &full_m_range(inst.n()), &Criterion::ALL, &params, &SweepOptions::default()).unwrap();
        assert_eq!(report.m_values(), full_m_range(inst.n()));
        for row in &report.rows {
            assert_eq!(row.values.len(), 4);
            for c in Criterion::ALL {
                let reference = ref_egb(&inst, row.m, c, &params, &GreedyConstructor);
                assert_eq!(row.values[&c], reference.best_eval, "m={} {c}", row.m);
            }
        }
    }
}

#[test]
fn sweep_independent_of_worker_count() {
    let inst = generate_instance(&GenShape::new(30, 60, 8, 5, 21)).unwrap();
    let params = EvalParams::default();
    let ms = full_m_range(inst.n());
    let one = sweep(&inst, &ms, &Criterion::ALL, &params, &SweepOptions { workers: 1, ..Default::default() }).unwrap();
    let four = sweep(&inst, &ms, &Criterion::ALL, &params, &SweepOptions { workers: 4, ..Default::default() }).unwrap();
    assert_eq!(emit_report_csv(&one), emit_report_csv(&four));
}

#[test]
fn sweep_with_registered_strategy() {
    let inst = generate_instance(&GenShape::new(12, 20, 3, 3, 2)).unwrap();
    let opts = SweepOptions { workers: 1, search: Registry::with_builtins().create("greedy-improve").unwrap() };
    let report = sweep(&inst, &[2, 3], &[Criterion::Weight], &EvalParams::default(), &opts).unwrap();
    assert_eq!(report.rows.len(), 2);
    let reference = ref_egb(&inst, 3, Criterion::Weight, &EvalParams::default(), opts.search.as_ref());
    assert_eq!(report.rows[1].values[&Criterion::Weight], reference.best_eval);
}

#[test]
fn sweep_rejects_bad_input() {
    let inst = generate_instance(&GenShape::new(10, 20, 3, 3, 2)).unwrap();
    let params = EvalParams::default();
    let opts = SweepOptions::default();
    assert!(matches!(sweep(&inst, &[], &Criterion::ALL, &params, &opts), Err(HarnessError::EmptySweep)));
    assert!(matches!(sweep(&inst, &[6], &Criterion::ALL, &params, &opts), Err(HarnessError::Grouping(_))));
}

#[test]
fn pruned_range_for_published_sizes() {
    assert_eq!(prune_range(90, 33.3, 6.67).unwrap(), (3, 13));
    assert_eq!(prune_range(130, 33.3, 6.67).unwrap(), (4, 19));
    assert_eq!(prune_range(273, 33.3, 6.67).unwrap(), (9, 40));
}
