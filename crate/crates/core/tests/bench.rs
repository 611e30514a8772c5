use mprofile::bench::{run_bench, workload_checksum, BenchPlan};
use mprofile::io::random_walk;
use mprofile::profile::Algorithm;

fn small_plan(trials: usize) -> BenchPlan {
    let mut plan = BenchPlan::new(vec![600, 1200], vec![Algorithm::Stomp, Algorithm::Scrimp], vec![1, 2], trials);
    plan.window = 32;
    plan.warm_up = false;
    plan
}

#[test]
fn single_trial_is_annotated() {
    let report = run_bench(&small_plan(1)).unwrap();
    let table = report.to_table();
    assert!(table.contains("*Single trial"), "{table}");
    assert!(!table.contains("Median of"));
    assert!(report.rows.iter().all(|r| r.times.len() == 1 && r.median_secs == r.times[0]));

    let table = run_bench(&small_plan(3)).unwrap().to_table();
    assert!(table.contains("*Median of 3 trials"), "{table}");
}

#[test]
fn rows_skips_and_checksums() {
    let plan = small_plan(2);
    let report = run_bench(&plan).unwrap();
    assert_eq!(report.rows.len(), 6);
    assert_eq!(report.skipped.len(), 2);
    assert!(report.skipped.iter().all(|s| s.algorithm == Algorithm::Scrimp && s.workers == 2));
    for r in &report.rows {
        assert_eq!(r.checksum, workload_checksum(&random_walk(r.n, plan.seed).unwrap()));
        assert_eq!(r.seed, plan.seed);
        assert!(r.median_secs > 0.0);
    }
    let a = report.row(Algorithm::Stomp, 600, 1).unwrap();
    let b = report.row(Algorithm::Scrimp, 600, 1).unwrap();
    assert_eq!(a.checksum, b.checksum);
    assert_ne!(a.checksum, report.row(Algorithm::Stomp, 1200, 1).unwrap().checksum);

    let csv = report.to_csv();
    assert_eq!(csv.lines().count(), 1 + 6);
    assert!(csv.lines().nth(1).unwrap().ends_with(&report.rows[0].checksum));
}

#[test]
fn invalid_plans_are_rejected() {
    assert_eq!(run_bench(&small_plan(0)).unwrap_err().exit_code(), 2);
    let mut plan = small_plan(1);
    plan.sizes.clear();
    assert!(run_bench(&plan).is_err());
}

#[test]
fn more_workers_are_not_slower() {
    let threads = std::thread::available_parallelism().map_or(1, |n| n.get());
    if threads < 2 {
        eprintln!("skipped: {threads} hardware thread(s), no parallel speedup to measure");
        return;
    }
    let mut plan = BenchPlan::new(vec![8192], vec![Algorithm::Stomp], vec![1, threads.min(8)], 3);
    plan.window = 64;
    let report = run_bench(&plan).unwrap();
    let one = report.row(Algorithm::Stomp, 8192, 1).unwrap().median_secs;
    let many = report.row(Algorithm::Stomp, 8192, threads.min(8)).unwrap().median_secs;
    assert!(many <= one * 1.1, "{many} s with {} workers vs {one} s with 1", threads.min(8));
}
