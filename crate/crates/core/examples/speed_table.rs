//! Timing table on seeded random walks. Pass `--full` for the 40 000-point
//! table (slow); the default is a quick 4 000-point run.

use mprofile::bench::{run_bench_with, scaling_slope, BenchPlan};
use mprofile::profile::Algorithm;

fn main() -> mprofile::Result<()> {
    let plan = if std::env::args().any(|a| a == "--full") {
        BenchPlan::speed_table()
    } else {
        BenchPlan::new(vec![4_000], vec![Algorithm::Scrimp, Algorithm::Stomp, Algorithm::Stamp], vec![1, 2], 3)
    };
    let report = run_bench_with(&plan, |cell| eprintln!("timing {cell}"))?;
    print!("{}", report.to_table());

    let sizes = vec![2_000, 4_000, 8_000];
    let mut growth = BenchPlan::new(sizes.clone(), vec![Algorithm::Stomp], vec![1], 1);
    growth.warm_up = false;
    let g = run_bench_with(&growth, |_| {})?;
    let pts: Vec<(usize, f64)> = g.rows.iter().map(|r| (r.n, r.median_secs)).collect();
    println!("stomp log-log slope over {sizes:?}: {:.2}", scaling_slope(&pts));
    Ok(())
}
