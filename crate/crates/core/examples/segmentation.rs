//! FLUSS on a series whose period changes once.

use mprofile::discovery::{fluss, DEFAULT_EXCLUSION_FACTOR};
use mprofile::io::{gen_planted, Planted};
use mprofile::profile::{stomp, ProfileParams};

fn main() -> mprofile::Result<()> {
    let ds = gen_planted(&Planted::regime_change(8_000, 0.6), 12)?;
    println!("regime change at {:?}", ds.ground_truth.as_ref().unwrap().positions);

    let mp = stomp(ds.univariate()?, None, &ProfileParams::new(60))?;
    let res = fluss(&mp, 2, DEFAULT_EXCLUSION_FACTOR)?;
    println!("minimum corrected arc count {:.3} at {}", res.min_value, res.min_index);
    println!("boundaries: {:?}", res.segments);
    let total: usize = res.arc_counts.iter().sum();
    println!("{} arcs, {total} crossings summed over all positions", mp.len());
    Ok(())
}
