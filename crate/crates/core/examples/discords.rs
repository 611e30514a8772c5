//! Top discords of a periodic signal with two injected bumps.

use mprofile::discovery::find_discord;
use mprofile::io::{gen_planted, Planted};
use mprofile::profile::{stomp, ProfileParams};

fn main() -> mprofile::Result<()> {
    let ds = gen_planted(&Planted::anomaly(6_000, 120, 2), 8)?;
    println!("bumps at {:?}", ds.ground_truth.as_ref().unwrap().positions);

    let mp = stomp(ds.univariate()?, None, &ProfileParams::new(120))?;
    let set = find_discord(&mp, 3, None)?;
    for d in &set.discords {
        println!("discord at {} (distance {:.3})", d.index, d.distance);
    }
    Ok(())
}
