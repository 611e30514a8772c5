//! Self-join of a random walk with STOMP, checked against the brute-force
//! definition on a prefix.

use mprofile::io::random_walk;
use mprofile::profile::{brute_force_mp, stomp, ProfileParams};

fn main() -> mprofile::Result<()> {
    let ts = random_walk(5_000, 1)?;
    let params = ProfileParams::new(100).workers(2);
    let mp = stomp(&ts, None, &params)?;

    let (i, d) = mp.argmin().expect("non-empty profile");
    println!("profile length {}, exclusion zone {}", mp.len(), mp.exclusion_zone);
    println!("closest pair: {i} <-> {} at distance {d:.4}", mp.index[i].unwrap());

    let short = random_walk(600, 1)?;
    let fast = stomp(&short, None, &ProfileParams::new(100))?;
    let slow = brute_force_mp(&short, None, 100, 0.5)?;
    let worst = fast
        .values
        .iter()
        .zip(&slow.values)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    println!("max |stomp - brute force| on 600 points: {worst:.2e}");
    Ok(())
}
