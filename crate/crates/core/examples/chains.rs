//! Time series chains: a pattern that drifts a little with each repeat.

use mprofile::discovery::find_chains;
use mprofile::io::{gen_planted, Planted};
use mprofile::profile::{stomp, ProfileParams};

fn main() -> mprofile::Result<()> {
    let w = 50;
    let ds = gen_planted(&Planted::chain(1_200, w, 6, 0.15), 600)?;
    println!("planted at {:?}", ds.ground_truth.as_ref().unwrap().positions);

    let mp = stomp(ds.univariate()?, None, &ProfileParams::new(w))?;
    let set = find_chains(&mp)?;
    println!("{} chains of length >= 3", set.count());
    println!("best chain ({}): {:?}", set.best.len(), set.best);
    Ok(())
}
