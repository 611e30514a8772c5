//! Motif pairs and their neighbors in a series with three planted copies.

use mprofile::discovery::{find_motif, MotifParams, ZoneSpec};
use mprofile::io::{gen_planted, Planted};
use mprofile::profile::{stomp, ProfileParams};

fn main() -> mprofile::Result<()> {
    let w = 80;
    let ds = gen_planted(&Planted::motif(5_000, w, 3), 4)?;
    println!("planted at {:?}", ds.ground_truth.as_ref().unwrap().positions);

    let mp = stomp(ds.univariate()?, None, &ProfileParams::new(w))?;
    let params = MotifParams::new(3, 2.0, ZoneSpec::Fraction(0.5));
    let set = find_motif(&mp, &ds.series, &params)?;
    for (k, m) in set.motifs.iter().enumerate() {
        println!(
            "motif {k}: [{}, {}] distance {:.3}, neighbors {:?}",
            m.anchor, m.pair, m.distance, m.neighbors
        );
    }
    if set.exhausted {
        println!("(fewer motifs than requested)");
    }
    Ok(())
}
