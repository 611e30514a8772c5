//! mSTOMP on a three-dimensional series whose motif lives in two of the
//! dimensions.

use mprofile::discovery::{find_motif_multi, MotifParams};
use mprofile::io::{gen_planted, Planted};
use mprofile::profile::{mstomp, ProfileParams};

fn main() -> mprofile::Result<()> {
    let w = 50;
    let ds = gen_planted(&Planted::multi_motif(1_500, 3, vec![0, 2], w), 9)?;
    let truth = ds.ground_truth.as_ref().unwrap();
    println!("planted at {:?} in dimensions {:?}", truth.positions, truth.dims);

    let mmp = mstomp(&ds.series, &ProfileParams::new(w), &[], &[])?;
    for k in 0..mmp.n_dims() {
        let min = mmp.values[k].iter().cloned().fold(f64::INFINITY, f64::min);
        println!("{}-dimensional profile: minimum {min:.3}", k + 1);
    }

    let set = find_motif_multi(&mmp, &ds.series, 1, &MotifParams::new(1, 2.0, Default::default()))?;
    let m = &set.motifs[0];
    println!("2-d motif: {} and {} in dimensions {:?}", m.anchor, m.pair, m.dims.as_ref().unwrap());

    let forced = mstomp(&ds.series, &ProfileParams::new(w), &[1], &[])?;
    println!("with dimension 1 forced, row 0 uses {:?}", forced.dims_at(0, m.anchor));
    Ok(())
}
