//! SiMPle: multivariate join on raw (not z-normalized) distances.

use mprofile::io::random_walk;
use mprofile::profile::{simple, ProfileParams};
use mprofile::MultiTimeSeries;

fn main() -> mprofile::Result<()> {
    let x = random_walk(3_000, 10)?;
    let y = random_walk(3_000, 11)?;
    let song = MultiTimeSeries::new(vec![x, y])?;

    let mp = simple(&song, None, &ProfileParams::new(120))?;
    let (i, d) = mp.argmin().unwrap();
    println!("self-join: best repeat {i} -> {} at raw distance {d:.2}", mp.index[i].unwrap());

    let chorus = MultiTimeSeries::from_columns(
        song.dims().iter().map(|s| s.values()[1_000..1_400].to_vec()).collect(),
    )?;
    let ab = simple(&chorus, Some(&song), &ProfileParams::new(120))?;
    println!("excerpt window 0 found at {} (distance {:.2e})", ab.index[0].unwrap(), ab.values[0]);
    Ok(())
}
