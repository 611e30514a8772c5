//! CSV in, archive out: compute once, add discovery results, reload and
//! print the summary.

use mprofile::discovery::{find_chains, find_discord, find_motif, fluss, MotifParams};
use mprofile::io::{
    gen_planted, read_profile, read_series, write_profile, write_series, Format, Planted, ProfileArchive, ReadOptions,
};
use mprofile::profile::{stomp, ProfileParams};
use mprofile::report::summary;

fn main() -> mprofile::Result<()> {
    let dir = std::env::temp_dir().join("mprofile-archive-example");
    std::fs::create_dir_all(&dir).map_err(|e| mprofile::Error::Io { path: dir.clone(), source: e })?;
    let csv = dir.join("series.csv");
    let json = dir.join("series.mp.json");

    let ds = gen_planted(&Planted::motif(2_000, 60, 2), 1)?;
    write_series(&csv, &ds.series, Format::Csv, false)?;

    let data = read_series(&csv, &ReadOptions::for_path(&csv))?.series;
    let mp = stomp(data.dim(0), None, &ProfileParams::new(60))?;
    let mut archive = ProfileArchive::from_profile(&mp, &data, None, true);
    archive.results.motif = Some(find_motif(&mp, &data, &MotifParams::default())?);
    archive.results.discord = Some(find_discord(&mp, 2, None)?);
    archive.results.fluss = Some(fluss(&mp, 2, 5.0)?);
    archive.results.chain = Some(find_chains(&mp)?);
    write_profile(&archive, &json)?;

    let back = read_profile(&json)?;
    assert_eq!(back, archive);
    print!("{}", summary(&back));
    println!("\nwritten to {}", json.display());
    Ok(())
}
