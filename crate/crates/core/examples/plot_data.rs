//! Plot tables and an SVG for a segmented series.

use mprofile::discovery::fluss;
use mprofile::io::{gen_planted, Planted, ProfileArchive};
use mprofile::plot::{write_plot, PlotKind};
use mprofile::profile::{stomp, ProfileParams};

fn main() -> mprofile::Result<()> {
    let ds = gen_planted(&Planted::regime_change(3_000, 0.5), 3)?;
    let mp = stomp(ds.univariate()?, None, &ProfileParams::new(50))?;
    let mut archive = ProfileArchive::from_profile(&mp, &ds.series, None, true);
    archive.results.fluss = Some(fluss(&mp, 1, 5.0)?);

    let prefix = std::env::temp_dir().join("mprofile-plot-example");
    let files = write_plot(&archive, PlotKind::Segment, &prefix)?;
    for t in &files.tables {
        println!("table {}", t.display());
    }
    println!("figure {}", files.svg.display());
    Ok(())
}
