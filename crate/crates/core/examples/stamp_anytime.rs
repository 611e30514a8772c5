//! STAMP stopped early: the partial profile is an upper bound that tightens
//! as more distance profiles are merged.

use mprofile::io::random_walk;
use mprofile::profile::{stamp, stomp, ProfileParams};

fn main() -> mprofile::Result<()> {
    let ts = random_walk(4_000, 2)?;
    let exact = stomp(&ts, None, &ProfileParams::new(64))?;

    for s in [10, 50, 200, 1000] {
        let partial = stamp(&ts, None, &ProfileParams::new(64).s_size(s).seed(7))?;
        let gap: f64 = partial
            .values
            .iter()
            .zip(&exact.values)
            .map(|(p, e)| if p.is_finite() { p - e } else { 0.0 })
            .sum::<f64>()
            / exact.len() as f64;
        let found = partial.values.iter().filter(|v| v.is_finite()).count();
        println!(
            "s = {s:>4}: coverage {:.3}, {found} finite entries, mean gap to exact {gap:.4}",
            partial.coverage
        );
    }
    Ok(())
}
