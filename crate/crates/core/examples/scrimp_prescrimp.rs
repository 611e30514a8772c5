//! SCRIMP with its PreSCRIMP pre-pass, stopped after a few diagonals and run
//! to completion.

use mprofile::io::random_walk;
use mprofile::profile::{scrimp, stomp, ProfileParams};

fn main() -> mprofile::Result<()> {
    let ts = random_walk(4_000, 3)?;
    let w = 80;
    let exact = stomp(&ts, None, &ProfileParams::new(w))?;
    let mean = |v: &[f64]| v.iter().filter(|x| x.is_finite()).sum::<f64>() / v.len() as f64;

    for (label, params) in [
        ("no pre-pass, 40 diagonals", ProfileParams::new(w).pre_scrimp(0.0).s_size(40)),
        ("pre-pass,    40 diagonals", ProfileParams::new(w).s_size(40)),
        ("pre-pass,    complete", ProfileParams::new(w)),
    ] {
        let mp = scrimp(&ts, &params)?;
        println!(
            "{label}: coverage {:.3}, mean profile {:.4} (exact {:.4})",
            mp.coverage,
            mean(&mp.values),
            mean(&exact.values)
        );
    }
    Ok(())
}
