use std::thread;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{centered, partition, Accumulator, Algorithm, JoinKind, MatrixProfile, ProfileMeta, ProfileParams};
use crate::distance::{exclude, zone_size, Mass};
use crate::fft::DotScratch;
use crate::series::check_window;
use crate::stats::RollingStats;
use crate::{Result, TimeSeries};

/// STAMP: MASS distance profiles of query windows taken in a seeded random
/// order, merged by element-wise minimum.
///
/// Stopping after `s_size` profiles yields an upper bound of the exact
/// profile with `coverage = s_size / profile_len`. Workers take contiguous
/// slices of the visiting order and their partial results are folded in
/// slice order, which reproduces the single-worker tie-breaking exactly.
pub fn stamp(a: &TimeSeries, b: Option<&TimeSeries>, params: &ProfileParams) -> Result<MatrixProfile> {
    params.validate()?;
    let w = params.window;
    check_window(w, a.len())?;
    if let Some(b) = b {
        check_window(w, b.len())?;
    }
    let self_join = b.is_none();
    let zone = if self_join { zone_size(w, params.exclusion_zone)? } else { 0 };

    let ac = centered(a.values());
    let bc_owned = b.map(|b| centered(b.values()));
    let bc: &[f64] = bc_owned.as_deref().unwrap_or(&ac);
    let mass = Mass::new(&ac, w)?;
    let stats_b_owned = match &bc_owned {
        Some(bc) => Some(RollingStats::new(bc, w)?),
        None => None,
    };
    let stats_b = stats_b_owned.as_ref().unwrap_or(mass.stats());
    let la = mass.stats().len();
    let lb = stats_b.len();

    let mut order: Vec<usize> = (0..lb).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(params.seed));
    let take = params.s_size.map_or(lb, |s| s.min(lb));
    let order = &order[..take];

    let run = |queries: &[usize]| -> Result<Accumulator> {
        let mut acc = Accumulator::new(la);
        let mut scratch = DotScratch::default();
        let mut dp = Vec::with_capacity(la);
        for (n, &q) in queries.iter().enumerate() {
            mass.sq_profile_into(&bc[q..q + w], stats_b.means[q], stats_b.stds[q], &mut scratch, &mut dp)?;
            if self_join {
                exclude(&mut dp, q, zone);
            }
            for (t, &d) in dp.iter().enumerate() {
                acc.offer(t, q, d);
            }
            if (n + 1) % 256 == 0 || n + 1 == queries.len() {
                params.report(if (n + 1) % 256 == 0 { 256 } else { (n + 1) % 256 }, take);
            }
        }
        Ok(acc)
    };

    let slices = partition(take, params.n_workers);
    let mut parts: Vec<Accumulator> = if slices.len() <= 1 {
        vec![run(order)?]
    } else {
        thread::scope(|s| {
            let handles: Vec<_> = slices
                .iter()
                .map(|r| {
                    let run = &run;
                    let q = &order[r.clone()];
                    s.spawn(move || run(q))
                })
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("stamp worker panicked"))
                .collect::<Result<Vec<_>>>()
        })?
    };

    let mut acc = if parts.is_empty() { Accumulator::new(la) } else { parts.remove(0) };
    for p in &parts {
        acc.absorb(p);
    }
    let full = take == lb;
    Ok(acc.finish(
        ProfileMeta {
            window: w,
            exclusion_zone: zone,
            algorithm: Algorithm::Stamp,
            join: if self_join { JoinKind::SelfJoin } else { JoinKind::AbJoin },
            coverage: take as f64 / lb as f64,
            seed: Some(params.seed),
        },
        self_join && full,
    ))
}
