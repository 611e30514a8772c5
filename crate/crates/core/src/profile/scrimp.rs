use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{centered, Accumulator, Algorithm, JoinKind, MatrixProfile, ProfileMeta, ProfileParams, REFRESH_ROWS};
use crate::distance::{znorm_sq, zone_size};
use crate::fft::{DotScratch, SlidingDot};
use crate::series::check_window;
use crate::stats::RollingStats;
use crate::{Result, TimeSeries};

fn dot(x: &[f64], y: &[f64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

/// SCRIMP: the distance matrix walked one diagonal at a time, in a seeded
/// random diagonal order. Along a diagonal the dot product of consecutive
/// cells differs by one product in and one product out, so each cell costs
/// O(1); it is merged into both rows it belongs to.
///
/// `s_size` bounds the number of diagonals, and `coverage` is the fraction
/// of diagonals walked. Before the diagonals, a pre-pass (disabled by
/// `pre_scrimp = 0`) computes the distance profile of every
/// `round(pre_scrimp · w)`-th window and extends its best match a few cells
/// along the matching diagonal in both directions, which gives early
/// stopping a good starting point. Self-joins only.
pub fn scrimp(a: &TimeSeries, params: &ProfileParams) -> Result<MatrixProfile> {
    params.validate()?;
    let w = params.window;
    check_window(w, a.len())?;
    let zone = zone_size(w, params.exclusion_zone)?;
    let x = centered(a.values());
    let stats = RollingStats::new(&x, w)?;
    let l = stats.len();
    let wf = w as f64;
    let means = &stats.means;
    let invs = stats.inv_stds();
    let cell = |qt: f64, i: usize, j: usize| znorm_sq(qt, wf, means[i], invs[i], means[j], invs[j]);

    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut acc = Accumulator::new(l);

    let step = (wf * params.pre_scrimp).round() as usize;
    if params.pre_scrimp > 0.0 && l > zone + 1 {
        let step = step.max(1);
        let mut samples: Vec<usize> = (0..l).step_by(step).collect();
        samples.shuffle(&mut rng);
        let sliding = SlidingDot::new(&x);
        let mut scratch = DotScratch::default();
        let mut qt = Vec::with_capacity(l);
        for &i in &samples {
            sliding.dot_into(&x[i..i + w], &mut scratch, &mut qt)?;
            let mut nearest: Option<(usize, f64)> = None;
            for (t, &q) in qt.iter().enumerate() {
                if t.abs_diff(i) <= zone {
                    continue;
                }
                let d = cell(q, i, t);
                acc.offer(t, i, d);
                acc.offer(i, t, d);
                if nearest.is_none_or(|(_, b)| d < b) {
                    nearest = Some((t, d));
                }
            }
            let Some((j, _)) = nearest else { continue };

            let mut q = qt[j];
            for s in 1..step {
                let (p, r) = (i + s, j + s);
                if p >= l || r >= l {
                    break;
                }
                q = q - x[p - 1] * x[r - 1] + x[p + w - 1] * x[r + w - 1];
                let d = cell(q, p, r);
                acc.offer_pair(p.min(r), p.max(r), d);
            }
            let mut q = qt[j];
            for s in 1..step {
                if s > i || s > j {
                    break;
                }
                let (p, r) = (i - s, j - s);
                q = q + x[p] * x[r] - x[p + w] * x[r + w];
                let d = cell(q, p, r);
                acc.offer_pair(p.min(r), p.max(r), d);
            }
        }
    }

    let mut diagonals: Vec<usize> = ((zone + 1)..l).collect();
    diagonals.shuffle(&mut rng);
    let total = diagonals.len();
    let take = params.s_size.map_or(total, |s| s.min(total));

    for (n, &k) in diagonals[..take].iter().enumerate() {
        let mut q = dot(&x[..w], &x[k..k + w]);
        for i in 0..l - k {
            let j = i + k;
            if i > 0 {
                if i % REFRESH_ROWS == 0 {
                    q = dot(&x[i..i + w], &x[j..j + w]);
                } else {
                    q = q - x[i - 1] * x[j - 1] + x[i + w - 1] * x[j + w - 1];
                }
            }
            acc.offer_pair(i, j, cell(q, i, j));
        }
        if (n + 1) % 64 == 0 || n + 1 == take {
            params.report(if (n + 1) % 64 == 0 { 64 } else { (n + 1) % 64 }, take);
        }
    }

    let full = take == total;
    Ok(acc.finish(
        ProfileMeta {
            window: w,
            exclusion_zone: zone,
            algorithm: Algorithm::Scrimp,
            join: JoinKind::SelfJoin,
            coverage: if total == 0 { 1.0 } else { take as f64 / total as f64 },
            seed: Some(params.seed),
        },
        full,
    ))
}
