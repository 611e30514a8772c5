use std::ops::Range;
use std::thread;

use super::{centered, partition, Algorithm, JoinKind, MatrixProfile, ProfileParams, REFRESH_ROWS};
use crate::distance::{znorm_sq, zone_size};
use crate::fft::{DotScratch, SlidingDot};
use crate::series::check_window;
use crate::stats::RollingStats;
use crate::{Result, TimeSeries};

struct Context<'a> {
    a: &'a [f64],
    b: &'a [f64],
    stats_a: &'a RollingStats,
    stats_b: &'a RollingStats,
    first_col: &'a [f64],
    dot_b: &'a SlidingDot,
    w: usize,
    /// `Some(zone)` for self-joins.
    zone: Option<usize>,
}

struct Rows<'a> {
    best: &'a mut [f64],
    best_idx: &'a mut [Option<usize>],
    left_idx: &'a mut [Option<usize>],
    right_idx: &'a mut [Option<usize>],
}

/// STOMP: every row of the distance matrix in order, each row's dot
/// products derived from the previous row in O(1) per cell.
///
/// Row `i` of the dot-product matrix follows from row `i - 1` by
/// `QT[i][j] = QT[i-1][j-1] - a[i-1]·b[j-1] + a[i+w-1]·b[j+w-1]`, with column
/// 0 taken from one FFT sliding product. A fresh FFT row is computed every
/// 1024 rows to stop rounding from accumulating; those block boundaries are
/// also where work is split between workers, so the output is bit-identical
/// for any `n_workers`.
pub fn stomp(a: &TimeSeries, b: Option<&TimeSeries>, params: &ProfileParams) -> Result<MatrixProfile> {
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
    let stats_a = RollingStats::new(&ac, w)?;
    let stats_b_owned = match &bc_owned {
        Some(bc) => Some(RollingStats::new(bc, w)?),
        None => None,
    };
    let stats_b = stats_b_owned.as_ref().unwrap_or(&stats_a);
    let la = stats_a.len();

    let first_col = SlidingDot::new(&ac).dot(&bc[..w])?;
    let dot_b = SlidingDot::new(bc);
    let ctx = Context {
        a: &ac,
        b: bc,
        stats_a: &stats_a,
        stats_b,
        first_col: &first_col,
        dot_b: &dot_b,
        w,
        zone: self_join.then_some(zone),
    };

    let mut best = vec![f64::INFINITY; la];
    let mut best_idx = vec![None; la];
    let mut left_idx = vec![None; la];
    let mut right_idx = vec![None; la];

    let blocks = la.div_ceil(REFRESH_ROWS);
    let ranges: Vec<Range<usize>> = partition(blocks, params.n_workers)
        .into_iter()
        .map(|r| r.start * REFRESH_ROWS..(r.end * REFRESH_ROWS).min(la))
        .collect();

    let mut chunks = Vec::with_capacity(ranges.len());
    {
        let (mut b, mut bi, mut l, mut r) = (&mut best[..], &mut best_idx[..], &mut left_idx[..], &mut right_idx[..]);
        for range in &ranges {
            let n = range.len();
            let (b0, b1) = b.split_at_mut(n);
            let (bi0, bi1) = bi.split_at_mut(n);
            let (l0, l1) = l.split_at_mut(n);
            let (r0, r1) = r.split_at_mut(n);
            chunks.push((
                range.clone(),
                Rows {
                    best: b0,
                    best_idx: bi0,
                    left_idx: l0,
                    right_idx: r0,
                },
            ));
            (b, bi, l, r) = (b1, bi1, l1, r1);
        }
    }

    let ctx = &ctx;
    if chunks.len() <= 1 {
        for (range, rows) in chunks {
            compute_rows(ctx, range, rows, params)?;
        }
    } else {
        thread::scope(|s| {
            let handles: Vec<_> = chunks
                .into_iter()
                .map(|(range, rows)| s.spawn(move || compute_rows(ctx, range, rows, params)))
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("stomp worker panicked"))
                .collect::<Result<Vec<_>>>()
        })?;
    }

    Ok(MatrixProfile {
        values: best.into_iter().map(f64::sqrt).collect(),
        index: best_idx,
        left_index: self_join.then_some(left_idx),
        right_index: self_join.then_some(right_idx),
        window: w,
        exclusion_zone: zone,
        algorithm: Algorithm::Stomp,
        join: if self_join { JoinKind::SelfJoin } else { JoinKind::AbJoin },
        coverage: 1.0,
        seed: None,
    })
}

fn compute_rows(ctx: &Context<'_>, rows: Range<usize>, out: Rows<'_>, params: &ProfileParams) -> Result<()> {
    let w = ctx.w;
    let wf = w as f64;
    let lb = ctx.stats_b.len();
    let (a, b) = (ctx.a, ctx.b);
    let mb = &ctx.stats_b.means;
    let ib = ctx.stats_b.inv_stds();
    let mut scratch = DotScratch::default();
    let mut qt = Vec::with_capacity(lb);
    let mut next = vec![0.0; lb];
    let total = ctx.stats_a.len();

    let seg_min = |qt: &[f64], range: Range<usize>, mu: f64, inv: f64| -> (f64, Option<usize>) {
        let mut best = f64::INFINITY;
        let mut at = None;
        for j in range {
            let d = znorm_sq(qt[j], wf, mu, inv, mb[j], ib[j]);
            if d < best {
                best = d;
                at = Some(j);
            }
        }
        (best, at)
    };

    let start = rows.start;
    for i in rows {
        if i % REFRESH_ROWS == 0 {
            ctx.dot_b.dot_into(&a[i..i + w], &mut scratch, &mut qt)?;
        } else {
            let (x_old, x_new) = (a[i - 1], a[i + w - 1]);
            next[0] = ctx.first_col[i];
            for j in 1..lb {
                next[j] = qt[j - 1] - x_old * b[j - 1] + x_new * b[j + w - 1];
            }
            std::mem::swap(&mut qt, &mut next);
        }

        let mu = ctx.stats_a.means[i];
        let inv = ctx.stats_a.inv_stds()[i];
        let k = i - start;
        match ctx.zone {
            Some(zone) => {
                let (lv, lj) = seg_min(&qt, 0..i.saturating_sub(zone), mu, inv);
                let (rv, rj) = seg_min(&qt, (i + zone + 1).min(lb)..lb, mu, inv);
                out.left_idx[k] = lj;
                out.right_idx[k] = rj;
                (out.best[k], out.best_idx[k]) = if rv < lv { (rv, rj) } else { (lv, lj) };
            }
            None => {
                (out.best[k], out.best_idx[k]) = seg_min(&qt, 0..lb, mu, inv);
            }
        }
        if (i + 1) % REFRESH_ROWS == 0 || i + 1 == total {
            params.report(i % REFRESH_ROWS + 1, total);
        }
    }
    Ok(())
}
