use std::ops::Range;
use std::thread;

use super::{centered, partition, MultiMatrixProfile, ProfileParams, REFRESH_ROWS};
use crate::distance::{znorm_sq, zone_size};
use crate::fft::{DotScratch, SlidingDot};
use crate::stats::RollingStats;
use crate::{Error, MultiTimeSeries, Result};

struct Dim {
    x: Vec<f64>,
    stats: RollingStats,
    first_col: Vec<f64>,
    dot: SlidingDot,
}

/// Per-column result: best value, neighbor and (row 0 only) ranking.
#[derive(Clone)]
struct Column {
    values: Vec<f64>,
    index: Vec<Option<usize>>,
    order: Vec<usize>,
}

/// mSTOMP: the k-dimensional matrix profiles of a multivariate self-join for
/// every k at once.
///
/// For each pair of windows the per-dimension z-normalized distances are
/// ranked (forced dimensions first, excluded dimensions dropped, the rest
/// ascending), and row `k` of the result takes the mean of the first `k + 1`
/// ranked distances, minimized over neighbors. When dimensions are
/// excluded, rows past the number of admissible dimensions repeat the last
/// admissible row.
pub fn mstomp(
    mts: &MultiTimeSeries,
    params: &ProfileParams,
    must_dims: &[usize],
    exc_dims: &[usize],
) -> Result<MultiMatrixProfile> {
    params.validate()?;
    let w = params.window;
    let d = mts.n_dims();
    let l = mts.profile_len(w)?;
    let (must, exc) = check_dims(d, must_dims, exc_dims)?;
    let admissible: Vec<usize> = (0..d).filter(|k| !exc.contains(k)).collect();
    let zone = zone_size(w, params.exclusion_zone)?;

    let dims = mts
        .dims()
        .iter()
        .map(|ts| {
            let x = centered(ts.values());
            let stats = RollingStats::new(&x, w)?;
            let dot = SlidingDot::new(&x);
            let first_col = dot.dot(&x[..w])?;
            Ok(Dim { x, stats, first_col, dot })
        })
        .collect::<Result<Vec<_>>>()?;

    let fresh = Column {
        values: vec![f64::INFINITY; d],
        index: vec![None; d],
        order: (0..d).collect(),
    };
    let mut cols = vec![fresh; l];

    let blocks = l.div_ceil(REFRESH_ROWS);
    let ranges: Vec<Range<usize>> = partition(blocks, params.n_workers)
        .into_iter()
        .map(|r| r.start * REFRESH_ROWS..(r.end * REFRESH_ROWS).min(l))
        .collect();

    let job = Job {
        dims: &dims,
        admissible: &admissible,
        must: &must,
        exc: &exc,
        w,
        zone,
        l,
    };
    let job = &job;
    if ranges.len() <= 1 {
        for r in &ranges {
            job.run(r.clone(), &mut cols[r.clone()], params)?;
        }
    } else {
        let mut rest = &mut cols[..];
        let mut chunks = Vec::new();
        for r in &ranges {
            let (head, tail) = rest.split_at_mut(r.len());
            chunks.push((r.clone(), head));
            rest = tail;
        }
        thread::scope(|s| {
            let handles: Vec<_> = chunks
                .into_iter()
                .map(|(r, out)| s.spawn(move || job.run(r, out, params)))
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("mstomp worker panicked"))
                .collect::<Result<Vec<_>>>()
        })?;
    }

    let last = admissible.len() - 1;
    let mut values = vec![Vec::with_capacity(l); d];
    let mut index = vec![Vec::with_capacity(l); d];
    let mut dim_order = vec![Vec::with_capacity(l); d];
    for col in &cols {
        for r in 0..d {
            let src = r.min(last);
            values[r].push(col.values[src]);
            index[r].push(col.index[src]);
            dim_order[r].push(col.order[r]);
        }
    }
    Ok(MultiMatrixProfile {
        values,
        index,
        dim_order,
        window: w,
        exclusion_zone: zone,
        must_dims: must,
        exc_dims: exc,
    })
}

fn check_dims(d: usize, must: &[usize], exc: &[usize]) -> Result<(Vec<usize>, Vec<usize>)> {
    let norm = |v: &[usize], what: &str| -> Result<Vec<usize>> {
        let mut v = v.to_vec();
        v.sort_unstable();
        v.dedup();
        if let Some(bad) = v.iter().find(|&&k| k >= d) {
            return Err(Error::param(format!("{what} dimension {bad} out of range (series has {d})")));
        }
        Ok(v)
    };
    let must = norm(must, "must")?;
    let exc = norm(exc, "excluded")?;
    if let Some(k) = must.iter().find(|k| exc.contains(k)) {
        return Err(Error::param(format!("dimension {k} is both forced and excluded")));
    }
    if exc.len() == d {
        return Err(Error::param("every dimension is excluded"));
    }
    Ok((must, exc))
}

struct Job<'a> {
    dims: &'a [Dim],
    admissible: &'a [usize],
    must: &'a [usize],
    exc: &'a [usize],
    w: usize,
    zone: usize,
    l: usize,
}

impl Job<'_> {
    fn run(&self, rows: Range<usize>, out: &mut [Column], params: &ProfileParams) -> Result<()> {
        let w = self.w;
        let wf = w as f64;
        let l = self.l;
        let d = self.dims.len();
        let mut scratch = DotScratch::default();
        let mut qts: Vec<Vec<f64>> = vec![Vec::with_capacity(l); d];
        let mut next = vec![0.0; l];
        // (forced?, distance, dimension); forced sorts first
        let mut ranked: Vec<(bool, f64, usize)> = Vec::with_capacity(d);

        let start = rows.start;
        for i in rows {
            for &k in self.admissible {
                let dim = &self.dims[k];
                let qt = &mut qts[k];
                if i % REFRESH_ROWS == 0 {
                    dim.dot.dot_into(&dim.x[i..i + w], &mut scratch, qt)?;
                } else {
                    let x = &dim.x;
                    let (x_old, x_new) = (x[i - 1], x[i + w - 1]);
                    next[0] = dim.first_col[i];
                    for j in 1..l {
                        next[j] = qt[j - 1] - x_old * x[j - 1] + x_new * x[j + w - 1];
                    }
                    std::mem::swap(qt, &mut next);
                }
            }

            let col = &mut out[i - start];
            for j in (0..l).filter(|j| j.abs_diff(i) > self.zone) {
                ranked.clear();
                for &k in self.admissible {
                    let s = &self.dims[k].stats;
                    let inv = s.inv_stds();
                    let dist = znorm_sq(qts[k][j], wf, s.means[i], inv[i], s.means[j], inv[j]).sqrt();
                    ranked.push((self.must.contains(&k), dist, k));
                }
                ranked.sort_unstable_by(|a, b| b.0.cmp(&a.0).then(a.1.total_cmp(&b.1)).then(a.2.cmp(&b.2)));

                let mut sum = 0.0;
                for (r, &(_, dist, _)) in ranked.iter().enumerate() {
                    sum += dist;
                    let mean = sum / (r + 1) as f64;
                    if mean < col.values[r] {
                        col.values[r] = mean;
                        col.index[r] = Some(j);
                        if r == 0 {
                            for (slot, &(_, _, k)) in col.order.iter_mut().zip(ranked.iter()) {
                                *slot = k;
                            }
                            for (slot, &k) in col.order[ranked.len()..].iter_mut().zip(self.exc) {
                                *slot = k;
                            }
                        }
                    }
                }
            }
            if (i + 1) % REFRESH_ROWS == 0 || i + 1 == l {
                params.report(i % REFRESH_ROWS + 1, l);
            }
        }
        Ok(())
    }
}
