//! Distance profiles: z-normalized (MASS) and raw multivariate, plus the
//! exclusion-zone mechanics that suppress trivial matches.

use crate::fft::{DotScratch, SlidingDot};
use crate::stats::{rolling_sq_norms, RollingStats};
use crate::{Error, MultiTimeSeries, Result, TimeSeries};

/// Distances from one query window to every window of a reference series.
/// Excluded positions hold `+inf`.
#[derive(Clone, Debug, PartialEq)]
pub struct DistanceProfile {
    pub distances: Vec<f64>,
    pub query_index: Option<usize>,
}

impl DistanceProfile {
    pub fn len(&self) -> usize {
        self.distances.len()
    }

    pub fn is_empty(&self) -> bool {
        self.distances.is_empty()
    }

    /// Sets every entry with `|i - center| <= zone` to `+inf`.
    pub fn apply_exclusion_zone(&mut self, center: usize, zone: usize) {
        exclude(&mut self.distances, center, zone);
    }
}

pub(crate) fn exclude(values: &mut [f64], center: usize, zone: usize) {
    let lo = center.saturating_sub(zone);
    let hi = center.saturating_add(zone).saturating_add(1).min(values.len());
    if lo < hi {
        values[lo..hi].fill(f64::INFINITY);
    }
}

/// Consuming form of [`DistanceProfile::apply_exclusion_zone`].
pub fn apply_exclusion_zone(mut dp: DistanceProfile, center: usize, zone: usize) -> DistanceProfile {
    dp.apply_exclusion_zone(center, zone);
    dp
}

/// Resolves an exclusion-zone fraction of the window to a half-width in
/// samples, rounding halves up (`50 · 1/4 → 13`).
pub fn zone_size(w: usize, fraction: f64) -> Result<usize> {
    if !(fraction.is_finite() && fraction >= 0.0) {
        return Err(Error::param(format!(
            "exclusion zone fraction must be a non-negative number, got {fraction}"
        )));
    }
    Ok((w as f64 * fraction + 0.5 + 1e-9).floor() as usize)
}

/// Squared z-normalized distance between two windows from their dot
/// product. `inv_a`/`inv_b` are reciprocal standard deviations, zero for
/// flat windows: two flat windows are at distance 0, a flat and a non-flat
/// window at `sqrt(w)`. The value is clamped to `[0, 4w]`.
#[inline(always)]
pub(crate) fn znorm_sq(qt: f64, w: f64, mu_a: f64, inv_a: f64, mu_b: f64, inv_b: f64) -> f64 {
    if inv_a == 0.0 || inv_b == 0.0 {
        return if inv_a == 0.0 && inv_b == 0.0 { 0.0 } else { w };
    }
    let rho = (qt - w * mu_a * mu_b) * inv_a * inv_b / w;
    (2.0 * w * (1.0 - rho)).clamp(0.0, 4.0 * w)
}

pub(crate) fn is_constant(xs: &[f64]) -> bool {
    xs.windows(2).all(|p| p[0] == p[1])
}

/// MASS: z-normalized Euclidean distance from `query` to every window of
/// `ts`, using FFT dot products and the rolling statistics of `ts`.
///
/// `query_std` must be a population standard deviation. A query whose
/// samples are all equal is treated as flat regardless of `query_std`.
pub fn mass_distance_profile(
    query: &[f64],
    ts: &TimeSeries,
    stats: &RollingStats,
    query_mean: f64,
    query_std: f64,
) -> Result<DistanceProfile> {
    let w = query.len();
    if stats.window != w {
        return Err(Error::param(format!(
            "query length {w} does not match the statistics window {}",
            stats.window
        )));
    }
    let mass = Mass::with_stats(ts.values(), stats.clone());
    let mut out = Vec::new();
    mass.profile_into(query, query_mean, query_std, &mut DotScratch::default(), &mut out)?;
    Ok(DistanceProfile {
        distances: out,
        query_index: None,
    })
}

/// A reference series prepared for repeated MASS queries.
pub struct Mass {
    dot: SlidingDot,
    stats: RollingStats,
}

impl Mass {
    pub fn new(values: &[f64], w: usize) -> Result<Self> {
        let stats = RollingStats::new(values, w)?;
        Ok(Mass::with_stats(values, stats))
    }

    pub(crate) fn with_stats(values: &[f64], stats: RollingStats) -> Self {
        Mass {
            dot: SlidingDot::new(values),
            stats,
        }
    }

    pub fn stats(&self) -> &RollingStats {
        &self.stats
    }

    pub fn window(&self) -> usize {
        self.stats.window
    }

    /// Distance profile of `query` into `out`.
    pub fn profile_into(
        &self,
        query: &[f64],
        query_mean: f64,
        query_std: f64,
        scratch: &mut DotScratch,
        out: &mut Vec<f64>,
    ) -> Result<()> {
        self.sq_profile_into(query, query_mean, query_std, scratch, out)?;
        for d in out.iter_mut() {
            *d = d.sqrt();
        }
        Ok(())
    }

    /// Like [`Mass::profile_into`] but leaves squared distances.
    pub(crate) fn sq_profile_into(
        &self,
        query: &[f64],
        query_mean: f64,
        query_std: f64,
        scratch: &mut DotScratch,
        out: &mut Vec<f64>,
    ) -> Result<()> {
        let w = self.window();
        if query.len() != w {
            return Err(Error::param(format!(
                "query length {} does not match window {w}",
                query.len()
            )));
        }
        let inv_q = if is_constant(query) || query_std <= 0.0 {
            0.0
        } else {
            1.0 / query_std
        };
        self.dot.dot_into(query, scratch, out)?;
        let wf = w as f64;
        let means = &self.stats.means;
        let invs = self.stats.inv_stds();
        for (j, d) in out.iter_mut().enumerate() {
            *d = znorm_sq(*d, wf, query_mean, inv_q, means[j], invs[j]);
        }
        Ok(())
    }
}

/// Squared norms of every window, per dimension.
#[derive(Clone, Debug, PartialEq)]
pub struct WindowNorms {
    pub window: usize,
    pub sq_norms: Vec<Vec<f64>>,
}

impl WindowNorms {
    pub fn new(mts: &MultiTimeSeries, w: usize) -> Result<Self> {
        let sq_norms = mts
            .dims()
            .iter()
            .map(|d| rolling_sq_norms(d.values(), w))
            .collect::<Result<Vec<_>>>()?;
        Ok(WindowNorms { window: w, sq_norms })
    }
}

/// Non-normalized Euclidean distance from a multivariate query (one slice
/// per dimension) to every window of `mts`, summed over dimensions before
/// the square root.
pub fn raw_distance_profile(query: &[&[f64]], mts: &MultiTimeSeries, norms: &WindowNorms) -> Result<DistanceProfile> {
    if query.len() != mts.n_dims() || norms.sq_norms.len() != mts.n_dims() {
        return Err(Error::param(format!(
            "query has {} dimensions, series has {}",
            query.len(),
            mts.n_dims()
        )));
    }
    let w = norms.window;
    if query.iter().any(|q| q.len() != w) {
        return Err(Error::param(format!("every query dimension must have length {w}")));
    }
    let len = mts.profile_len(w)?;
    let mut acc = vec![0.0; len];
    for (k, q) in query.iter().enumerate() {
        let qq: f64 = q.iter().map(|x| x * x).sum();
        let qt = SlidingDot::new(mts.dim(k).values()).dot(q)?;
        for ((a, dot), tt) in acc.iter_mut().zip(&qt).zip(&norms.sq_norms[k]) {
            *a += qq + tt - 2.0 * dot;
        }
    }
    Ok(DistanceProfile {
        distances: acc.into_iter().map(|v| v.max(0.0).sqrt()).collect(),
        query_index: None,
    })
}
