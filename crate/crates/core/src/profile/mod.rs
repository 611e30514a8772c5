//! Matrix profile algorithms and their common result types.

use std::fmt;
use std::ops::Range;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::distance::DistanceProfile;
use crate::{Error, MultiTimeSeries, Result, TimeSeries};

mod brute;
mod mstomp;
mod scrimp;
mod simple;
mod stamp;
mod stomp;

pub use brute::brute_force_mp;
pub use mstomp::mstomp;
pub use scrimp::scrimp;
pub use simple::simple;
pub use stamp::stamp;
pub use stomp::stomp;

/// Name of the seeded generator behind STAMP's query order and SCRIMP's
/// diagonal order.
pub const RNG_NAME: &str = "chacha8";

pub const DEFAULT_SEED: u64 = 2018;

/// Rows between fresh FFT dot-product rows in the ordered algorithms. Work is
/// split between workers on these boundaries, so results do not depend on
/// the worker count.
pub(crate) const REFRESH_ROWS: usize = 1024;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Stomp,
    Stamp,
    Simple,
    Mstomp,
    Scrimp,
    #[serde(rename = "brute_force")]
    BruteForce,
}

impl Algorithm {
    pub const ALL: [Algorithm; 5] = [
        Algorithm::Stomp,
        Algorithm::Stamp,
        Algorithm::Simple,
        Algorithm::Mstomp,
        Algorithm::Scrimp,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Stomp => "stomp",
            Algorithm::Stamp => "stamp",
            Algorithm::Simple => "simple",
            Algorithm::Mstomp => "mstomp",
            Algorithm::Scrimp => "scrimp",
            Algorithm::BruteForce => "brute_force",
        }
    }

    /// Whether the algorithm can stop early and still return a valid
    /// upper-bound profile.
    pub fn is_anytime(self) -> bool {
        matches!(self, Algorithm::Stamp | Algorithm::Scrimp)
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "stomp" => Ok(Algorithm::Stomp),
            "stamp" => Ok(Algorithm::Stamp),
            "simple" => Ok(Algorithm::Simple),
            "mstomp" => Ok(Algorithm::Mstomp),
            "scrimp" => Ok(Algorithm::Scrimp),
            "brute_force" | "brute" => Ok(Algorithm::BruteForce),
            other => Err(Error::param(format!(
                "unknown mode '{other}' (expected stomp, stamp, simple, mstomp or scrimp)"
            ))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum JoinKind {
    #[serde(rename = "self")]
    SelfJoin,
    #[serde(rename = "ab")]
    AbJoin,
}

/// Progress callback: receives `(units_completed_now, units_total)`. It may
/// be called from several worker threads.
#[derive(Clone)]
pub struct Progress(pub Arc<dyn Fn(usize, usize) + Send + Sync>);

impl Progress {
    pub fn new(f: impl Fn(usize, usize) + Send + Sync + 'static) -> Self {
        Progress(Arc::new(f))
    }
}

impl fmt::Debug for Progress {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("Progress(..)")
    }
}

/// Parameters shared by the profile algorithms.
#[derive(Clone, Debug)]
pub struct ProfileParams {
    pub window: usize,
    /// Exclusion zone as a fraction of the window (self-joins only).
    pub exclusion_zone: f64,
    /// Number of distance profiles (STAMP) or diagonals (SCRIMP) to compute
    /// before stopping; `None` runs to completion.
    pub s_size: Option<usize>,
    pub n_workers: usize,
    pub seed: u64,
    /// SCRIMP pre-pass sampling step as a fraction of the window; 0 disables
    /// the pre-pass.
    pub pre_scrimp: f64,
    pub progress: Option<Progress>,
}

impl ProfileParams {
    pub fn new(window: usize) -> Self {
        ProfileParams {
            window,
            exclusion_zone: 0.5,
            s_size: None,
            n_workers: 1,
            seed: DEFAULT_SEED,
            pre_scrimp: 0.25,
            progress: None,
        }
    }

    pub fn exclusion_zone(mut self, fraction: f64) -> Self {
        self.exclusion_zone = fraction;
        self
    }

    pub fn s_size(mut self, s_size: usize) -> Self {
        self.s_size = Some(s_size);
        self
    }

    pub fn workers(mut self, n_workers: usize) -> Self {
        self.n_workers = n_workers;
        self
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn pre_scrimp(mut self, fraction: f64) -> Self {
        self.pre_scrimp = fraction;
        self
    }

    pub fn progress(mut self, progress: Progress) -> Self {
        self.progress = Some(progress);
        self
    }

    pub(crate) fn validate(&self) -> Result<()> {
        if self.n_workers == 0 {
            return Err(Error::param("n_workers must be at least 1"));
        }
        if self.s_size == Some(0) {
            return Err(Error::param("s_size must be at least 1"));
        }
        if !(self.pre_scrimp.is_finite() && self.pre_scrimp >= 0.0) {
            return Err(Error::param("pre_scrimp must be a non-negative number"));
        }
        crate::distance::zone_size(self.window, self.exclusion_zone)?;
        Ok(())
    }

    pub(crate) fn report(&self, done: usize, total: usize) {
        if let Some(p) = &self.progress {
            (p.0)(done, total);
        }
    }
}

/// A matrix profile and its companion indexes.
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixProfile {
    /// Distance to the nearest neighbor of every window (`+inf` if none was
    /// found).
    pub values: Vec<f64>,
    /// Position of that neighbor in the reference series.
    pub index: Vec<Option<usize>>,
    /// Nearest neighbor restricted to earlier positions; self-joins at full
    /// coverage only.
    pub left_index: Option<Vec<Option<usize>>>,
    /// Nearest neighbor restricted to later positions.
    pub right_index: Option<Vec<Option<usize>>>,
    pub window: usize,
    /// Resolved exclusion-zone half-width (0 for AB-joins).
    pub exclusion_zone: usize,
    pub algorithm: Algorithm,
    pub join: JoinKind,
    /// Fraction of the work units (profiles or diagonals) merged.
    pub coverage: f64,
    /// Seed of the randomized visiting order, for the anytime algorithms.
    pub seed: Option<u64>,
}

impl MatrixProfile {
    /// An all-`+inf` profile of `len` entries.
    pub fn empty(len: usize, window: usize, exclusion_zone: usize, algorithm: Algorithm, join: JoinKind) -> Self {
        MatrixProfile {
            values: vec![f64::INFINITY; len],
            index: vec![None; len],
            left_index: None,
            right_index: None,
            window,
            exclusion_zone,
            algorithm,
            join,
            coverage: 0.0,
            seed: None,
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn is_full_coverage(&self) -> bool {
        self.coverage >= 1.0
    }

    pub fn is_self_join(&self) -> bool {
        self.join == JoinKind::SelfJoin
    }

    /// Position and value of the smallest finite entry (first on ties).
    pub fn argmin(&self) -> Option<(usize, f64)> {
        arg_best(&self.values, |a, b| a < b)
    }

    /// Position and value of the largest finite entry (first on ties).
    pub fn argmax(&self) -> Option<(usize, f64)> {
        arg_best(&self.values, |a, b| a > b)
    }

    /// Element-wise minimum merge of a distance profile computed for query
    /// `source`. The index changes only on strict improvement, so the first
    /// writer keeps ties.
    pub fn merge_min(&mut self, dp: &DistanceProfile, source: usize) -> Result<()> {
        if dp.len() != self.len() {
            return Err(Error::param(format!(
                "distance profile has {} entries, profile has {}",
                dp.len(),
                self.len()
            )));
        }
        for ((v, idx), &d) in self.values.iter_mut().zip(&mut self.index).zip(&dp.distances) {
            if d < *v {
                *v = d;
                *idx = Some(source);
            }
        }
        Ok(())
    }

    pub(crate) fn require_full_coverage(&self, what: &str) -> Result<()> {
        if !self.is_full_coverage() {
            return Err(Error::Stale(format!(
                "{what} needs a full-coverage profile, this one covers {:.1}%",
                self.coverage * 100.0
            )));
        }
        Ok(())
    }
}

fn arg_best(values: &[f64], better: impl Fn(f64, f64) -> bool) -> Option<(usize, f64)> {
    let mut best: Option<(usize, f64)> = None;
    for (i, &v) in values.iter().enumerate() {
        if !v.is_finite() {
            continue;
        }
        match best {
            Some((_, b)) if !better(v, b) => {}
            _ => best = Some((i, v)),
        }
    }
    best
}

/// The stack of k-dimensional profiles of a multivariate self-join.
#[derive(Clone, Debug, PartialEq)]
pub struct MultiMatrixProfile {
    /// Row `k` is the best (k+1)-dimensional profile.
    pub values: Vec<Vec<f64>>,
    pub index: Vec<Vec<Option<usize>>>,
    /// Column `i` lists the dimensions ranked as at the neighbor that
    /// attains row 0: forced dimensions first, then ascending distance, then
    /// excluded dimensions.
    pub dim_order: Vec<Vec<usize>>,
    pub window: usize,
    pub exclusion_zone: usize,
    pub must_dims: Vec<usize>,
    pub exc_dims: Vec<usize>,
}

impl MultiMatrixProfile {
    pub fn n_dims(&self) -> usize {
        self.values.len()
    }

    pub fn len(&self) -> usize {
        self.values.first().map_or(0, Vec::len)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Dimensions used by row `k` at column `i`.
    pub fn dims_at(&self, k: usize, i: usize) -> Vec<usize> {
        let admissible = self.n_dims() - self.exc_dims.len();
        (0..=k.min(admissible.saturating_sub(1))).map(|r| self.dim_order[r][i]).collect()
    }

    /// Row `k` as a standalone profile.
    pub fn row(&self, k: usize) -> MatrixProfile {
        MatrixProfile {
            values: self.values[k].clone(),
            index: self.index[k].clone(),
            left_index: None,
            right_index: None,
            window: self.window,
            exclusion_zone: self.exclusion_zone,
            algorithm: Algorithm::Mstomp,
            join: JoinKind::SelfJoin,
            coverage: 1.0,
            seed: None,
        }
    }
}

/// Output of [`compute`].
#[derive(Clone, Debug, PartialEq)]
pub enum Computed {
    Single(MatrixProfile),
    Multi(MultiMatrixProfile),
}

impl Computed {
    /// The univariate profile, or row 0 of a multi-profile.
    pub fn primary(&self) -> MatrixProfile {
        match self {
            Computed::Single(mp) => mp.clone(),
            Computed::Multi(mmp) => mmp.row(0),
        }
    }
}

/// Runs `algorithm` on `a` (and `b` for AB-joins).
///
/// The univariate algorithms accept a one-dimensional `MultiTimeSeries`;
/// `must_dims`/`exc_dims` apply to mSTOMP only.
pub fn compute(
    algorithm: Algorithm,
    a: &MultiTimeSeries,
    b: Option<&MultiTimeSeries>,
    params: &ProfileParams,
    must_dims: &[usize],
    exc_dims: &[usize],
) -> Result<Computed> {
    if algorithm != Algorithm::Mstomp && !(must_dims.is_empty() && exc_dims.is_empty()) {
        return Err(Error::param("must_dim and exc_dim apply to mstomp only"));
    }
    let uni = |s: &MultiTimeSeries| -> Result<TimeSeries> {
        if s.n_dims() != 1 {
            return Err(Error::param(format!(
                "{algorithm} needs a univariate series, got {} dimensions (use mstomp or simple)",
                s.n_dims()
            )));
        }
        Ok(s.dim(0).clone())
    };
    let out = match algorithm {
        Algorithm::Stomp | Algorithm::Stamp | Algorithm::Scrimp | Algorithm::BruteForce => {
            let ta = uni(a)?;
            let tb = b.map(uni).transpose()?;
            let tb = tb.as_ref();
            let mp = match algorithm {
                Algorithm::Stomp => stomp(&ta, tb, params)?,
                Algorithm::Stamp => stamp(&ta, tb, params)?,
                Algorithm::Scrimp => {
                    if tb.is_some() {
                        return Err(Error::Unsupported("scrimp computes self-joins only".into()));
                    }
                    scrimp(&ta, params)?
                }
                _ => brute_force_mp(&ta, tb, params.window, params.exclusion_zone)?,
            };
            Computed::Single(mp)
        }
        Algorithm::Simple => Computed::Single(simple(a, b, params)?),
        Algorithm::Mstomp => {
            if b.is_some() {
                return Err(Error::Unsupported("mstomp computes self-joins only".into()));
            }
            Computed::Multi(mstomp(a, params, must_dims, exc_dims)?)
        }
    };
    Ok(out)
}

/// Running nearest-neighbor state over squared distances, with left/right
/// tracking. Indexes change only on strict improvement.
#[derive(Clone, Debug)]
pub(crate) struct Accumulator {
    pub best: Vec<f64>,
    pub best_idx: Vec<Option<usize>>,
    pub left: Vec<f64>,
    pub left_idx: Vec<Option<usize>>,
    pub right: Vec<f64>,
    pub right_idx: Vec<Option<usize>>,
}

impl Accumulator {
    pub fn new(len: usize) -> Self {
        Accumulator {
            best: vec![f64::INFINITY; len],
            best_idx: vec![None; len],
            left: vec![f64::INFINITY; len],
            left_idx: vec![None; len],
            right: vec![f64::INFINITY; len],
            right_idx: vec![None; len],
        }
    }

    /// Offers neighbor `source` at squared distance `d` to `target`.
    #[inline(always)]
    pub fn offer(&mut self, target: usize, source: usize, d: f64) {
        if d < self.best[target] {
            self.best[target] = d;
            self.best_idx[target] = Some(source);
        }
        if source < target {
            if d < self.left[target] {
                self.left[target] = d;
                self.left_idx[target] = Some(source);
            }
        } else if source > target && d < self.right[target] {
            self.right[target] = d;
            self.right_idx[target] = Some(source);
        }
    }

    /// Offers the pair `(i, j)`, `i < j`, to both of its members.
    #[inline(always)]
    pub fn offer_pair(&mut self, i: usize, j: usize, d: f64) {
        if d < self.best[i] {
            self.best[i] = d;
            self.best_idx[i] = Some(j);
        }
        if d < self.right[i] {
            self.right[i] = d;
            self.right_idx[i] = Some(j);
        }
        if d < self.best[j] {
            self.best[j] = d;
            self.best_idx[j] = Some(i);
        }
        if d < self.left[j] {
            self.left[j] = d;
            self.left_idx[j] = Some(i);
        }
    }

    /// Folds a later accumulator into this one; ties keep this one's entry.
    pub fn absorb(&mut self, other: &Accumulator) {
        fn fold(v: &mut [f64], i: &mut [Option<usize>], ov: &[f64], oi: &[Option<usize>]) {
            for k in 0..v.len() {
                if ov[k] < v[k] {
                    v[k] = ov[k];
                    i[k] = oi[k];
                }
            }
        }
        fold(&mut self.best, &mut self.best_idx, &other.best, &other.best_idx);
        fold(&mut self.left, &mut self.left_idx, &other.left, &other.left_idx);
        fold(&mut self.right, &mut self.right_idx, &other.right, &other.right_idx);
    }

    /// Converts to a profile, taking square roots of the stored values.
    pub fn finish(self, meta: ProfileMeta, with_left_right: bool) -> MatrixProfile {
        let values = self.best.into_iter().map(f64::sqrt).collect();
        let (left_index, right_index) = if with_left_right {
            (Some(self.left_idx), Some(self.right_idx))
        } else {
            (None, None)
        };
        MatrixProfile {
            values,
            index: self.best_idx,
            left_index,
            right_index,
            window: meta.window,
            exclusion_zone: meta.exclusion_zone,
            algorithm: meta.algorithm,
            join: meta.join,
            coverage: meta.coverage,
            seed: meta.seed,
        }
    }
}

pub(crate) struct ProfileMeta {
    pub window: usize,
    pub exclusion_zone: usize,
    pub algorithm: Algorithm,
    pub join: JoinKind,
    pub coverage: f64,
    pub seed: Option<u64>,
}

/// Splits `0..units` into `workers` contiguous, nearly equal ranges (empty
/// ranges dropped).
pub(crate) fn partition(units: usize, workers: usize) -> Vec<Range<usize>> {
    let workers = workers.max(1);
    (0..workers)
        .map(|k| (k * units / workers)..((k + 1) * units / workers))
        .filter(|r| !r.is_empty())
        .collect()
}

/// Subtracts the series mean; z-normalized distances are shift invariant and
/// dot products of centered data lose less to cancellation.
pub(crate) fn centered(values: &[f64]) -> Vec<f64> {
    let mean = values.iter().sum::<f64>() / values.len() as f64;
    values.iter().map(|x| x - mean).collect()
}
