use serde::{Deserialize, Serialize};

use super::{argmin_unmasked, mask, ZoneSpec};
use crate::distance::{raw_distance_profile, Mass, WindowNorms};
use crate::fft::DotScratch;
use crate::profile::{centered, Algorithm, MatrixProfile, MultiMatrixProfile};
use crate::{Error, MultiTimeSeries, Result};

pub const DEFAULT_MAX_NEIGHBORS: usize = 10;

/// Options for [`find_motif`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MotifParams {
    pub n_motifs: usize,
    /// Neighbors qualify below `radius` times the pair distance.
    pub radius: f64,
    /// Separation enforced between every reported position.
    pub exclusion_zone: ZoneSpec,
    pub max_neighbors: usize,
}

impl Default for MotifParams {
    fn default() -> Self {
        MotifParams {
            n_motifs: 3,
            radius: 3.0,
            exclusion_zone: ZoneSpec::default(),
            max_neighbors: DEFAULT_MAX_NEIGHBORS,
        }
    }
}

impl MotifParams {
    pub fn new(n_motifs: usize, radius: f64, exclusion_zone: ZoneSpec) -> Self {
        MotifParams {
            n_motifs,
            radius,
            exclusion_zone,
            ..Default::default()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Motif {
    pub anchor: usize,
    pub pair: usize,
    pub distance: f64,
    pub neighbors: Vec<usize>,
    /// Dimensions the motif spans, for multidimensional profiles.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dims: Option<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MotifSet {
    /// Ascending by pair distance.
    pub motifs: Vec<Motif>,
    pub window: usize,
    pub radius: f64,
    pub exclusion_zone: usize,
    pub n_requested: usize,
    /// Fewer motifs than requested could be found.
    pub exhausted: bool,
}

impl MotifSet {
    pub fn len(&self) -> usize {
        self.motifs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.motifs.is_empty()
    }

    /// Every anchor, pair and neighbor position.
    pub fn positions(&self) -> Vec<usize> {
        self.motifs
            .iter()
            .flat_map(|m| [m.anchor, m.pair].into_iter().chain(m.neighbors.iter().copied()))
            .collect()
    }
}

/// Motif pairs and their neighbors.
///
/// Takes the smallest profile value as a pair, then collects up to
/// `max_neighbors` windows whose distance to the anchor is below
/// `radius · pair_distance` (only exact matches when that distance is 0).
/// Every reported position is kept more than the exclusion zone away from
/// every other, and the zone around each is masked before the next pair.
///
/// `data` is the series the profile was computed on. Distances to the anchor
/// are recomputed from it: z-normalized, or raw for SiMPle profiles.
pub fn find_motif(mp: &MatrixProfile, data: &MultiTimeSeries, params: &MotifParams) -> Result<MotifSet> {
    mp.require_full_coverage("motif search")?;
    if !mp.is_self_join() {
        return Err(Error::Unsupported("motif search needs a self-join profile".into()));
    }
    check_data(mp.len(), mp.window, data)?;
    let w = mp.window;
    let profile_of: Box<dyn FnMut(usize) -> Result<Vec<f64>>> = if mp.algorithm == Algorithm::Simple {
        let norms = WindowNorms::new(data, w)?;
        Box::new(move |i| {
            let query: Vec<&[f64]> = data.dims().iter().map(|d| d.window(i, w)).collect();
            Ok(raw_distance_profile(&query, data, &norms)?.distances)
        })
    } else {
        if data.n_dims() != 1 {
            return Err(Error::param(format!(
                "a {} profile needs univariate data, got {} dimensions",
                mp.algorithm,
                data.n_dims()
            )));
        }
        let mut zp = ZProfiles::new(&[data.dim(0).values()], w)?;
        Box::new(move |i| zp.mean_profile(i, &[0]))
    };
    select(&mp.values, &mp.index, w, params, profile_of, |_| None)
}

/// Motifs from row `k` of a multidimensional profile; each spans the `k + 1`
/// dimensions chosen at its anchor, and neighbor distances are averaged over
/// those dimensions.
pub fn find_motif_multi(
    mmp: &MultiMatrixProfile,
    data: &MultiTimeSeries,
    k: usize,
    params: &MotifParams,
) -> Result<MotifSet> {
    if k >= mmp.n_dims() {
        return Err(Error::param(format!("row {k} out of range for {} dimensions", mmp.n_dims())));
    }
    if data.n_dims() != mmp.n_dims() {
        return Err(Error::param(format!(
            "profile has {} dimensions, data has {}",
            mmp.n_dims(),
            data.n_dims()
        )));
    }
    check_data(mmp.len(), mmp.window, data)?;
    let columns: Vec<&[f64]> = data.dims().iter().map(|d| d.values()).collect();
    let mut zp = ZProfiles::new(&columns, mmp.window)?;
    let profile_of = Box::new(move |i| zp.mean_profile(i, &mmp.dims_at(k, i)));
    select(&mmp.values[k], &mmp.index[k], mmp.window, params, profile_of, |i| {
        Some(mmp.dims_at(k, i))
    })
}

fn check_data(profile_len: usize, w: usize, data: &MultiTimeSeries) -> Result<()> {
    if data.len() < w || data.len() - w + 1 != profile_len {
        return Err(Error::param(format!(
            "data of length {} does not match a profile of length {profile_len} with window {w}",
            data.len()
        )));
    }
    Ok(())
}

/// Z-normalized distance profiles over one or more dimensions.
struct ZProfiles {
    columns: Vec<Vec<f64>>,
    mass: Vec<Mass>,
    scratch: DotScratch,
    buf: Vec<f64>,
}

impl ZProfiles {
    fn new(columns: &[&[f64]], w: usize) -> Result<Self> {
        let columns: Vec<Vec<f64>> = columns.iter().map(|c| centered(c)).collect();
        let mass = columns.iter().map(|c| Mass::new(c, w)).collect::<Result<_>>()?;
        Ok(ZProfiles {
            columns,
            mass,
            scratch: DotScratch::default(),
            buf: Vec::new(),
        })
    }

    fn mean_profile(&mut self, i: usize, dims: &[usize]) -> Result<Vec<f64>> {
        let mut acc: Vec<f64> = Vec::new();
        for &k in dims {
            let m = &self.mass[k];
            let w = m.window();
            let (mu, sd) = (m.stats().means[i], m.stats().stds[i]);
            m.profile_into(&self.columns[k][i..i + w], mu, sd, &mut self.scratch, &mut self.buf)?;
            if acc.is_empty() {
                acc = self.buf.clone();
            } else {
                acc.iter_mut().zip(&self.buf).for_each(|(a, b)| *a += b);
            }
        }
        let n = dims.len() as f64;
        acc.iter_mut().for_each(|a| *a /= n);
        Ok(acc)
    }
}

fn select(
    values: &[f64],
    index: &[Option<usize>],
    w: usize,
    params: &MotifParams,
    mut profile_of: Box<dyn FnMut(usize) -> Result<Vec<f64>> + '_>,
    dims_of: impl Fn(usize) -> Option<Vec<usize>>,
) -> Result<MotifSet> {
    if params.n_motifs < 1 {
        return Err(Error::param("n_motifs must be at least 1"));
    }
    if !(params.radius.is_finite() && params.radius >= 0.0) {
        return Err(Error::param(format!("radius must be finite and non-negative, got {}", params.radius)));
    }
    let zone = params.exclusion_zone.resolve(w)?;
    let len = values.len();
    let mut masked = vec![false; len];
    let mut found: Vec<usize> = Vec::new();
    let mut motifs = Vec::new();

    while motifs.len() < params.n_motifs {
        let Some(anchor) = argmin_unmasked(values, &masked) else {
            break;
        };
        let distance = values[anchor];
        let pair = match index[anchor] {
            Some(p) if p < len && !masked[p] && p.abs_diff(anchor) > zone => p,
            // the partner sits inside an earlier motif or too close to the
            // anchor to be reported with this zone
            _ => {
                masked[anchor] = true;
                continue;
            }
        };

        let dp = profile_of(anchor)?;
        let mut local = masked.clone();
        for &p in found.iter().chain([anchor, pair].iter()) {
            mask(&mut local, p, zone);
        }
        let threshold = params.radius * distance;
        let mut candidates: Vec<usize> = (0..len)
            .filter(|&j| !local[j] && dp[j].is_finite() && (dp[j] < threshold || dp[j] == 0.0))
            .collect();
        candidates.sort_by(|&a, &b| dp[a].total_cmp(&dp[b]).then(a.cmp(&b)));
        let mut neighbors = Vec::new();
        for j in candidates {
            if neighbors.len() >= params.max_neighbors {
                break;
            }
            if !local[j] {
                neighbors.push(j);
                mask(&mut local, j, zone);
            }
        }

        for &p in [anchor, pair].iter().chain(&neighbors) {
            mask(&mut masked, p, zone);
            found.push(p);
        }
        motifs.push(Motif {
            anchor,
            pair,
            distance,
            neighbors,
            dims: dims_of(anchor),
        });
    }

    Ok(MotifSet {
        exhausted: motifs.len() < params.n_motifs,
        motifs,
        window: w,
        radius: params.radius,
        exclusion_zone: zone,
        n_requested: params.n_motifs,
    })
}
