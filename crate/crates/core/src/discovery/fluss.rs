use serde::{Deserialize, Serialize};

use super::{argmin_unmasked, mask};
use crate::profile::MatrixProfile;
use crate::{Error, Result};

/// Half-width, in windows, masked around each extracted segment boundary.
pub const DEFAULT_EXCLUSION_FACTOR: f64 = 5.0;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FlussResult {
    pub arc_counts: Vec<usize>,
    /// Corrected arc curve, in `[0, 1]`.
    pub cac: Vec<f64>,
    /// Boundaries by increasing corrected arc count.
    pub segments: Vec<usize>,
    pub min_value: f64,
    pub min_index: usize,
    pub window: usize,
    pub exclusion_factor: f64,
    pub n_requested: usize,
    pub exhausted: bool,
}

/// Number of arcs `(j, index[j])` passing strictly over each position.
pub fn fluss_arc_count(mp: &MatrixProfile) -> Result<Vec<usize>> {
    if !mp.is_self_join() {
        return Err(Error::Unsupported("arc counts need a self-join profile".into()));
    }
    mp.require_full_coverage("segmentation")?;
    let len = mp.len();
    let mut delta = vec![0i64; len + 1];
    for (j, idx) in mp.index.iter().enumerate() {
        let Some(k) = *idx else { continue };
        if k >= len {
            return Err(Error::param(format!("profile index {k} out of range at {j}")));
        }
        let (a, b) = (j.min(k), j.max(k));
        if b > a + 1 {
            delta[a + 1] += 1;
            delta[b] -= 1;
        }
    }
    let mut running = 0i64;
    Ok(delta[..len]
        .iter()
        .map(|d| {
            running += d;
            running as usize
        })
        .collect())
}

/// Arc counts over the idealized count `2i(L − i)/L` of a profile without
/// structure, clamped to 1, with the first and last `w` positions set to 1.
pub fn fluss_cac(arc_counts: &[usize], w: usize) -> Vec<f64> {
    let len = arc_counts.len();
    let l = len as f64;
    arc_counts
        .iter()
        .enumerate()
        .map(|(i, &c)| {
            if i < w || i + w >= len {
                return 1.0;
            }
            let ideal = 2.0 * i as f64 * (l - i as f64) / l;
            if ideal <= 0.0 {
                1.0
            } else {
                (c as f64 / ideal).min(1.0)
            }
        })
        .collect()
}

/// Up to `n_segments` minima of the corrected arc curve, masking
/// `exclusion_factor · w` positions on each side of every pick. Returns the
/// boundaries and whether the curve ran out (remaining minimum of 1) early.
pub fn fluss_extract(cac: &[f64], n_segments: usize, exclusion_factor: f64, w: usize) -> Result<(Vec<usize>, bool)> {
    if n_segments < 1 {
        return Err(Error::param("the number of segments must be at least 1"));
    }
    if !(exclusion_factor.is_finite() && exclusion_factor >= 0.0) {
        return Err(Error::param(format!("invalid exclusion factor {exclusion_factor}")));
    }
    let zone = (exclusion_factor * w as f64).round() as usize;
    let mut masked = vec![false; cac.len()];
    let mut out = Vec::new();
    while out.len() < n_segments {
        match argmin_unmasked(cac, &masked) {
            Some(i) if cac[i] < 1.0 => {
                out.push(i);
                mask(&mut masked, i, zone);
            }
            _ => break,
        }
    }
    let exhausted = out.len() < n_segments;
    Ok((out, exhausted))
}

/// Arc counts, corrected arc curve and `n_segments` boundaries in one pass.
pub fn fluss(mp: &MatrixProfile, n_segments: usize, exclusion_factor: f64) -> Result<FlussResult> {
    let arc_counts = fluss_arc_count(mp)?;
    let cac = fluss_cac(&arc_counts, mp.window);
    let (segments, exhausted) = fluss_extract(&cac, n_segments, exclusion_factor, mp.window)?;
    let min_index = argmin_unmasked(&cac, &vec![false; cac.len()]).unwrap_or(0);
    Ok(FlussResult {
        min_value: cac.get(min_index).copied().unwrap_or(1.0),
        min_index,
        arc_counts,
        cac,
        segments,
        window: mp.window,
        exclusion_factor,
        n_requested: n_segments,
        exhausted,
    })
}
