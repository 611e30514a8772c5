use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use super::{Dataset, GroundTruth};
use crate::{Error, MultiTimeSeries, Result, TimeSeries};

/// `n` steps of ±1, each with probability 1/2, from a ChaCha8 stream seeded
/// with `seed`.
pub fn random_steps(n: usize, seed: u64) -> Vec<i8> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| if rng.random_bool(0.5) { 1 } else { -1 }).collect()
}

/// Cumulative sum of `steps`.
pub fn walk_from_steps(steps: &[i8]) -> Vec<f64> {
    let mut acc = 0i64;
    steps
        .iter()
        .map(|&s| {
            acc += i64::from(s);
            acc as f64
        })
        .collect()
}

/// A ±1 random walk of length `n`.
pub fn random_walk(n: usize, seed: u64) -> Result<TimeSeries> {
    TimeSeries::new(walk_from_steps(&random_steps(n, seed)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PlantedKind {
    Motif,
    RegimeChange,
    Chain,
    Anomaly,
    MultiMotif,
}

/// Synthetic series with a known structure. `noise` is the standard
/// deviation of the Gaussian noise added on top, relative to a unit pattern.
#[derive(Clone, Debug, PartialEq)]
pub enum Planted {
    /// `copies` noisy copies of one random pattern over a Gaussian random
    /// walk.
    Motif { n: usize, pattern_len: usize, copies: usize, noise: f64 },
    /// A waveform whose period switches at `change_at · n`.
    RegimeChange { n: usize, change_at: f64, noise: f64 },
    /// `repeats` copies of a pattern whose shape moves by `drift` per copy,
    /// over Gaussian noise of unit scale.
    Chain { n: usize, pattern_len: usize, repeats: usize, drift: f64, noise: f64 },
    /// A sine of the given period with `spikes` short bumps added.
    Anomaly { n: usize, period: usize, spikes: usize, noise: f64 },
    /// Independent random walks; `motif_dims` carry two copies of a pattern
    /// at the same positions.
    MultiMotif { n: usize, dims: usize, motif_dims: Vec<usize>, pattern_len: usize, noise: f64 },
}

impl Planted {
    pub fn motif(n: usize, pattern_len: usize, copies: usize) -> Self {
        Planted::Motif { n, pattern_len, copies, noise: 0.05 }
    }

    pub fn regime_change(n: usize, change_at: f64) -> Self {
        Planted::RegimeChange { n, change_at, noise: 0.2 }
    }

    pub fn chain(n: usize, pattern_len: usize, repeats: usize, drift: f64) -> Self {
        Planted::Chain { n, pattern_len, repeats, drift, noise: 0.01 }
    }

    pub fn anomaly(n: usize, period: usize, spikes: usize) -> Self {
        Planted::Anomaly { n, period, spikes, noise: 0.05 }
    }

    pub fn multi_motif(n: usize, dims: usize, motif_dims: Vec<usize>, pattern_len: usize) -> Self {
        Planted::MultiMotif { n, dims, motif_dims, pattern_len, noise: 0.05 }
    }

    pub fn kind(&self) -> PlantedKind {
        match self {
            Planted::Motif { .. } => PlantedKind::Motif,
            Planted::RegimeChange { .. } => PlantedKind::RegimeChange,
            Planted::Chain { .. } => PlantedKind::Chain,
            Planted::Anomaly { .. } => PlantedKind::Anomaly,
            Planted::MultiMotif { .. } => PlantedKind::MultiMotif,
        }
    }

    /// Replaces the noise level.
    pub fn with_noise(mut self, level: f64) -> Self {
        match &mut self {
            Planted::Motif { noise, .. }
            | Planted::RegimeChange { noise, .. }
            | Planted::Chain { noise, .. }
            | Planted::Anomaly { noise, .. }
            | Planted::MultiMotif { noise, .. } => *noise = level,
        }
        self
    }
}

/// Generates `spec` deterministically from `seed`.
pub fn gen_planted(spec: &Planted, seed: u64) -> Result<Dataset> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (columns, truth) = match spec {
        &Planted::Motif { n, pattern_len, copies, noise } => {
            check_noise(noise)?;
            let positions = spread(n, pattern_len, copies, &mut rng)?;
            let mut x = gaussian_walk(n, &mut rng);
            let pattern = shape(pattern_len, &mut rng);
            let scale = (pattern_len as f64).sqrt();
            for &p in &positions {
                let level = x[p];
                for (t, v) in pattern.iter().enumerate() {
                    x[p + t] = level + scale * (v + noise * normal(&mut rng));
                }
            }
            (vec![x], truth(PlantedKind::Motif, positions, pattern_len, vec![]))
        }
        &Planted::RegimeChange { n, change_at, noise } => {
            check_noise(noise)?;
            if !(change_at > 0.0 && change_at < 1.0) {
                return Err(Error::param(format!("change_at must lie in (0, 1), got {change_at}")));
            }
            check_len(n, 8)?;
            let change = (n as f64 * change_at).floor() as usize;
            let p1 = rng.random_range(15.0..25.0);
            let p2 = rng.random_range(35.0..50.0);
            let (first, second) = if rng.random_bool(0.5) { (p1, p2) } else { (p2, p1) };
            let harmonic = rng.random_range(0.0..TAU);
            let mut phase = rng.random_range(0.0..TAU);
            let x = (0..n)
                .map(|t| {
                    phase += TAU / if t < change { first } else { second };
                    phase.sin() + 0.5 * (2.0 * phase + harmonic).sin() + noise * normal(&mut rng)
                })
                .collect();
            (vec![x], truth(PlantedKind::RegimeChange, vec![change], 0, vec![]))
        }
        &Planted::Chain { n, pattern_len, repeats, drift, noise } => {
            check_noise(noise)?;
            if !drift.is_finite() {
                return Err(Error::param("drift must be finite"));
            }
            let positions = spread(n, pattern_len, repeats, &mut rng)?;
            let mut x: Vec<f64> = (0..n).map(|_| normal(&mut rng)).collect();
            let base = shape(pattern_len, &mut rng);
            let centre = rng.random_range(0.3..0.7) * pattern_len as f64;
            let width = pattern_len as f64 / 8.0;
            for (r, &p) in positions.iter().enumerate() {
                for (t, v) in base.iter().enumerate() {
                    let bump = (-((t as f64 - centre) / width).powi(2)).exp();
                    x[p + t] = 2.0 * (v + r as f64 * drift * bump) + noise * normal(&mut rng);
                }
            }
            (vec![x], truth(PlantedKind::Chain, positions, pattern_len, vec![]))
        }
        &Planted::Anomaly { n, period, spikes, noise } => {
            check_noise(noise)?;
            if period < 4 {
                return Err(Error::param("period must be at least 4"));
            }
            let len = (period / 10).max(4);
            let mut x: Vec<f64> = (0..n)
                .map(|t| (TAU * t as f64 / period as f64).sin() + noise * normal(&mut rng))
                .collect();
            // keep spikes a period away from the edges and from each other
            let positions = spread(n.saturating_sub(2 * period), period, spikes, &mut rng)?
                .into_iter()
                .map(|p| p + period)
                .collect::<Vec<_>>();
            for &p in &positions {
                let height = rng.random_range(2.0..3.0);
                for t in 0..len {
                    let tri = 1.0 - (2.0 * t as f64 / (len - 1) as f64 - 1.0).abs();
                    x[p + t] += height * tri;
                }
            }
            (vec![x], truth(PlantedKind::Anomaly, positions, len, vec![]))
        }
        Planted::MultiMotif { n, dims, motif_dims, pattern_len, noise } => {
            let (n, dims, pattern_len, noise) = (*n, *dims, *pattern_len, *noise);
            check_noise(noise)?;
            if dims == 0 || motif_dims.is_empty() || motif_dims.iter().any(|&k| k >= dims) {
                return Err(Error::param("motif dimensions must be a non-empty subset of the series dimensions"));
            }
            let positions = spread(n, pattern_len, 2, &mut rng)?;
            let scale = (pattern_len as f64).sqrt();
            let mut columns: Vec<Vec<f64>> = (0..dims).map(|_| gaussian_walk(n, &mut rng)).collect();
            let mut chosen = motif_dims.clone();
            chosen.sort_unstable();
            chosen.dedup();
            for &k in &chosen {
                let pattern = shape(pattern_len, &mut rng);
                for &p in &positions {
                    for (t, v) in pattern.iter().enumerate() {
                        columns[k][p + t] = scale * (v + noise * normal(&mut rng));
                    }
                }
            }
            (columns, truth(PlantedKind::MultiMotif, positions, pattern_len, chosen))
        }
    };
    let series = MultiTimeSeries::from_columns(columns)?;
    Ok(Dataset {
        name: format!("{:?}", spec.kind()).to_lowercase(),
        series,
        source: format!("{spec:?} seed={seed}"),
        ground_truth: Some(truth),
    })
}

fn truth(kind: PlantedKind, positions: Vec<usize>, length: usize, dims: Vec<usize>) -> GroundTruth {
    GroundTruth { kind, positions, length, dims }
}

fn check_noise(noise: f64) -> Result<()> {
    if noise.is_finite() && noise >= 0.0 {
        Ok(())
    } else {
        Err(Error::param(format!("noise must be finite and non-negative, got {noise}")))
    }
}

fn check_len(n: usize, min: usize) -> Result<()> {
    if n < min {
        return Err(Error::param(format!("series length {n} is below the minimum {min}")));
    }
    Ok(())
}

fn normal(rng: &mut ChaCha8Rng) -> f64 {
    StandardNormal.sample(rng)
}

fn gaussian_walk(n: usize, rng: &mut ChaCha8Rng) -> Vec<f64> {
    let mut acc = 0.0;
    (0..n)
        .map(|_| {
            acc += normal(rng);
            acc
        })
        .collect()
}

/// A smooth random shape with unit standard deviation: a few sinusoids and a
/// bump.
fn shape(len: usize, rng: &mut ChaCha8Rng) -> Vec<f64> {
    let comps: Vec<(f64, f64, f64)> = (0..3)
        .map(|_| (rng.random_range(0.5..4.0), rng.random_range(0.0..TAU), rng.random_range(0.3..1.0)))
        .collect();
    let centre = rng.random_range(0.2..0.8);
    let l = len as f64;
    let raw: Vec<f64> = (0..len)
        .map(|t| {
            let u = t as f64 / l;
            comps.iter().map(|(f, ph, a)| a * (TAU * f * u + ph).sin()).sum::<f64>()
                + (-((u - centre) * 10.0).powi(2)).exp()
        })
        .collect();
    let mean = raw.iter().sum::<f64>() / l;
    let sd = (raw.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / l).sqrt().max(1e-12);
    raw.iter().map(|v| (v - mean) / sd).collect()
}

/// `count` start positions for occurrences of length `len` in a series of
/// length `n`, one per equal slot, at least `len` apart.
fn spread(n: usize, len: usize, count: usize, rng: &mut ChaCha8Rng) -> Result<Vec<usize>> {
    if count == 0 || len < 4 {
        return Err(Error::param("need at least one occurrence of length 4 or more"));
    }
    let slot = n.checked_sub(len).map_or(0, |s| s / count);
    if slot < 2 * len {
        return Err(Error::param(format!(
            "{count} occurrences of length {len} do not fit a series of length {n}"
        )));
    }
    Ok((0..count).map(|k| k * slot + rng.random_range(0..=slot - 2 * len)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn forced_steps() {
        assert_eq!(walk_from_steps(&[1, 1, -1, 1, -1]), vec![1.0, 2.0, 1.0, 2.0, 1.0]);
    }

    #[test]
    fn walk_parity_and_determinism() {
        let w = random_walk(40_000, 3).unwrap();
        let last = *w.values().last().unwrap() as i64;
        assert!(last.unsigned_abs() <= 40_000);
        assert_eq!(last.rem_euclid(2), 0);
        assert_eq!(w, random_walk(40_000, 3).unwrap());
        assert_ne!(w, random_walk(40_000, 4).unwrap());
        assert!(random_walk(3, 1).is_err());
    }

    #[test]
    fn motif_truth() {
        let ds = gen_planted(&Planted::motif(1000, 50, 2), 1).unwrap();
        let gt = ds.ground_truth.unwrap();
        assert_eq!(gt.positions.len(), 2);
        assert!(gt.positions[1] >= gt.positions[0] + 100);
        assert!(gt.positions[1] + 50 <= 1000);
        assert_eq!(ds.series.len(), 1000);
    }

    #[test]
    fn regime_truth() {
        let ds = gen_planted(&Planted::regime_change(4001, 0.5), 2).unwrap();
        assert_eq!(ds.ground_truth.unwrap().positions, vec![2000]);
        assert!(gen_planted(&Planted::regime_change(100, 1.5), 2).is_err());
    }

    #[test]
    fn generators_are_pure() {
        for spec in [
            Planted::motif(600, 40, 3),
            Planted::regime_change(500, 0.3),
            Planted::chain(900, 40, 6, 0.1),
            Planted::anomaly(800, 50, 2),
            Planted::multi_motif(500, 3, vec![0, 2], 30),
        ] {
            assert_eq!(gen_planted(&spec, 9).unwrap(), gen_planted(&spec, 9).unwrap());
            assert_ne!(gen_planted(&spec, 9).unwrap().series, gen_planted(&spec, 10).unwrap().series);
        }
    }

    #[test]
    fn rejects_crowded_layouts() {
        assert!(gen_planted(&Planted::motif(100, 50, 2), 0).is_err());
        assert!(gen_planted(&Planted::multi_motif(500, 2, vec![2], 30), 0).is_err());
        assert!(gen_planted(&Planted::motif(1000, 50, 2).with_noise(-1.0), 0).is_err());
    }
}
