#![allow(dead_code)]

use mprofile::profile::MatrixProfile;
use mprofile::TimeSeries;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random walk with Gaussian steps plus a little observation noise.
pub fn walk(n: usize, seed: u64) -> TimeSeries {
    let mut r = rng(seed);
    let mut acc = 0.0;
    let xs = (0..n)
        .map(|_| {
            acc += r.sample::<f64, _>(StandardNormal);
            acc + 0.1 * r.sample::<f64, _>(StandardNormal)
        })
        .collect();
    TimeSeries::new(xs).unwrap()
}

pub fn noise(n: usize, seed: u64) -> Vec<f64> {
    let mut r = rng(seed);
    (0..n).map(|_| r.sample(StandardNormal)).collect()
}

/// Random (n, w, ez) drawn from the oracle-equivalence ranges.
pub fn oracle_case(seed: u64) -> (TimeSeries, usize, f64) {
    let mut r = rng(seed ^ 0x5eed);
    let n = r.random_range(128..=1024);
    let w = r.random_range(8..=n / 4);
    let ez = [0.0, 0.25, 0.5][r.random_range(0..3)];
    (walk(n, seed), w, ez)
}

/// Largest absolute difference between finite entries; infinite entries
/// must agree exactly.
pub fn max_diff(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(x, y)| {
            if x.is_infinite() || y.is_infinite() {
                assert_eq!(x, y);
                0.0
            } else {
                (x - y).abs()
            }
        })
        .fold(0.0, f64::max)
}

/// Every index of `mp` attains the value it claims under the oracle's
/// direct z-normalized distance.
pub fn indexes_attain(mp: &MatrixProfile, a: &TimeSeries, b: &TimeSeries, tol: f64) -> bool {
    let w = mp.window;
    mp.index.iter().enumerate().all(|(i, idx)| match idx {
        None => mp.values[i].is_infinite(),
        Some(j) => (znorm_dist(a.window(i, w), b.window(*j, w)) - mp.values[i]).abs() < tol,
    })
}

pub fn znorm_dist(x: &[f64], y: &[f64]) -> f64 {
    let z = |v: &[f64]| -> Option<Vec<f64>> {
        if v.windows(2).all(|p| p[0] == p[1]) {
            return None;
        }
        let n = v.len() as f64;
        let m = v.iter().sum::<f64>() / n;
        let s = (v.iter().map(|t| (t - m).powi(2)).sum::<f64>() / n).sqrt();
        Some(v.iter().map(|t| (t - m) / s).collect())
    };
    match (z(x), z(y)) {
        (None, None) => 0.0,
        (Some(_), None) | (None, Some(_)) => (x.len() as f64).sqrt(),
        (Some(p), Some(q)) => p.iter().zip(&q).map(|(s, t)| (s - t).powi(2)).sum::<f64>().sqrt(),
    }
}
