use super::{Algorithm, JoinKind, MatrixProfile};
use crate::distance::zone_size;
use crate::series::check_window;
use crate::{Result, TimeSeries};

/// Z-normalized copy of a window, or `None` when all samples are equal.
fn znormalize(xs: &[f64]) -> Option<Vec<f64>> {
    if xs.windows(2).all(|p| p[0] == p[1]) {
        return None;
    }
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let std = (xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / n).sqrt();
    Some(xs.iter().map(|x| (x - mean) / std).collect())
}

/// Exact O(n²·w) matrix profile: every pair of windows is z-normalized
/// directly and compared by Euclidean distance. The reference the other
/// algorithms are checked against.
pub fn brute_force_mp(a: &TimeSeries, b: Option<&TimeSeries>, w: usize, ez_fraction: f64) -> Result<MatrixProfile> {
    check_window(w, a.len())?;
    if let Some(b) = b {
        check_window(w, b.len())?;
    }
    let self_join = b.is_none();
    let b = b.unwrap_or(a);
    let zone = if self_join { zone_size(w, ez_fraction)? } else { 0 };

    let za: Vec<_> = a.values().windows(w).map(znormalize).collect();
    let zb: Vec<_> = if self_join {
        za.clone()
    } else {
        b.values().windows(w).map(znormalize).collect()
    };

    let la = za.len();
    let mut mp = MatrixProfile::empty(
        la,
        w,
        zone,
        Algorithm::BruteForce,
        if self_join { JoinKind::SelfJoin } else { JoinKind::AbJoin },
    );
    let mut left = vec![None; la];
    let mut right = vec![None; la];
    let flat_gap = (w as f64).sqrt();

    for i in 0..la {
        let (mut best, mut best_j) = (f64::INFINITY, None);
        let (mut lbest, mut rbest) = (f64::INFINITY, f64::INFINITY);
        for (j, wb) in zb.iter().enumerate() {
            if self_join && i.abs_diff(j) <= zone {
                continue;
            }
            let d = match (&za[i], wb) {
                (None, None) => 0.0,
                (None, Some(_)) | (Some(_), None) => flat_gap,
                (Some(x), Some(y)) => x.iter().zip(y).map(|(p, q)| (p - q) * (p - q)).sum::<f64>().sqrt(),
            };
            if d < best {
                best = d;
                best_j = Some(j);
            }
            if self_join {
                if j < i && d < lbest {
                    lbest = d;
                    left[i] = Some(j);
                } else if j > i && d < rbest {
                    rbest = d;
                    right[i] = Some(j);
                }
            }
        }
        mp.values[i] = best;
        mp.index[i] = best_j;
    }
    if self_join {
        mp.left_index = Some(left);
        mp.right_index = Some(right);
    }
    mp.coverage = 1.0;
    Ok(mp)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn planted_repeat() {
        let period: Vec<f64> = (0..100).map(|i| (i as f64 * std::f64::consts::TAU / 100.0).sin()).collect();
        let xs: Vec<f64> = period.iter().chain(&period).copied().collect();
        let ts = TimeSeries::new(xs).unwrap();
        let mp = brute_force_mp(&ts, None, 50, 0.5).unwrap();
        assert_eq!(mp.len(), 151);
        let (i, v) = mp.argmin().unwrap();
        assert!(v < 1e-6);
        assert_eq!(mp.index[i].unwrap().abs_diff(i), 100);
    }

    #[test]
    fn ab_join_with_itself_is_identity() {
        let xs: Vec<f64> = (0..60).map(|i| ((i * i * 7919 + 3 * i) % 101) as f64).collect();
        let ts = TimeSeries::new(xs).unwrap();
        let mp = brute_force_mp(&ts, Some(&ts), 8, 0.5).unwrap();
        assert_eq!(mp.exclusion_zone, 0);
        assert!(mp.left_index.is_none());
        for (i, (v, idx)) in mp.values.iter().zip(&mp.index).enumerate() {
            assert!(*v < 1e-6);
            assert_eq!(*idx, Some(i));
        }
    }

    #[test]
    fn short_series_rejected() {
        let ts = TimeSeries::new(vec![1.0, 2.0, 3.0, 4.0, 5.0]).unwrap();
        assert!(brute_force_mp(&ts, None, 6, 0.5).is_err());
    }
}
