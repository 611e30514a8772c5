#![allow(clippy::needless_range_loop)]

mod common;

use common::{max_diff, noise, walk, znorm_dist};
use mprofile::profile::{mstomp, simple, stomp, ProfileParams};
use mprofile::{MultiTimeSeries, TimeSeries};

fn mts(cols: Vec<Vec<f64>>) -> MultiTimeSeries {
    MultiTimeSeries::from_columns(cols).unwrap()
}

/// Direct k-dimensional profile: rank per-dimension distances, average the
/// first k+1, minimize over neighbors.
fn mstomp_oracle(m: &MultiTimeSeries, w: usize, zone: usize) -> Vec<Vec<f64>> {
    let d = m.n_dims();
    let l = m.len() - w + 1;
    let mut out = vec![vec![f64::INFINITY; l]; d];
    for i in 0..l {
        for j in 0..l {
            if i.abs_diff(j) <= zone {
                continue;
            }
            let mut ds: Vec<f64> = m.dims().iter().map(|t| znorm_dist(t.window(i, w), t.window(j, w))).collect();
            ds.sort_by(f64::total_cmp);
            let mut sum = 0.0;
            for (k, v) in ds.iter().enumerate() {
                sum += v;
                out[k][i] = out[k][i].min(sum / (k + 1) as f64);
            }
        }
    }
    out
}

#[test]
fn mstomp_matches_direct_computation() {
    let m = mts(vec![walk(220, 1).into_inner(), walk(220, 2).into_inner(), noise(220, 3)]);
    let w = 16;
    let mmp = mstomp(&m, &ProfileParams::new(w), &[], &[]).unwrap();
    let oracle = mstomp_oracle(&m, w, 8);
    assert_eq!(mmp.n_dims(), 3);
    for k in 0..3 {
        assert!(max_diff(&mmp.values[k], &oracle[k]) < 1e-8, "row {k}");
    }
}

#[test]
fn mstomp_rows_are_monotone() {
    let m = mts(vec![walk(300, 4).into_inner(), noise(300, 5), walk(300, 6).into_inner(), noise(300, 7)]);
    let mmp = mstomp(&m, &ProfileParams::new(20), &[], &[]).unwrap();
    for k in 0..3 {
        for i in 0..mmp.len() {
            assert!(mmp.values[k][i] <= mmp.values[k + 1][i]);
        }
    }
    for i in 0..mmp.len() {
        let mut col: Vec<usize> = (0..4).map(|r| mmp.dim_order[r][i]).collect();
        col.sort_unstable();
        assert_eq!(col, vec![0, 1, 2, 3]);
    }
}

#[test]
fn mstomp_single_dimension_is_stomp() {
    let ts = walk(500, 8);
    let m = MultiTimeSeries::univariate(ts.clone());
    let p = ProfileParams::new(25);
    let mmp = mstomp(&m, &p, &[], &[]).unwrap();
    let mp = stomp(&ts, None, &p).unwrap();
    assert!(max_diff(&mmp.values[0], &mp.values) < 1e-8);
}

#[test]
fn mstomp_exclusion_collapses_to_univariate() {
    let a = walk(400, 9);
    let m = mts(vec![a.values().to_vec(), noise(400, 10)]);
    let p = ProfileParams::new(20);
    let mmp = mstomp(&m, &p, &[], &[1]).unwrap();
    let mp = stomp(&a, None, &p).unwrap();
    for row in &mmp.values {
        assert!(max_diff(row, &mp.values) < 1e-8);
    }
    assert!(mmp.dim_order[1].iter().all(|&k| k == 1));
}

#[test]
fn mstomp_forced_dimension_leads() {
    let m = mts(vec![walk(300, 11).into_inner(), noise(300, 12), walk(300, 13).into_inner()]);
    let mmp = mstomp(&m, &ProfileParams::new(16), &[1], &[]).unwrap();
    assert!(mmp.dim_order[0].iter().all(|&k| k == 1));
    assert_eq!(mmp.dims_at(0, 5), vec![1]);
    // row 0 is then the profile of dimension 1 alone
    let solo = stomp(m.dim(1), None, &ProfileParams::new(16)).unwrap();
    assert!(max_diff(&mmp.values[0], &solo.values) < 1e-8);
}

#[test]
fn mstomp_dimension_errors() {
    let m = mts(vec![noise(100, 1), noise(100, 2)]);
    let p = ProfileParams::new(10);
    assert!(mstomp(&m, &p, &[0], &[0]).is_err());
    assert!(mstomp(&m, &p, &[], &[0, 1]).is_err());
    assert!(mstomp(&m, &p, &[2], &[]).is_err());
}

#[test]
fn mstomp_workers_are_deterministic() {
    let m = mts(vec![walk(2500, 14).into_inner(), noise(2500, 15)]);
    let p = ProfileParams::new(30);
    let one = mstomp(&m, &p, &[], &[]).unwrap();
    for workers in [2, 4] {
        assert_eq!(mstomp(&m, &p.clone().workers(workers), &[], &[]).unwrap(), one);
    }
}

#[test]
fn simple_ab_with_itself_is_exact_identity() {
    let m = mts(vec![noise(300, 16), walk(300, 17).into_inner(), noise(300, 18)]);
    let mp = simple(&m, Some(&m), &ProfileParams::new(12)).unwrap();
    assert_eq!(mp.exclusion_zone, 0);
    for (i, (v, idx)) in mp.values.iter().zip(&mp.index).enumerate() {
        assert_eq!(*v, 0.0);
        assert_eq!(*idx, Some(i));
    }
}

#[test]
fn simple_matches_direct_raw_distance() {
    let a = mts(vec![noise(150, 19), walk(150, 20).into_inner()]);
    let b = mts(vec![noise(120, 21), walk(120, 22).into_inner()]);
    let w = 10;
    let raw = |x: &MultiTimeSeries, i: usize, y: &MultiTimeSeries, j: usize| -> f64 {
        (0..x.n_dims())
            .map(|k| {
                x.dim(k)
                    .window(i, w)
                    .iter()
                    .zip(y.dim(k).window(j, w))
                    .map(|(p, q)| (p - q).powi(2))
                    .sum::<f64>()
            })
            .sum::<f64>()
            .sqrt()
    };
    for (other, zone) in [(Some(&b), 0usize), (None, 5)] {
        let mp = simple(&a, other, &ProfileParams::new(w)).unwrap();
        let y = other.unwrap_or(&a);
        for i in 0..mp.len() {
            let best = (0..y.len() - w + 1)
                .filter(|&j| other.is_some() || i.abs_diff(j) > zone)
                .map(|j| raw(&a, i, y, j))
                .fold(f64::INFINITY, f64::min);
            assert!((mp.values[i] - best).abs() < 1e-8);
            let j = mp.index[i].unwrap();
            assert!((raw(&a, i, y, j) - best).abs() < 1e-8);
        }
    }
}

#[test]
fn simple_equals_stomp_on_unit_windows() {
    // Two sines whose periods divide the window: every window has mean 0 and
    // unit variance, so raw and z-normalized distances coincide.
    let w = 40;
    let clean: Vec<f64> = (0..400)
        .map(|t| {
            let t = t as f64;
            (t * std::f64::consts::TAU / 20.0).sin() + (t * std::f64::consts::TAU / 40.0 + 0.7).sin()
        })
        .collect();
    let ts = TimeSeries::new(clean).unwrap();
    let p = ProfileParams::new(w);
    let raw = simple(&MultiTimeSeries::univariate(ts.clone()), None, &p).unwrap();
    let z = stomp(&ts, None, &p).unwrap();
    assert!(max_diff(&raw.values, &z.values) < 1e-6);

    // On a series with drifting level and scale the two diverge.
    let drift = walk(400, 23);
    let raw = simple(&MultiTimeSeries::univariate(drift.clone()), None, &p).unwrap();
    let z = stomp(&drift, None, &p).unwrap();
    assert!(max_diff(&raw.values, &z.values) > 1e-3);
}

#[test]
fn simple_dimension_mismatch() {
    let a = mts(vec![noise(50, 1), noise(50, 2)]);
    let b = mts(vec![noise(50, 3)]);
    assert!(simple(&a, Some(&b), &ProfileParams::new(8)).is_err());
}
