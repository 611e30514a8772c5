//! Per-window means and population standard deviations.

use crate::series::check_window;
use crate::{Result, TimeSeries};

/// Means and population standard deviations of every length-`window` slice.
#[derive(Clone, Debug, PartialEq)]
pub struct RollingStats {
    pub means: Vec<f64>,
    pub stds: Vec<f64>,
    pub window: usize,
    flat: Vec<bool>,
    inv_stds: Vec<f64>,
}

impl RollingStats {
    /// Computes the statistics in O(n).
    ///
    /// Sums are slid one sample at a time and re-anchored with an exact
    /// two-pass computation every `w` windows, which bounds rounding drift to
    /// `w` updates. Windows whose samples are all identical are detected
    /// exactly and get a standard deviation of exactly zero.
    pub fn new(values: &[f64], w: usize) -> Result<Self> {
        check_window(w, values.len())?;
        let len = values.len() - w + 1;

        // breaks[k] = number of positions p < k with values[p] != values[p + 1]
        let mut breaks = Vec::with_capacity(values.len());
        breaks.push(0usize);
        for pair in values.windows(2) {
            let last = *breaks.last().unwrap();
            breaks.push(last + usize::from(pair[0] != pair[1]));
        }

        let wf = w as f64;
        let mut means = Vec::with_capacity(len);
        let mut stds = Vec::with_capacity(len);
        let mut flat = Vec::with_capacity(len);
        let mut mean = 0.0;
        let mut m2 = 0.0;
        for i in 0..len {
            if i % w == 0 {
                (mean, m2) = two_pass(&values[i..i + w]);
            } else {
                let old = values[i - 1];
                let new = values[i + w - 1];
                let next_mean = mean + (new - old) / wf;
                m2 += (new - old) * (new - next_mean + old - mean);
                mean = next_mean;
            }

            let is_flat = breaks[i + w - 1] == breaks[i];
            if is_flat {
                means.push(values[i]);
                stds.push(0.0);
            } else if m2 > 0.0 {
                means.push(mean);
                stds.push((m2 / wf).sqrt());
            } else {
                let (m, exact) = two_pass(&values[i..i + w]);
                means.push(m);
                stds.push((exact.max(0.0) / wf).sqrt());
            }
            flat.push(is_flat);
        }

        let inv_stds = stds
            .iter()
            .zip(&flat)
            .map(|(&s, &f)| if f || s == 0.0 { 0.0 } else { 1.0 / s })
            .collect();
        Ok(RollingStats {
            means,
            stds,
            window: w,
            flat,
            inv_stds,
        })
    }

    pub fn len(&self) -> usize {
        self.means.len()
    }

    pub fn is_empty(&self) -> bool {
        self.means.is_empty()
    }

    /// True when every sample of window `i` is identical.
    pub fn is_flat(&self, i: usize) -> bool {
        self.flat[i] || self.stds[i] == 0.0
    }

    /// Reciprocal standard deviations, with 0 marking flat windows.
    pub(crate) fn inv_stds(&self) -> &[f64] {
        &self.inv_stds
    }
}

/// Mean and sum of squared deviations of `xs`.
fn two_pass(xs: &[f64]) -> (f64, f64) {
    let mean = xs.iter().sum::<f64>() / xs.len() as f64;
    let m2 = xs.iter().map(|x| (x - mean) * (x - mean)).sum();
    (mean, m2)
}

/// Rolling mean and population standard deviation of `ts` over windows of
/// length `w`.
pub fn rolling_mean_std(ts: &TimeSeries, w: usize) -> Result<RollingStats> {
    RollingStats::new(ts.values(), w)
}

/// Sums of squares of every length-`w` window (the squared Euclidean norms
/// used by non-normalized distances).
pub fn rolling_sq_norms(values: &[f64], w: usize) -> Result<Vec<f64>> {
    sq_norms_with_period(values, w, w)
}

/// Sliding sums of squares re-anchored exactly every `period` windows.
pub(crate) fn sq_norms_with_period(values: &[f64], w: usize, period: usize) -> Result<Vec<f64>> {
    check_window(w, values.len())?;
    let len = values.len() - w + 1;
    let mut out = Vec::with_capacity(len);
    let mut acc = 0.0;
    for i in 0..len {
        if i % period == 0 {
            acc = values[i..i + w].iter().map(|x| x * x).sum();
        } else {
            let old = values[i - 1];
            let new = values[i + w - 1];
            acc += new * new - old * old;
        }
        out.push(acc);
    }
    Ok(out)
}
