//! Sliding dot products through FFT convolution.

use std::sync::Arc;

use rustfft::num_complex::Complex;
use rustfft::{Fft, FftPlanner};

use crate::{Error, Result};

/// Spectrum of a reference series, cached so that many queries can be slid
/// over it at one forward and one inverse transform each.
///
/// The transform length is the next power of two at or above the series
/// length, which is enough for the circular correlation to be wrap-free on
/// the `n - w + 1` positions that are kept.
pub struct SlidingDot {
    n: usize,
    size: usize,
    spectrum: Vec<Complex<f64>>,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
}

/// Reusable buffers for [`SlidingDot::dot_into`].
#[derive(Default)]
pub struct DotScratch {
    buffer: Vec<Complex<f64>>,
    scratch: Vec<Complex<f64>>,
}

impl SlidingDot {
    pub fn new(ts: &[f64]) -> Self {
        let n = ts.len();
        let size = n.max(1).next_power_of_two();
        let mut planner = FftPlanner::new();
        let forward = planner.plan_fft_forward(size);
        let inverse = planner.plan_fft_inverse(size);

        let mut spectrum: Vec<Complex<f64>> = ts.iter().map(|&x| Complex::new(x, 0.0)).collect();
        spectrum.resize(size, Complex::new(0.0, 0.0));
        let mut scratch = vec![Complex::new(0.0, 0.0); forward.get_inplace_scratch_len()];
        forward.process_with_scratch(&mut spectrum, &mut scratch);

        SlidingDot {
            n,
            size,
            spectrum,
            forward,
            inverse,
        }
    }

    pub fn series_len(&self) -> usize {
        self.n
    }

    /// `out[i] = Σ_k query[k] · ts[i + k]` for `i in 0..n - w + 1`.
    pub fn dot(&self, query: &[f64]) -> Result<Vec<f64>> {
        let mut out = Vec::new();
        self.dot_into(query, &mut DotScratch::default(), &mut out)?;
        Ok(out)
    }

    pub fn dot_into(&self, query: &[f64], scratch: &mut DotScratch, out: &mut Vec<f64>) -> Result<()> {
        let w = query.len();
        if w == 0 || w > self.n {
            return Err(Error::param(format!(
                "query of length {w} cannot slide over a series of length {}",
                self.n
            )));
        }
        let zero = Complex::new(0.0, 0.0);
        let buf = &mut scratch.buffer;
        buf.clear();
        buf.extend(query.iter().rev().map(|&q| Complex::new(q, 0.0)));
        buf.resize(self.size, zero);

        let need = self
            .forward
            .get_inplace_scratch_len()
            .max(self.inverse.get_inplace_scratch_len());
        if scratch.scratch.len() < need {
            scratch.scratch.resize(need, zero);
        }
        self.forward.process_with_scratch(buf, &mut scratch.scratch);
        for (b, s) in buf.iter_mut().zip(&self.spectrum) {
            *b *= *s;
        }
        self.inverse.process_with_scratch(buf, &mut scratch.scratch);

        let scale = 1.0 / self.size as f64;
        out.clear();
        out.extend(buf[w - 1..self.n].iter().map(|c| c.re * scale));
        Ok(())
    }
}

/// FFT-based sliding dot product of `query` against every window of `ts`.
pub fn sliding_dot_product(query: &[f64], ts: &[f64]) -> Result<Vec<f64>> {
    SlidingDot::new(ts).dot(query)
}

/// Direct O(n·w) sliding dot product.
pub fn sliding_dot_product_direct(query: &[f64], ts: &[f64]) -> Result<Vec<f64>> {
    let w = query.len();
    if w == 0 || w > ts.len() {
        return Err(Error::param(format!(
            "query of length {w} cannot slide over a series of length {}",
            ts.len()
        )));
    }
    Ok(ts
        .windows(w)
        .map(|win| win.iter().zip(query).map(|(a, b)| a * b).sum())
        .collect())
}
