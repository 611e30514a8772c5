use crate::{Error, Result};

/// Smallest admissible sliding-window length.
///
/// Below four samples a z-normalized window carries almost no shape and the
/// flat-window convention dominates every distance.
pub const MIN_WINDOW: usize = 4;

/// A regularly sampled, finite, real-valued series.
#[derive(Clone, Debug, PartialEq)]
pub struct TimeSeries(Vec<f64>);

impl TimeSeries {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.len() < MIN_WINDOW {
            return Err(Error::param(format!(
                "series has {} samples, at least {MIN_WINDOW} are required",
                values.len()
            )));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::param(format!(
                "sample {i} is not finite ({})",
                values[i]
            )));
        }
        Ok(TimeSeries(values))
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }

    /// Window `i` of length `w`.
    pub fn window(&self, i: usize, w: usize) -> &[f64] {
        &self.0[i..i + w]
    }

    /// Number of sliding windows of length `w`, after checking `w` is valid.
    pub fn profile_len(&self, w: usize) -> Result<usize> {
        check_window(w, self.len())?;
        Ok(self.len() - w + 1)
    }
}

impl AsRef<[f64]> for TimeSeries {
    fn as_ref(&self) -> &[f64] {
        &self.0
    }
}

impl TryFrom<Vec<f64>> for TimeSeries {
    type Error = Error;

    fn try_from(values: Vec<f64>) -> Result<Self> {
        TimeSeries::new(values)
    }
}

/// `d` aligned series of equal length; dimension `k` is `dims()[k]`.
#[derive(Clone, Debug, PartialEq)]
pub struct MultiTimeSeries {
    dims: Vec<TimeSeries>,
}

impl MultiTimeSeries {
    pub fn new(dims: Vec<TimeSeries>) -> Result<Self> {
        let Some(first) = dims.first() else {
            return Err(Error::param("multivariate series needs at least one dimension"));
        };
        let n = first.len();
        if let Some(k) = dims.iter().position(|d| d.len() != n) {
            return Err(Error::param(format!(
                "dimension {k} has {} samples, dimension 0 has {n}",
                dims[k].len()
            )));
        }
        Ok(MultiTimeSeries { dims })
    }

    /// Builds a series from column vectors (one per dimension).
    pub fn from_columns(columns: Vec<Vec<f64>>) -> Result<Self> {
        let dims = columns
            .into_iter()
            .map(TimeSeries::new)
            .collect::<Result<Vec<_>>>()?;
        MultiTimeSeries::new(dims)
    }

    pub fn univariate(ts: TimeSeries) -> Self {
        MultiTimeSeries { dims: vec![ts] }
    }

    pub fn dims(&self) -> &[TimeSeries] {
        &self.dims
    }

    pub fn dim(&self, k: usize) -> &TimeSeries {
        &self.dims[k]
    }

    pub fn n_dims(&self) -> usize {
        self.dims.len()
    }

    pub fn len(&self) -> usize {
        self.dims[0].len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn into_dims(self) -> Vec<TimeSeries> {
        self.dims
    }

    pub fn profile_len(&self, w: usize) -> Result<usize> {
        self.dims[0].profile_len(w)
    }
}

impl From<TimeSeries> for MultiTimeSeries {
    fn from(ts: TimeSeries) -> Self {
        MultiTimeSeries::univariate(ts)
    }
}

pub(crate) fn check_window(w: usize, n: usize) -> Result<()> {
    if w < MIN_WINDOW {
        return Err(Error::param(format!(
            "window size {w} is below the minimum of {MIN_WINDOW}"
        )));
    }
    if w > n {
        return Err(Error::param(format!(
            "window size {w} exceeds the series length {n}"
        )));
    }
    Ok(())
}
