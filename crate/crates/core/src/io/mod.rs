//! Reading and writing series, profile archives and synthetic datasets.

mod archive;
mod delimited;
mod generate;

use serde::{Deserialize, Serialize};

use crate::{Error, MultiTimeSeries, Result, TimeSeries};

pub use archive::{read_profile, write_profile, DataSection, ProfileArchive, Results, SCHEMA_VERSION};
pub use delimited::{read_series, write_series, Column, Format, ReadOptions};
pub use generate::{gen_planted, random_steps, random_walk, walk_from_steps, Planted, PlantedKind};

/// A named series with its origin and, for generated data, the positions of
/// what was planted in it.
#[derive(Clone, Debug, PartialEq)]
pub struct Dataset {
    pub name: String,
    pub series: MultiTimeSeries,
    /// File path or generator description.
    pub source: String,
    pub ground_truth: Option<GroundTruth>,
}

impl Dataset {
    /// The series as univariate, or a parameter error if it has several
    /// dimensions.
    pub fn univariate(&self) -> Result<&TimeSeries> {
        match self.series.n_dims() {
            1 => Ok(self.series.dim(0)),
            d => Err(Error::param(format!("{} has {d} dimensions, expected 1", self.name))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GroundTruth {
    pub kind: PlantedKind,
    /// Start of each planted occurrence, or the change point.
    pub positions: Vec<usize>,
    /// Length of each occurrence; 0 for change points.
    pub length: usize,
    /// Dimensions carrying the planted pattern (multivariate data only).
    pub dims: Vec<usize>,
}
