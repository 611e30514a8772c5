//! Matrix profile computation and mining for univariate and multivariate
//! time series.
//!
//! The matrix profile of a series stores, for every sliding window, the
//! z-normalized Euclidean distance to its nearest non-trivial neighbor,
//! together with the position of that neighbor. Five algorithms compute it:
//!
//! * [`profile::stamp`]: anytime, random-order distance profiles merged by
//!   element-wise minimum.
//! * [`profile::stomp`]: ordered O(n²) dot-product recurrence, with left and
//!   right profile indexes.
//! * [`profile::scrimp`]: O(n²) diagonal traversal that can be stopped at any
//!   time.
//! * [`profile::mstomp`]: k-dimensional profiles for every k of a
//!   multivariate series.
//! * [`profile::simple`]: multivariate, non-normalized joins.
//!
//! On top of a profile, [`discovery`] extracts motifs, discords, time series
//! chains and semantic segments (FLUSS). [`io`] reads CSV data, persists
//! profiles as JSON archives and generates seeded synthetic datasets, and
//! [`bench`] times the algorithms on random walks.
//!
//! ```
//! use mprofile::{io::random_walk, profile::{stomp, ProfileParams}};
//!
//! let ts = random_walk(2_000, 7).unwrap();
//! let mp = stomp(&ts, None, &ProfileParams::new(64)).unwrap();
//! assert_eq!(mp.len(), 2_000 - 64 + 1);
//! assert_eq!(mp.exclusion_zone, 32);
//! ```

pub mod bench;
pub mod cli;
pub mod discovery;
pub mod distance;
mod error;
pub mod fft;
pub mod io;
pub mod plot;
pub mod profile;
pub mod report;
mod series;
pub mod stats;

pub use error::{Error, Result};
pub use series::{MultiTimeSeries, TimeSeries, MIN_WINDOW};
