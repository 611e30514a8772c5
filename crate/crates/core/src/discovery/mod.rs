//! Mining a computed profile: motifs, discords, time series chains and
//! FLUSS semantic segmentation.
//!
//! Every function here reads a finished [`MatrixProfile`] and returns a
//! result that keeps the parameters it was produced with, so a result can be
//! reported or archived on its own.

mod chains;
mod discord;
mod fluss;
mod motif;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::distance::zone_size;
use crate::{Error, Result};

pub use chains::{find_chains, ChainSet};
pub use discord::{find_discord, Discord, DiscordSet};
pub use fluss::{fluss, fluss_arc_count, fluss_cac, fluss_extract, FlussResult, DEFAULT_EXCLUSION_FACTOR};
pub use motif::{find_motif, find_motif_multi, Motif, MotifParams, MotifSet, DEFAULT_MAX_NEIGHBORS};

#[cfg(doc)]
use crate::profile::MatrixProfile;

/// An exclusion zone given either as a fraction of the window or as an
/// absolute number of positions.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum ZoneSpec {
    Fraction(f64),
    Absolute(usize),
}

impl ZoneSpec {
    pub fn resolve(self, window: usize) -> Result<usize> {
        match self {
            ZoneSpec::Fraction(f) => zone_size(window, f),
            ZoneSpec::Absolute(z) => Ok(z),
        }
    }
}

impl Default for ZoneSpec {
    fn default() -> Self {
        ZoneSpec::Fraction(0.5)
    }
}

/// `"20"` is absolute, `"0.5"` and `"1/2"` are fractions of the window.
impl FromStr for ZoneSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::param(format!("invalid exclusion zone '{s}'"));
        if let Ok(z) = s.parse::<usize>() {
            return Ok(ZoneSpec::Absolute(z));
        }
        let f = parse_fraction(s).ok_or_else(bad)?;
        if !(f.is_finite() && f >= 0.0) {
            return Err(bad());
        }
        Ok(ZoneSpec::Fraction(f))
    }
}

impl fmt::Display for ZoneSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ZoneSpec::Fraction(x) => write!(f, "{x}"),
            ZoneSpec::Absolute(z) => write!(f, "{z}"),
        }
    }
}

/// Parses `"0.25"` or `"1/4"`.
pub fn parse_fraction(s: &str) -> Option<f64> {
    match s.split_once('/') {
        Some((num, den)) => {
            let num: f64 = num.trim().parse().ok()?;
            let den: f64 = den.trim().parse().ok()?;
            (den != 0.0).then(|| num / den)
        }
        None => s.trim().parse().ok(),
    }
}

fn mask(masked: &mut [bool], center: usize, zone: usize) {
    let lo = center.saturating_sub(zone);
    let hi = (center + zone + 1).min(masked.len());
    if lo < hi {
        masked[lo..hi].fill(true);
    }
}

/// Index of the smallest finite unmasked value, first on ties.
fn argmin_unmasked(values: &[f64], masked: &[bool]) -> Option<usize> {
    let mut best: Option<usize> = None;
    for (i, (&v, &m)) in values.iter().zip(masked).enumerate() {
        if !m && v.is_finite() && best.is_none_or(|b| v < values[b]) {
            best = Some(i);
        }
    }
    best
}

fn argmax_unmasked(values: &[f64], masked: &[bool]) -> Option<usize> {
    let mut best: Option<usize> = None;
    for (i, (&v, &m)) in values.iter().zip(masked).enumerate() {
        if !m && v.is_finite() && best.is_none_or(|b| v > values[b]) {
            best = Some(i);
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zone_spec_parsing() {
        assert_eq!("20".parse::<ZoneSpec>().unwrap(), ZoneSpec::Absolute(20));
        assert_eq!("0.5".parse::<ZoneSpec>().unwrap(), ZoneSpec::Fraction(0.5));
        assert_eq!("1/4".parse::<ZoneSpec>().unwrap(), ZoneSpec::Fraction(0.25));
        assert!("-1".parse::<ZoneSpec>().is_err());
        assert!("1/0".parse::<ZoneSpec>().is_err());
        assert!("abc".parse::<ZoneSpec>().is_err());
        assert_eq!(ZoneSpec::Fraction(0.5).resolve(50).unwrap(), 25);
        assert_eq!(ZoneSpec::Absolute(20).resolve(80).unwrap(), 20);
    }

    #[test]
    fn masked_extrema() {
        let v = [3.0, 1.0, f64::INFINITY, 1.0, 5.0];
        let mut m = [false; 5];
        assert_eq!(argmin_unmasked(&v, &m), Some(1));
        assert_eq!(argmax_unmasked(&v, &m), Some(4));
        mask(&mut m, 1, 0);
        assert_eq!(argmin_unmasked(&v, &m), Some(3));
        mask(&mut m, 3, 1);
        assert_eq!(argmin_unmasked(&v, &m), Some(0));
        assert_eq!(argmax_unmasked(&v, &m), Some(0));
        mask(&mut m, 0, 10);
        assert_eq!(argmin_unmasked(&v, &m), None);
    }
}
