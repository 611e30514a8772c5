use std::fmt;
use std::fs;
use std::path::Path;

use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::discovery::{ChainSet, DiscordSet, FlussResult, MotifSet};
use crate::profile::{Algorithm, Computed, JoinKind, MatrixProfile, MultiMatrixProfile, RNG_NAME};
use crate::{Error, MultiTimeSeries, Result, TimeSeries};

pub const SCHEMA_VERSION: u32 = 1;

/// A computed profile as persisted between commands, with the input data
/// (unless dropped) and every discovery result added since.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(into = "Wire", try_from = "Wire")]
pub struct ProfileArchive {
    pub schema_version: u32,
    pub rng: String,
    pub mode: Algorithm,
    pub join: JoinKind,
    pub window: usize,
    pub exclusion_zone: usize,
    pub coverage: f64,
    pub seed: Option<u64>,
    /// Length and dimensionality of the input(s).
    pub series_a: (usize, usize),
    pub series_b: Option<(usize, usize)>,
    pub values: Vec<f64>,
    pub index: Vec<Option<usize>>,
    pub left_index: Option<Vec<Option<usize>>>,
    pub right_index: Option<Vec<Option<usize>>>,
    pub multi: Option<MultiSection>,
    pub data: Option<DataSection>,
    pub results: Results,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MultiSection {
    pub values: Vec<Vec<f64>>,
    pub index: Vec<Vec<Option<usize>>>,
    pub dim_order: Vec<Vec<usize>>,
    pub must_dims: Vec<usize>,
    pub exc_dims: Vec<usize>,
}

/// Input series, one vector per dimension.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DataSection {
    pub a: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<Vec<Vec<f64>>>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Results {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub motif: Option<MotifSet>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub discord: Option<DiscordSet>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chain: Option<ChainSet>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fluss: Option<FlussResult>,
}

fn columns(s: &MultiTimeSeries) -> Vec<Vec<f64>> {
    s.dims().iter().map(|d| d.values().to_vec()).collect()
}

impl ProfileArchive {
    pub fn from_profile(mp: &MatrixProfile, a: &MultiTimeSeries, b: Option<&MultiTimeSeries>, keep_data: bool) -> Self {
        ProfileArchive {
            schema_version: SCHEMA_VERSION,
            rng: RNG_NAME.to_string(),
            mode: mp.algorithm,
            join: mp.join,
            window: mp.window,
            exclusion_zone: mp.exclusion_zone,
            coverage: mp.coverage,
            seed: mp.seed,
            series_a: (a.len(), a.n_dims()),
            series_b: b.map(|b| (b.len(), b.n_dims())),
            values: mp.values.clone(),
            index: mp.index.clone(),
            left_index: mp.left_index.clone(),
            right_index: mp.right_index.clone(),
            multi: None,
            data: keep_data.then(|| DataSection {
                a: columns(a),
                b: b.map(columns),
            }),
            results: Results::default(),
        }
    }

    /// Archive of a multidimensional profile; the top-level profile is row 0.
    pub fn from_multi(mmp: &MultiMatrixProfile, a: &MultiTimeSeries, keep_data: bool) -> Self {
        let mut out = ProfileArchive::from_profile(&mmp.row(0), a, None, keep_data);
        out.multi = Some(MultiSection {
            values: mmp.values.clone(),
            index: mmp.index.clone(),
            dim_order: mmp.dim_order.clone(),
            must_dims: mmp.must_dims.clone(),
            exc_dims: mmp.exc_dims.clone(),
        });
        out
    }

    pub fn from_computed(c: &Computed, a: &MultiTimeSeries, b: Option<&MultiTimeSeries>, keep_data: bool) -> Self {
        match c {
            Computed::Single(mp) => ProfileArchive::from_profile(mp, a, b, keep_data),
            Computed::Multi(mmp) => ProfileArchive::from_multi(mmp, a, keep_data),
        }
    }

    pub fn profile(&self) -> MatrixProfile {
        MatrixProfile {
            values: self.values.clone(),
            index: self.index.clone(),
            left_index: self.left_index.clone(),
            right_index: self.right_index.clone(),
            window: self.window,
            exclusion_zone: self.exclusion_zone,
            algorithm: self.mode,
            join: self.join,
            coverage: self.coverage,
            seed: self.seed,
        }
    }

    pub fn multi_profile(&self) -> Option<MultiMatrixProfile> {
        self.multi.as_ref().map(|m| MultiMatrixProfile {
            values: m.values.clone(),
            index: m.index.clone(),
            dim_order: m.dim_order.clone(),
            window: self.window,
            exclusion_zone: self.exclusion_zone,
            must_dims: m.must_dims.clone(),
            exc_dims: m.exc_dims.clone(),
        })
    }

    /// The embedded first input, or a stale-profile error when it was not
    /// kept.
    pub fn data_a(&self) -> Result<MultiTimeSeries> {
        let data = self.data.as_ref().ok_or_else(|| {
            Error::Stale("the archive holds no input data; recompute with data kept".into())
        })?;
        to_series(&data.a)
    }

    pub fn data_b(&self) -> Result<Option<MultiTimeSeries>> {
        match self.data.as_ref().and_then(|d| d.b.as_ref()) {
            Some(b) => Ok(Some(to_series(b)?)),
            None => Ok(None),
        }
    }

    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self).map_err(|e| Error::Archive(e.to_string()))?;
        s.push('\n');
        Ok(s)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Archive(e.to_string()))
    }

    fn validate(&self) -> std::result::Result<(), String> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(format!(
                "unsupported schema_version {} (this build reads {SCHEMA_VERSION})",
                self.schema_version
            ));
        }
        let len_of = |(n, _): (usize, usize)| (n + 1).checked_sub(self.window);
        let la = len_of(self.series_a).ok_or("window longer than the series")?;
        let lb = match (self.join, self.series_b) {
            (JoinKind::SelfJoin, None) => la,
            (JoinKind::AbJoin, Some(b)) => len_of(b).ok_or("window longer than the second series")?,
            _ => return Err("join kind does not match the number of series".into()),
        };
        if !(0.0..=1.0).contains(&self.coverage) {
            return Err(format!("coverage {} outside [0, 1]", self.coverage));
        }
        let check_index = |name: &str, idx: &[Option<usize>]| -> std::result::Result<(), String> {
            if idx.len() != la {
                return Err(format!("{name} has {} entries, expected {la}", idx.len()));
            }
            if idx.iter().flatten().any(|&j| j >= lb) {
                return Err(format!("{name} points past the profile"));
            }
            Ok(())
        };
        if self.values.len() != la {
            return Err(format!("values has {} entries, expected {la}", self.values.len()));
        }
        check_index("index", &self.index)?;
        for (name, idx) in [("left_index", &self.left_index), ("right_index", &self.right_index)] {
            if let Some(idx) = idx {
                check_index(name, idx)?;
            }
        }
        if let Some(m) = &self.multi {
            let d = self.series_a.1;
            if m.values.len() != d || m.index.len() != d || m.dim_order.len() != d {
                return Err(format!("multidimensional section needs {d} rows"));
            }
            for k in 0..d {
                if m.values[k].len() != la || m.dim_order[k].len() != la {
                    return Err(format!("multidimensional row {k} has the wrong length"));
                }
                check_index("multi index", &m.index[k])?;
            }
        }
        if let Some(data) = &self.data {
            let shape = |cols: &[Vec<f64>]| (cols.first().map_or(0, Vec::len), cols.len());
            if shape(&data.a) != self.series_a || data.b.as_deref().map(shape) != self.series_b {
                return Err("embedded data does not match the recorded series shape".into());
            }
        }
        Ok(())
    }
}

fn to_series(cols: &[Vec<f64>]) -> Result<MultiTimeSeries> {
    MultiTimeSeries::new(cols.iter().map(|c| TimeSeries::new(c.clone())).collect::<Result<Vec<_>>>()?)
}

pub fn write_profile(archive: &ProfileArchive, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, archive.to_json()?).map_err(|e| Error::io(path, e))
}

pub fn read_profile(path: impl AsRef<Path>) -> Result<ProfileArchive> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    ProfileArchive::from_json(&text).map_err(|e| Error::Archive(format!("{}: {e}", path.display())))
}

/// A distance on the wire: a JSON number, or "inf" / "-inf" / "nan".
#[derive(Clone, Copy, Debug)]
struct Dist(f64);

impl Serialize for Dist {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v = self.0;
        if v.is_finite() {
            s.serialize_f64(v)
        } else if v.is_nan() {
            s.serialize_str("nan")
        } else if v > 0.0 {
            s.serialize_str("inf")
        } else {
            s.serialize_str("-inf")
        }
    }
}

impl<'de> Deserialize<'de> for Dist {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = Dist;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a number or \"inf\"")
            }
            fn visit_f64<E>(self, v: f64) -> std::result::Result<Dist, E> {
                Ok(Dist(v))
            }
            fn visit_u64<E>(self, v: u64) -> std::result::Result<Dist, E> {
                Ok(Dist(v as f64))
            }
            fn visit_i64<E>(self, v: i64) -> std::result::Result<Dist, E> {
                Ok(Dist(v as f64))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Dist, E> {
                match v {
                    "inf" => Ok(Dist(f64::INFINITY)),
                    "-inf" => Ok(Dist(f64::NEG_INFINITY)),
                    "nan" => Ok(Dist(f64::NAN)),
                    _ => Err(E::custom(format!("unknown distance '{v}'"))),
                }
            }
        }
        d.deserialize_any(V)
    }
}

fn to_dist(v: &[f64]) -> Vec<Dist> {
    v.iter().copied().map(Dist).collect()
}

fn from_dist(v: Vec<Dist>) -> Vec<f64> {
    v.into_iter().map(|d| d.0).collect()
}

fn to_idx(v: &[Option<usize>]) -> Vec<i64> {
    v.iter().map(|i| i.map_or(-1, |i| i as i64)).collect()
}

fn from_idx(v: Vec<i64>) -> std::result::Result<Vec<Option<usize>>, String> {
    v.into_iter()
        .map(|i| match i {
            -1 => Ok(None),
            i if i >= 0 => Ok(Some(i as usize)),
            i => Err(format!("invalid index {i}")),
        })
        .collect()
}

#[derive(Serialize, Deserialize)]
struct Series {
    length: usize,
    dims: usize,
}

#[derive(Serialize, Deserialize)]
struct WireMulti {
    values: Vec<Vec<Dist>>,
    index: Vec<Vec<i64>>,
    dim_order: Vec<Vec<usize>>,
    must_dims: Vec<usize>,
    exc_dims: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct Wire {
    schema_version: u32,
    rng: String,
    mode: Algorithm,
    join: JoinKind,
    window: usize,
    exclusion_zone: usize,
    coverage: f64,
    seed: Option<u64>,
    series: Vec<Series>,
    values: Vec<Dist>,
    index: Vec<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    left_index: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    right_index: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    multi: Option<WireMulti>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    data: Option<DataSection>,
    #[serde(default)]
    results: Results,
}

impl From<ProfileArchive> for Wire {
    fn from(a: ProfileArchive) -> Wire {
        let series = std::iter::once(a.series_a)
            .chain(a.series_b)
            .map(|(length, dims)| Series { length, dims })
            .collect();
        Wire {
            schema_version: a.schema_version,
            rng: a.rng,
            mode: a.mode,
            join: a.join,
            window: a.window,
            exclusion_zone: a.exclusion_zone,
            coverage: a.coverage,
            seed: a.seed,
            series,
            values: to_dist(&a.values),
            index: to_idx(&a.index),
            left_index: a.left_index.as_deref().map(to_idx),
            right_index: a.right_index.as_deref().map(to_idx),
            multi: a.multi.map(|m| WireMulti {
                values: m.values.iter().map(|r| to_dist(r)).collect(),
                index: m.index.iter().map(|r| to_idx(r)).collect(),
                dim_order: m.dim_order,
                must_dims: m.must_dims,
                exc_dims: m.exc_dims,
            }),
            data: a.data,
            results: a.results,
        }
    }
}

impl TryFrom<Wire> for ProfileArchive {
    type Error = String;

    fn try_from(w: Wire) -> std::result::Result<Self, String> {
        if w.schema_version != SCHEMA_VERSION {
            return Err(format!(
                "unsupported schema_version {} (this build reads {SCHEMA_VERSION})",
                w.schema_version
            ));
        }
        let mut series = w.series.into_iter().map(|s| (s.length, s.dims));
        let series_a = series.next().ok_or("no series recorded")?;
        let series_b = series.next();
        let multi = match w.multi {
            Some(m) => Some(MultiSection {
                values: m.values.into_iter().map(from_dist).collect(),
                index: m.index.into_iter().map(from_idx).collect::<std::result::Result<_, _>>()?,
                dim_order: m.dim_order,
                must_dims: m.must_dims,
                exc_dims: m.exc_dims,
            }),
            None => None,
        };
        let archive = ProfileArchive {
            schema_version: w.schema_version,
            rng: w.rng,
            mode: w.mode,
            join: w.join,
            window: w.window,
            exclusion_zone: w.exclusion_zone,
            coverage: w.coverage,
            seed: w.seed,
            series_a,
            series_b,
            values: from_dist(w.values),
            index: from_idx(w.index)?,
            left_index: w.left_index.map(from_idx).transpose()?,
            right_index: w.right_index.map(from_idx).transpose()?,
            multi,
            data: w.data,
            results: w.results,
        };
        archive.validate()?;
        Ok(archive)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::random_walk;
    use crate::profile::{stamp, stomp, ProfileParams};

    #[test]
    fn round_trip_is_exact() {
        let ts = random_walk(300, 5).unwrap();
        let mp = stomp(&ts, None, &ProfileParams::new(20)).unwrap();
        let a = MultiTimeSeries::univariate(ts);
        let archive = ProfileArchive::from_profile(&mp, &a, None, true);
        let back = ProfileArchive::from_json(&archive.to_json().unwrap()).unwrap();
        assert_eq!(back, archive);
        assert_eq!(back.profile(), mp);
        assert_eq!(back.data_a().unwrap(), a);
        for (x, y) in back.values.iter().zip(&mp.values) {
            assert_eq!(x.to_bits(), y.to_bits());
        }
    }

    #[test]
    fn sentinels_and_partial_runs() {
        let ts = random_walk(300, 6).unwrap();
        let mut mp = stamp(&ts, None, &ProfileParams::new(20).s_size(28).seed(3)).unwrap();
        mp.values[4] = f64::INFINITY;
        mp.index[4] = None;
        let archive = ProfileArchive::from_profile(&mp, &MultiTimeSeries::univariate(ts), None, false);
        let json = archive.to_json().unwrap();
        assert!(json.contains("\"inf\""));
        assert!(json.contains("-1"));
        let back = ProfileArchive::from_json(&json).unwrap();
        assert_eq!(back.profile(), mp);
        assert_eq!(back.coverage, mp.coverage);
        assert_eq!(back.seed, Some(3));
        assert!(back.left_index.is_none());
        assert!(matches!(back.data_a(), Err(Error::Stale(_))));
    }

    #[test]
    fn rejects_bad_archives() {
        let ts = random_walk(100, 7).unwrap();
        let mp = stomp(&ts, None, &ProfileParams::new(10)).unwrap();
        let archive = ProfileArchive::from_profile(&mp, &MultiTimeSeries::univariate(ts), None, false);
        let json = archive.to_json().unwrap();
        let future = json.replacen("\"schema_version\": 1", "\"schema_version\": 99", 1);
        let err = ProfileArchive::from_json(&future).unwrap_err().to_string();
        assert!(err.contains("schema_version"), "{err}");
        assert!(ProfileArchive::from_json(&json[..json.len() / 2]).is_err());
        let wrong_len = json.replacen("\"length\": 100", "\"length\": 120", 1);
        assert!(ProfileArchive::from_json(&wrong_len).is_err());
    }
}
