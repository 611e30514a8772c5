mod common;

use std::fs;
use std::path::Path;

use common::walk;
use mprofile::discovery::{find_chains, find_discord, find_motif, fluss, MotifParams};
use mprofile::io::{
    gen_planted, random_steps, random_walk, read_profile, read_series, walk_from_steps, write_profile, write_series,
    Column, Format, Planted, PlantedKind, ProfileArchive, ReadOptions,
};
use mprofile::profile::{compute, mstomp, stamp, stomp, Algorithm, ProfileParams};
use mprofile::{Error, MultiTimeSeries, TimeSeries};
use proptest::prelude::*;

fn opts(path: &Path) -> ReadOptions {
    ReadOptions::for_path(path)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn delimited_round_trip(
        cols in prop::collection::vec(prop::collection::vec(-1e12f64..1e12, 5..60), 1..4),
        tsv in any::<bool>(),
        header in any::<bool>(),
    ) {
        let len = cols.iter().map(Vec::len).min().unwrap();
        let cols: Vec<Vec<f64>> = cols.into_iter().map(|mut c| { c.truncate(len); c }).collect();
        let mts = MultiTimeSeries::from_columns(cols).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let (format, name) = if tsv { (Format::Tsv, "x.tsv") } else { (Format::Csv, "x.csv") };
        let path = dir.path().join(name);
        write_series(&path, &mts, format, header).unwrap();
        let read = read_series(&path, &ReadOptions { has_header: header, ..opts(&path) }).unwrap();
        prop_assert_eq!(read.series, mts);
    }
}

#[test]
fn long_single_column_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("long.csv");
    let body: String = (0..10_001).map(|i| format!("{}\n", (i as f64 * 0.01).sin())).collect();
    fs::write(&path, body).unwrap();
    let ds = read_series(&path, &opts(&path)).unwrap();
    assert_eq!(ds.series.n_dims(), 1);
    assert_eq!(ds.series.len(), 10_001);
    assert_eq!(ds.univariate().unwrap().values()[10_000], (10_000f64 * 0.01).sin());
}

#[test]
fn three_column_file_is_three_dimensions() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("three.tsv");
    let body: String = (0..50).map(|i| format!("{i}\t{}\t{}\n", 2 * i, -i)).collect();
    fs::write(&path, body).unwrap();
    let ds = read_series(&path, &opts(&path)).unwrap();
    assert_eq!(ds.series.n_dims(), 3);
    assert_eq!(ds.series.dim(2).values()[7], -7.0);
    assert!(matches!(ds.univariate(), Err(Error::Parameter(_))));

    let picked = read_series(&path, &ReadOptions { columns: vec![Column::Index(1)], ..opts(&path) }).unwrap();
    assert_eq!(picked.univariate().unwrap().values()[3], 6.0);
}

#[test]
fn bad_cell_reports_row_and_column() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.csv");
    fs::write(&path, "t,v\n1,2\n3,oops\n").unwrap();
    let err = read_series(&path, &ReadOptions { has_header: true, ..opts(&path) }).unwrap_err();
    match &err {
        Error::Parse { row, column, .. } => assert_eq!((*row, *column), (3, 2)),
        other => panic!("unexpected {other:?}"),
    }
    assert_eq!(err.exit_code(), 4);
}

#[test]
fn missing_file_is_an_io_error() {
    let err = read_series("/nonexistent/x.csv", &ReadOptions::default()).unwrap_err();
    assert!(matches!(err, Error::Io { .. }));
}

fn full_archive() -> ProfileArchive {
    let ts = walk(900, 8);
    let data = MultiTimeSeries::univariate(ts.clone());
    let mp = stomp(&ts, None, &ProfileParams::new(40)).unwrap();
    let mut ar = ProfileArchive::from_profile(&mp, &data, None, true);
    ar.results.motif = Some(find_motif(&mp, &data, &MotifParams::default()).unwrap());
    ar.results.discord = Some(find_discord(&mp, 3, None).unwrap());
    ar.results.chain = Some(find_chains(&mp).unwrap());
    ar.results.fluss = Some(fluss(&mp, 2, 5.0).unwrap());
    ar
}

#[test]
fn archive_round_trip_is_exact() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("a.mp.json");
    let ar = full_archive();
    write_profile(&ar, &path).unwrap();
    let back = read_profile(&path).unwrap();
    assert_eq!(back, ar);
    let bits = |v: &[f64]| v.iter().map(|x| x.to_bits()).collect::<Vec<_>>();
    assert_eq!(bits(&back.values), bits(&ar.values));
    assert_eq!(back.to_json().unwrap(), fs::read_to_string(&path).unwrap());
    assert_eq!(back.profile(), ar.profile());
}

#[test]
fn archive_keeps_partial_and_multi_profiles() {
    let ts = walk(700, 3);
    let data = MultiTimeSeries::univariate(ts.clone());
    let partial = stamp(&ts, None, &ProfileParams::new(30).s_size(25).seed(9)).unwrap();
    let ar = ProfileArchive::from_profile(&partial, &data, None, false);
    let back = ProfileArchive::from_json(&ar.to_json().unwrap()).unwrap();
    assert_eq!(back.profile(), partial);
    assert!(back.data.is_none());
    assert!(matches!(back.data_a(), Err(Error::Stale(_))));

    let m = MultiTimeSeries::new(vec![walk(300, 1), walk(300, 2), walk(300, 3)]).unwrap();
    let mmp = mstomp(&m, &ProfileParams::new(20), &[1], &[]).unwrap();
    let ar = ProfileArchive::from_multi(&mmp, &m, true);
    let back = ProfileArchive::from_json(&ar.to_json().unwrap()).unwrap();
    assert_eq!(back.multi_profile().unwrap(), mmp);
    assert_eq!(back.data_a().unwrap(), m);
}

#[test]
fn archive_from_ab_join_keeps_both_series() {
    let a = MultiTimeSeries::univariate(walk(400, 1));
    let b = MultiTimeSeries::univariate(walk(300, 2));
    let c = compute(Algorithm::Stomp, &a, Some(&b), &ProfileParams::new(25), &[], &[]).unwrap();
    let ar = ProfileArchive::from_computed(&c, &a, Some(&b), true);
    let back = ProfileArchive::from_json(&ar.to_json().unwrap()).unwrap();
    assert_eq!(back.series_b, Some((300, 1)));
    assert_eq!(back.data_b().unwrap(), Some(b));
}

#[test]
fn corrupt_archives_are_rejected() {
    let json = full_archive().to_json().unwrap();
    for broken in [
        json.replacen("\"schema_version\": 1", "\"schema_version\": 7", 1),
        json[..json.len() / 2].to_string(),
        "{}".to_string(),
    ] {
        let err = ProfileArchive::from_json(&broken).unwrap_err();
        assert_eq!(err.exit_code(), 4, "{err}");
    }
}

#[test]
fn random_walks_are_seeded() {
    let steps = random_steps(1000, 5);
    assert!(steps.iter().all(|s| *s == 1 || *s == -1));
    assert_eq!(steps, random_steps(1000, 5));
    assert_ne!(steps, random_steps(1000, 6));
    let w = random_walk(1000, 5).unwrap();
    assert_eq!(w.values(), walk_from_steps(&steps).as_slice());
    assert_eq!(w.values()[0].abs(), 1.0);
}

#[test]
fn generators_are_deterministic_and_labelled() {
    let specs = [
        Planted::motif(1000, 50, 3),
        Planted::regime_change(1000, 0.4),
        Planted::chain(1000, 40, 5, 0.1),
        Planted::anomaly(1000, 50, 2),
        Planted::multi_motif(800, 3, vec![0, 2], 40),
    ];
    for spec in specs {
        let a = gen_planted(&spec, 1).unwrap();
        let b = gen_planted(&spec, 1).unwrap();
        assert_eq!(a.series, b.series);
        let truth = a.ground_truth.as_ref().unwrap();
        assert_eq!(truth.kind, spec.kind());
        assert!(truth.positions.iter().all(|&p| p < a.series.len()));
        let all_finite = a.series.dims().iter().all(|d: &TimeSeries| d.values().iter().all(|x| x.is_finite()));
        assert!(all_finite);
    }
    let mm = gen_planted(&Planted::multi_motif(800, 3, vec![0, 2], 40), 2).unwrap();
    assert_eq!(mm.series.n_dims(), 3);
    assert_eq!(mm.ground_truth.unwrap().kind, PlantedKind::MultiMotif);
}
