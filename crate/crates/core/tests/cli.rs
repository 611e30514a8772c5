use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use mprofile::discovery::fluss_arc_count;
use mprofile::io::{gen_planted, read_profile, write_series, Format, Planted};

const BIN: &str = env!("CARGO_BIN_EXE_mprofile");

fn mprofile(dir: &Path, args: &[&str]) -> Output {
    Command::new(BIN).args(args).current_dir(dir).output().unwrap()
}

fn ok(dir: &Path, args: &[&str]) -> String {
    let out = mprofile(dir, args);
    assert!(
        out.status.success(),
        "{args:?} exited {:?}: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

/// Compares with `tests/golden/<name>`; `MPROFILE_BLESS=1` rewrites it.
fn golden(name: &str, actual: &str) {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    if std::env::var_os("MPROFILE_BLESS").is_some() {
        fs::write(&path, actual).unwrap();
    }
    let expected = fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing golden file {}", path.display()));
    assert_eq!(actual, expected, "output differs from {name}");
}

fn write_planted(dir: &Path, name: &str, spec: &Planted, seed: u64) -> Vec<usize> {
    let ds = gen_planted(spec, seed).unwrap();
    write_series(dir.join(name), &ds.series, Format::Csv, false).unwrap();
    ds.ground_truth.unwrap().positions
}

#[test]
fn pipeline_summaries_match_golden() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let planted = write_planted(d, "motif.csv", &Planted::motif(1500, 60, 3), 3);

    golden("compute.txt", &ok(d, &["--verbose", "1", "compute", "motif.csv", "--window-size", "60"]));
    ok(d, &["--verbose", "0", "motif", "motif.mp.json", "--n-motifs", "2"]);
    ok(d, &["--verbose", "0", "discord", "motif.mp.json", "--n-discords", "3"]);
    ok(d, &["--verbose", "0", "chain", "motif.mp.json"]);
    ok(d, &["--verbose", "0", "segment", "motif.mp.json"]);
    golden("pipeline.txt", &ok(d, &["summary", "motif.mp.json"]));

    let top = read_profile(d.join("motif.mp.json")).unwrap().results.motif.unwrap().motifs[0].clone();
    let hit = |p: usize| planted.iter().any(|&q| p.abs_diff(q) <= 6);
    assert!(hit(top.anchor) && hit(top.pair), "{top:?} vs {planted:?}");

    for line in ok(d, &["summary", "motif.mp.json"]).lines().filter(|l| l.contains(" = ")) {
        assert!(line.ends_with(' '), "no trailing space: {line:?}");
    }
}

#[test]
fn partial_stamp_summary_matches_golden() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    write_planted(d, "walk.csv", &Planted::motif(800, 40, 2), 5);
    let args = ["--verbose", "1", "compute", "walk.csv", "--window-size", "40", "--mode", "stamp", "--s-size", "30"];
    golden("stamp_partial.txt", &ok(d, &args));
}

#[test]
fn verbose_zero_prints_only_the_path() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    write_planted(d, "x.csv", &Planted::anomaly(600, 40, 1), 1);
    let out = mprofile(d, &["--verbose", "0", "compute", "x.csv", "--window-size", "40", "--out", "p.json"]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "p.json\n");
    assert!(out.stderr.is_empty());

    let out = mprofile(d, &["compute", "x.csv", "--window-size", "40"]);
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("100%") && err.contains("archive: x.mp.json"), "{err}");
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    write_planted(d, "x.csv", &Planted::anomaly(600, 40, 1), 1);
    let code = |args: &[&str]| mprofile(d, args).status.code().unwrap();

    assert_eq!(code(&["compute", "x.csv", "--window-size", "2"]), 2);
    assert_eq!(code(&["compute", "x.csv", "--window-size", "40", "--mode", "fast"]), 2);
    assert_eq!(code(&["compute", "missing.csv", "--window-size", "40"]), 4);
    fs::write(d.join("bad.csv"), "1\n2\nthree\n").unwrap();
    assert_eq!(code(&["compute", "bad.csv", "--window-size", "2"]), 4);
    fs::write(d.join("junk.json"), "{ not json").unwrap();
    assert_eq!(code(&["summary", "junk.json"]), 4);

    ok(d, &["--verbose", "0", "compute", "x.csv", "--window-size", "40", "--mode", "stamp", "--s-size", "5"]);
    let out = mprofile(d, &["chain", "x.mp.json"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8(out.stderr).unwrap().starts_with("error: "));
    assert_eq!(code(&["segment", "x.mp.json"]), 3);
    assert_eq!(code(&["plotdata", "x.mp.json", "--kind", "chain"]), 3);

    ok(d, &["--verbose", "0", "compute", "x.csv", "--window-size", "40", "--keep-data", "false", "--out", "nd.json"]);
    assert_eq!(code(&["motif", "nd.json"]), 3);
}

#[test]
fn steps_write_to_out_without_touching_input() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    write_planted(d, "x.csv", &Planted::anomaly(600, 40, 1), 2);
    ok(d, &["--verbose", "0", "compute", "x.csv", "--window-size", "40"]);
    let before = fs::read(d.join("x.mp.json")).unwrap();
    ok(d, &["--verbose", "0", "discord", "x.mp.json", "--out", "y.json"]);
    assert_eq!(fs::read(d.join("x.mp.json")).unwrap(), before);
    assert!(read_profile(d.join("y.json")).unwrap().results.discord.is_some());
}

fn table(path: &Path) -> Vec<Vec<String>> {
    fs::read_to_string(path)
        .unwrap()
        .lines()
        .skip(1)
        .map(|l| l.split('\t').map(str::to_string).collect())
        .collect()
}

#[test]
fn segment_plot_counts_match_arc_counts() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    write_planted(d, "r.csv", &Planted::regime_change(2000, 0.5), 4);
    ok(d, &["--verbose", "0", "compute", "r.csv", "--window-size", "50"]);
    ok(d, &["--verbose", "0", "segment", "r.mp.json"]);
    let listing = ok(d, &["plotdata", "r.mp.json", "--kind", "segment"]);
    assert!(listing.lines().any(|l| l.ends_with("r.svg")));

    let arcs = fluss_arc_count(&read_profile(d.join("r.mp.json")).unwrap().profile()).unwrap();
    let rows = table(&d.join("r_segment.tsv"));
    let plotted: Vec<usize> = rows.iter().map(|r| r[1].parse().unwrap()).collect();
    assert_eq!(plotted, arcs);
    assert_eq!(plotted.iter().sum::<usize>(), arcs.iter().sum::<usize>());
    assert_eq!(table(&d.join("r_arcs.tsv")).len(), arcs.len());
    assert_eq!(table(&d.join("r_boundaries.tsv")).len(), 2);
}

#[test]
fn chain_plot_has_one_trace_per_link() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let planted = write_planted(d, "c.csv", &Planted::chain(1200, 50, 6, 0.15), 600);
    ok(d, &["--verbose", "0", "compute", "c.csv", "--window-size", "50"]);
    ok(d, &["--verbose", "0", "chain", "c.mp.json"]);
    ok(d, &["plotdata", "c.mp.json", "--kind", "chain"]);

    let chain: Vec<usize> = table(&d.join("c_chain.tsv")).iter().map(|r| r[1].parse().unwrap()).collect();
    assert_eq!(chain.len(), 6, "chain {chain:?} vs planted {planted:?}");
    let patterns = table(&d.join("c_patterns.tsv"));
    assert_eq!(patterns.len(), 50);
    assert!(patterns.iter().all(|r| r.len() == 1 + 6));
    let svg = fs::read_to_string(d.join("c.svg")).unwrap();
    assert!(svg.starts_with("<svg") || svg.starts_with("<?xml"));
}

#[test]
fn flat_profile_plot_has_no_bars() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    fs::write(d.join("flat.csv"), "3.5\n".repeat(300)).unwrap();
    ok(d, &["--verbose", "0", "compute", "flat.csv", "--window-size", "20"]);
    ok(d, &["plotdata", "flat.mp.json", "--out", "flat_plot"]);
    let rows = table(&d.join("flat_plot_profile.tsv"));
    assert_eq!(rows.len(), 281);
    assert!(rows.iter().all(|r| r[1] == "0"));
    let svg = fs::read_to_string(d.join("flat_plot.svg")).unwrap();
    assert_eq!(svg.matches("<line").count(), 0);
    assert!(svg.contains("<polyline"));
}

#[test]
fn generate_then_compute() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert_eq!(ok(d, &["--verbose", "0", "generate", "walk", "--n", "500", "--out", "w.csv"]), "w.csv\n");
    assert_eq!(fs::read_to_string(d.join("w.csv")).unwrap().lines().count(), 500);
    let summary = ok(d, &["--verbose", "1", "compute", "w.csv", "--window-size", "32"]);
    assert!(summary.contains("Profile size = 469 "), "{summary}");
}
