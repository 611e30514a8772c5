//! Plot data: tab-separated tables plus an SVG rendering.
//!
//! The tables are the stable interface; the SVG is a quick look in the
//! layout of the usual matrix profile figures (profile with motif bars, arc
//! diagram over data and corrected arc curve, chain arcs with stacked
//! patterns).

use std::fmt::Write;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::io::ProfileArchive;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PlotKind {
    Profile,
    Motif,
    Segment,
    Chain,
}

impl FromStr for PlotKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "profile" => Ok(PlotKind::Profile),
            "motif" => Ok(PlotKind::Motif),
            "segment" => Ok(PlotKind::Segment),
            "chain" => Ok(PlotKind::Chain),
            _ => Err(Error::param(format!(
                "unknown plot kind '{s}' (expected profile, motif, segment or chain)"
            ))),
        }
    }
}

/// Rendered plot: named tables and the SVG document.
#[derive(Clone, Debug, PartialEq)]
pub struct PlotOutput {
    /// `(suffix, contents)`, written as `<prefix>_<suffix>.tsv`.
    pub tables: Vec<(String, String)>,
    pub svg: String,
}

/// Paths written by [`write_plot`].
#[derive(Clone, Debug, PartialEq)]
pub struct PlotFiles {
    pub tables: Vec<PathBuf>,
    pub svg: PathBuf,
}

pub fn render(archive: &ProfileArchive, kind: PlotKind) -> Result<PlotOutput> {
    let data = archive.data.as_ref().map(|d| d.a[0].as_slice());
    let mut tables = Vec::new();
    let mut fig = Figure::default();

    let mut profile = String::from("index\tdistance\tnearest\n");
    for (i, (v, j)) in archive.values.iter().zip(&archive.index).enumerate() {
        let _ = writeln!(profile, "{i}\t{v}\t{}", j.map_or(-1, |j| j as i64));
    }
    tables.push(("profile".to_string(), profile));
    if let Some(data) = &archive.data {
        let mut t = String::from("index");
        for k in 1..=data.a.len() {
            let _ = write!(t, "\tx{k}");
        }
        t.push('\n');
        for i in 0..data.a[0].len() {
            let _ = write!(t, "{i}");
            for col in &data.a {
                let _ = write!(t, "\t{}", col[i]);
            }
            t.push('\n');
        }
        tables.push(("data".to_string(), t));
    }

    match kind {
        PlotKind::Profile => {
            if let Some(x) = data {
                fig.panels.push(Panel::line("data", x));
            }
            fig.panels.push(Panel::line("matrix profile", &archive.values));
        }
        PlotKind::Motif => {
            let motifs = archive
                .results
                .motif
                .as_ref()
                .ok_or_else(|| Error::Stale("the archive holds no motif result".into()))?;
            let mut t = String::from("motif\trole\tposition\tdistance\n");
            let mut bars = Vec::new();
            for (k, m) in motifs.motifs.iter().enumerate() {
                let _ = writeln!(t, "{k}\tanchor\t{}\t{}", m.anchor, m.distance);
                let _ = writeln!(t, "{k}\tpair\t{}\t{}", m.pair, m.distance);
                bars.push((m.anchor, k));
                bars.push((m.pair, k));
                for &n in &m.neighbors {
                    let _ = writeln!(t, "{k}\tneighbor\t{n}\t");
                    bars.push((n, k));
                }
            }
            tables.push(("motifs".to_string(), t));
            if let Some(x) = data {
                let mut p = Panel::line("data", x);
                p.bars = bars.clone();
                fig.panels.push(p);
            }
            let mut p = Panel::line("matrix profile", &archive.values);
            p.bars = bars;
            fig.panels.push(p);
        }
        PlotKind::Segment => {
            let fluss = archive
                .results
                .fluss
                .as_ref()
                .ok_or_else(|| Error::Stale("the archive holds no segmentation result".into()))?;
            let mut t = String::from("index\tarc_count\tcac\n");
            for (i, (c, v)) in fluss.arc_counts.iter().zip(&fluss.cac).enumerate() {
                let _ = writeln!(t, "{i}\t{c}\t{v}");
            }
            tables.push(("segment".to_string(), t));
            let mut arcs = String::from("from\tto\n");
            let mut arc_list = Vec::new();
            for (j, idx) in archive.index.iter().enumerate() {
                if let Some(k) = *idx {
                    let _ = writeln!(arcs, "{j}\t{k}");
                    arc_list.push((j, k));
                }
            }
            tables.push(("arcs".to_string(), arcs));
            let mut b = String::from("rank\tposition\n");
            for (r, s) in fluss.segments.iter().enumerate() {
                let _ = writeln!(b, "{r}\t{s}");
            }
            tables.push(("boundaries".to_string(), b));

            let bars: Vec<(usize, usize)> = fluss.segments.iter().map(|&s| (s, 0)).collect();
            let mut p = Panel::arcs("arcs", archive.values.len(), thin(arc_list, 4000));
            p.bars = bars.clone();
            fig.panels.push(p);
            if let Some(x) = data {
                let mut p = Panel::line("data", x);
                p.bars = bars.clone();
                fig.panels.push(p);
            }
            let mut p = Panel::line("corrected arc curve", &fluss.cac);
            p.bars = bars;
            fig.panels.push(p);
        }
        PlotKind::Chain => {
            let chains = archive
                .results
                .chain
                .as_ref()
                .ok_or_else(|| Error::Stale("the archive holds no chain result".into()))?;
            let best = &chains.best;
            let mut t = String::from("order\tposition\n");
            for (k, p) in best.iter().enumerate() {
                let _ = writeln!(t, "{k}\t{p}");
            }
            tables.push(("chain".to_string(), t));
            let links: Vec<(usize, usize)> = best.windows(2).map(|p| (p[0], p[1])).collect();
            let mut p = Panel::arcs("chain", archive.values.len(), links);
            p.bars = best.iter().map(|&i| (i, 0)).collect();
            fig.panels.push(p);
            if let Some(x) = data {
                let w = archive.window;
                let patterns: Vec<Vec<f64>> = best.iter().map(|&i| znorm(&x[i..i + w])).collect();
                let mut t = String::from("t");
                for p in best {
                    let _ = write!(t, "\tp{p}");
                }
                t.push('\n');
                for s in 0..w {
                    let _ = write!(t, "{s}");
                    for pat in &patterns {
                        let _ = write!(t, "\t{}", pat[s]);
                    }
                    t.push('\n');
                }
                tables.push(("patterns".to_string(), t));

                let mut p = Panel::line("data", x);
                p.bars = best.iter().map(|&i| (i, 0)).collect();
                fig.panels.push(p);
                // stacked upward, the offset is for display only
                let shifted: Vec<Vec<f64>> = patterns
                    .iter()
                    .enumerate()
                    .map(|(k, pat)| pat.iter().map(|v| v + 3.0 * k as f64).collect())
                    .collect();
                fig.panels.push(Panel {
                    title: "patterns (y-shifted)".to_string(),
                    lines: shifted,
                    x_len: w,
                    ..Default::default()
                });
            }
        }
    }
    Ok(PlotOutput { tables, svg: fig.to_svg() })
}

/// Renders and writes `<prefix>_<table>.tsv` files and `<prefix>.svg`.
pub fn write_plot(archive: &ProfileArchive, kind: PlotKind, prefix: impl AsRef<Path>) -> Result<PlotFiles> {
    let prefix = prefix.as_ref();
    let out = render(archive, kind)?;
    let base = prefix.file_name().map_or_else(|| "plot".into(), |s| s.to_string_lossy().into_owned());
    let mut tables = Vec::new();
    for (suffix, contents) in &out.tables {
        let path = prefix.with_file_name(format!("{base}_{suffix}.tsv"));
        fs::write(&path, contents).map_err(|e| Error::io(&path, e))?;
        tables.push(path);
    }
    let svg = prefix.with_file_name(format!("{base}.svg"));
    fs::write(&svg, &out.svg).map_err(|e| Error::io(&svg, e))?;
    Ok(PlotFiles { tables, svg })
}

fn znorm(x: &[f64]) -> Vec<f64> {
    let n = x.len() as f64;
    let mean = x.iter().sum::<f64>() / n;
    let sd = (x.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n).sqrt();
    x.iter().map(|v| if sd > 0.0 { (v - mean) / sd } else { 0.0 }).collect()
}

/// Keeps at most `max` evenly spaced items.
fn thin<T>(items: Vec<T>, max: usize) -> Vec<T> {
    if items.len() <= max {
        return items;
    }
    let step = items.len().div_ceil(max);
    items.into_iter().step_by(step).collect()
}

const WIDTH: f64 = 960.0;
const PANEL_H: f64 = 170.0;
const MARGIN: f64 = 48.0;
const COLORS: [&str; 6] = ["#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#8c564b"];

#[derive(Default)]
struct Panel {
    title: String,
    lines: Vec<Vec<f64>>,
    /// `(position, color slot)`.
    bars: Vec<(usize, usize)>,
    arcs: Vec<(usize, usize)>,
    x_len: usize,
}

impl Panel {
    fn line(title: &str, values: &[f64]) -> Self {
        Panel {
            title: title.to_string(),
            lines: vec![values.to_vec()],
            x_len: values.len(),
            ..Default::default()
        }
    }

    fn arcs(title: &str, x_len: usize, arcs: Vec<(usize, usize)>) -> Self {
        Panel {
            title: title.to_string(),
            arcs,
            x_len,
            ..Default::default()
        }
    }
}

#[derive(Default)]
struct Figure {
    panels: Vec<Panel>,
}

impl Figure {
    fn to_svg(&self) -> String {
        let height = MARGIN + self.panels.len() as f64 * (PANEL_H + MARGIN);
        let mut s = String::new();
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{height}" viewBox="0 0 {WIDTH} {height}" font-family="sans-serif" font-size="12">"#
        );
        let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
        for (k, p) in self.panels.iter().enumerate() {
            let top = MARGIN + k as f64 * (PANEL_H + MARGIN);
            draw_panel(&mut s, p, top);
        }
        s.push_str("</svg>\n");
        s
    }
}

fn draw_panel(s: &mut String, p: &Panel, top: f64) {
    let (left, right) = (MARGIN, WIDTH - MARGIN / 2.0);
    let bottom = top + PANEL_H;
    let xs = |i: f64| left + (right - left) * i / (p.x_len.max(2) - 1) as f64;
    let _ = writeln!(s, r#"<g class="panel"><text x="{left}" y="{:.1}">{}</text>"#, top - 8.0, p.title);
    let _ = writeln!(
        s,
        r##"<rect x="{left}" y="{top:.1}" width="{:.1}" height="{PANEL_H}" fill="none" stroke="#999"/>"##,
        right - left
    );

    let finite = p.lines.iter().flatten().copied().filter(|v| v.is_finite());
    let (lo, hi) = finite.fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), v| (a.min(v), b.max(v)));
    let (lo, hi) = if lo > hi {
        (0.0, 1.0)
    } else if hi - lo < 1e-12 {
        (lo - 0.5, hi + 0.5)
    } else {
        (lo, hi)
    };
    let ys = |v: f64| bottom - 6.0 - (PANEL_H - 12.0) * (v - lo) / (hi - lo);

    for &(pos, slot) in &p.bars {
        let x = xs(pos as f64);
        let _ = writeln!(
            s,
            r#"<line x1="{x:.2}" y1="{top:.1}" x2="{x:.2}" y2="{bottom:.1}" stroke="{}" stroke-width="1.5" opacity="0.7"/>"#,
            COLORS[slot % COLORS.len()]
        );
    }
    for line in &p.lines {
        let mut run = Vec::new();
        let flush = |run: &mut Vec<String>, s: &mut String| {
            if run.len() > 1 {
                let _ = writeln!(
                    s,
                    r##"<polyline fill="none" stroke="#1f77b4" stroke-width="1" points="{}"/>"##,
                    run.join(" ")
                );
            }
            run.clear();
        };
        for (i, &v) in line.iter().enumerate() {
            if v.is_finite() {
                run.push(format!("{:.2},{:.2}", xs(i as f64), ys(v)));
            } else {
                flush(&mut run, s);
            }
        }
        flush(&mut run, s);
    }
    for &(a, b) in &p.arcs {
        let (x1, x2) = (xs(a as f64), xs(b as f64));
        let r = ((x2 - x1).abs() / 2.0).max(0.5);
        let ry = r.min(PANEL_H - 4.0);
        let _ = writeln!(
            s,
            r##"<path d="M {x1:.2} {bottom:.1} A {r:.2} {ry:.2} 0 0 1 {x2:.2} {bottom:.1}" fill="none" stroke="#7f7f7f" stroke-width="0.5" opacity="0.5"/>"##
        );
    }
    s.push_str("</g>\n");
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn thinning_keeps_order() {
        assert_eq!(thin((0..10).collect(), 20), (0..10).collect::<Vec<_>>());
        assert_eq!(thin((0..10).collect(), 5), vec![0, 2, 4, 6, 8]);
    }

    #[test]
    fn flat_panel_renders() {
        let fig = Figure {
            panels: vec![Panel::line("flat", &[2.0; 10])],
        };
        let svg = fig.to_svg();
        assert_eq!(svg.matches("<polyline").count(), 1);
        assert_eq!(svg.matches("<line").count(), 0);
    }

    #[test]
    fn gaps_break_lines() {
        let fig = Figure {
            panels: vec![Panel::line("gap", &[1.0, 2.0, f64::INFINITY, 3.0, 4.0])],
        };
        assert_eq!(fig.to_svg().matches("<polyline").count(), 2);
    }

    #[test]
    fn kind_names() {
        assert_eq!("segment".parse::<PlotKind>().unwrap(), PlotKind::Segment);
        assert!("bars".parse::<PlotKind>().is_err());
    }
}
