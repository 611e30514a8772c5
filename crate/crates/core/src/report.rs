//! Plain-text summaries of profiles and discovery results.
//!
//! Each block is a title, an underline and `key = value` lines, every line
//! ending in a single space. Positions are zero-based.

use std::fmt::{self, Display, Write};

use crate::discovery::{ChainSet, DiscordSet, FlussResult, MotifSet};
use crate::io::ProfileArchive;

fn title(out: &mut String, name: &str) {
    let _ = writeln!(out, "{name}\n{}", "-".repeat(name.len()));
}

fn joined(xs: &[usize]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn bracketed(xs: &[usize]) -> String {
    format!("[{}]", xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", "))
}

/// `x` rounded to three decimals, shortest form.
fn three(x: f64) -> String {
    format!("{}", (x * 1000.0).round() / 1000.0)
}

fn plural(n: usize, word: &str) -> String {
    if n == 1 {
        format!("{n} {word}")
    } else {
        format!("{n} {word}s")
    }
}

/// The `Matrix Profile` block followed by every result the archive holds.
pub fn summary(archive: &ProfileArchive) -> String {
    let mut out = profile_block(archive);
    let r = &archive.results;
    let blocks: [Option<String>; 4] = [
        r.motif.as_ref().map(|m| m.to_string()),
        r.discord.as_ref().map(|d| d.to_string()),
        r.fluss.as_ref().map(|f| f.to_string()),
        r.chain.as_ref().map(|c| c.to_string()),
    ];
    for block in blocks.into_iter().flatten() {
        out.push('\n');
        out.push_str(&block);
    }
    out
}

pub fn profile_block(archive: &ProfileArchive) -> String {
    let mut out = String::new();
    title(&mut out, "Matrix Profile");
    let _ = writeln!(out, "Profile size = {} ", archive.values.len());
    let _ = writeln!(out, "Window size = {} ", archive.window);
    let _ = writeln!(out, "Exclusion zone = {} ", archive.exclusion_zone);
    if let Some(m) = &archive.multi {
        let _ = writeln!(out, "Profile dimensions = {} ", m.values.len());
    }
    if archive.coverage < 1.0 {
        let _ = writeln!(out, "Coverage = {} ", three(archive.coverage));
    }
    if archive.data.is_some() {
        let (na, d) = archive.series_a;
        match archive.series_b {
            None => {
                let _ = writeln!(
                    out,
                    "Contains 1 set of data with {na} observations and {} ",
                    plural(d, "dimension")
                );
            }
            Some((nb, _)) => {
                let _ = writeln!(
                    out,
                    "Contains 2 sets of data with {na} and {nb} observations and {} ",
                    plural(d, "dimension")
                );
            }
        }
    }
    out
}

impl Display for MotifSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        title(&mut out, "Motif");
        let _ = writeln!(out, "Motif pairs founded = {} ", self.motifs.len());
        let pairs: String = self
            .motifs
            .iter()
            .map(|m| format!("{} ", bracketed(&[m.anchor.min(m.pair), m.anchor.max(m.pair)])))
            .collect();
        let _ = writeln!(out, "Motif pairs indexes = {pairs} ");
        let neighbors: String = self.motifs.iter().map(|m| format!("{} ", bracketed(&m.neighbors))).collect();
        let _ = writeln!(out, "Motif pairs neighbors = {neighbors} ");
        if self.motifs.iter().any(|m| m.dims.is_some()) {
            let dims: String = self
                .motifs
                .iter()
                .map(|m| format!("{} ", bracketed(m.dims.as_deref().unwrap_or(&[]))))
                .collect();
            let _ = writeln!(out, "Motif pairs dimensions = {dims} ");
        }
        f.write_str(&out)
    }
}

impl Display for DiscordSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        title(&mut out, "Discord");
        let _ = writeln!(out, "Discords founded = {} ", self.discords.len());
        let _ = writeln!(out, "Discords indexes = {} ", joined(&self.indexes()));
        f.write_str(&out)
    }
}

impl Display for FlussResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        title(&mut out, "Arc Count");
        let _ = writeln!(out, "Profile size = {} ", self.arc_counts.len());
        let _ = writeln!(
            out,
            "Minimum normalized count = {} at index {} ",
            three(self.min_value),
            self.min_index
        );
        out.push('\n');
        title(&mut out, "Fluss");
        let _ = writeln!(out, "Segments = {} ", self.segments.len());
        let _ = writeln!(out, "Segmentation indexes = {} ", joined(&self.segments));
        f.write_str(&out)
    }
}

impl Display for ChainSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        title(&mut out, "Chain");
        let _ = writeln!(out, "Chains founded = {} ", self.count());
        let _ = writeln!(out, "Best Chain size = {} ", self.best.len());
        let _ = writeln!(out, "Best Chain indexes = {} ", joined(&self.best));
        f.write_str(&out)
    }
}
