use std::fs::File;
use std::path::Path;
use std::str::FromStr;

use super::Dataset;
use crate::{Error, MultiTimeSeries, Result, TimeSeries};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Format {
    #[default]
    Csv,
    Tsv,
}

impl Format {
    pub fn delimiter(self) -> u8 {
        match self {
            Format::Csv => b',',
            Format::Tsv => b'\t',
        }
    }

    /// Tab-separated for `.tsv` and `.tab` files, comma-separated otherwise.
    pub fn from_path(path: &Path) -> Format {
        match path.extension().and_then(|e| e.to_str()).map(str::to_ascii_lowercase).as_deref() {
            Some("tsv" | "tab") => Format::Tsv,
            _ => Format::Csv,
        }
    }
}

/// A column chosen by zero-based position or by header name.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Column {
    Index(usize),
    Name(String),
}

impl FromStr for Column {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::param("empty column name"));
        }
        Ok(s.parse().map(Column::Index).unwrap_or_else(|_| Column::Name(s.to_string())))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ReadOptions {
    pub format: Format,
    pub has_header: bool,
    /// Columns to read, in order; all columns when empty.
    pub columns: Vec<Column>,
}

impl ReadOptions {
    /// Format guessed from the extension, no header, all columns.
    pub fn for_path(path: &Path) -> Self {
        ReadOptions {
            format: Format::from_path(path),
            ..Default::default()
        }
    }
}

/// Reads one series per selected column. Rows and columns in errors are
/// one-based, counting the header line.
pub fn read_series(path: impl AsRef<Path>, opts: &ReadOptions) -> Result<Dataset> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    let mut reader = csv::ReaderBuilder::new()
        .delimiter(opts.format.delimiter())
        .has_headers(opts.has_header)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(file);
    let parse_err = |row: usize, column: usize, reason: String| Error::Parse {
        path: path.to_path_buf(),
        row,
        column,
        reason,
    };
    let csv_err = |e: csv::Error| {
        let row = e.position().map_or(0, |p| p.line() as usize);
        parse_err(row, 0, e.to_string())
    };

    let headers: Option<Vec<String>> = if opts.has_header {
        Some(reader.headers().map_err(csv_err)?.iter().map(str::to_string).collect())
    } else {
        None
    };

    let mut selected: Option<Vec<usize>> = None;
    let mut width = 0;
    let mut columns: Vec<Vec<f64>> = Vec::new();
    for record in reader.records() {
        let record = record.map_err(csv_err)?;
        let row = record.position().map_or(0, |p| p.line() as usize);
        let sel = match &selected {
            Some(sel) => {
                if record.len() != width {
                    return Err(parse_err(
                        row,
                        record.len().min(width) + 1,
                        format!("expected {width} fields, found {}", record.len()),
                    ));
                }
                sel
            }
            None => {
                width = record.len();
                let sel = resolve_columns(&opts.columns, width, headers.as_deref())?;
                columns = vec![Vec::new(); sel.len()];
                selected.insert(sel)
            }
        };
        for (out, &c) in columns.iter_mut().zip(sel.iter()) {
            let cell = &record[c];
            let value: f64 = cell
                .parse()
                .map_err(|_| parse_err(row, c + 1, format!("not a number: '{cell}'")))?;
            if !value.is_finite() {
                return Err(parse_err(row, c + 1, format!("non-finite value '{cell}'")));
            }
            out.push(value);
        }
    }
    if columns.is_empty() || columns[0].is_empty() {
        return Err(parse_err(0, 0, "no data rows".into()));
    }
    let series = MultiTimeSeries::new(columns.into_iter().map(TimeSeries::new).collect::<Result<Vec<_>>>()?)?;
    Ok(Dataset {
        name: path.file_stem().map_or_else(String::new, |s| s.to_string_lossy().into_owned()),
        series,
        source: path.display().to_string(),
        ground_truth: None,
    })
}

fn resolve_columns(columns: &[Column], width: usize, headers: Option<&[String]>) -> Result<Vec<usize>> {
    if columns.is_empty() {
        return Ok((0..width).collect());
    }
    columns
        .iter()
        .map(|c| match c {
            Column::Index(i) if *i < width => Ok(*i),
            Column::Index(i) => Err(Error::param(format!("column {i} out of range, the file has {width}"))),
            Column::Name(name) => headers
                .and_then(|h| h.iter().position(|x| x == name))
                .ok_or_else(|| Error::param(format!("no column named '{name}'"))),
        })
        .collect()
}

/// Writes one column per dimension at full round-trip precision.
pub fn write_series(path: impl AsRef<Path>, series: &MultiTimeSeries, format: Format, header: bool) -> Result<()> {
    let path = path.as_ref();
    let io_err = |e: csv::Error| match e.into_kind() {
        csv::ErrorKind::Io(e) => Error::io(path, e),
        other => Error::Archive(format!("{other:?}")),
    };
    let mut writer = csv::WriterBuilder::new()
        .delimiter(format.delimiter())
        .from_path(path)
        .map_err(io_err)?;
    if header {
        let names: Vec<String> = (1..=series.n_dims()).map(|k| format!("x{k}")).collect();
        writer.write_record(&names).map_err(io_err)?;
    }
    let mut row = Vec::with_capacity(series.n_dims());
    for i in 0..series.len() {
        row.clear();
        row.extend(series.dims().iter().map(|d| d.values()[i].to_string()));
        writer.write_record(&row).map_err(io_err)?;
    }
    writer.flush().map_err(|e| Error::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn file(contents: &str, ext: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::Builder::new().suffix(ext).tempfile().unwrap();
        f.write_all(contents.as_bytes()).unwrap();
        f
    }

    #[test]
    fn reads_selected_columns() {
        let f = file("a,b,c\n1,2,3\n4,5,6\n7,8,9\n10,11,12\n", ".csv");
        let opts = ReadOptions {
            has_header: true,
            columns: vec![Column::Name("c".into()), Column::Index(0)],
            ..ReadOptions::for_path(f.path())
        };
        let ds = read_series(f.path(), &opts).unwrap();
        assert_eq!(ds.series.n_dims(), 2);
        assert_eq!(ds.series.dim(0).values(), &[3.0, 6.0, 9.0, 12.0]);
        assert_eq!(ds.series.dim(1).values(), &[1.0, 4.0, 7.0, 10.0]);
    }

    #[test]
    fn tab_separated() {
        let f = file("1\t2\n3\t4\n5\t6\n7\t8\n", ".tsv");
        let ds = read_series(f.path(), &ReadOptions::for_path(f.path())).unwrap();
        assert_eq!(ds.series.n_dims(), 2);
        assert_eq!(ds.series.len(), 4);
    }

    #[test]
    fn error_locations() {
        let f = file("1,2\n3,4\nNaN,6\n7,8\n", ".csv");
        match read_series(f.path(), &ReadOptions::default()) {
            Err(Error::Parse { row, column, .. }) => assert_eq!((row, column), (3, 1)),
            other => panic!("{other:?}"),
        }
        let f = file("1,2\n3,x\n", ".csv");
        match read_series(f.path(), &ReadOptions::default()) {
            Err(Error::Parse { row, column, .. }) => assert_eq!((row, column), (2, 2)),
            other => panic!("{other:?}"),
        }
        let f = file("1,2\n3\n", ".csv");
        assert!(matches!(read_series(f.path(), &ReadOptions::default()), Err(Error::Parse { row: 2, .. })));
        assert!(matches!(
            read_series("/nonexistent/file.csv", &ReadOptions::default()),
            Err(Error::Io { .. })
        ));
    }

    #[test]
    fn column_parsing() {
        assert_eq!("3".parse::<Column>().unwrap(), Column::Index(3));
        assert_eq!("speed".parse::<Column>().unwrap(), Column::Name("speed".into()));
        assert!("".parse::<Column>().is_err());
    }
}
