//! Zero tables in, CSV files and gnuplot scripts out, run configurations both ways.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use crate::error::{Error, Result};

/// First nontrivial zero, used to recognise a table that starts at the beginning.
pub const FIRST_ZERO: f64 = 14.134_725_141_734_693;
const CANONICAL_TOL: f64 = 1e-3;

/// Sorted zero ordinates read from a plain text file.
#[derive(Debug, Clone, PartialEq)]
pub struct ZeroTable {
    ordinates: Vec<f64>,
    source_path: String,
}

impl ZeroTable {
    /// Validates strict monotonicity and non-emptiness.
    pub fn from_ordinates(ordinates: Vec<f64>, source_path: impl Into<String>) -> Result<Self> {
        let source_path = source_path.into();
        if ordinates.is_empty() {
            return Err(Error::Format {
                path: source_path,
                line: 0,
                message: "no ordinates".into(),
            });
        }
        if let Some(i) = ordinates.windows(2).position(|w| !(w[1] > w[0])) {
            return Err(Error::Format {
                path: source_path,
                line: i + 2,
                message: format!(
                    "ordinate {} does not exceed the previous {}",
                    ordinates[i + 1],
                    ordinates[i]
                ),
            });
        }
        Ok(Self {
            ordinates,
            source_path,
        })
    }

    pub fn ordinates(&self) -> &[f64] {
        &self.ordinates
    }

    pub fn source_path(&self) -> &str {
        &self.source_path
    }

    pub fn count(&self) -> usize {
        self.ordinates.len()
    }

    pub fn first(&self) -> f64 {
        self.ordinates[0]
    }

    pub fn last(&self) -> f64 {
        self.ordinates[self.ordinates.len() - 1]
    }

    /// Number of ordinates strictly below `t`.
    pub fn count_below(&self, t: f64) -> usize {
        self.ordinates.partition_point(|&x| x < t)
    }

    /// Midpoints between consecutive ordinates.
    pub fn gap_midpoints(&self) -> impl Iterator<Item = f64> + '_ {
        self.ordinates.windows(2).map(|w| 0.5 * (w[0] + w[1]))
    }

    /// Distance from `t` to the nearest ordinate.
    pub fn distance_to_nearest(&self, t: f64) -> f64 {
        let i = self.count_below(t);
        let mut d = f64::INFINITY;
        if i < self.ordinates.len() {
            d = d.min(self.ordinates[i] - t);
        }
        if i > 0 {
            d = d.min(t - self.ordinates[i - 1]);
        }
        d
    }

    /// Checks that the table begins with the first zero (to 1e-3).
    pub fn check_canonical(&self) -> Result<()> {
        if (self.first() - FIRST_ZERO).abs() > CANONICAL_TOL {
            return Err(Error::Format {
                path: self.source_path.clone(),
                line: 1,
                message: format!(
                    "first ordinate {} is not the first zero {FIRST_ZERO:.6}",
                    self.first()
                ),
            });
        }
        Ok(())
    }
}

/// Reads a zero table: one ordinate per line, an optional integer index column
/// before it, `#` starting a comment, LF or CRLF line ends.
pub fn load_zeros(path: impl AsRef<Path>) -> Result<ZeroTable> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_zeros(&text, path.display().to_string())
}

pub fn parse_zeros(text: &str, source: impl Into<String>) -> Result<ZeroTable> {
    let source = source.into();
    let bad = |line: usize, message: String| Error::Format {
        path: source.clone(),
        line,
        message,
    };
    let mut ordinates: Vec<f64> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if !content.is_ascii() {
            return Err(bad(line_no, "non-ASCII content".into()));
        }
        let fields: Vec<&str> = content.split_whitespace().collect();
        let value = match fields.as_slice() {
            [v] => *v,
            [idx, v] => {
                idx.parse::<u64>()
                    .map_err(|_| bad(line_no, format!("index column {idx:?} is not an integer")))?;
                *v
            }
            _ => return Err(bad(line_no, format!("expected 1 or 2 fields, got {}", fields.len()))),
        };
        let x: f64 = value
            .parse()
            .map_err(|_| bad(line_no, format!("{value:?} is not a number")))?;
        if !x.is_finite() {
            return Err(bad(line_no, format!("{value:?} is not finite")));
        }
        if let Some(&prev) = ordinates.last() {
            if !(x > prev) {
                return Err(bad(
                    line_no,
                    format!("non-monotone ordinate {x} after {prev}"),
                ));
            }
        }
        ordinates.push(x);
    }
    ZeroTable::from_ordinates(ordinates, source)
}

/// Formats `x` with 12 significant digits, plain notation where reasonable.
pub fn format_sig12(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let exp = x.abs().log10().floor() as i32;
    if (-5..15).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        let s = format!("{x:.decimals$}");
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        }
    } else {
        format!("{x:.11e}")
    }
}

/// A row type that can be written to and read back from CSV.
pub trait CsvRecord: Sized {
    fn header() -> &'static [&'static str];
    fn to_fields(&self) -> Vec<String>;
    fn from_fields(fields: &[&str]) -> Result<Self>;
}

/// Parses one CSV cell, naming the column on failure.
pub fn parse_field<T: FromStr>(fields: &[&str], i: usize, name: &str) -> Result<T> {
    let raw = fields
        .get(i)
        .ok_or_else(|| Error::Domain(format!("missing column {name}")))?;
    raw.parse()
        .map_err(|_| Error::Domain(format!("column {name}: cannot parse {raw:?}")))
}

/// Writes `records` with a header row; output is byte-for-byte deterministic.
pub fn emit_csv<R: CsvRecord>(records: &[R], path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let bytes = csv_bytes(records)?;
    fs::write(path, bytes).map_err(|e| Error::io(path, e))
}

pub fn csv_bytes<R: CsvRecord>(records: &[R]) -> Result<Vec<u8>> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::CRLF)
        .from_writer(Vec::new());
    w.write_record(R::header())?;
    for r in records {
        w.write_record(r.to_fields())?;
    }
    w.into_inner()
        .map_err(|e| Error::Domain(format!("CSV buffer: {e}")))
}

pub fn read_csv<R: CsvRecord>(path: impl AsRef<Path>) -> Result<Vec<R>> {
    let path = path.as_ref();
    let mut rdr = csv::Reader::from_path(path)?;
    let header: Vec<String> = rdr.headers()?.iter().map(str::to_string).collect();
    if header != R::header() {
        return Err(Error::Format {
            path: path.display().to_string(),
            line: 1,
            message: format!("unexpected header {header:?}"),
        });
    }
    let mut out = Vec::new();
    for rec in rdr.records() {
        let rec = rec?;
        let fields: Vec<&str> = rec.iter().collect();
        out.push(R::from_fields(&fields)?);
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlotKind {
    Staircase,
    Deviation,
    Locus,
}

impl FromStr for PlotKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "staircase" => Ok(PlotKind::Staircase),
            "deviation" => Ok(PlotKind::Deviation),
            "locus" => Ok(PlotKind::Locus),
            other => Err(Error::Domain(format!(
                "unknown plot kind {other:?} (staircase, deviation, locus)"
            ))),
        }
    }
}

impl fmt::Display for PlotKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PlotKind::Staircase => "staircase",
            PlotKind::Deviation => "deviation",
            PlotKind::Locus => "locus",
        })
    }
}

/// A gnuplot script for a CSV written by [`emit_csv`]. The CSV is referenced
/// by file name, so the script is meant to sit next to it.
///
/// Expected layouts: `deviation` reads a bound-report CSV, `staircase` a
/// count-result CSV, `locus` a locus-point CSV.
pub fn emit_plot_script(csv_path: impl AsRef<Path>, kind: PlotKind) -> Result<String> {
    let csv_path = csv_path.as_ref();
    if !csv_path.exists() {
        return Err(Error::io(
            csv_path,
            std::io::Error::new(std::io::ErrorKind::NotFound, "CSV file not found"),
        ));
    }
    let name = csv_path
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_default();
    let head = format!(
        "set datafile separator ','\nset key autotitle columnhead\nset grid\nfile = '{name}'\n"
    );
    let body = match kind {
        PlotKind::Deviation => "\
set xlabel 'T'
set ylabel 'N(T) - (T/2pi) ln(T/2pi e) - 7/8'
set yrange [-3:3]
plot file using 1:3 with lines title 'deviation 7/8', \\
     2.5 with lines dashtype 2 title '+2.5', \\
     -2.5 with lines dashtype 2 title '-2.5'
"
        .to_string(),
        PlotKind::Staircase => "\
set xlabel 'T'
set ylabel 'phase (rad)'
plot file using 1:(pi*$2) with steps title 'pi N(T)', \\
     file using 1:3 with lines title 'gamma leg', \\
     file using 1:4 with lines title 'zeta leg (L1)', \\
     file using 1:5 with lines title 'Z leg (L2)'
"
        .to_string(),
        PlotKind::Locus => "\
set xlabel 't'
set ylabel 'eps'
plot file using 3:(strcol(2) eq 're_zero' ? $4 : 1/0) with points pt 7 ps 0.3 title 'Re = 0', \\
     file using 3:(strcol(2) eq 'im_zero' ? $4 : 1/0) with points pt 7 ps 0.3 title 'Im = 0'
"
        .to_string(),
    };
    Ok(head + &body)
}

/// Writes `key=value` lines in key order.
pub fn write_key_values(path: impl AsRef<Path>, entries: &BTreeMap<String, String>) -> Result<()> {
    let path = path.as_ref();
    let mut text = String::new();
    for (k, v) in entries {
        if k.contains('=') || k.contains('\n') || v.contains('\n') {
            return Err(Error::Domain(format!("cannot store {k:?} = {v:?}")));
        }
        text.push_str(k);
        text.push('=');
        text.push_str(v);
        text.push('\n');
    }
    fs::write(path, text).map_err(|e| Error::io(path, e))
}

/// Reads `key=value` lines; blank lines and `#` comments are skipped.
pub fn read_key_values(path: impl AsRef<Path>) -> Result<BTreeMap<String, String>> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let mut out = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| Error::Format {
            path: path.display().to_string(),
            line: i + 1,
            message: "expected key=value".into(),
        })?;
        out.insert(k.trim().to_string(), v.trim().to_string());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_plain_and_indexed() {
        let t = parse_zeros("14.134725\n21.022040\n25.010858\n", "x").unwrap();
        assert_eq!(t.count(), 3);
        assert!((t.first() - 14.134725).abs() < 1e-12);
        let t = parse_zeros("# header\r\n1 14.134725\r\n2 21.022040 # c\r\n\r\n", "x").unwrap();
        assert_eq!(t.count(), 2);
        t.check_canonical().unwrap();
    }

    #[test]
    fn rejects_non_monotone_with_line_number() {
        match parse_zeros("3 25.010858\n2 21.022040\n", "x") {
            Err(Error::Format { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn rejects_empty_and_garbage() {
        assert!(parse_zeros("# nothing\n\n", "x").is_err());
        assert!(parse_zeros("abc\n", "x").is_err());
        assert!(parse_zeros("1.5 2.5\n", "x").is_err());
        assert!(parse_zeros("1 2 3\n", "x").is_err());
    }

    #[test]
    fn counting_helpers() {
        let t = ZeroTable::from_ordinates(vec![1.0, 2.0, 4.0], "x").unwrap();
        assert_eq!(t.count_below(2.0), 1);
        assert_eq!(t.count_below(2.5), 2);
        assert_eq!(t.gap_midpoints().collect::<Vec<_>>(), vec![1.5, 3.0]);
        assert_eq!(t.distance_to_nearest(3.5), 0.5);
        assert!(t.check_canonical().is_err());
    }

    #[test]
    fn sig12_formatting() {
        assert_eq!(format_sig12(0.0), "0");
        assert_eq!(format_sig12(100.0), "100");
        assert_eq!(format_sig12(-0.004), "-0.004");
        assert_eq!(format_sig12(1.0 / 3.0), "0.333333333333");
        assert_eq!(format_sig12(28.1288), "28.1288");
        assert_eq!(format_sig12(1e-9), "1.00000000000e-9");
        let x = 12345.678901234567;
        assert!((format_sig12(x).parse::<f64>().unwrap() - x).abs() < 1e-7);
    }

    #[test]
    fn plot_kinds() {
        assert_eq!("locus".parse::<PlotKind>().unwrap(), PlotKind::Locus);
        assert!("bar".parse::<PlotKind>().is_err());
    }
}
