//! Dataset ingestion, descriptive statistics and the bundled samples.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{NwteError, Result};

/// Positive observations with provenance. `values` is sorted ascending;
/// `original` keeps the input order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Dataset {
    pub name: String,
    pub source: String,
    pub values: Vec<f64>,
    pub original: Vec<f64>,
}

impl Dataset {
    pub fn new(name: impl Into<String>, source: impl Into<String>, original: Vec<f64>) -> Result<Self> {
        for (i, &v) in original.iter().enumerate() {
            if !(v > 0.0 && v.is_finite()) {
                return Err(NwteError::NonPositive { line: i + 1, value: v });
            }
        }
        let mut values = original.clone();
        values.sort_by(f64::total_cmp);
        Ok(Self {
            name: name.into(),
            source: source.into(),
            values,
            original,
        })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Input layout.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InputFormat {
    Csv,
    Whitespace,
}

/// Column selector: a header name or a zero-based index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Column {
    Name(String),
    Index(usize),
}

impl Column {
    pub fn parse(s: &str) -> Self {
        match s.trim().parse::<usize>() {
            Ok(i) => Column::Index(i),
            Err(_) => Column::Name(s.trim().to_string()),
        }
    }
}

fn parse_value(token: &str, line: usize) -> Result<f64> {
    let v: f64 = token.trim().parse().map_err(|_| NwteError::Parse {
        line,
        message: format!("`{}` is not a number", token.trim()),
    })?;
    if !(v > 0.0 && v.is_finite()) {
        return Err(NwteError::NonPositive { line, value: v });
    }
    Ok(v)
}

fn parse_whitespace(text: &str, column: Option<&Column>) -> Result<Vec<f64>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = body.split_whitespace().collect();
        match column {
            None => {
                if tokens.len() != 1 {
                    return Err(NwteError::Parse {
                        line,
                        message: format!("expected one value per line, found {}", tokens.len()),
                    });
                }
                out.push(parse_value(tokens[0], line)?);
            }
            Some(Column::Index(c)) => {
                let t = tokens.get(*c).ok_or_else(|| NwteError::Parse {
                    line,
                    message: format!("column {c} missing"),
                })?;
                out.push(parse_value(t, line)?);
            }
            Some(Column::Name(n)) => {
                return Err(NwteError::Parse {
                    line,
                    message: format!("named column `{n}` requires csv input"),
                })
            }
        }
    }
    Ok(out)
}

fn parse_csv(text: &str, column: Option<&Column>) -> Result<Vec<f64>> {
    let named = matches!(column, Some(Column::Name(_)));
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(named)
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .flexible(true)
        .from_reader(text.as_bytes());
    let index = match column {
        Some(Column::Name(n)) => {
            let headers = reader.headers().map_err(|e| NwteError::Parse {
                line: 1,
                message: e.to_string(),
            })?;
            Some(headers.iter().position(|h| h == n).ok_or_else(|| NwteError::Parse {
                line: 1,
                message: format!("no column named `{n}`"),
            })?)
        }
        Some(Column::Index(i)) => Some(*i),
        None => None,
    };
    let mut out = Vec::new();
    for rec in reader.records() {
        let rec = rec.map_err(|e| NwteError::Parse {
            line: e.position().map_or(0, |p| p.line() as usize),
            message: e.to_string(),
        })?;
        let line = rec.position().map_or(0, |p| p.line() as usize);
        if rec.iter().all(|f| f.is_empty()) {
            continue;
        }
        let field = match index {
            Some(i) => rec.get(i).ok_or_else(|| NwteError::Parse {
                line,
                message: format!("column {i} missing"),
            })?,
            None => {
                if rec.len() != 1 {
                    return Err(NwteError::Parse {
                        line,
                        message: format!("expected one field, found {}; select a column", rec.len()),
                    });
                }
                &rec[0]
            }
        };
        out.push(parse_value(field, line)?);
    }
    Ok(out)
}

/// Parses a dataset from text.
pub fn parse(
    text: &str,
    format: InputFormat,
    column: Option<&Column>,
    name: &str,
    source: &str,
) -> Result<Dataset> {
    let values = match format {
        InputFormat::Csv => parse_csv(text, column)?,
        InputFormat::Whitespace => parse_whitespace(text, column)?,
    };
    Dataset::new(name, source, values)
}

/// Reads a dataset file. The dataset is named after the file stem.
pub fn ingest(path: &Path, format: InputFormat, column: Option<&Column>) -> Result<Dataset> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| NwteError::Io(format!("{}: {e}", path.display())))?;
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    parse(&text, format, column, &name, &path.display().to_string())
}

/// Writes values one per line at full precision; `parse` reads them back exactly.
pub fn serialize(d: &Dataset) -> String {
    let mut s = format!("# {}\n# {}\n", d.name, d.source);
    for v in &d.original {
        s.push_str(&format!("{v:?}\n"));
    }
    s
}

/// Summary statistics. Skewness and kurtosis are `None` for a constant sample.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DescriptiveStats {
    pub n: usize,
    pub mean: f64,
    pub median: f64,
    /// Sample standard deviation (divisor `n − 1`).
    pub sd: f64,
    pub sd_population: f64,
    /// Population moment ratio `m4/m2²` (not excess).
    pub kurtosis: Option<f64>,
    /// Bias-corrected kurtosis (not excess).
    pub kurtosis_sample: Option<f64>,
    /// Population moment ratio `m3/m2^{3/2}`.
    pub skewness: Option<f64>,
    /// Bias-corrected skewness.
    pub skewness_sample: Option<f64>,
    /// Mean absolute deviation about the mean.
    pub mean_dev_mean: f64,
    /// Median absolute deviation about the median.
    pub mean_dev_median: f64,
    /// Mean absolute deviation about the median.
    pub mean_abs_dev_median: f64,
    pub min: f64,
    pub max: f64,
}

fn median_sorted(v: &[f64]) -> f64 {
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}

pub fn describe(d: &Dataset) -> Result<DescriptiveStats> {
    let n = d.len();
    if n < 2 {
        return Err(NwteError::InsufficientData { required: 2, got: n });
    }
    let v = &d.values;
    let nf = n as f64;
    let mean = v.iter().sum::<f64>() / nf;
    let median = median_sorted(v);
    let central = |k: i32| v.iter().map(|x| (x - mean).powi(k)).sum::<f64>() / nf;
    let (m2, m3, m4) = (central(2), central(3), central(4));
    let sd_population = m2.sqrt();
    let sd = (m2 * nf / (nf - 1.0)).sqrt();
    let (skewness, kurtosis, skewness_sample, kurtosis_sample) = if m2 > 0.0 {
        let g1 = m3 / m2.powf(1.5);
        let b2 = m4 / (m2 * m2);
        let g1s = (n >= 3).then(|| g1 * (nf * (nf - 1.0)).sqrt() / (nf - 2.0));
        let b2s = (n >= 4).then(|| {
            let excess = (nf - 1.0) / ((nf - 2.0) * (nf - 3.0)) * ((nf + 1.0) * (b2 - 3.0) + 6.0);
            excess + 3.0
        });
        (Some(g1), Some(b2), g1s, b2s)
    } else {
        (None, None, None, None)
    };
    let mean_dev_mean = v.iter().map(|x| (x - mean).abs()).sum::<f64>() / nf;
    let mean_abs_dev_median = v.iter().map(|x| (x - median).abs()).sum::<f64>() / nf;
    let mut dev: Vec<f64> = v.iter().map(|x| (x - median).abs()).collect();
    dev.sort_by(f64::total_cmp);
    Ok(DescriptiveStats {
        n,
        mean,
        median,
        sd,
        sd_population,
        kurtosis,
        kurtosis_sample,
        skewness,
        skewness_sample,
        mean_dev_mean,
        mean_dev_median: median_sorted(&dev),
        mean_abs_dev_median,
        min: v[0],
        max: v[n - 1],
    })
}

/// Reference summary a bundled dataset must reproduce.
#[derive(Debug, Clone, Copy)]
pub struct Checksum {
    pub n: usize,
    pub mean: f64,
    pub median: f64,
    pub sd: f64,
    pub min: f64,
    pub max: f64,
}

pub const GWD_CHECKSUM: Checksum = Checksum {
    n: 34,
    mean: 1.87941,
    median: 1.15,
    sd: 1.95259,
    min: 0.1,
    max: 8.0,
};

pub const FD_CHECKSUM: Checksum = Checksum {
    n: 39,
    mean: 6771.1,
    median: 3570.0,
    sd: 11695.7,
    min: 318.0,
    max: 71500.0,
};

/// Rejects a dataset whose summary deviates from `c` by more than 1e−3 relative.
pub fn verify_checksum(d: &Dataset, c: &Checksum) -> Result<()> {
    if d.len() != c.n {
        return Err(NwteError::Checksum {
            name: d.name.clone(),
            field: "n",
            got: d.len() as f64,
            expected: c.n as f64,
        });
    }
    let s = describe(d)?;
    for (field, got, expected) in [
        ("mean", s.mean, c.mean),
        ("median", s.median, c.median),
        ("sd", s.sd, c.sd),
        ("min", s.min, c.min),
        ("max", s.max, c.max),
    ] {
        if (got - expected).abs() > 1e-3 * expected.abs() {
            return Err(NwteError::Checksum {
                name: d.name.clone(),
                field,
                got,
                expected,
            });
        }
    }
    Ok(())
}

const GWD_TEXT: &str = include_str!("../data/gwd.txt");
const FD_TEXT: &str = include_str!("../data/fd.txt");

/// Names of the bundled datasets.
pub const BUNDLED: [&str; 2] = ["gwd", "fd"];

fn source_line(text: &str) -> String {
    text.lines()
        .filter_map(|l| l.strip_prefix('#'))
        .map(str::trim)
        .take(2)
        .collect::<Vec<_>>()
        .join(" ")
}

/// Loads a bundled dataset (`gwd` or `fd`) after verifying its checksum.
pub fn bundled(name: &str) -> Result<Dataset> {
    let (text, check) = match name.to_ascii_lowercase().as_str() {
        "gwd" => (GWD_TEXT, &GWD_CHECKSUM),
        "fd" => (FD_TEXT, &FD_CHECKSUM),
        _ => return Err(NwteError::MissingDataset(name.to_string())),
    };
    let d = parse(text, InputFormat::Whitespace, None, &name.to_ascii_lowercase(), &source_line(text))?;
    verify_checksum(&d, check)?;
    Ok(d)
}

/// Checksum for a bundled name, used when the same data is read from disk.
pub fn checksum_for(name: &str) -> Option<&'static Checksum> {
    match name.to_ascii_lowercase().as_str() {
        "gwd" => Some(&GWD_CHECKSUM),
        "fd" => Some(&FD_CHECKSUM),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simple_file() {
        let d = parse("1.0\n2.0\n", InputFormat::Whitespace, None, "t", "").unwrap();
        assert_eq!(d.values, vec![1.0, 2.0]);
        let d = parse("2.0\n1.0\n", InputFormat::Csv, None, "t", "").unwrap();
        assert_eq!(d.values, vec![1.0, 2.0]);
        assert_eq!(d.original, vec![2.0, 1.0]);
    }

    #[test]
    fn parse_errors_cite_lines() {
        for fmt in [InputFormat::Whitespace, InputFormat::Csv] {
            let e = parse("1.0\n2.0\nabc\n", fmt, None, "t", "").unwrap_err();
            assert!(matches!(e, NwteError::Parse { line: 3, .. }), "{fmt:?}: {e:?}");
            let e = parse("1.0\n-2.0\n", fmt, None, "t", "").unwrap_err();
            assert!(matches!(e, NwteError::NonPositive { line: 2, .. }));
        }
    }

    #[test]
    fn comments_and_columns() {
        let text = "# header comment\nyear,flow\n1935,1460\n1936,4050\n";
        let d = parse(text, InputFormat::Csv, Some(&Column::parse("flow")), "t", "").unwrap();
        assert_eq!(d.original, vec![1460.0, 4050.0]);
        let d = parse("1 5\n2 6 # trailing\n", InputFormat::Whitespace, Some(&Column::Index(1)), "t", "")
            .unwrap();
        assert_eq!(d.original, vec![5.0, 6.0]);
    }

    #[test]
    fn constant_sample_has_no_shape() {
        let d = Dataset::new("c", "", vec![5.0, 5.0, 5.0]).unwrap();
        let s = describe(&d).unwrap();
        assert_eq!(s.sd, 0.0);
        assert!(s.skewness.is_none() && s.kurtosis.is_none());
        assert!(describe(&Dataset::new("one", "", vec![1.0]).unwrap()).is_err());
    }

    #[test]
    fn round_trip_is_exact() {
        let d = Dataset::new("r", "s", vec![0.1, 1.0 / 3.0, 2e-7, 123456.789]).unwrap();
        let back = parse(&serialize(&d), InputFormat::Whitespace, None, "r", "s").unwrap();
        assert_eq!(back.original, d.original);
    }

    #[test]
    fn bundled_sets_pass_checksum() {
        let g = bundled("gwd").unwrap();
        assert_eq!((g.len(), g.values[0], g.values[33]), (34, 0.1, 8.0));
        let f = bundled("fd").unwrap();
        assert_eq!(f.len(), 39);
        let mut bad = g.clone();
        bad.values[0] = 0.2;
        assert!(verify_checksum(&bad, &GWD_CHECKSUM).is_err());
    }
}
