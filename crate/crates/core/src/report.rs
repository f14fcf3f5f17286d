//! Report serialization and per-language grouping.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{LexnetError, Result};
use crate::experiment::ComparisonReport;
use crate::graph::Directedness;
use crate::metrics::MetricsRecord;

pub const TABLE_HEADER: [&str; 10] = ["book", "language", "N", "k_avg", "C", "L", "D", "C_er", "L_er", "D_er"];
pub const WORD_COUNT_HEADER: [&str; 4] = ["book", "language", "with_stopwords", "without_stopwords"];
pub const SERIES_HEADER: [&str; 7] = ["directedness", "language", "book", "k_avg", "C", "L", "D"];
pub const MEANS_HEADER: [&str; 7] = ["directedness", "language", "books", "k_avg", "C", "L", "D"];

const SIGNIFICANT_DIGITS: i32 = 6;
const MIN_DECIMALS: i32 = 5;
const UNDEFINED: &str = "NA";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Csv,
}

/// Fixed-point rendering with at least six significant digits and at least
/// five decimals.
pub fn format_float(x: f64) -> String {
    if !x.is_finite() {
        return UNDEFINED.to_owned();
    }
    if x == 0.0 {
        return format!("{:.*}", (SIGNIFICANT_DIGITS - 1) as usize, 0.0);
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = (SIGNIFICANT_DIGITS - 1 - magnitude).max(MIN_DECIMALS) as usize;
    format!("{x:.decimals$}")
}

fn format_opt(x: Option<f64>) -> String {
    x.map(format_float).unwrap_or_else(|| UNDEFINED.to_owned())
}

fn format_d(d: Option<u32>) -> String {
    d.map(|d| d.to_string()).unwrap_or_else(|| UNDEFINED.to_owned())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeriesPoint {
    pub book_id: String,
    pub k_avg: f64,
    pub c: f64,
    pub l: Option<f64>,
    pub d: Option<u32>,
}

impl SeriesPoint {
    fn from_record(book_id: &str, r: &MetricsRecord) -> Self {
        SeriesPoint {
            book_id: book_id.to_owned(),
            k_avg: r.avg_degree,
            c: r.c,
            l: r.l,
            d: r.d,
        }
    }
}

/// Unweighted means over the books of one language.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeriesMean {
    pub books: usize,
    pub k_avg: f64,
    pub c: f64,
    pub l: Option<f64>,
    pub d: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LanguageSeries {
    pub language: String,
    pub directedness: Directedness,
    pub points: Vec<SeriesPoint>,
    pub mean: SeriesMean,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CrossLanguageTable {
    pub series: Vec<LanguageSeries>,
}

fn mean_of<I: Iterator<Item = Option<f64>>>(values: I) -> Option<f64> {
    let vals: Vec<f64> = values.collect::<Option<Vec<f64>>>()?;
    (!vals.is_empty()).then(|| vals.iter().sum::<f64>() / vals.len() as f64)
}

pub fn cross_language_table(report: &ComparisonReport) -> CrossLanguageTable {
    let mut series = Vec::new();
    for directedness in [Directedness::Directed, Directedness::Undirected] {
        for (language, books) in &report.languages {
            let points: Vec<SeriesPoint> = books
                .values()
                .map(|b| SeriesPoint::from_record(&b.book_id, &b.row(directedness).network))
                .collect();
            let mean = SeriesMean {
                books: points.len(),
                k_avg: mean_of(points.iter().map(|p| Some(p.k_avg))).unwrap_or(0.0),
                c: mean_of(points.iter().map(|p| Some(p.c))).unwrap_or(0.0),
                l: mean_of(points.iter().map(|p| p.l)),
                d: mean_of(points.iter().map(|p| p.d.map(f64::from))),
            };
            series.push(LanguageSeries {
                language: language.clone(),
                directedness,
                points,
                mean,
            });
        }
    }
    CrossLanguageTable { series }
}

impl CrossLanguageTable {
    /// Languages sorted by decreasing mean path length; languages whose mean
    /// is undefined go last.
    pub fn path_length_ordering(&self, directedness: Directedness) -> Vec<(String, Option<f64>)> {
        let mut langs: Vec<(String, Option<f64>)> = self
            .series
            .iter()
            .filter(|s| s.directedness == directedness)
            .map(|s| (s.language.clone(), s.mean.l))
            .collect();
        langs.sort_by(|a, b| match (a.1, b.1) {
            (Some(x), Some(y)) => y.total_cmp(&x).then_with(|| a.0.cmp(&b.0)),
            (Some(_), None) => std::cmp::Ordering::Less,
            (None, Some(_)) => std::cmp::Ordering::Greater,
            (None, None) => a.0.cmp(&b.0),
        });
        langs
    }

    pub fn write_series_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(SERIES_HEADER)?;
        for s in &self.series {
            for p in &s.points {
                w.write_record([
                    s.directedness.as_str().to_owned(),
                    s.language.clone(),
                    p.book_id.clone(),
                    format_float(p.k_avg),
                    format_float(p.c),
                    format_opt(p.l),
                    format_d(p.d),
                ])?;
            }
        }
        w.flush().map_err(csv::Error::from)?;
        Ok(())
    }

    pub fn write_means_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(MEANS_HEADER)?;
        for s in &self.series {
            w.write_record([
                s.directedness.as_str().to_owned(),
                s.language.clone(),
                s.mean.books.to_string(),
                format_float(s.mean.k_avg),
                format_float(s.mean.c),
                format_opt(s.mean.l),
                format_opt(s.mean.d),
            ])?;
        }
        w.flush().map_err(csv::Error::from)?;
        Ok(())
    }
}

/// Network-vs-random table for one directedness.
pub fn write_table_csv<W: Write>(report: &ComparisonReport, directedness: Directedness, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(TABLE_HEADER)?;
    for book in report.books() {
        let row = book.row(directedness);
        w.write_record([
            book.book_id.clone(),
            book.language.clone(),
            row.network.n.to_string(),
            format_float(row.network.avg_degree),
            format_float(row.network.c),
            format_opt(row.network.l),
            format_d(row.network.d),
            format_float(row.er.c),
            format_opt(row.er.l),
            format_d(row.er.d),
        ])?;
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}

pub fn write_word_counts_csv<W: Write>(report: &ComparisonReport, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(WORD_COUNT_HEADER)?;
    for book in report.books() {
        w.write_record([
            book.book_id.clone(),
            book.language.clone(),
            book.word_counts.with_stopwords.to_string(),
            book.word_counts.without_stopwords.to_string(),
        ])?;
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}

pub fn report_to_json(report: &ComparisonReport) -> Result<String> {
    Ok(serde_json::to_string_pretty(report)? + "\n")
}

pub fn report_from_json(json: &str) -> Result<ComparisonReport> {
    Ok(serde_json::from_str(json)?)
}

pub fn read_report(path: &Path) -> Result<ComparisonReport> {
    let json = fs::read_to_string(path).map_err(|e| LexnetError::io(path, e))?;
    report_from_json(&json)
}

fn write_file(path: PathBuf, write: impl FnOnce(&mut Vec<u8>) -> Result<()>) -> Result<PathBuf> {
    let mut buf = Vec::new();
    write(&mut buf)?;
    fs::write(&path, buf).map_err(|e| LexnetError::io(&path, e))?;
    Ok(path)
}

/// Writes the report into `dir` and returns the files created.
///
/// JSON: `report.json`. CSV: `directed.csv`, `undirected.csv`,
/// `word_counts.csv`, `series.csv` and `language_means.csv`.
pub fn emit_report(report: &ComparisonReport, format: ReportFormat, dir: &Path) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir).map_err(|e| LexnetError::io(dir, e))?;
    match format {
        ReportFormat::Json => {
            let json = report_to_json(report)?;
            Ok(vec![write_file(dir.join("report.json"), |b| {
                b.extend_from_slice(json.as_bytes());
                Ok(())
            })?])
        }
        ReportFormat::Csv => {
            let table = cross_language_table(report);
            Ok(vec![
                write_file(dir.join("directed.csv"), |b| {
                    write_table_csv(report, Directedness::Directed, b)
                })?,
                write_file(dir.join("undirected.csv"), |b| {
                    write_table_csv(report, Directedness::Undirected, b)
                })?,
                write_file(dir.join("word_counts.csv"), |b| write_word_counts_csv(report, b))?,
                write_file(dir.join("series.csv"), |b| table.write_series_csv(b))?,
                write_file(dir.join("language_means.csv"), |b| table.write_means_csv(b))?,
            ])
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn float_formatting() {
        assert_eq!(format_float(0.00228), "0.00228000");
        assert_eq!(format_float(3.3333333), "3.33333");
        assert_eq!(format_float(1.0), "1.00000");
        assert_eq!(format_float(0.0), "0.00000");
        assert_eq!(format_float(123456.7), "123456.70000");
        assert_eq!(format_float(f64::NAN), "NA");
    }

    proptest! {
        #[test]
        fn formatted_floats_reparse_within_tolerance(x in 0.0f64..1.0e4) {
            let back: f64 = format_float(x).parse().unwrap();
            prop_assert!((back - x).abs() <= 1e-4);
        }
    }
}
