//! Per-book analysis: text to directed and undirected networks, each measured
//! and compared with its own matched random graph.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::builder::{build_cooccurrence, BuildOptions};
use crate::er::{er_reference_metrics, ErSpec};
use crate::error::{LexnetError, Result};
use crate::graph::{Directedness, LexNetwork};
use crate::metrics::{compute_metrics, MetricsRecord};
use crate::text::{preprocess, LemmaMap, RawDocument, StopwordList, TokenStream, WordCounts};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BookEntry {
    pub book_id: String,
    pub language: String,
    pub text_path: PathBuf,
    pub stopwords_path: PathBuf,
    pub lemma_map_path: PathBuf,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusManifest {
    pub books: Vec<BookEntry>,
}

impl CorpusManifest {
    /// Tab-separated `book_id language text stopwords lemma_map`, `#` comments.
    /// Relative paths are resolved against `base_dir`.
    pub fn parse(source: &str, base_dir: &Path, origin: &Path) -> Result<Self> {
        let mut books: Vec<BookEntry> = Vec::new();
        for (idx, line) in source.lines().enumerate() {
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let bad = |message: String| LexnetError::Parse {
                path: origin.to_path_buf(),
                line: idx + 1,
                message,
            };
            let fields: Vec<&str> = trimmed.split('\t').map(str::trim).collect();
            let [book_id, language, text, stop, lemmas] = fields[..] else {
                return Err(bad(format!("expected 5 tab-separated fields, found {}", fields.len())));
            };
            if book_id.is_empty() || language.is_empty() {
                return Err(bad("book id and language must be non-empty".into()));
            }
            if books.iter().any(|b| b.book_id == book_id && b.language == language) {
                return Err(bad(format!("duplicate entry {book_id}/{language}")));
            }
            books.push(BookEntry {
                book_id: book_id.to_owned(),
                language: language.to_owned(),
                text_path: base_dir.join(text),
                stopwords_path: base_dir.join(stop),
                lemma_map_path: base_dir.join(lemmas),
            });
        }
        Ok(CorpusManifest { books })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let source = fs::read_to_string(path).map_err(|e| LexnetError::io(path, e))?;
        let base = path.parent().unwrap_or_else(|| Path::new("."));
        Self::parse(&source, base, path)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SmallWorldConfig {
    pub c_threshold: f64,
    pub l_threshold: f64,
}

impl Default for SmallWorldConfig {
    fn default() -> Self {
        SmallWorldConfig {
            c_threshold: 10.0,
            l_threshold: 1.5,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SmallWorldVerdict {
    /// `C / C_ER`; absent when `C_ER` is zero.
    pub c_ratio: Option<f64>,
    /// `L / L_ER`; absent when either path length is undefined.
    pub l_ratio: Option<f64>,
    pub is_small_world: bool,
    pub diagnostic: Option<String>,
}

/// Small world when `C >= c_threshold * C_ER` and `L <= l_threshold * L_ER`.
///
/// Fails with `UndefinedMeasure` if either record has no path length. A zero
/// `C_ER` leaves the clustering ratio undefined and the verdict negative.
pub fn small_world_verdict(
    net: &MetricsRecord,
    er: &MetricsRecord,
    config: &SmallWorldConfig,
) -> Result<SmallWorldVerdict> {
    let l = net.l.ok_or(LexnetError::UndefinedMeasure("L"))?;
    let l_er = er.l.ok_or(LexnetError::UndefinedMeasure("L_ER"))?;
    let l_ratio = l / l_er;
    if er.c == 0.0 {
        return Ok(SmallWorldVerdict {
            c_ratio: None,
            l_ratio: Some(l_ratio),
            is_small_world: false,
            diagnostic: Some("C_ER is zero; clustering ratio undefined".into()),
        });
    }
    let c_ratio = net.c / er.c;
    Ok(SmallWorldVerdict {
        c_ratio: Some(c_ratio),
        l_ratio: Some(l_ratio),
        is_small_world: c_ratio >= config.c_threshold && l_ratio <= config.l_threshold,
        diagnostic: None,
    })
}

fn verdict_or_diagnostic(net: &MetricsRecord, er: &MetricsRecord, config: &SmallWorldConfig) -> SmallWorldVerdict {
    small_world_verdict(net, er, config).unwrap_or_else(|e| SmallWorldVerdict {
        c_ratio: (er.c > 0.0).then(|| net.c / er.c),
        l_ratio: None,
        is_small_world: false,
        diagnostic: Some(e.to_string()),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AnalysisConfig {
    pub seed: u64,
    pub er_samples: usize,
    pub thresholds: SmallWorldConfig,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        AnalysisConfig {
            seed: 42,
            er_samples: 1,
            thresholds: SmallWorldConfig::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    pub network: MetricsRecord,
    pub er: MetricsRecord,
    pub verdict: SmallWorldVerdict,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BookReport {
    pub book_id: String,
    pub language: String,
    pub word_counts: WordCounts,
    pub directed: ReportRow,
    pub undirected: ReportRow,
}

impl BookReport {
    pub fn row(&self, directedness: Directedness) -> &ReportRow {
        match directedness {
            Directedness::Directed => &self.directed,
            Directedness::Undirected => &self.undirected,
        }
    }
}

/// Seed for one network's random baseline, derived from the run seed and the
/// network's identity so that books can be analyzed in any order.
pub fn derive_seed(seed: u64, book_id: &str, language: &str, directedness: Directedness) -> u64 {
    // FNV-1a over the identity, then a splitmix64 finalizer
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for part in [
        book_id.as_bytes(),
        &[0],
        language.as_bytes(),
        &[0],
        directedness.as_str().as_bytes(),
    ] {
        for &b in part {
            h ^= u64::from(b);
            h = h.wrapping_mul(0x0100_0000_01b3);
        }
    }
    let mut z = seed ^ h;
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

fn measure_with_baseline(g: &LexNetwork, book_id: &str, language: &str, config: &AnalysisConfig) -> Result<ReportRow> {
    let network = compute_metrics(g);
    let seed = derive_seed(config.seed, book_id, language, g.directedness());
    let er = er_reference_metrics(&ErSpec::matching(g, seed).with_samples(config.er_samples))?;
    if er.n != network.n || er.k != network.k {
        return Err(LexnetError::Invariant(format!(
            "baseline has N={} K={}, network has N={} K={}",
            er.n, er.k, network.n, network.k
        )));
    }
    let verdict = verdict_or_diagnostic(&network, &er, &config.thresholds);
    Ok(ReportRow { network, er, verdict })
}

/// Analyzes an already preprocessed stream.
pub fn analyze_stream(
    stream: &TokenStream,
    book_id: &str,
    language: &str,
    config: &AnalysisConfig,
) -> Result<BookReport> {
    if stream.lemmas.is_empty() {
        return Err(LexnetError::EmptyDocument(stream.doc_id.clone()));
    }
    let directed = build_cooccurrence(std::slice::from_ref(stream), BuildOptions::default());
    let undirected = directed.to_undirected();
    if undirected.k() > directed.k() || undirected.n() != directed.n() {
        return Err(LexnetError::Invariant("undirected view grew".into()));
    }
    Ok(BookReport {
        book_id: book_id.to_owned(),
        language: language.to_owned(),
        word_counts: stream.counts(),
        directed: measure_with_baseline(&directed, book_id, language, config)?,
        undirected: measure_with_baseline(&undirected, book_id, language, config)?,
    })
}

pub fn load_stream(entry: &BookEntry) -> Result<TokenStream> {
    let doc_id = format!("{}-{}", entry.book_id, entry.language.to_uppercase());
    let doc = RawDocument::from_file(doc_id, &entry.language, &entry.text_path)?;
    let stop = StopwordList::load(&entry.language, &entry.stopwords_path)?;
    let lemmas = LemmaMap::load(&entry.language, &entry.lemma_map_path)?;
    preprocess(&doc, &stop, &lemmas)
}

pub fn analyze_book(entry: &BookEntry, config: &AnalysisConfig) -> Result<BookReport> {
    let run = || -> Result<BookReport> {
        let stream = load_stream(entry)?;
        analyze_stream(&stream, &entry.book_id, &entry.language, config)
    };
    run().map_err(|e| e.in_book(format!("{}/{}", entry.book_id, entry.language)))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub seed: u64,
    pub er_samples: usize,
    pub thresholds: SmallWorldConfig,
    /// language -> book id -> results
    pub languages: BTreeMap<String, BTreeMap<String, BookReport>>,
}

impl ComparisonReport {
    pub fn new(config: &AnalysisConfig) -> Self {
        ComparisonReport {
            seed: config.seed,
            er_samples: config.er_samples,
            thresholds: config.thresholds,
            languages: BTreeMap::new(),
        }
    }

    pub fn insert(&mut self, book: BookReport) {
        self.languages
            .entry(book.language.clone())
            .or_default()
            .insert(book.book_id.clone(), book);
    }

    /// Books ordered by (language, book id).
    pub fn books(&self) -> impl Iterator<Item = &BookReport> {
        self.languages.values().flat_map(|books| books.values())
    }
}

/// Analyzes every book in parallel and merges the results in (language, book)
/// order. The first failing book aborts the run.
pub fn analyze_corpus(manifest: &CorpusManifest, config: &AnalysisConfig) -> Result<ComparisonReport> {
    let books: Vec<Result<BookReport>> = manifest
        .books
        .par_iter()
        .map(|entry| analyze_book(entry, config))
        .collect();
    let mut report = ComparisonReport::new(config);
    for book in books {
        report.insert(book?);
    }
    Ok(report)
}
