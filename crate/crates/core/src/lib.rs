//! Word co-occurrence networks built from plain text, measured with exact
//! all-pairs BFS and compared against matched Erdős–Rényi graphs.
//!
//! The usual flow is [`text::preprocess`] → [`builder::build_cooccurrence`]
//! → [`metrics::compute_metrics`], with [`er::er_reference_metrics`] as the
//! random baseline. [`experiment::analyze_corpus`] runs all of it for a
//! manifest of books and [`report::emit_report`] writes the results.

pub mod builder;
pub mod er;
pub mod error;
pub mod experiment;
pub mod graph;
pub mod metrics;
pub mod report;
pub mod text;

pub use builder::{build_cooccurrence, build_from_lemmas, BuildOptions};
pub use er::{er_reference_metrics, generate_er, generate_er_sample, ErSpec};
pub use error::{LexnetError, Result};
pub use experiment::{
    analyze_book, analyze_corpus, analyze_stream, small_world_verdict, AnalysisConfig, BookEntry, BookReport,
    ComparisonReport, CorpusManifest, ReportRow, SmallWorldConfig, SmallWorldVerdict,
};
pub use graph::{Directedness, LexNetwork, NodeId};
pub use metrics::{compute_metrics, MetricsRecord};
pub use report::{cross_language_table, emit_report, ReportFormat};
pub use text::{preprocess, tokenize, LemmaMap, RawDocument, StopwordList, TokenStream, WordCounts};
