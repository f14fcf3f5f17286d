use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use lexnet::error::{LexnetError, Result};
use lexnet::metrics::MetricsRecord;
use lexnet::report::{self, format_float, ReportFormat};
use lexnet::{
    analyze_corpus, build_cooccurrence, compute_metrics, er_reference_metrics, preprocess, AnalysisConfig,
    BuildOptions, CorpusManifest, Directedness, ErSpec, LemmaMap, LexNetwork, RawDocument, StopwordList, TokenStream,
};

#[derive(Debug, Parser)]
#[command(
    name = "lexnet",
    version,
    about = "Word co-occurrence networks and small-world comparison"
)]
struct Cli {
    /// Seed for random baselines.
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,

    /// Work on the directed network (default where applicable).
    #[arg(long, global = true, conflicts_with = "undirected")]
    directed: bool,

    /// Work on the undirected network.
    #[arg(long, global = true)]
    undirected: bool,

    /// Random graphs averaged per baseline.
    #[arg(long = "er-samples", global = true, default_value_t = 1)]
    er_samples: usize,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Output directory; results go to stdout when omitted.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Worker threads (defaults to all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Text file to lemma stream plus word counts.
    Preprocess {
        text: PathBuf,
        #[arg(long)]
        language: String,
        #[arg(long)]
        stopwords: Option<PathBuf>,
        #[arg(long)]
        lemmas: Option<PathBuf>,
        /// Document id; defaults to the file stem.
        #[arg(long)]
        id: Option<String>,
    },
    /// Lemma streams (one lemma per line) to an edge-list CSV.
    Build {
        #[arg(required = true)]
        streams: Vec<PathBuf>,
    },
    /// Measures of a network given as an edge list or a lemma stream.
    Metrics {
        #[arg(long, conflicts_with = "stream", required_unless_present = "stream")]
        edges: Option<PathBuf>,
        #[arg(long)]
        stream: Option<PathBuf>,
    },
    /// Measures of a matched random graph.
    Er {
        #[arg(long)]
        nodes: usize,
        #[arg(long)]
        links: usize,
    },
    /// Full comparison report for a corpus manifest.
    Analyze { manifest: PathBuf },
    /// Re-emit a JSON report as CSV or JSON.
    Export { report: PathBuf },
}

impl Cli {
    fn directedness(&self) -> Directedness {
        if self.undirected {
            Directedness::Undirected
        } else {
            Directedness::Directed
        }
    }

    fn report_format(&self) -> ReportFormat {
        match self.format {
            Format::Json => ReportFormat::Json,
            Format::Csv => ReportFormat::Csv,
        }
    }
}

fn write_output(out: Option<&Path>, file_name: &str, body: &[u8]) -> Result<()> {
    match out {
        Some(dir) => {
            fs::create_dir_all(dir).map_err(|e| LexnetError::Io {
                path: dir.to_path_buf(),
                source: e,
            })?;
            let path = dir.join(file_name);
            fs::write(&path, body).map_err(|e| LexnetError::Io { path, source: e })
        }
        None => io::stdout().write_all(body).map_err(|e| LexnetError::Io {
            path: "<stdout>".into(),
            source: e,
        }),
    }
}

fn metrics_body(record: &MetricsRecord, format: Format) -> Result<Vec<u8>> {
    Ok(match format {
        Format::Json => (serde_json::to_string_pretty(record)? + "\n").into_bytes(),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["N", "K", "k_avg", "C", "L", "D"])?;
            let na = || "NA".to_owned();
            w.write_record([
                record.n.to_string(),
                record.k.to_string(),
                format_float(record.avg_degree),
                format_float(record.c),
                record.l.map(format_float).unwrap_or_else(na),
                record.d.map(|d| d.to_string()).unwrap_or_else(na),
            ])?;
            w.into_inner().map_err(|e| csv::Error::from(e.into_error()))?
        }
    })
}

fn load_network(cli: &Cli, edges: Option<&Path>, stream: Option<&Path>) -> Result<LexNetwork> {
    let g = match (edges, stream) {
        (Some(path), _) => {
            let file = fs::File::open(path).map_err(|e| LexnetError::Io {
                path: path.to_path_buf(),
                source: e,
            })?;
            return LexNetwork::read_edge_list(io::BufReader::new(file), cli.directedness());
        }
        (None, Some(path)) => build_cooccurrence(&[TokenStream::read(path)?], BuildOptions::default()),
        (None, None) => unreachable!("clap requires one input"),
    };
    Ok(match cli.directedness() {
        Directedness::Directed => g,
        Directedness::Undirected => g.to_undirected(),
    })
}

fn run(cli: &Cli) -> Result<()> {
    let out = cli.out.as_deref();
    match &cli.command {
        Command::Preprocess {
            text,
            language,
            stopwords,
            lemmas,
            id,
        } => {
            let id = id.clone().unwrap_or_else(|| {
                text.file_stem()
                    .and_then(|s| s.to_str())
                    .unwrap_or("document")
                    .to_owned()
            });
            let doc = RawDocument::from_file(&id, language, text)?;
            let stop = match stopwords {
                Some(p) => StopwordList::load(language, p)?,
                None => StopwordList::new(language, std::iter::empty::<&str>()),
            };
            let map = match lemmas {
                Some(p) => LemmaMap::load(language, p)?,
                None => LemmaMap::empty(language),
            };
            let stream = preprocess(&doc, &stop, &map)?;
            stream.write(out.unwrap_or(Path::new(".")), &id)?;
            let counts = serde_json::to_string_pretty(&stream.counts())? + "\n";
            io::stdout().write_all(counts.as_bytes()).map_err(|e| LexnetError::Io {
                path: "<stdout>".into(),
                source: e,
            })
        }
        Command::Build { streams } => {
            let streams = streams
                .iter()
                .map(|p| TokenStream::read(p))
                .collect::<Result<Vec<_>>>()?;
            let mut g = build_cooccurrence(&streams, BuildOptions::default());
            if cli.undirected {
                g = g.to_undirected();
            }
            let mut buf = Vec::new();
            g.write_edge_list(&mut buf)?;
            write_output(out, "edges.csv", &buf)
        }
        Command::Metrics { edges, stream } => {
            let g = load_network(cli, edges.as_deref(), stream.as_deref())?;
            let record = compute_metrics(&g);
            let name = match cli.format {
                Format::Json => "metrics.json",
                Format::Csv => "metrics.csv",
            };
            write_output(out, name, &metrics_body(&record, cli.format)?)
        }
        Command::Er { nodes, links } => {
            let spec = ErSpec::new(*nodes, *links, cli.directedness(), cli.seed).with_samples(cli.er_samples);
            let record = er_reference_metrics(&spec)?;
            let name = match cli.format {
                Format::Json => "er.json",
                Format::Csv => "er.csv",
            };
            write_output(out, name, &metrics_body(&record, cli.format)?)
        }
        Command::Analyze { manifest } => {
            let manifest = CorpusManifest::load(manifest)?;
            let config = AnalysisConfig {
                seed: cli.seed,
                er_samples: cli.er_samples,
                ..AnalysisConfig::default()
            };
            let report = analyze_corpus(&manifest, &config)?;
            match out {
                Some(dir) => {
                    report::emit_report(&report, ReportFormat::Json, dir)?;
                    if let Format::Csv = cli.format {
                        report::emit_report(&report, ReportFormat::Csv, dir)?;
                    }
                    Ok(())
                }
                None => write_output(None, "", report::report_to_json(&report)?.as_bytes()),
            }
        }
        Command::Export { report: path } => {
            let report = report::read_report(path)?;
            let dir = out.unwrap_or(Path::new("."));
            report::emit_report(&report, cli.report_format(), dir).map(|_| ())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global() {
            eprintln!("lexnet: cannot configure thread pool: {e}");
            return ExitCode::from(3);
        }
    }
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("lexnet: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
