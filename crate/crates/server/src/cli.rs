//! The `ontoview` command line.
//!
//! Exit codes: 0 on success, 1 when the ontology cannot be loaded (parse
//! errors, inconsistency) or an output cannot be written, 2 for invalid
//! arguments, including unreadable inputs and invalid detail windows.

use std::fmt::Write as _;
use std::net::SocketAddr;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use ontoview_core::engine::{Document, EngineError};
use ontoview_core::graph::NodeKind;
use ontoview_core::reasoner::ReasonerError;
use ontoview_core::relevance::SummaryRequest;
use ontoview_core::synthetic::{synthetic_ontology, SyntheticConfig};
use ontoview_core::ClassExpression as CE;
use ontoview_core::view::{export_dot, export_svg, load_view, save_view, view_layout};

use crate::config::{Config, ConfigError};
use crate::session::{parse_window, SessionError, Store};

#[derive(Debug, Parser)]
#[command(name = "ontoview", version, about = "Explore the inferred class hierarchy of an OWL ontology")]
pub struct Cli {
    /// Configuration file; defaults to $ONTOVIEW_CONFIG.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Load, classify and lay out an ontology; optionally summarize and export.
    Load(LoadArgs),
    /// Serve the HTTP API.
    Serve(ServeArgs),
    /// Write a synthetic ontology in functional syntax.
    Synth(SynthArgs),
}

#[derive(Debug, Args)]
pub struct LoadArgs {
    /// Ontology in OWL functional syntax.
    pub file: PathBuf,
    /// Report consistency and unsatisfiable classes.
    #[arg(long)]
    pub reasoner_check: bool,
    /// Show only a summary, e.g. `pagerank:20`, `kce:10`.
    #[arg(long, value_name = "METHOD:N", value_parser = parse_summary)]
    pub summarize: Option<SummaryRequest>,
    /// Keep only anonymous expressions between two class expressions.
    #[arg(long, num_args = 2, value_names = ["UPPER", "LOWER"])]
    pub detail_window: Option<Vec<String>>,
    /// Start from a saved view instead of the initial one.
    #[arg(long, value_name = "FILE")]
    pub view: Option<PathBuf>,
    /// Write an SVG snapshot of the resulting view.
    #[arg(long, value_name = "OUT.svg")]
    pub export: Option<PathBuf>,
    /// Write the visible graph in Graphviz DOT.
    #[arg(long, value_name = "OUT.dot")]
    pub export_dot: Option<PathBuf>,
    /// Save the resulting view document.
    #[arg(long, value_name = "OUT.ontview")]
    pub save_view: Option<PathBuf>,
    /// Print counts and timings.
    #[arg(long)]
    pub stats: bool,
}

#[derive(Debug, Args)]
pub struct ServeArgs {
    /// Address to bind; overrides the configuration file.
    #[arg(long)]
    pub host: Option<String>,
    /// Port to bind, 0 for any free port; overrides the configuration file.
    #[arg(long)]
    pub port: Option<u16>,
}

#[derive(Debug, Args)]
pub struct SynthArgs {
    /// Random seed; equal seeds give identical output.
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Number of named classes.
    #[arg(long, default_value_t = 500)]
    pub classes: usize,
    /// Target number of anonymous class expressions.
    #[arg(long, default_value_t = 50)]
    pub anonymous: usize,
    /// Output file; standard output when absent.
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

fn parse_summary(s: &str) -> Result<SummaryRequest, String> {
    let (method, n) = s.split_once(':').ok_or("expected METHOD:N")?;
    let n: usize = n.parse().map_err(|_| format!("{n:?} is not a count"))?;
    if method.is_empty() || n == 0 {
        return Err("method must be named and N must be at least 1".into());
    }
    Ok(SummaryRequest::new(method, n))
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {} parse error(s)", .count)]
    Parse { path: String, count: usize },
    #[error("{0}")]
    Load(String),
    #[error("cannot write {path}: {source}")]
    Write { path: PathBuf, source: std::io::Error },
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Config(_) | CliError::Usage(_) => 2,
            CliError::Parse { .. } | CliError::Load(_) | CliError::Write { .. } => 1,
        }
    }
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|source| CliError::Write {
        path: path.to_path_buf(),
        source,
    })
}

fn usage(e: impl std::fmt::Display) -> CliError {
    CliError::Usage(e.to_string())
}

fn load(args: &LoadArgs, config: Config) -> Result<(), CliError> {
    let path = args.file.display().to_string();
    let text = std::fs::read_to_string(&args.file).map_err(|e| usage(format!("cannot read {path}: {e}")))?;
    let start = Instant::now();
    let base = match Document::from_text(&text, config.engine.clone()) {
        Ok(d) => d,
        Err(EngineError::Parse(errs)) => {
            for e in &errs {
                eprintln!("{path}:{e}");
            }
            return Err(CliError::Parse { path, count: errs.len() });
        }
        Err(EngineError::Reasoner(ReasonerError::Inconsistent)) => {
            return Err(CliError::Load(format!("{path}: the ontology is inconsistent")));
        }
        Err(e) => return Err(CliError::Load(format!("{path}: {e}"))),
    };

    let doc = match &args.detail_window {
        Some(bounds) => {
            let w = parse_window(&base.ontology, Some(&bounds[0]), Some(&bounds[1])).map_err(usage)?;
            base.with_window(&w).map_err(|e| match SessionError::from(e) {
                e @ SessionError::InvalidWindow(_) => usage(e),
                e => CliError::Load(e.to_string()),
            })?
        }
        None => base,
    };

    if args.reasoner_check {
        let unsat: Vec<String> = doc
            .graph
            .bottom()
            .map(|b| {
                let members = &doc.graph.node(b).members;
                members.iter().filter(|m| **m != CE::Nothing).map(CE::render).collect()
            })
            .unwrap_or_default();
        println!("consistent: yes");
        println!("unsatisfiable classes: {}", unsat.len());
        for u in &unsat {
            println!("  {u}");
        }
    }

    let mut v = match &args.view {
        Some(p) => {
            let t = std::fs::read_to_string(p).map_err(|e| usage(format!("cannot read {}: {e}", p.display())))?;
            load_view(&t, &doc.graph).map_err(usage)?
        }
        None => doc.initial_view(),
    };
    if let Some(req) = &args.summarize {
        doc.summarize(&mut v, req).map_err(usage)?;
    }

    let t = Instant::now();
    let ctx = doc.context(&v);
    let lay = view_layout(&ctx, &v, &config.engine.layout);
    let layout_ms = t.elapsed().as_secs_f64() * 1000.0;
    if let Some(p) = &args.export {
        write(p, &export_svg(&ctx, &v, &lay))?;
    }
    if let Some(p) = &args.export_dot {
        write(p, &export_dot(&v, &doc.graph))?;
    }
    if let Some(p) = &args.save_view {
        write(p, &save_view(&v, &doc.graph))?;
    }
    if args.stats {
        print!("{}", stats_table(&doc, v.visible.len(), layout_ms, start.elapsed().as_secs_f64() * 1000.0));
    }
    Ok(())
}

fn stats_table(doc: &Document, visible: usize, layout_ms: f64, total_ms: f64) -> String {
    let s = doc.stats();
    let t = doc.timings;
    let named = doc.graph.nodes.iter().filter(|n| n.kind != NodeKind::Anonymous).count();
    let rows: [(&str, String); 20] = [
        ("axioms", s.axioms.to_string()),
        ("skipped axioms", s.skipped_axioms.to_string()),
        ("classes", s.classes.to_string()),
        ("object properties", s.object_properties.to_string()),
        ("data properties", s.data_properties.to_string()),
        ("individuals", s.individuals.to_string()),
        ("GCIs", s.gcis.to_string()),
        ("harvested expressions", s.harvested_expressions.to_string()),
        ("anonymous nodes", s.anonymous_nodes.to_string()),
        ("defined nodes", s.defined_nodes.to_string()),
        ("named nodes", named.to_string()),
        ("nodes", s.nodes.to_string()),
        ("isA edges", s.isa_edges.to_string()),
        ("unsatisfiable", s.unsatisfiable.to_string()),
        ("visible nodes", visible.to_string()),
        ("parse ms", format!("{:.1}", t.parse_ms)),
        ("classify ms", format!("{:.1}", t.classify_ms)),
        ("build ms", format!("{:.1}", t.build_ms)),
        ("layout ms", format!("{layout_ms:.1}")),
        ("total ms", format!("{total_ms:.1}")),
    ];
    let mut out = String::new();
    for (k, v) in rows {
        let _ = writeln!(out, "{k:<22} {v:>10}");
    }
    out
}

async fn serve(args: &ServeArgs, config: Config) -> Result<(), CliError> {
    let host = args.host.clone().unwrap_or(config.server.host.clone());
    let port = args.port.unwrap_or(config.server.port);
    let addr: SocketAddr = format!("{host}:{port}").parse().map_err(usage)?;
    let app = crate::api::app(
        Store::new(config.engine.clone()),
        config.engine.layout.clone(),
        config.server.max_body_bytes,
    );
    let listener = tokio::net::TcpListener::bind(addr)
        .await
        .map_err(|e| CliError::Load(format!("cannot listen on {addr}: {e}")))?;
    let bound = listener.local_addr().unwrap_or(addr);
    log::info!("listening on http://{bound}");
    eprintln!("listening on http://{bound}");
    axum::serve(listener, app)
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await
        .map_err(|e| CliError::Load(e.to_string()))
}

fn synth(args: &SynthArgs) -> Result<(), CliError> {
    let cfg = SyntheticConfig {
        seed: args.seed,
        classes: args.classes,
        anonymous: args.anonymous,
        ..SyntheticConfig::default()
    };
    let text = synthetic_ontology(&cfg);
    match &args.out {
        Some(p) => write(p, &text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn dispatch(cli: Cli) -> Result<(), CliError> {
    let config = Config::load(cli.config.as_deref())?;
    match &cli.command {
        Command::Load(a) => load(a, config),
        Command::Synth(a) => synth(a),
        Command::Serve(a) => tokio::runtime::Runtime::new()
            .map_err(|e| CliError::Load(e.to_string()))?
            .block_on(serve(a, config)),
    }
}

/// Runs the command line; clap reports its own usage errors with code 2.
pub fn run<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("ontoview: {e}");
            ExitCode::from(e.code())
        }
    }
}
