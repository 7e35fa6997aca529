//! Command-line interface. Exit codes: 0 success, 1 validation or query
//! failure (including unreadable inputs), 2 usage error.

use std::ffi::OsString;
use std::fs;
use std::net::{IpAddr, Ipv4Addr, SocketAddr};
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};

use super::http::{serve, ServiceState};
use super::{render, AppError, DEFAULT_MAX_ROWS};
use crate::fixtures::{self, FixtureConfig};
use crate::interchange;
use crate::ontology::ingest_document;
use crate::query;
use crate::schema;
use crate::store::{snapshot, PropertyGraph};

#[derive(Parser)]
#[command(
    name = "mrm3",
    version,
    about = "Embedded knowledge graph for machine-readable ML model metadata"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Schema utilities.
    Schema {
        #[command(subcommand)]
        action: SchemaAction,
    },
    /// Validate metadata documents and report violations.
    Validate {
        /// Document files, one model per file.
        #[arg(required = true, value_name = "FILE")]
        files: Vec<PathBuf>,
    },
    /// Validate, map and merge documents into a snapshot database.
    Ingest {
        #[arg(required = true, value_name = "FILE")]
        files: Vec<PathBuf>,
        /// Snapshot file; created when missing.
        #[arg(long, env = "MRM3_DB", value_name = "PATH")]
        db: PathBuf,
    },
    /// Show per-label and per-type counts.
    Stats {
        #[arg(long, env = "MRM3_DB", value_name = "PATH")]
        db: PathBuf,
        /// Machine-readable output.
        #[arg(long)]
        json: bool,
    },
    /// Run a query against a snapshot database.
    #[command(group(ArgGroup::new("source").required(true).args(["expr", "file"])))]
    Query {
        #[arg(long, env = "MRM3_DB", value_name = "PATH")]
        db: PathBuf,
        /// Query text.
        #[arg(short = 'e', long = "expr", value_name = "TEXT")]
        expr: Option<String>,
        /// File containing the query text.
        #[arg(short = 'f', long = "file", value_name = "FILE")]
        file: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = OutputFormat::Table)]
        format: OutputFormat,
        /// Row cap applied when the query has no LIMIT; 0 lifts the cap.
        #[arg(long, default_value_t = DEFAULT_MAX_ROWS)]
        max_rows: usize,
        /// Print the execution plan instead of running the query.
        #[arg(long)]
        explain: bool,
    },
    /// Export the graph for external tools.
    Export {
        #[arg(long, env = "MRM3_DB", value_name = "PATH")]
        db: PathBuf,
        #[arg(long, value_enum)]
        format: ExportFormat,
        #[arg(long, value_name = "FILE")]
        out: PathBuf,
    },
    /// Reference corpus utilities.
    Fixture {
        #[command(subcommand)]
        action: FixtureAction,
    },
    /// Serve the HTTP API over a snapshot database.
    Serve {
        #[arg(long, env = "MRM3_DB", value_name = "PATH")]
        db: PathBuf,
        #[arg(long, value_name = "PORT")]
        port: u16,
    },
}

#[derive(Subcommand)]
enum SchemaAction {
    /// Write the document schema as a JSON-schema file.
    Export {
        /// Destination; stdout when omitted.
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum FixtureAction {
    /// Generate the deterministic reference corpus, one JSON per model.
    Generate {
        #[arg(long, value_name = "DIR")]
        out: PathBuf,
        #[arg(long, default_value_t = fixtures::DEFAULT_SEED)]
        seed: u64,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Table,
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ExportFormat {
    Cypher,
    Dot,
    Graphml,
}

/// Entry point behind the binary; returns the process exit code.
pub fn cli_main<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e);
            1
        }
    }
}

fn load_graph(path: &Path) -> Result<PropertyGraph, AppError> {
    if path.exists() {
        Ok(snapshot::load(path)?)
    } else {
        Ok(PropertyGraph::new())
    }
}

fn load_existing_graph(path: &Path) -> Result<PropertyGraph, AppError> {
    if !path.exists() {
        return Err(AppError::Message(format!(
            "database {} does not exist; ingest documents first",
            path.display()
        )));
    }
    Ok(snapshot::load(path)?)
}

fn run(command: Command) -> Result<i32, AppError> {
    match command {
        Command::Schema { action } => match action {
            SchemaAction::Export { out } => {
                let text = schema::load_schema().to_pretty_json();
                match out {
                    Some(path) => fs::write(&path, text)
                        .map_err(|e| AppError::Message(format!("{}: {}", path.display(), e)))?,
                    None => print!("{}", text),
                }
                Ok(0)
            }
        },
        Command::Validate { files } => {
            let mut all_valid = true;
            for file in &files {
                match fs::read_to_string(file) {
                    Ok(raw) => {
                        let report = schema::validate_document(&raw);
                        if report.valid {
                            println!("OK       {}", file.display());
                        } else {
                            all_valid = false;
                            println!("INVALID  {}", file.display());
                            for v in &report.violations {
                                println!("  {}  [{}]  {}", v.json_path, v.rule, v.message);
                            }
                        }
                    }
                    Err(e) => {
                        all_valid = false;
                        println!("INVALID  {}", file.display());
                        println!("  $  [io]  {}", e);
                    }
                }
            }
            Ok(if all_valid { 0 } else { 1 })
        }
        Command::Ingest { files, db } => {
            // validate everything before touching the graph
            let mut documents = Vec::with_capacity(files.len());
            let mut all_valid = true;
            for file in &files {
                let raw = fs::read_to_string(file)
                    .map_err(|e| AppError::Message(format!("{}: {}", file.display(), e)))?;
                let report = schema::validate_document(&raw);
                if !report.valid {
                    all_valid = false;
                    println!("INVALID  {}", file.display());
                    for v in &report.violations {
                        println!("  {}  [{}]  {}", v.json_path, v.rule, v.message);
                    }
                    continue;
                }
                documents.push((file, schema::parse_document(&raw)?));
            }
            if !all_valid {
                eprintln!("nothing ingested: fix the documents above and retry");
                return Ok(1);
            }
            let mut graph = load_graph(&db)?;
            for (file, doc) in &documents {
                let report = ingest_document(&mut graph, doc)?;
                println!(
                    "ingested {}: nodes +{} (matched {}), relationships +{} (matched {})",
                    file.display(),
                    report.nodes_created,
                    report.nodes_matched,
                    report.relationships_created,
                    report.relationships_matched
                );
            }
            snapshot::save(&graph, &db)?;
            let stats = graph.stats();
            println!(
                "{} now holds {} nodes, {} relationships",
                db.display(),
                stats.total_nodes,
                stats.total_relationships
            );
            Ok(0)
        }
        Command::Stats { db, json } => {
            let graph = load_existing_graph(&db)?;
            let stats = graph.stats();
            if json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&stats).expect("stats serialize")
                );
            } else {
                println!("{:<24}{:>8}", "entity", "count");
                println!("{:-<24}{:->8}", "", "");
                println!("{:<24}{:>8}", "All Nodes", stats.total_nodes);
                println!("{:<24}{:>8}", "All Relationships", stats.total_relationships);
                for (label, count) in &stats.node_count_by_label {
                    println!("{:<24}{:>8}", format!("Node {}", label), count);
                }
                for (rel_type, count) in &stats.relationship_count_by_type {
                    println!("{:<24}{:>8}", format!("Relation {}", rel_type), count);
                }
            }
            Ok(0)
        }
        Command::Query {
            db,
            expr,
            file,
            format,
            max_rows,
            explain,
        } => {
            let text = match (expr, file) {
                (Some(text), None) => text,
                (None, Some(path)) => fs::read_to_string(&path)
                    .map_err(|e| AppError::Message(format!("{}: {}", path.display(), e)))?,
                _ => unreachable!("clap enforces the group"),
            };
            let graph = load_existing_graph(&db)?;
            let ast = match query::parse(&text) {
                Ok(ast) => ast,
                Err(e) => {
                    eprintln!("query error at {}", e);
                    return Ok(1);
                }
            };
            if explain {
                print!("{}", query::explain(&graph, &ast));
                return Ok(0);
            }
            let mut table = query::execute(&graph, &ast);
            if ast.limit.is_none() && max_rows > 0 && table.rows.len() > max_rows {
                table.rows.truncate(max_rows);
                eprintln!(
                    "output capped at {} rows; add LIMIT or raise --max-rows",
                    max_rows
                );
            }
            match format {
                OutputFormat::Table => print!("{}", render::to_table(&table)),
                OutputFormat::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&render::to_json(&table))
                        .expect("table serializes")
                ),
                OutputFormat::Csv => print!(
                    "{}",
                    render::to_csv(&table).map_err(|e| AppError::Message(e.to_string()))?
                ),
            }
            Ok(0)
        }
        Command::Export { db, format, out } => {
            let graph = load_existing_graph(&db)?;
            let text = match format {
                ExportFormat::Cypher => interchange::export_cypher(&graph),
                ExportFormat::Dot => interchange::export_dot(&graph),
                ExportFormat::Graphml => interchange::export_graphml(&graph),
            };
            fs::write(&out, text)
                .map_err(|e| AppError::Message(format!("{}: {}", out.display(), e)))?;
            println!("wrote {}", out.display());
            Ok(0)
        }
        Command::Fixture { action } => match action {
            FixtureAction::Generate { out, seed } => {
                let config = FixtureConfig::with_seed(seed);
                let documents = fixtures::generate(&config)?;
                fs::create_dir_all(&out)
                    .map_err(|e| AppError::Message(format!("{}: {}", out.display(), e)))?;
                for doc in &documents {
                    let path = out.join(format!("{}.json", doc.basic.name));
                    fs::write(&path, doc.to_pretty_json())
                        .map_err(|e| AppError::Message(format!("{}: {}", path.display(), e)))?;
                }
                let stats = fixtures::calibrate(&documents)?;
                println!(
                    "wrote {} documents to {} (seed {}); they materialize to {} nodes, {} relationships",
                    documents.len(),
                    out.display(),
                    seed,
                    stats.total_nodes,
                    stats.total_relationships
                );
                Ok(0)
            }
        },
        Command::Serve { db, port } => {
            let graph = load_graph(&db)?;
            let state = Arc::new(ServiceState::new(graph, Some(db.clone())));
            let addr = SocketAddr::new(IpAddr::V4(Ipv4Addr::LOCALHOST), port);
            println!("serving {} on http://{}", db.display(), addr);
            let runtime = tokio::runtime::Runtime::new()
                .map_err(|e| AppError::Message(format!("tokio runtime: {}", e)))?;
            runtime
                .block_on(serve(state, addr, None))
                .map_err(|e| AppError::Message(format!("server: {}", e)))?;
            Ok(0)
        }
    }
}
