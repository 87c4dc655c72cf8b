//! The `apud` command line front end.
//!
//! Every command reads a graph (native edge list, DIMACS, or the JSON
//! written by `generate --format json`) or a seed, and writes a
//! deterministic report. [`run`] takes its streams as arguments so tests can
//! drive it without a process.

use std::io::{Read, Write};
use std::str::FromStr;

use apud_core::cliques::enumerate_maximal_cliques;
use apud_core::consecutive::{is_helly_circular_arc, HcaRejection};
use apud_core::error::GraphError;
use apud_core::geometry::{grid_bruteforce_embed_with, random_apud11, GridSearch};
use apud_core::graph::Graph;
use apud_core::interval::{is_chordal, is_interval, is_unit_interval};
use apud_core::io::{parse_graph, write_edge_list};
use apud_core::recognizer::{explain, recognize_apud11_with, RecognizerOptions, ReportFormat};
use apud_core::structures::{enumerate_induced_c4, w4_universals};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde_json::{json, Value};

/// Decide whether a graph is the intersection graph of unit disks centered
/// on two perpendicular lines.
#[derive(Parser, Debug)]
#[command(name = "apud", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run the recognizer; exit 0 when accepted, 1 when rejected.
    Recognize {
        #[command(flatten)]
        input: InputArgs,
        /// Maximal clique budget (default n^4).
        #[arg(long)]
        cap: Option<u64>,
        /// Skip the early check for chordless cycles of length five or more.
        #[arg(long)]
        no_longhole_guard: bool,
    },
    /// Draw a random embedding and print its intersection graph.
    Generate {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "4", value_parser = parse_rational)]
        extent: BigRational,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Exhaustive grid search for an embedding of a small graph.
    Oracle {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value = "1/4", value_parser = parse_rational)]
        grid_step: BigRational,
        #[arg(long, default_value = "4", value_parser = parse_rational)]
        extent: BigRational,
    },
    /// Print induced C4s, W4 hubs, maximal cliques and class memberships.
    Analyze {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        cap: Option<u64>,
    },
}

#[derive(Args, Debug)]
pub struct InputArgs {
    /// Graph file, or `-` for standard input.
    #[arg(long, default_value = "-")]
    pub input: String,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("invalid JSON graph: {0}")]
    Json(String),
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Geometry(#[from] apud_core::error::GeometryError),
}

fn parse_rational(s: &str) -> Result<BigRational, String> {
    let r = BigRational::from_str(s.trim()).map_err(|e| format!("'{s}' is not a fraction: {e}"))?;
    if r < BigRational::from_integer(0.into()) {
        return Err(format!("'{s}' is negative"));
    }
    Ok(r)
}

/// Parses the JSON object written by `generate --format json`.
fn graph_from_json(text: &str) -> Result<Graph, CliError> {
    let v: Value = serde_json::from_str(text).map_err(|e| CliError::Json(e.to_string()))?;
    let n = v["n"]
        .as_u64()
        .ok_or_else(|| CliError::Json("missing \"n\"".into()))? as usize;
    let edges = v["edges"]
        .as_array()
        .ok_or_else(|| CliError::Json("missing \"edges\"".into()))?
        .iter()
        .map(|e| match e.as_array().map(|a| a.as_slice()) {
            Some([u, v]) => match (u.as_u64(), v.as_u64()) {
                (Some(u), Some(v)) => Ok((u as usize, v as usize)),
                _ => Err(CliError::Json(format!("bad edge {e}"))),
            },
            _ => Err(CliError::Json(format!("bad edge {e}"))),
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Graph::from_edge_list(n, &edges)?)
}

fn read_graph(path: &str, stdin: &mut dyn Read) -> Result<Graph, CliError> {
    let mut text = String::new();
    let res = if path == "-" {
        stdin.read_to_string(&mut text)
    } else {
        std::fs::File::open(path).and_then(|mut f| f.read_to_string(&mut text))
    };
    res.map_err(|source| CliError::Io {
        path: path.to_string(),
        source,
    })?;
    if text.trim_start().starts_with('{') {
        graph_from_json(&text)
    } else {
        Ok(parse_graph(&text)?)
    }
}

/// Worker count for the grid search, from `APUD_THREADS` (default 1).
fn threads() -> usize {
    std::env::var("APUD_THREADS")
        .ok()
        .and_then(|s| s.parse().ok())
        .filter(|&t| t > 0)
        .unwrap_or(1)
}

/// Runs one command. Returns the process exit code: 0 success or accepted,
/// 1 rejected, 2 usage, input or internal error.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    match execute(cli.command, stdin, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn execute(command: Command, stdin: &mut dyn Read, out: &mut dyn Write) -> Result<i32, CliError> {
    let w = |out: &mut dyn Write, s: &str| {
        out.write_all(s.as_bytes()).map_err(|source| CliError::Io {
            path: "<output>".into(),
            source,
        })
    };
    match command {
        Command::Recognize {
            input,
            cap,
            no_longhole_guard,
        } => {
            let g = read_graph(&input.input, stdin)?;
            let options = RecognizerOptions {
                longhole_guard: !no_longhole_guard,
                clique_cap: cap,
                ..Default::default()
            };
            let verdict = recognize_apud11_with(&g, &options);
            let mut report = explain(&verdict, report_format(input.format));
            if !report.ends_with('\n') {
                report.push('\n');
            }
            w(out, &report)?;
            Ok(if verdict.accepted { 0 } else { 1 })
        }
        Command::Generate {
            n,
            seed,
            extent,
            format,
        } => {
            if extent == BigRational::from_integer(0.into()) {
                return Err(CliError::Usage("extent must be positive".into()));
            }
            let (e, g) = random_apud11(n, &extent, seed);
            let text = match format {
                Format::Text => format!("# embedding {}\n{}", e.to_json(), write_edge_list(&g)),
                Format::Json => {
                    let embedding: Value = serde_json::from_str(&e.to_json()).expect("embedding JSON");
                    let edges: Vec<[usize; 2]> = g.edges().map(|(u, v)| [u, v]).collect();
                    json!({"n": g.n(), "edges": edges, "embedding": embedding}).to_string() + "\n"
                }
            };
            w(out, &text)?;
            Ok(0)
        }
        Command::Oracle {
            input,
            grid_step,
            extent,
        } => {
            let g = read_graph(&input.input, stdin)?;
            let params = GridSearch {
                threads: threads(),
                ..GridSearch::new(grid_step, extent)
            };
            let found = grid_bruteforce_embed_with(&g, &params)?;
            let text = match (input.format, found) {
                (Format::Text, Some(e)) => format!("Some\n{}\n", e.to_json()),
                (Format::Text, None) => "None\n".to_string(),
                (Format::Json, Some(e)) => {
                    let embedding: Value = serde_json::from_str(&e.to_json()).expect("embedding JSON");
                    json!({"embedding": embedding}).to_string() + "\n"
                }
                (Format::Json, None) => "{\"embedding\":null}\n".to_string(),
            };
            w(out, &text)?;
            Ok(0)
        }
        Command::Analyze { input, cap } => {
            let g = read_graph(&input.input, stdin)?;
            let report = analyze(&g, cap);
            let text = match input.format {
                Format::Json => report.to_string() + "\n",
                Format::Text => {
                    let mut s = String::new();
                    for (k, v) in report.as_object().expect("report is an object") {
                        s.push_str(&format!("{k}: {v}\n"));
                    }
                    s
                }
            };
            w(out, &text)?;
            Ok(0)
        }
    }
}

fn report_format(f: Format) -> ReportFormat {
    match f {
        Format::Json => ReportFormat::Json,
        Format::Text => ReportFormat::Text,
    }
}

fn analyze(g: &Graph, cap: Option<u64>) -> Value {
    let n = g.n() as u64;
    let cap = cap.unwrap_or_else(|| n.saturating_pow(4)).max(1);
    let cycles = enumerate_induced_c4(g);
    let (hubs, _) = w4_universals(g, &cycles);
    let cliques = enumerate_maximal_cliques(g, cap);
    let hca = match is_helly_circular_arc(g, cap) {
        Ok(_) => json!(true),
        Err(HcaRejection::NoCircularOrder) => json!(false),
        Err(HcaRejection::CapExceeded { .. }) => json!(null),
    };
    let cycles: Vec<[usize; 4]> = cycles.iter().map(|c| c.vertices).collect();
    json!({
        "n": g.n(),
        "m": g.edge_count(),
        "induced_c4": cycles,
        "w4_hubs": hubs,
        "maximal_cliques": cliques.cliques,
        "cliques_capped": cliques.capped,
        "chordal": is_chordal(g).is_ok(),
        "interval": is_interval(g).is_some(),
        "unit_interval": is_unit_interval(g).is_some(),
        "helly_circular_arc": hca,
    })
}
