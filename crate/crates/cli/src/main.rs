//! `starconvex` command-line front end.
//!
//! JSON goes to stdout (or `--output`), diagnostics to stderr. Exit status 0
//! means success or the property holds, 1 means the property fails, 2 means
//! the input or invocation was bad.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use serde_json::{json, Value};
use starconvex::convexity::CoreError;
use starconvex::fuzz::{run_campaign, Property};
use starconvex::io::{export_dot, graph_to_value, parse_graph};
use starconvex::ops::{
    append_probe_record, graph_intersection, graph_union, overlap_analysis, subgraph_core_probe, OpsError,
    ProbeOutcome, ProbeRecord,
};
use starconvex::oracle::{brute_core, DEFAULT_MAX_VERTICES};
use starconvex::sequence::{build_spider, embed, validate_class, ConvexSequenceClass, SequenceError, SpiderSpec};
use starconvex::witness::WitnessError;
use starconvex::{core, extract_witness_tree, verify_witness, VertexId, WeightedGraph, WitnessTree};

const ORACLE_BOUND_VAR: &str = "STARCONVEX_ORACLE_MAX_VERTICES";

#[derive(Parser)]
#[command(name = "starconvex", version, about = "Weighted star-convexity of graphs")]
struct Cli {
    /// Write the result here instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide star-convexity; exits 1 when the graph is not star-convex.
    Check { graph: PathBuf },
    /// Compute the core report.
    Core { graph: PathBuf },
    /// Structural report: connectivity, leaves, degrees.
    Validate { graph: PathBuf },
    /// Extract a star-convex witness tree with the graph's leaf set.
    ExtractTree {
        graph: PathBuf,
        #[arg(long)]
        root: Option<String>,
    },
    /// Check a witness tree against a graph.
    VerifyTree { graph: PathBuf, tree: PathBuf },
    /// Union of two graphs; with --analyze, the core-overlap report.
    Union {
        g1: PathBuf,
        g2: PathBuf,
        #[arg(long)]
        analyze: bool,
    },
    /// Intersection of two graphs; with --analyze, the core-overlap report.
    Intersect {
        g1: PathBuf,
        g2: PathBuf,
        #[arg(long)]
        analyze: bool,
    },
    /// Probe whether the core of a subgraph lies inside the core of its host.
    Probe {
        subgraph: PathBuf,
        host: PathBuf,
        /// Append the probe record to this JSON-lines file.
        #[arg(long, value_name = "PATH")]
        log: Option<PathBuf>,
    },
    /// Weight a regular spider from a class of convex sequences.
    Embed { class: PathBuf },
    /// Check the class conditions and report every violation.
    ValidateClass { class: PathBuf },
    /// Build an unweighted regular spider.
    Spider {
        #[arg(long)]
        legs: usize,
        #[arg(long)]
        leg_length: usize,
    },
    /// Compare the fast core with brute-force path enumeration.
    Oracle {
        graph: PathBuf,
        /// Largest graph to enumerate [default: $STARCONVEX_ORACLE_MAX_VERTICES or 10].
        #[arg(long)]
        max_vertices: Option<usize>,
    },
    /// Run seeded property campaigns, emitting one JSON line per run.
    Fuzz {
        /// Comma-separated property names, or `all`.
        #[arg(long, default_value = "all")]
        props: String,
        /// `N`, `A..B` (exclusive) or `A..=B`.
        #[arg(long)]
        seeds: String,
    },
    /// Render as Graphviz DOT.
    ExportDot {
        graph: PathBuf,
        /// Highlight core vertices.
        #[arg(long)]
        annotate: bool,
    },
}

/// Why a command did not succeed.
enum Failure {
    /// The property under test does not hold; any output is still emitted.
    Property { output: Option<String>, message: String },
    Input(String),
}

type Outcome = Result<String, Failure>;

fn input<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Input(e.to_string())
}

fn render(value: &Value) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("values serialize");
    text.push('\n');
    text
}

fn to_json<T: serde::Serialize>(value: &T) -> Value {
    serde_json::to_value(value).expect("reports serialize")
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))
}

fn load_graph(path: &Path) -> Result<WeightedGraph, Failure> {
    parse_graph(&read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_class(path: &Path) -> Result<ConvexSequenceClass, Failure> {
    ConvexSequenceClass::parse(&read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn verdict(holds: bool, output: String, message: &str) -> Outcome {
    if holds {
        Ok(output)
    } else {
        Err(Failure::Property { output: Some(output), message: message.to_string() })
    }
}

fn ids<'a>(set: impl IntoIterator<Item = &'a VertexId>) -> Value {
    json!(set.into_iter().map(VertexId::as_str).collect::<Vec<_>>())
}

fn check(path: &Path, gate: bool) -> Outcome {
    let g = load_graph(path)?;
    let report = core(&g).map_err(input)?;
    verdict(!gate || report.star_convex, render(&to_json(&report)), "graph is not star-convex")
}

fn extract_tree(path: &Path, root: Option<&str>) -> Outcome {
    let g = load_graph(path)?;
    match extract_witness_tree(&g, root) {
        Ok(w) => Ok(render(&w.to_value())),
        Err(e @ WitnessError::NotStarConvex) => Err(Failure::Property { output: None, message: e.to_string() }),
        Err(e) => Err(input(e)),
    }
}

fn verify_tree(graph: &Path, tree: &Path) -> Outcome {
    let g = load_graph(graph)?;
    let doc: Value = serde_json::from_str(&read(tree)?).map_err(|e| Failure::Input(format!("{}: {e}", tree.display())))?;
    let w = WitnessTree::from_value(&doc).map_err(|e| Failure::Input(format!("{}: {e}", tree.display())))?;
    let v = verify_witness(&g, &w);
    verdict(v.accepted, render(&to_json(&v)), "witness tree rejected")
}

fn set_operation(g1: &Path, g2: &Path, analyze: bool, union: bool) -> Outcome {
    let (a, b) = (load_graph(g1)?, load_graph(g2)?);
    if !analyze {
        let g = if union { graph_union(&a, &b) } else { graph_intersection(&a, &b) }.map_err(input)?;
        return Ok(render(&graph_to_value(&g)));
    }
    match overlap_analysis(&a, &b) {
        Ok(r) => {
            let (holds, which) = if union {
                (r.union_star_convex, "union")
            } else {
                (r.intersection_star_convex, "intersection")
            };
            verdict(holds, render(&to_json(&r)), &format!("{which} is not star-convex"))
        }
        Err(e @ OpsError::UnionClaimViolated(_)) => Err(Failure::Property { output: None, message: e.to_string() }),
        Err(e) => Err(input(e)),
    }
}

fn probe(sub: &Path, host: &Path, log: Option<&Path>) -> Outcome {
    let (g1, g2) = (load_graph(sub)?, load_graph(host)?);
    let outcome = subgraph_core_probe(&g1, &g2).map_err(input)?;
    let record = ProbeRecord::new(&g1, &g2, outcome.clone());
    if let Some(log) = log {
        append_probe_record(log, &record).map_err(|e| Failure::Input(format!("cannot append to {}: {e}", log.display())))?;
    }
    verdict(outcome == ProbeOutcome::Pass, render(&to_json(&record)), "subgraph core is not contained in the host core")
}

fn embed_class(path: &Path) -> Outcome {
    match embed(&load_class(path)?) {
        Ok(e) => Ok(render(&e.to_value())),
        Err(SequenceError::InvalidClass(report)) => Err(Failure::Property {
            output: Some(render(&to_json(&report))),
            message: format!("invalid class: {}", report.summary()),
        }),
        Err(e) => Err(input(e)),
    }
}

fn oracle(path: &Path, max_vertices: Option<usize>) -> Outcome {
    let bound = match max_vertices {
        Some(b) => b,
        None => match std::env::var(ORACLE_BOUND_VAR) {
            Ok(text) => text.trim().parse().map_err(|_| Failure::Input(format!("{ORACLE_BOUND_VAR}: `{text}` is not a count")))?,
            Err(_) => DEFAULT_MAX_VERTICES,
        },
    };
    let g = load_graph(path)?;
    let brute = brute_core(&g, bound).map_err(input)?;
    let fast = core(&g).map_err(input)?.core;
    let doc = json!({
        "agree": fast == brute,
        "brute_core": ids(&brute),
        "fast_core": ids(&fast),
        "only_brute": ids(brute.difference(&fast)),
        "only_fast": ids(fast.difference(&brute)),
    });
    verdict(fast == brute, render(&doc), "fast core disagrees with brute force")
}

fn parse_seeds(text: &str) -> Result<std::ops::Range<u64>, Failure> {
    let bad = || Failure::Input(format!("invalid seed range `{text}`; expected N, A..B or A..=B"));
    let num = |s: &str| s.trim().parse::<u64>().map_err(|_| bad());
    if let Some((a, b)) = text.split_once("..=") {
        Ok(num(a)?..num(b)?.checked_add(1).ok_or_else(bad)?)
    } else if let Some((a, b)) = text.split_once("..") {
        Ok(num(a)?..num(b)?)
    } else {
        let n = num(text)?;
        Ok(n..n + 1)
    }
}

fn fuzz(props: &str, seeds: &str) -> Outcome {
    let properties: Vec<Property> = if props.trim() == "all" {
        Property::ALL.to_vec()
    } else {
        props.split(',').map(|p| p.trim().parse()).collect::<Result<_, _>>().map_err(Failure::Input)?
    };
    let findings = run_campaign(&properties, parse_seeds(seeds)?);
    let failures = findings.iter().filter(|f| f.is_failure()).count();
    let text: String = findings.iter().map(|f| f.to_json_line() + "\n").collect();
    verdict(failures == 0, text, &format!("{failures} of {} runs failed or found a counterexample", findings.len()))
}

fn export(path: &Path, annotate: bool) -> Outcome {
    let g = load_graph(path)?;
    let report = if annotate { Some(core(&g).map_err(|e: CoreError| input(e))?) } else { None };
    Ok(export_dot(&g, report.as_ref()))
}

fn execute(command: &Command) -> Outcome {
    match command {
        Command::Check { graph } => check(graph, true),
        Command::Core { graph } => check(graph, false),
        Command::Validate { graph } => {
            let report = load_graph(graph)?.validate();
            verdict(report.connected, render(&to_json(&report)), "graph is disconnected")
        }
        Command::ExtractTree { graph, root } => extract_tree(graph, root.as_deref()),
        Command::VerifyTree { graph, tree } => verify_tree(graph, tree),
        Command::Union { g1, g2, analyze } => set_operation(g1, g2, *analyze, true),
        Command::Intersect { g1, g2, analyze } => set_operation(g1, g2, *analyze, false),
        Command::Probe { subgraph, host, log } => probe(subgraph, host, log.as_deref()),
        Command::Embed { class } => embed_class(class),
        Command::ValidateClass { class } => {
            let report = validate_class(&load_class(class)?);
            let message = format!("invalid class: {}", report.summary());
            verdict(report.valid, render(&to_json(&report)), &message)
        }
        Command::Spider { legs, leg_length } => {
            let spider = build_spider(&SpiderSpec::new(*legs, *leg_length)).map_err(input)?;
            Ok(render(&json!({"graph": graph_to_value(&spider.graph), "spider": spider.summary_value()})))
        }
        Command::Oracle { graph, max_vertices } => oracle(graph, *max_vertices),
        Command::Fuzz { props, seeds } => fuzz(props, seeds),
        Command::ExportDot { graph, annotate } => export(graph, *annotate),
    }
}

fn emit(text: &str, output: Option<&Path>) -> Result<(), String> {
    match output {
        Some(path) => fs::write(path, text).map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes()).and_then(|_| out.flush()).map_err(|e| e.to_string())
        }
    }
}

fn run(args: impl IntoIterator<Item = OsString>) -> u8 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{e}");
            return 0;
        }
        Err(e) => {
            // Collapse clap's multi-line message into its first paragraph.
            let rendered = e.to_string();
            let line: Vec<&str> = rendered.lines().map(str::trim).take_while(|l| !l.is_empty()).collect();
            eprintln!("{}", line.join(" ").trim_start_matches("error: "));
            return 2;
        }
    };
    let output = cli.output.as_deref();
    let (text, status, message) = match execute(&cli.command) {
        Ok(text) => (Some(text), 0, None),
        Err(Failure::Property { output, message }) => (output, 1, Some(message)),
        Err(Failure::Input(message)) => (None, 2, Some(message)),
    };
    if let Some(text) = text {
        if let Err(e) = emit(&text, output) {
            eprintln!("{e}");
            return 2;
        }
    }
    if let Some(message) = message {
        eprintln!("{message}");
    }
    status
}

fn main() -> ExitCode {
    ExitCode::from(run(std::env::args_os()))
}
