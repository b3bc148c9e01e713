//! Command-line front end. Output is assembled in memory and only written
//! when the command succeeds, so failures never leave partial output.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Read;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::approx::{self, format_decimal, parse_rational, Mode, Rational, Thresholds};
use crate::combinatorics::{count, enumerate_partitionings, enumerate_passages};
use crate::error::Error;
use crate::graph::{Edge, EdgeSet, Graph};
use crate::io::{edge_pairs, parse_graph, parse_partitioning_doc, EdgesDoc, PartitioningDoc};
use crate::passage::{is_passage, minimal_passages, validate_partitioning, Passage, PassagePartitioning};
use crate::passage_graph::{build_passage_graph, classify_vertices, to_dot, DotOptions, LabelMode};
use crate::weighted::parse_weighted_graph;

#[derive(Debug, Parser)]
#[command(name = "passage", version, about = "Decompose directed graphs into passages")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Input {
    /// Edge-list file, or `-` for stdin.
    #[arg(default_value = "-")]
    input: PathBuf,
}

#[derive(Debug, Args)]
struct PartitionArg {
    /// JSON partitioning to use instead of the minimal one.
    #[arg(long, value_name = "FILE")]
    partition: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Labels {
    Index,
    Edges,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    Exact,
    Greedy,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the minimal passage partitioning.
    Minimal {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        json: bool,
    },
    /// Test whether a comma-separated edge list is a passage.
    Check {
        #[command(flatten)]
        input: Input,
        /// Edges as `x y` pairs separated by commas, e.g. "a b,a c".
        #[arg(long, allow_hyphen_values = true)]
        edges: String,
        #[arg(long)]
        json: bool,
    },
    /// Enumerate passages as JSON lines.
    Passages {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
        limit: u64,
    },
    /// Enumerate passage partitionings as JSON lines.
    Partitionings {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
        limit: u64,
    },
    /// Print the number of minimal passages, passages and partitionings.
    Count {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        json: bool,
    },
    /// Print the five vertex classes.
    Classify {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        partition: PartitionArg,
        #[arg(long)]
        json: bool,
    },
    /// Print the passage graph.
    Pgraph {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        partition: PartitionArg,
        /// Emit Graphviz DOT.
        #[arg(long, conflicts_with = "json")]
        dot: bool,
        /// Draw self-arcs in DOT output.
        #[arg(long, requires = "dot")]
        self_arcs: bool,
        #[arg(long, value_enum, default_value = "edges", requires = "dot")]
        labels: Labels,
        #[arg(long)]
        json: bool,
    },
    /// Choose edges from a weighted graph maximizing accuracy under size bounds.
    Approx {
        #[arg(long, value_name = "FILE")]
        weights: PathBuf,
        /// Upper bound on the average passage size (decimal or fraction).
        #[arg(long, allow_hyphen_values = true)]
        tau_av: Option<String>,
        /// Upper bound on the biggest passage size.
        #[arg(long)]
        tau_big: Option<usize>,
        #[arg(long, value_enum)]
        mode: ModeArg,
        #[arg(long)]
        json: bool,
    },
    /// Print |V|, |E|, k and the size metrics of the minimal partitioning.
    Stats {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        json: bool,
    },
}

/// Exit status and captured streams of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Context<'a> {
    stdin: &'a mut dyn Read,
}

impl Context<'_> {
    fn read(&mut self, path: &Path) -> Result<String, Error> {
        if path == Path::new("-") {
            let mut text = String::new();
            self.stdin
                .read_to_string(&mut text)
                .map_err(|e| io_error("<stdin>", e))?;
            Ok(text)
        } else {
            std::fs::read_to_string(path).map_err(|e| io_error(&path.display().to_string(), e))
        }
    }

    fn graph(&mut self, input: &Input) -> Result<Graph, CliError> {
        let text = self.read(&input.input)?;
        parse_graph(&text).map_err(|e| CliError::in_file(&input.input, e))
    }

    fn partitioning(&mut self, g: &Graph, arg: &PartitionArg) -> Result<PassagePartitioning, CliError> {
        match &arg.partition {
            None => Ok(minimal_passages(g)),
            Some(path) => {
                let text = self.read(path)?;
                let parts = parse_partitioning_doc(g, &text).map_err(|e| CliError::in_file(path, e))?;
                Ok(validate_partitioning(g, parts)?)
            }
        }
    }
}

#[derive(Debug)]
struct CliError(String);

impl CliError {
    fn in_file(path: &Path, e: Error) -> Self {
        CliError(format!("{}: {e}", path.display()))
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError(e.to_string())
    }
}

fn io_error(what: &str, e: std::io::Error) -> Error {
    Error::Parse {
        line: 0,
        message: format!("cannot read {what}: {e}"),
    }
}

/// Runs one invocation. `color` enables ANSI color on the error prefix.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, color: bool) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = if color {
                e.render().ansi().to_string()
            } else {
                e.render().to_string()
            };
            return if e.use_stderr() {
                Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: rendered,
                }
            } else {
                Outcome {
                    code: 0,
                    stdout: rendered,
                    stderr: String::new(),
                }
            };
        }
    };
    let mut ctx = Context { stdin };
    match execute(cli.command, &mut ctx) {
        Ok(stdout) => Outcome {
            code: 0,
            stdout,
            stderr: String::new(),
        },
        Err(CliError(message)) => {
            let prefix = if color { "\x1b[1;31merror:\x1b[0m" } else { "error:" };
            Outcome {
                code: 1,
                stdout: String::new(),
                stderr: format!("{prefix} {message}\n"),
            }
        }
    }
}

fn to_json_line<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("documents serialize");
    s.push('\n');
    s
}

fn edges_text(g: &Graph, edges: impl IntoIterator<Item = Edge>) -> String {
    edges
        .into_iter()
        .map(|e| {
            let (x, y) = g.edge_names(e);
            format!("{x} {y}")
        })
        .collect::<Vec<_>>()
        .join(", ")
}

fn passage_doc(p: &Passage) -> EdgesDoc {
    EdgesDoc {
        edges: edge_pairs(p.graph(), p.edges()),
    }
}

fn partitioning_doc(pp: &PassagePartitioning) -> PartitioningDoc {
    PartitioningDoc {
        parts: pp.parts().iter().map(passage_doc).collect(),
    }
}

fn parts_text(out: &mut String, pp: &PassagePartitioning) {
    for (i, p) in pp.parts().iter().enumerate() {
        writeln!(out, "P{}: {}", i + 1, edges_text(pp.graph(), p.edges().iter().copied())).unwrap();
    }
}

/// Exact rational as a decimal with at most six places.
pub fn display_rational(r: Rational) -> String {
    let s = format_decimal(r, 6);
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

fn parse_edge_list(g: &Graph, list: &str) -> Result<EdgeSet, Error> {
    let mut edges = Vec::new();
    for (i, item) in list.split(',').enumerate() {
        let item = item.trim();
        if item.is_empty() {
            continue;
        }
        let tokens = crate::io::line_tokens(item);
        match tokens.as_slice() {
            [x, y] => edges.push(g.edge_by_names(x, y)?),
            _ => {
                return Err(Error::Parse {
                    line: 0,
                    message: format!("edge {} of --edges: expected `x y`, found `{item}`", i + 1),
                })
            }
        }
    }
    EdgeSet::new(g, edges)
}

fn execute(command: Command, ctx: &mut Context<'_>) -> Result<String, CliError> {
    let mut out = String::new();
    match command {
        Command::Minimal { input, json } => {
            let g = ctx.graph(&input)?;
            let pp = minimal_passages(&g);
            if json {
                out = to_json_line(&partitioning_doc(&pp));
            } else {
                parts_text(&mut out, &pp);
            }
        }
        Command::Check { input, edges, json } => {
            let g = ctx.graph(&input)?;
            let set = parse_edge_list(&g, &edges)?;
            let verdict = is_passage(&g, &set)?;
            out = if json {
                to_json_line(&json!({ "passage": verdict }))
            } else {
                format!("{verdict}\n")
            };
        }
        Command::Passages { input, limit } => {
            let g = ctx.graph(&input)?;
            let mut stream = enumerate_passages(&g, limit as usize);
            for p in stream.by_ref() {
                out.push_str(&to_json_line(&passage_doc(&p)));
            }
            if stream.is_truncated() {
                out.push_str(&to_json_line(&json!({ "truncated": true, "limit": limit })));
            }
        }
        Command::Partitionings { input, limit } => {
            let g = ctx.graph(&input)?;
            let mut stream = enumerate_partitionings(&g, limit as usize);
            for pp in stream.by_ref() {
                out.push_str(&to_json_line(&partitioning_doc(&pp)));
            }
            if stream.is_truncated() {
                out.push_str(&to_json_line(&json!({ "truncated": true, "limit": limit })));
            }
        }
        Command::Count { input, json } => {
            let g = ctx.graph(&input)?;
            let c = count(&g);
            out = if json {
                to_json_line(&json!({
                    "k": c.minimal,
                    "passages": c.passages.to_string(),
                    "partitionings": c.partitionings.to_string(),
                }))
            } else {
                format!(
                    "k={}\npassages={}\npartitionings={}\n",
                    c.minimal, c.passages, c.partitionings
                )
            };
        }
        Command::Classify {
            input,
            partition,
            json,
        } => {
            let g = ctx.graph(&input)?;
            let pp = ctx.partitioning(&g, &partition)?;
            let doc = classify_vertices(&g, &pp)?.to_doc(&g);
            if json {
                out = to_json_line(&doc);
            } else {
                for (label, names) in [
                    ("isolated", &doc.isolated),
                    ("input", &doc.input),
                    ("output", &doc.output),
                    ("connecting", &doc.connecting),
                    ("local", &doc.local),
                ] {
                    out.push_str(label);
                    out.push(':');
                    for n in names {
                        out.push(' ');
                        out.push_str(n);
                    }
                    out.push('\n');
                }
            }
        }
        Command::Pgraph {
            input,
            partition,
            dot,
            self_arcs,
            labels,
            json,
        } => {
            let g = ctx.graph(&input)?;
            let pp = ctx.partitioning(&g, &partition)?;
            let pg = build_passage_graph(&g, &pp)?;
            if dot {
                let options = DotOptions {
                    show_self_arcs: self_arcs,
                    label_mode: match labels {
                        Labels::Index => LabelMode::Index,
                        Labels::Edges => LabelMode::EdgeCount,
                    },
                };
                out = to_dot(&pg, options);
            } else if json {
                let arcs: Vec<[String; 2]> = pg
                    .arcs()
                    .iter()
                    .map(|&(i, j)| [format!("P{}", i + 1), format!("P{}", j + 1)])
                    .collect();
                out = to_json_line(&json!({
                    "nodes": partitioning_doc(&pp).parts,
                    "arcs": arcs,
                }));
            } else {
                parts_text(&mut out, &pp);
                for &(i, j) in pg.arcs() {
                    writeln!(out, "P{} -> P{}", i + 1, j + 1).unwrap();
                }
            }
        }
        Command::Approx {
            weights,
            tau_av,
            tau_big,
            mode,
            json,
        } => {
            let tau_av = tau_av
                .as_deref()
                .map(parse_rational)
                .transpose()
                .map_err(|_| CliError("--tau-av: expected a decimal or a fraction".into()))?;
            let text = ctx.read(&weights)?;
            let wg = parse_weighted_graph(&text).map_err(|e| CliError::in_file(&weights, e))?;
            let mode = match mode {
                ModeArg::Exact => Mode::Exact,
                ModeArg::Greedy => Mode::Greedy,
            };
            let sol = approx::optimize(&wg, Thresholds { tau_av, tau_big }, mode)?;
            if json {
                out = to_json_line(&sol.to_doc());
            } else {
                let q = &sol.quality;
                writeln!(out, "mode={}", sol.mode).unwrap();
                writeln!(out, "chosen: {}", edges_text(&sol.graph, sol.chosen.iter().copied())).unwrap();
                parts_text(&mut out, &sol.partitioning);
                let av = q.average_size.map_or("none".to_string(), display_rational);
                let big = q.biggest_size.map_or("none".to_string(), |b| b.to_string());
                writeln!(out, "av={av}\nbig={big}\nacc={}", display_rational(q.accuracy)).unwrap();
            }
        }
        Command::Stats { input, json } => {
            let g = ctx.graph(&input)?;
            let pp = minimal_passages(&g);
            let av = approx::average_size(&pp).ok().map(display_rational);
            let big = approx::biggest_size(&pp).ok();
            out = if json {
                to_json_line(&json!({
                    "vertices": g.vertex_count(),
                    "edges": g.edge_count(),
                    "k": pp.len(),
                    "av": av,
                    "big": big.map(|b| b.to_string()),
                }))
            } else {
                format!(
                    "vertices={}\nedges={}\nk={}\nav={}\nbig={}\n",
                    g.vertex_count(),
                    g.edge_count(),
                    pp.len(),
                    av.unwrap_or_else(|| "none".into()),
                    big.map_or("none".to_string(), |b| b.to_string()),
                )
            };
        }
    }
    Ok(out)
}
