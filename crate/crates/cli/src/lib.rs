//! The `primspec` command line: argument handling, dispatch and output
//! formatting. [`run`] does everything except touching the process's own
//! streams, so it can be driven from tests.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use primspec::ideals::{quotient_graph, GaugeInvariantIdeal};
use primspec::report::{
    graph_dot, hs_lattice, ideal_label, ideal_lattice, lattice_dot, order_dot, order_edges, prim_report, tail_reports,
    PrimElementJson, Report,
};
use primspec::topology::{closure, is_simple};
use primspec::{parse_graph, to_text, Graph, GraphJson, PrimSpace, PrimSubset};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Parser)]
#[command(name = "primspec", version, about = "Primitive ideal spaces of graph algebras and their topology")]
pub struct Cli {
    /// Output format; not every command supports every format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Json)]
    pub format: Format,
    /// Name tails `T(x)` after a root vertex instead of `M1`, `M2`, ...
    #[arg(long, global = true)]
    pub label_by_root: bool,
    /// Indent JSON output.
    #[arg(long, global = true)]
    pub pretty: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
    Text,
}

#[derive(Debug, Args)]
pub struct GraphArg {
    /// Graph file in the text grammar or JSON; `-` reads standard input.
    #[arg(long)]
    pub graph: PathBuf,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse and print the graph in canonical form.
    Parse(GraphArg),
    /// Maximal tails with their loop data.
    Tails(GraphArg),
    /// Breaking vertices.
    Bv(GraphArg),
    /// Lattice of hereditary saturated sets.
    Hs(GraphArg),
    /// Lattice of gauge-invariant ideals.
    Ideals(GraphArg),
    /// The primitive ideal space.
    Prim(GraphArg),
    /// Closure of a set of primitive ideals.
    Closure {
        #[command(flatten)]
        graph: GraphArg,
        /// `{"gamma":[..],"bv":[..],"circle":{..}}` or `gamma:M1; bv:v; circle:M2=arc:[0,1/2)`.
        #[arg(long)]
        set: String,
    },
    /// Specialization order between primitive ideals.
    Order(GraphArg),
    /// Quotient graph by the ideal of an admissible pair.
    Quotient {
        #[command(flatten)]
        graph: GraphArg,
        /// Comma-separated hereditary saturated set.
        #[arg(long = "K", default_value = "")]
        k: String,
        /// Comma-separated breaking set.
        #[arg(long = "B", default_value = "")]
        b: String,
    },
    /// Whether the algebra is simple.
    Simple(GraphArg),
    /// Everything at once, optionally with a closure and the order.
    Report {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        set: Option<String>,
        #[arg(long)]
        order: bool,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("invalid graph JSON: {0}")]
    GraphJson(serde_json::Error),
    #[error(transparent)]
    Lib(#[from] primspec::Error),
    #[error("{command} has no {format} output")]
    UnsupportedFormat { command: &'static str, format: &'static str },
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Lib(primspec::Error::InadmissibleIdeal(_)) => 3,
            _ => 2,
        }
    }

    pub fn kind(&self) -> &'static str {
        use primspec::Error as E;
        match self {
            CliError::Io { .. } => "io",
            CliError::GraphJson(_) => "graph-json",
            CliError::UnsupportedFormat { .. } => "unsupported-format",
            CliError::Usage(_) => "usage",
            CliError::Lib(e) => match e {
                E::Syntax { .. } => "syntax",
                E::UndeclaredVertex { .. } => "undeclared-vertex",
                E::DuplicateVertex(_) => "duplicate-vertex",
                E::InvalidVertexName(_) => "invalid-vertex-name",
                E::ZeroMultiplicity { .. } => "zero-multiplicity",
                E::MultiplicityOverflow { .. } => "multiplicity-overflow",
                E::UnknownVertex(_) => "unknown-vertex",
                E::NotHereditarySaturated => "not-hereditary-saturated",
                E::NotMaximalTail => "not-maximal-tail",
                E::NotTauTail => "not-tau-tail",
                E::VertexOnLoop(_) => "vertex-on-loop",
                E::InadmissibleIdeal(_) => "inadmissible-ideal",
                E::EmptyFamily => "empty-family",
                E::EmptyGraph => "empty-graph",
                E::NameCollision(_) => "name-collision",
                E::Inconsistent(_) => "inconsistent",
                E::CircleSyntax(_) => "circle-syntax",
                E::InvalidSubset(_) => "invalid-subset",
            },
        }
    }

    fn position(&self) -> Option<(usize, usize)> {
        match self {
            CliError::Lib(primspec::Error::Syntax { line, col, .. })
            | CliError::Lib(primspec::Error::UndeclaredVertex { line, col, .. }) => Some((*line, *col)),
            _ => None,
        }
    }

    /// `{"error":{"kind":..,"message":..}}`, with `line` and `col` for
    /// positioned parse errors.
    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Body<'a> {
            kind: &'a str,
            message: String,
            #[serde(skip_serializing_if = "Option::is_none")]
            line: Option<usize>,
            #[serde(skip_serializing_if = "Option::is_none")]
            col: Option<usize>,
        }
        #[derive(Serialize)]
        struct Wrapper<'a> {
            error: Body<'a>,
        }
        let pos = self.position();
        let body = Body { kind: self.kind(), message: self.to_string(), line: pos.map(|p| p.0), col: pos.map(|p| p.1) };
        serde_json::to_string(&Wrapper { error: body }).expect("error serializes")
    }
}

/// What a run printed and how it ended.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `argv` (program name first) and executes the command. Usage
/// errors exit with code 2 and a JSON error object, like every other
/// failure; `--help` and `--version` print to stdout and succeed.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                return Outcome { code: 0, stdout: e.to_string(), stderr: String::new() };
            }
            let err = CliError::Usage(e.to_string().trim_end().to_string());
            return Outcome { code: 2, stdout: String::new(), stderr: err.to_json() + "\n" };
        }
    };
    match execute(&cli) {
        Ok(stdout) => Outcome { code: 0, stdout, stderr: String::new() },
        Err(err) => Outcome { code: err.exit_code(), stdout: String::new(), stderr: err.to_json() + "\n" },
    }
}

pub fn load_graph(path: &PathBuf) -> Result<Graph, CliError> {
    let io_err = |source| CliError::Io { path: path.display().to_string(), source };
    let text = if path.as_os_str() == "-" {
        std::io::read_to_string(std::io::stdin()).map_err(io_err)?
    } else {
        std::fs::read_to_string(path).map_err(io_err)?
    };
    graph_from_text(&text)
}

/// Reads either the text grammar or the JSON form of a graph.
pub fn graph_from_text(text: &str) -> Result<Graph, CliError> {
    if text.trim_start().starts_with('{') {
        let json: GraphJson = serde_json::from_str(text).map_err(CliError::GraphJson)?;
        Ok(json.into_graph()?)
    } else {
        Ok(parse_graph(text)?)
    }
}

fn names(list: &str) -> Vec<&str> {
    list.split(',').map(str::trim).filter(|s| !s.is_empty()).collect()
}

fn set_text(names: &[String]) -> String {
    format!("{{{}}}", names.join(","))
}

/// Inline form of a subset, readable back by `--set`.
pub fn subset_inline(space: &PrimSpace, set: &PrimSubset, label_by_root: bool) -> String {
    let json = set.to_json(space, label_by_root);
    let mut items: Vec<String> = json.gamma.iter().map(|t| format!("gamma:{t}")).collect();
    items.extend(json.bv.iter().map(|v| format!("bv:{v}")));
    items.extend(json.circle.iter().map(|(t, d)| format!("circle:{t}={d}")));
    items.join("; ")
}

fn element_text(e: &PrimElementJson) -> String {
    match e {
        PrimElementJson::Gamma { tail } => tail.clone(),
        PrimElementJson::Bv { vertex } => format!("bv {vertex}"),
        PrimElementJson::Circle { tail, t: None } => format!("{tail}×T"),
        PrimElementJson::Circle { tail, t: Some(t) } => format!("{tail}@{t}"),
    }
}

struct Ctx<'a> {
    cli: &'a Cli,
    command: &'static str,
}

impl Ctx<'_> {
    fn json<T: Serialize>(&self, value: &T) -> String {
        let text = if self.cli.pretty { serde_json::to_string_pretty(value) } else { serde_json::to_string(value) };
        text.expect("output serializes") + "\n"
    }

    fn unsupported(&self) -> CliError {
        let format = match self.cli.format {
            Format::Json => "json",
            Format::Dot => "dot",
            Format::Text => "text",
        };
        CliError::UnsupportedFormat { command: self.command, format }
    }
}

fn execute(cli: &Cli) -> Result<String, CliError> {
    let lbr = cli.label_by_root;
    match &cli.command {
        Command::Parse(a) => {
            let ctx = Ctx { cli, command: "parse" };
            let g = load_graph(&a.graph)?;
            Ok(match cli.format {
                Format::Json => ctx.json(&GraphJson::from_graph(&g)),
                Format::Dot => graph_dot(&g),
                Format::Text => to_text(&g),
            })
        }
        Command::Tails(a) => {
            let ctx = Ctx { cli, command: "tails" };
            let space = PrimSpace::new(&load_graph(&a.graph)?)?;
            let tails = tail_reports(&space, lbr);
            match cli.format {
                Format::Json => Ok(ctx.json(&tails)),
                Format::Text => {
                    let mut out = String::new();
                    for t in &tails {
                        let _ = write!(out, "{} {} {}", t.id, t.kind, set_text(&t.vertices));
                        if let (Some(l), Some(k), Some(b)) = (&t.exit_free_loop, &t.finite_entry, &t.upper_breaking) {
                            let _ = write!(out, " loop {} K_M {} B_M {}", l.join(" "), set_text(k), set_text(b));
                        }
                        out.push('\n');
                    }
                    Ok(out)
                }
                Format::Dot => Err(ctx.unsupported()),
            }
        }
        Command::Bv(a) => {
            let ctx = Ctx { cli, command: "bv" };
            let g = load_graph(&a.graph)?;
            let bv = g.set_names(&primspec::tails::breaking_vertices(&g));
            match cli.format {
                Format::Json => Ok(ctx.json(&bv)),
                Format::Text => Ok(bv.iter().map(|v| format!("{v}\n")).collect()),
                Format::Dot => Err(ctx.unsupported()),
            }
        }
        Command::Hs(a) => {
            let ctx = Ctx { cli, command: "hs" };
            let lattice = hs_lattice(&load_graph(&a.graph)?);
            let labels: Vec<String> = lattice.elements.iter().map(|s| set_text(s)).collect();
            Ok(match cli.format {
                Format::Json => ctx.json(&lattice),
                Format::Dot => lattice_dot("hereditary_saturated", &labels, &lattice.hasse),
                Format::Text => lattice_text(&labels, &lattice.hasse),
            })
        }
        Command::Ideals(a) => {
            let ctx = Ctx { cli, command: "ideals" };
            let lattice = ideal_lattice(&load_graph(&a.graph)?);
            let labels: Vec<String> = lattice.elements.iter().map(ideal_label).collect();
            Ok(match cli.format {
                Format::Json => ctx.json(&lattice),
                Format::Dot => lattice_dot("gauge_invariant_ideals", &labels, &lattice.hasse),
                Format::Text => lattice_text(&labels, &lattice.hasse),
            })
        }
        Command::Prim(a) => {
            let ctx = Ctx { cli, command: "prim" };
            let space = PrimSpace::new(&load_graph(&a.graph)?)?;
            let prim = prim_report(&space, lbr);
            match cli.format {
                Format::Json => Ok(ctx.json(&prim)),
                Format::Text => {
                    let mut out = String::new();
                    for e in &prim.gamma {
                        let _ = writeln!(out, "gamma {} {} ideal {}", e.id, set_text(&e.tail), ideal_label(&e.ideal));
                    }
                    for e in &prim.bv {
                        let _ = writeln!(out, "bv {} ideal {}", e.vertex, ideal_label(&e.ideal));
                    }
                    for e in &prim.tau {
                        let _ = writeln!(
                            out,
                            "tau {}×T {} between {} and {}",
                            e.id,
                            set_text(&e.tail),
                            ideal_label(&e.lower),
                            ideal_label(&e.upper)
                        );
                    }
                    Ok(out)
                }
                Format::Dot => Err(ctx.unsupported()),
            }
        }
        Command::Closure { graph, set } => {
            let ctx = Ctx { cli, command: "closure" };
            let space = PrimSpace::new(&load_graph(&graph.graph)?)?;
            let closed = closure(&space, &PrimSubset::parse(&space, set)?)?;
            match cli.format {
                Format::Json => Ok(ctx.json(&closed.to_json(&space, lbr))),
                Format::Text => Ok(subset_inline(&space, &closed, lbr) + "\n"),
                Format::Dot => Err(ctx.unsupported()),
            }
        }
        Command::Order(a) => {
            let ctx = Ctx { cli, command: "order" };
            let space = PrimSpace::new(&load_graph(&a.graph)?)?;
            match cli.format {
                Format::Json => Ok(ctx.json(&order_edges(&space, lbr)?)),
                Format::Dot => Ok(order_dot(&space, lbr)?),
                Format::Text => {
                    let mut out = String::new();
                    for e in order_edges(&space, lbr)? {
                        let _ = write!(out, "{} <= {}", element_text(&e.lower), element_text(&e.upper));
                        match e.param {
                            Some(primspec::topology::ParamRule::Equal) => out.push_str(" when t = z"),
                            Some(primspec::topology::ParamRule::Any) => out.push_str(" for all t"),
                            None => {}
                        }
                        out.push('\n');
                    }
                    Ok(out)
                }
            }
        }
        Command::Quotient { graph, k, b } => {
            let ctx = Ctx { cli, command: "quotient" };
            let g = load_graph(&graph.graph)?;
            let ideal = GaugeInvariantIdeal::new(&g, g.vertex_set(names(k))?, g.vertex_set(names(b))?)?;
            let q = quotient_graph(&g, &ideal)?;
            Ok(match cli.format {
                Format::Json => ctx.json(&GraphJson::from_graph(&q)),
                Format::Dot => graph_dot(&q),
                Format::Text => to_text(&q),
            })
        }
        Command::Simple(a) => {
            let ctx = Ctx { cli, command: "simple" };
            let space = PrimSpace::new(&load_graph(&a.graph)?)?;
            let simple = is_simple(&space)?;
            match cli.format {
                Format::Json => Ok(ctx.json(&serde_json::json!({ "simple": simple }))),
                Format::Text => Ok(format!("{simple}\n")),
                Format::Dot => Err(ctx.unsupported()),
            }
        }
        Command::Report { graph, set, order } => {
            let ctx = Ctx { cli, command: "report" };
            if cli.format != Format::Json {
                return Err(ctx.unsupported());
            }
            let space = PrimSpace::new(&load_graph(&graph.graph)?)?;
            let mut report = Report::build(&space, lbr)?;
            if let Some(set) = set {
                report = report.with_closure(&space, &PrimSubset::parse(&space, set)?, lbr)?;
            }
            if *order {
                report = report.with_order(&space, lbr)?;
            }
            Ok(ctx.json(&report))
        }
    }
}

fn lattice_text(labels: &[String], hasse: &[[usize; 2]]) -> String {
    let mut out = String::new();
    for (i, label) in labels.iter().enumerate() {
        let _ = writeln!(out, "{i}: {label}");
    }
    for [lo, hi] in hasse {
        let _ = writeln!(out, "{lo} < {hi}");
    }
    out
}

