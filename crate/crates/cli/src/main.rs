//! `lgw`: batch front end emitting JSON reports.

mod commands;
mod documents;
mod report;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use lgw_core::arith::DEFAULT_ELEMENT_CAP;
use lgw_core::verify::Suite;

use documents::{parse_graph_document, parse_space_document};
use report::{inputs_digest, render, Failure, Outcome};

#[derive(Parser, Debug)]
#[command(
    name = "lgw",
    version,
    about = "Landau-Ginzburg spaces, sectors, decorated graphs and free-case classes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Weights, symmetry groups, nondegeneracy and the invariant basis of a space.
    Analyze { space: PathBuf },
    /// Admissible sector tuples with Euler characteristics and virtual dimensions.
    Sectors {
        space: PathBuf,
        #[arg(long, default_value_t = 0)]
        genus: u32,
        #[arg(long)]
        marks: usize,
        #[arg(long)]
        narrow: bool,
        #[arg(long, default_value_t = DEFAULT_ELEMENT_CAP)]
        cap: u64,
    },
    /// The free-case class for given ranks and coranks.
    FreeClass {
        space: PathBuf,
        #[arg(long, value_delimiter = ',', num_args = 1..)]
        ranks: Vec<u32>,
        #[arg(long, value_delimiter = ',', num_args = 1..)]
        coranks: Vec<u32>,
        /// Dimension of the base; defaults to the degree of the class.
        #[arg(long)]
        dim: Option<u32>,
        /// Treat every bundle as living over a point.
        #[arg(long)]
        numeric: bool,
    },
    /// Operations on decorated dual graphs.
    Graph {
        #[command(subcommand)]
        op: GraphOp,
    },
    /// Built-in symbolic checks.
    Verify {
        #[arg(long, default_value = "axioms")]
        suite: Suite,
    },
}

#[derive(clap::Args, Debug)]
struct GraphInput {
    graph: PathBuf,
    #[arg(long)]
    space: PathBuf,
}

#[derive(clap::Args, Debug)]
struct EdgeSelection {
    /// Edges to contract.
    #[arg(long = "edge")]
    edges: Vec<usize>,
    /// Contract every edge.
    #[arg(long, conflicts_with = "edges")]
    all: bool,
}

#[derive(Subcommand, Debug)]
enum GraphOp {
    Validate {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long)]
        genus: Option<u32>,
    },
    Contract {
        #[command(flatten)]
        input: GraphInput,
        #[command(flatten)]
        select: EdgeSelection,
    },
    Split {
        #[command(flatten)]
        input: GraphInput,
    },
    /// Automorphisms of the contraction map onto the contracted graph.
    Aut {
        #[command(flatten)]
        input: GraphInput,
        #[command(flatten)]
        select: EdgeSelection,
    },
    Forget {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long)]
        tail: usize,
    },
}

struct Inputs {
    bytes: Vec<Vec<u8>>,
}

impl Inputs {
    fn read(&mut self, path: &Path) -> Result<String, Failure> {
        let bytes = std::fs::read(path).map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))?;
        self.bytes.push(bytes.clone());
        String::from_utf8(bytes).map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))
    }
}

fn path_str(p: &Path) -> String {
    p.display().to_string()
}

fn echo(cmd: &Command) -> Value {
    match cmd {
        Command::Analyze { space } => json!({ "name": "analyze", "space": path_str(space) }),
        Command::Sectors {
            space,
            genus,
            marks,
            narrow,
            cap,
        } => json!({
            "name": "sectors", "space": path_str(space), "genus": genus,
            "marks": marks, "narrow": narrow, "cap": cap,
        }),
        Command::FreeClass {
            space,
            ranks,
            coranks,
            dim,
            numeric,
        } => json!({
            "name": "free-class", "space": path_str(space), "ranks": ranks,
            "coranks": coranks, "dim": dim, "numeric": numeric,
        }),
        Command::Graph { op } => {
            let (sub, input, extra) = match op {
                GraphOp::Validate { input, genus } => ("validate", input, json!({ "genus": genus })),
                GraphOp::Contract { input, select } => {
                    ("contract", input, json!({ "edges": select.edges, "all": select.all }))
                }
                GraphOp::Split { input } => ("split", input, json!({})),
                GraphOp::Aut { input, select } => ("aut", input, json!({ "edges": select.edges, "all": select.all })),
                GraphOp::Forget { input, tail } => ("forget", input, json!({ "tail": tail })),
            };
            let mut v = json!({
                "name": "graph", "op": sub,
                "graph": path_str(&input.graph), "space": path_str(&input.space),
            });
            if let (Value::Object(m), Value::Object(e)) = (&mut v, extra) {
                m.extend(e);
            }
            v
        }
        Command::Verify { suite } => json!({ "name": "verify", "suite": suite.to_string() }),
    }
}

fn run(cmd: &Command, inputs: &mut Inputs) -> Result<Outcome, Failure> {
    match cmd {
        Command::Analyze { space } => {
            let doc = parse_space_document(&inputs.read(space)?)?;
            commands::analyze(&doc)
        }
        Command::Sectors {
            space,
            genus,
            marks,
            narrow,
            cap,
        } => {
            let s = parse_space_document(&inputs.read(space)?)?.build()?;
            commands::sectors(&s, *genus, *marks, *narrow, *cap)
        }
        Command::FreeClass {
            space,
            ranks,
            coranks,
            dim,
            numeric,
        } => {
            let s = parse_space_document(&inputs.read(space)?)?.build()?;
            commands::free_class(&s, ranks, coranks, *dim, *numeric)
        }
        Command::Graph { op } => {
            let input = match op {
                GraphOp::Validate { input, .. }
                | GraphOp::Contract { input, .. }
                | GraphOp::Split { input }
                | GraphOp::Aut { input, .. }
                | GraphOp::Forget { input, .. } => input,
            };
            let graph_text = inputs.read(&input.graph)?;
            let space = parse_space_document(&inputs.read(&input.space)?)?.build()?;
            let g = parse_graph_document(&graph_text)?.to_graph()?;
            commands::check_graph(&g, &space)?;
            match op {
                GraphOp::Validate { genus, .. } => commands::graph_validate(&g, &space, *genus),
                GraphOp::Contract { select, .. } => commands::graph_contract(&g, &select.edges, select.all),
                GraphOp::Split { .. } => commands::graph_split(&g),
                GraphOp::Aut { select, .. } => commands::graph_aut(&g, &select.edges, select.all),
                GraphOp::Forget { tail, .. } => commands::graph_forget(&g, &space, *tail),
            }
        }
        Command::Verify { suite } => Ok(commands::verify(*suite)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut inputs = Inputs { bytes: Vec::new() };
    let result = run(&cli.command, &mut inputs);
    let digest = (!inputs.bytes.is_empty()).then(|| inputs_digest(&inputs.bytes));
    if let Err(f) = &result {
        eprintln!("lgw: {}", f.message());
    }
    let (text, status) = render(&echo(&cli.command), digest.as_deref(), result.as_ref());
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{text}");
    ExitCode::from(status as u8)
}
