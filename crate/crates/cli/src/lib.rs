//! Command dispatch for the `nzflow` binary.
//!
//! Exit codes: 0 success, 1 negative answer (inadmissible, invalid flow, no
//! flow up to the bound, not colorable), 2 precondition or usage error,
//! 3 unreadable or malformed input, 4 internal failure of a construction.

pub mod format;

use std::fs;
use std::io::Write;

use clap::{Parser, Subcommand};
use nzflow::analysis::{balance, bridges, is_flow_admissible, BalanceWitness};
use nzflow::coloring::{order_classes, three_edge_color};
use nzflow::oracle::min_flow_number;
use nzflow::theorems::{cubic_flow, hamilton_circuit, hamiltonian_flow, planar_flow, FlowResult};
use nzflow::{families, verify_flow, EdgeSet, FlowError, SignedGraph};

use format::{emit_flow, emit_graph, parse_flow, parse_graph, to_dot};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_PRECONDITION: i32 = 2;
pub const EXIT_INPUT: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "nzflow", version, about = "Nowhere-zero flows on signed graphs")]
struct Cli {
    /// Emit reports as key=value lines
    #[arg(long, global = true)]
    machine: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Balance, bridges and flow-admissibility
    Check { file: String },
    /// 3-edge-coloring of a cubic graph
    Color { file: String },
    /// Construct a nowhere-zero flow
    Flow {
        file: String,
        #[arg(long, conflicts_with_all = ["hamiltonian", "planar"])]
        cubic: bool,
        /// Hamilton circuit as comma-separated vertices
        #[arg(long, value_name = "CIRCUIT")]
        hamiltonian: Option<String>,
        #[arg(long, conflicts_with = "hamiltonian")]
        planar: bool,
        /// Write the FlowFile here instead of standard output
        #[arg(long)]
        out: Option<String>,
    },
    /// Check a FlowFile against a GraphFile
    Verify { graph: String, flow: String },
    /// Exhaustive minimum flow number
    Oracle {
        file: String,
        #[arg(long, default_value_t = 11)]
        kmax: i32,
    },
    /// Print a built-in family member as a GraphFile
    Gen {
        #[arg(long)]
        family: String,
        #[arg(long, default_value_t = 4)]
        n: usize,
        /// Comma-separated edge ids to make negative
        #[arg(long)]
        negative: Option<String>,
    },
    /// Graphviz rendering with negative edges dashed
    ExportDot { file: String },
}

struct Failure {
    code: i32,
    message: String,
}

impl From<FlowError> for Failure {
    fn from(e: FlowError) -> Self {
        let code = match e {
            FlowError::SearchExhausted(_) | FlowError::Postcondition(_) => EXIT_INTERNAL,
            FlowError::NotColorable => EXIT_NEGATIVE,
            _ => EXIT_PRECONDITION,
        };
        Failure { code, message: e.to_string() }
    }
}

fn input(message: String) -> Failure {
    Failure { code: EXIT_INPUT, message }
}

fn read(path: &str) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| input(format!("{path}: {e}")))
}

fn load_graph(path: &str) -> Result<SignedGraph, Failure> {
    parse_graph(&read(path)?).map_err(|e| input(format!("{path}: {e}")))
}

fn list(ids: impl IntoIterator<Item = usize>) -> String {
    ids.into_iter().map(|i| i.to_string()).collect::<Vec<_>>().join(",")
}

fn parse_list(s: &str) -> Result<Vec<usize>, Failure> {
    s.split(',')
        .filter(|w| !w.trim().is_empty())
        .map(|w| {
            w.trim().parse().map_err(|_| Failure {
                code: EXIT_PRECONDITION,
                message: format!("bad number `{w}` in list"),
            })
        })
        .collect()
}

/// Key/value or human report lines.
struct Report<'a> {
    out: &'a mut dyn Write,
    machine: bool,
    /// prepended to human-readable lines, e.g. `# ` inside a FlowFile
    prefix: &'static str,
}

impl Report<'_> {
    fn field(&mut self, key: &str, value: impl std::fmt::Display) {
        let r = if self.machine {
            writeln!(self.out, "{key}={value}")
        } else {
            writeln!(self.out, "{}{}: {value}", self.prefix, key.replace('_', " "))
        };
        r.expect("write report");
    }

    fn raw(&mut self, text: &str) {
        self.out.write_all(text.as_bytes()).expect("write report");
    }
}

/// Parses `args` (program name first) and runs the command, writing the
/// report to `out` and diagnostics to `err`. Returns the exit code.
pub fn run(args: Vec<String>, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PRECONDITION } else { EXIT_OK };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    let mut report = Report { out, machine: cli.machine, prefix: "" };
    match dispatch(cli.command, &mut report) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn dispatch(command: Command, r: &mut Report) -> Result<i32, Failure> {
    match command {
        Command::Check { file } => check(&load_graph(&file)?, r),
        Command::Color { file } => color(&load_graph(&file)?, r),
        Command::Flow { file, cubic, hamiltonian, planar, out } => {
            let g = load_graph(&file)?;
            let res = if cubic {
                cubic_flow(&g, None)?
            } else if let Some(order) = hamiltonian {
                hamiltonian_flow(&g, &hamilton_circuit(&g, &parse_list(&order)?)?)?
            } else if planar || !(g.is_cubic() && !g.has_loops()) {
                planar_flow(&g)?
            } else {
                cubic_flow(&g, None)?
            };
            flow(&res, out, r)
        }
        Command::Verify { graph, flow } => {
            let g = load_graph(&graph)?;
            let f = parse_flow(&read(&flow)?, &g).map_err(|e| input(format!("{flow}: {e}")))?;
            let rep = verify_flow(&g, &f, true);
            r.field("valid", rep.is_valid());
            r.field("k", f.bound());
            if !rep.is_valid() {
                r.field("problems", &rep);
            }
            Ok(if rep.is_valid() { EXIT_OK } else { EXIT_NEGATIVE })
        }
        Command::Oracle { file, kmax } => {
            if kmax < 2 {
                return Err(Failure { code: EXIT_PRECONDITION, message: "kmax must be at least 2".into() });
            }
            let g = load_graph(&file)?;
            let rep = min_flow_number(&g, kmax);
            for (k, feasible) in &rep.table {
                r.field(&format!("k{k}"), feasible);
            }
            match rep.minimum {
                Some(k) => r.field("minimum", k),
                None => r.field("minimum", format!("none <= {kmax}")),
            }
            r.field("nodes", rep.nodes);
            r.field("millis", rep.elapsed.as_millis());
            Ok(if rep.minimum.is_some() { EXIT_OK } else { EXIT_NEGATIVE })
        }
        Command::Gen { family, n, negative } => {
            let g = families::family(&family, n)?;
            let g = match negative {
                Some(list) => {
                    let neg = parse_list(&list)?;
                    if let Some(&e) = neg.iter().find(|&&e| e >= g.edge_count()) {
                        return Err(Failure {
                            code: EXIT_PRECONDITION,
                            message: format!("edge {e} out of range 0..{}", g.edge_count()),
                        });
                    }
                    families::with_negatives(&g, &neg)
                }
                None => g,
            };
            r.raw(&emit_graph(&g));
            Ok(EXIT_OK)
        }
        Command::ExportDot { file } => {
            r.raw(&to_dot(&load_graph(&file)?));
            Ok(EXIT_OK)
        }
    }
}

fn check(g: &SignedGraph, r: &mut Report) -> Result<i32, Failure> {
    r.field("vertices", g.vertex_count());
    r.field("edges", g.edge_count());
    match balance(g, &g.all_edges()) {
        BalanceWitness::Balanced { switching } => {
            r.field("balanced", true);
            r.field("switching", list(switching));
        }
        BalanceWitness::Unbalanced { circuit } => {
            r.field("balanced", false);
            r.field("unbalanced_circuit", list(circuit.edges));
        }
    }
    r.field("bridges", list(bridges(g)));
    let adm = is_flow_admissible(g);
    r.field("admissible", adm.admissible);
    r.field("reason", &adm.reason);
    Ok(if adm.admissible { EXIT_OK } else { EXIT_NEGATIVE })
}

fn color(g: &SignedGraph, r: &mut Report) -> Result<i32, Failure> {
    if let Some(v) = g.vertices().find(|&v| g.degree(v) != 3) {
        return Err(FlowError::NotCubic(v, g.degree(v)).into());
    }
    let c = match three_edge_color(g) {
        Ok(c) => order_classes(&c, g),
        Err(FlowError::NotColorable) => {
            r.field("colorable", false);
            return Ok(EXIT_NEGATIVE);
        }
        Err(e) => return Err(e.into()),
    };
    r.field("colorable", true);
    for (name, class) in ["R", "B", "Y"].iter().zip(&c.classes) {
        r.field(name, list(class.iter().copied()));
    }
    let parity = c.parities(g);
    r.field("negative_parity", format!("{},{},{}", parity[0], parity[1], parity[2]));
    Ok(EXIT_OK)
}

fn flow(res: &FlowResult, out: Option<String>, r: &mut Report) -> Result<i32, Failure> {
    let text = emit_flow(&res.flow);
    if out.is_none() {
        // keep standard output a readable FlowFile
        r.prefix = "# ";
    }
    r.field("k", res.k);
    r.field("trace", &res.trace);
    r.field("exceptional", res.exceptional);
    let support: EdgeSet = res.flow.support();
    r.field("support", support.len());
    match out {
        Some(path) => {
            fs::write(&path, text).map_err(|e| input(format!("{path}: {e}")))?;
            r.field("written", path);
        }
        None if r.machine => {
            for (e, v) in res.flow.values().iter().enumerate() {
                r.field(&format!("f{e}"), v);
            }
        }
        None => r.raw(&text),
    }
    Ok(EXIT_OK)
}
