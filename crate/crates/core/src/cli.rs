//! Command-line front end.
//!
//! Exit codes: 0 yes or success, 1 no or infeasible, 2 usage error, 3 size
//! guard refusal, 4 a witness failed self-verification (never expected).
//! Every witness is re-verified before anything is printed.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::auxgraph::build_aux;
use crate::containment::{extend_to_full_trail, oracle_contains_k_trail};
use crate::error::Error;
use crate::instances::{gen_gap_instance, gen_hardness_gadget, gen_random_multigraph, random_weights};
use crate::multigraph::{parse_graph, render_graph, render_weighted, to_dot, EdgeId, MultiGraph, WeightedMultiGraph};
use crate::oracles::{oracle_feasible_split, oracle_min_k, DEFAULT_MAX_EDGES};
use crate::preimage::{verify_witness, ContainedTrail, PreimageWitness, WitnessJson};
use crate::recognition::{is_k_trail, min_trail_k};
use crate::weighted::{approx_min_weight_trail, oracle_min_weight_k_trail, ApproxOutcome};

pub const EXIT_YES: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_GUARD: i32 = 3;
pub const EXIT_UNVERIFIED: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "ktrail", version, about = "Recognize and approximate k-trails in multigraphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Output {
    /// Write the result here instead of stdout.
    #[arg(short = 'o', long = "output")]
    output: Option<PathBuf>,
    /// Machine-readable output.
    #[arg(long)]
    json: bool,
    /// Graphviz output where the command has a graph to show.
    #[arg(long)]
    dot: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide whether the graph is a k-trail.
    Recognize {
        #[arg(short)]
        k: usize,
        file: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Smallest k for which the graph is a k-trail.
    MinK {
        file: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Write a preimage witness as JSON.
    Witness {
        #[arg(short)]
        k: usize,
        file: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Turn a contained k-trail into a (k+1)-witness for the whole graph.
    Extend {
        #[arg(short)]
        k: usize,
        /// JSON list of edge ids, or an object with an `edges` list.
        #[arg(long)]
        subgraph: PathBuf,
        /// Witness for the subgraph; `image_edge` uses ids of the full graph.
        #[arg(long)]
        witness: PathBuf,
        file: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Cheap (2k-1)-trail by iterative relaxation.
    Approx {
        #[arg(short)]
        k: usize,
        file: PathBuf,
        /// One JSON record per iteration.
        #[arg(long)]
        trace: Option<PathBuf>,
        /// First relaxation in LP text format.
        #[arg(long)]
        lp_dump: Option<PathBuf>,
        #[command(flatten)]
        out: Output,
    },
    /// Generate instances.
    Gen {
        #[command(subcommand)]
        which: GenCommand,
    },
    /// Auxiliary slot graph.
    Aux {
        file: PathBuf,
        /// Graph text plus the slot table.
        #[arg(long)]
        dump: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Brute-force reference answers.
    Oracle {
        #[command(subcommand)]
        which: OracleCommand,
    },
}

#[derive(Subcommand, Debug)]
enum GenCommand {
    /// Cubic graph with k-2 pendants per vertex.
    Gadget {
        #[arg(long)]
        cubic: PathBuf,
        #[arg(short)]
        k: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Ring instance with every ring degree 2k-1.
    Gap {
        #[arg(short)]
        k: usize,
        #[arg(short)]
        n: usize,
        #[arg(long, default_value_t = -1, allow_hyphen_values = true)]
        weights: i64,
        #[command(flatten)]
        out: Output,
    },
    /// Random connected multigraph.
    Random {
        #[arg(short)]
        n: usize,
        #[arg(short)]
        m: usize,
        #[arg(long, default_value_t = 0.1)]
        loops: f64,
        #[arg(long, default_value_t = 0.2)]
        parallel: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random integer weights in `LO..=HI`, e.g. `-3..3`.
        #[arg(long, allow_hyphen_values = true)]
        weights: Option<String>,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Subcommand, Debug)]
enum OracleCommand {
    MinK {
        file: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    Feasible {
        /// Comma-separated split vector.
        #[arg(long, value_delimiter = ',')]
        split: Vec<usize>,
        file: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    Contains {
        #[arg(short)]
        k: usize,
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_MAX_EDGES)]
        max_edges: usize,
        #[command(flatten)]
        out: Output,
    },
    MinWeight {
        #[arg(short)]
        k: usize,
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_MAX_EDGES)]
        max_edges: usize,
        #[command(flatten)]
        out: Output,
    },
}

enum Failure {
    Lib(Error),
    Io(String),
    Unverified(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type Run = std::result::Result<i32, Failure>;

/// Parse `args` (program name first) and run; returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            match e {
                Error::SizeGuard { .. } => EXIT_GUARD,
                Error::Disconnected => EXIT_NO,
                _ => EXIT_USAGE,
            }
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Unverified(msg)) => {
            eprintln!("refusing to print an unverified witness: {msg}");
            EXIT_UNVERIFIED
        }
    }
}

fn read(path: &Path) -> std::result::Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> std::result::Result<MultiGraph, Failure> {
    Ok(parse_graph(&read(path)?)?.graph)
}

fn load_weighted(path: &Path) -> std::result::Result<WeightedMultiGraph, Failure> {
    Ok(parse_graph(&read(path)?)?.into_weighted())
}

fn emit(out: &Output, text: &str) -> std::result::Result<(), Failure> {
    match &out.output {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Io(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn emit_json(out: &Output, value: &Value) -> std::result::Result<(), Failure> {
    emit(out, &format!("{}\n", serde_json::to_string_pretty(value).expect("json values serialize")))
}

fn checked(g: &MultiGraph, w: &PreimageWitness, k: usize) -> std::result::Result<(), Failure> {
    verify_witness(g, w, k).map_err(|v| Failure::Unverified(format!("{v:?}")))
}

fn checked_trail(g: &MultiGraph, t: &ContainedTrail, k: usize) -> std::result::Result<(), Failure> {
    t.verify(g, k).map_err(|e| Failure::Unverified(e.to_string()))
}

/// Preimage drawn with each node labelled `node:image`.
fn witness_dot(w: &PreimageWitness) -> String {
    let mut s = String::from("graph H {\n");
    for (node, &v) in w.phi.iter().enumerate() {
        let _ = writeln!(s, "  {node} [label=\"{node}:{v}\"];");
    }
    for (e, &(a, b)) in w.h.edges().iter().enumerate() {
        let _ = writeln!(s, "  {a} -- {b} [label=\"e{}\"];", w.edge_map[e]);
    }
    s.push_str("}\n");
    s
}

fn answer(yes: bool) -> i32 {
    if yes {
        EXIT_YES
    } else {
        EXIT_NO
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum SubgraphFile {
    List(Vec<EdgeId>),
    Object { edges: Vec<EdgeId> },
}

fn dispatch(cmd: Command) -> Run {
    match cmd {
        Command::Recognize { k, file, out } => {
            let g = load(&file)?;
            if !g.is_connected() {
                return disconnected(&out, k);
            }
            let r = is_k_trail(&g, k)?;
            let yes = r.is_yes();
            if let Some(w) = &r.witness {
                checked(&g, w, k)?;
                if out.dot {
                    emit(&out, &witness_dot(w))?;
                } else if out.json {
                    emit_json(&out, &json!({"k": k, "answer": true, "witness": w.to_json(None)}))?;
                } else {
                    emit(&out, &format!("yes: {k}-trail, preimage tree on {} nodes\n", w.node_count()))?;
                }
            } else if out.json {
                emit_json(&out, &json!({"k": k, "answer": false, "certificate": r.certificate}))?;
            } else {
                let c = r.certificate.expect("a no answer carries a certificate");
                emit(&out, &format!("no: common independent set {} < {} (rank bound {})\n", c.common, c.target, c.rank_sum))?;
            }
            Ok(answer(yes))
        }
        Command::MinK { file, out } => {
            let g = load(&file)?;
            let (k, w) = min_trail_k(&g)?;
            checked(&g, &w, k)?;
            if out.dot {
                emit(&out, &witness_dot(&w))?;
            } else if out.json {
                emit_json(&out, &json!({"k": k, "witness": w.to_json(None)}))?;
            } else {
                emit(&out, &format!("{k}\n"))?;
            }
            Ok(EXIT_YES)
        }
        Command::Witness { k, file, out } => {
            let g = load(&file)?;
            let r = is_k_trail(&g, k)?;
            let Some(w) = r.witness else {
                eprintln!("not a {k}-trail");
                return Ok(EXIT_NO);
            };
            checked(&g, &w, k)?;
            if out.dot {
                emit(&out, &witness_dot(&w))?;
            } else {
                emit_json(&out, &serde_json::to_value(w.to_json(None)).expect("witness serializes"))?;
            }
            Ok(EXIT_YES)
        }
        Command::Extend { k, subgraph, witness, file, out } => {
            let g = load(&file)?;
            let edges = match serde_json::from_str::<SubgraphFile>(&read(&subgraph)?) {
                Ok(SubgraphFile::List(e) | SubgraphFile::Object { edges: e }) => e,
                Err(e) => return Err(Failure::Io(format!("{}: {e}", subgraph.display()))),
            };
            let wjson: WitnessJson = serde_json::from_str(&read(&witness)?)
                .map_err(|e| Failure::Io(format!("{}: {e}", witness.display())))?;
            let trail = ContainedTrail::from_json(&g, edges, &wjson)?;
            trail.verify(&g, k)?;
            let ext = extend_to_full_trail(&g, &trail, k)?;
            checked(&g, &ext.witness, k + 1)?;
            if out.dot {
                emit(&out, &witness_dot(&ext.witness))?;
            } else if out.json {
                emit_json(
                    &out,
                    &json!({
                        "k": k + 1,
                        "witness": ext.witness.to_json(None),
                        "cycles": ext.cycles.iter().map(|c| c.iter().map(|&(_, e)| e).collect::<Vec<_>>()).collect::<Vec<_>>(),
                        "leaf_edges": ext.leaf_edges,
                    }),
                )?;
            } else {
                emit(
                    &out,
                    &format!(
                        "{}-witness on {} nodes after {} cycles and {} leaf edges\n",
                        k + 1,
                        ext.witness.node_count(),
                        ext.cycles.len(),
                        ext.leaf_edges.len()
                    ),
                )?;
            }
            Ok(EXIT_YES)
        }
        Command::Approx { k, file, trace, lp_dump, out } => {
            let g = load_weighted(&file)?;
            if !g.graph.is_connected() {
                return disconnected(&out, k);
            }
            match approx_min_weight_trail(&g, k)? {
                ApproxOutcome::Found(a) => {
                    checked_trail(&g.graph, &a.trail, 2 * k - 1)?;
                    if let Some(p) = lp_dump {
                        write_file(&p, &a.first_lp.to_lp_text())?;
                    }
                    if let Some(p) = trace {
                        let mut lines = String::new();
                        for rec in &a.trace {
                            lines.push_str(&serde_json::to_string(rec).expect("trace serializes"));
                            lines.push('\n');
                        }
                        write_file(&p, &lines)?;
                    }
                    if out.dot {
                        emit(&out, &witness_dot(&a.trail.witness))?;
                    } else if out.json {
                        emit_json(
                            &out,
                            &json!({
                                "status": "found",
                                "k": k,
                                "edges": a.trail.edges,
                                "weight": a.weight,
                                "lp_value": a.lp_value,
                                "iterations": a.iterations,
                                "witness_bound": a.witness_bound(),
                                "witness": a.trail.to_json(),
                                "trace": a.trace,
                            }),
                        )?;
                    } else {
                        emit(
                            &out,
                            &format!(
                                "weight {} (relaxation {}), {} edges, max preimage degree {}, {} iterations\n",
                                a.weight,
                                a.lp_value,
                                a.trail.edges.len(),
                                a.witness_bound(),
                                a.iterations
                            ),
                        )?;
                    }
                    Ok(EXIT_YES)
                }
                ApproxOutcome::NoKTrail(cert) => {
                    if let Some(p) = lp_dump {
                        write_file(&p, &cert.lp.to_lp_text())?;
                    }
                    if out.json {
                        emit_json(&out, &json!({"status": "no_k_trail", "k": k, "farkas": cert.farkas}))?;
                    } else {
                        emit(&out, &format!("no: the relaxation is infeasible, so no {k}-trail is contained\n"))?;
                    }
                    Ok(EXIT_NO)
                }
            }
        }
        Command::Gen { which } => generate(which),
        Command::Aux { file, dump, out } => {
            let g = load(&file)?;
            let aux = build_aux(&g)?;
            let text = if out.dot {
                aux.to_dot(None)
            } else if dump {
                aux.dump()
            } else {
                format!("{} slots, {} matching edges, {} clique edges\n", aux.slot_count(), aux.ebar_count(), aux.k_count())
            };
            emit(&out, &text)?;
            Ok(EXIT_YES)
        }
        Command::Oracle { which } => oracle(which),
    }
}

fn write_file(p: &Path, text: &str) -> std::result::Result<(), Failure> {
    fs::write(p, text).map_err(|e| Failure::Io(format!("{}: {e}", p.display())))
}

fn disconnected(out: &Output, k: usize) -> Run {
    if out.json {
        emit_json(out, &json!({"k": k, "answer": false, "reason": "graph is not connected"}))?;
    } else {
        emit(out, "no: graph is not connected\n")?;
    }
    Ok(EXIT_NO)
}

fn parse_range(s: &str) -> std::result::Result<(i64, i64), Failure> {
    let bad = || Failure::Io(format!("weight range must look like LO..HI, got {s:?}"));
    let (lo, hi) = s.split_once("..").ok_or_else(bad)?;
    let hi = hi.strip_prefix('=').unwrap_or(hi);
    let lo: i64 = lo.trim().parse().map_err(|_| bad())?;
    let hi: i64 = hi.trim().parse().map_err(|_| bad())?;
    if lo > hi {
        return Err(bad());
    }
    Ok((lo, hi))
}

fn generate(which: GenCommand) -> Run {
    let (text, out) = match which {
        GenCommand::Gadget { cubic, k, out } => {
            let g = gen_hardness_gadget(&load(&cubic)?, k)?;
            (if out.dot { to_dot(&g, None) } else { render_graph(&g) }, out)
        }
        GenCommand::Gap { k, n, weights, out } => {
            let g = gen_gap_instance(k, n, weights)?;
            (if out.dot { to_dot(&g.graph, Some(&g.weights)) } else { render_weighted(&g) }, out)
        }
        GenCommand::Random { n, m, loops, parallel, seed, weights, out } => {
            let g = gen_random_multigraph(n, m, loops, parallel, seed)?;
            match weights {
                Some(range) => {
                    let (lo, hi) = parse_range(&range)?;
                    let w = WeightedMultiGraph::new(g, random_weights(m, lo, hi, seed))?;
                    (if out.dot { to_dot(&w.graph, Some(&w.weights)) } else { render_weighted(&w) }, out)
                }
                None => (if out.dot { to_dot(&g, None) } else { render_graph(&g) }, out),
            }
        }
    };
    emit(&out, &text)?;
    Ok(EXIT_YES)
}

fn oracle(which: OracleCommand) -> Run {
    match which {
        OracleCommand::MinK { file, out } => {
            let k = oracle_min_k(&load(&file)?)?;
            if out.json {
                emit_json(&out, &json!({"k": k}))?;
            } else {
                emit(&out, &format!("{k}\n"))?;
            }
            Ok(EXIT_YES)
        }
        OracleCommand::Feasible { split, file, out } => {
            let yes = oracle_feasible_split(&load(&file)?, &split)?;
            if out.json {
                emit_json(&out, &json!({"split": split, "feasible": yes}))?;
            } else {
                emit(&out, if yes { "feasible\n" } else { "infeasible\n" })?;
            }
            Ok(answer(yes))
        }
        OracleCommand::Contains { k, file, max_edges, out } => {
            let g = load(&file)?;
            let found = oracle_contains_k_trail(&g, k, max_edges)?;
            if let Some(t) = &found {
                checked_trail(&g, t, k)?;
            }
            if out.json {
                emit_json(
                    &out,
                    &json!({
                        "k": k,
                        "contains": found.is_some(),
                        "edges": found.as_ref().map(|t| &t.edges),
                        "witness": found.as_ref().map(|t| t.to_json()),
                    }),
                )?;
            } else {
                match &found {
                    Some(t) => emit(&out, &format!("yes: {} edges {:?}\n", t.edges.len(), t.edges))?,
                    None => emit(&out, &format!("no contained {k}-trail\n"))?,
                }
            }
            Ok(answer(found.is_some()))
        }
        OracleCommand::MinWeight { k, file, max_edges, out } => {
            let g = load_weighted(&file)?;
            let best = oracle_min_weight_k_trail(&g, k, max_edges)?;
            if out.json {
                emit_json(
                    &out,
                    &json!({
                        "k": k,
                        "weight": best.as_ref().map(|b| b.0),
                        "edges": best.as_ref().map(|b| &b.1),
                    }),
                )?;
            } else {
                match &best {
                    Some((w, edges)) => emit(&out, &format!("weight {w}: edges {edges:?}\n"))?,
                    None => emit(&out, &format!("no contained {k}-trail\n"))?,
                }
            }
            Ok(answer(best.is_some()))
        }
    }
}
