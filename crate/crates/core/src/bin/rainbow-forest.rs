use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use rainbow_forest::coloring::ColoringJson;
use rainbow_forest::construct::{build, choose_forest, ForestMode, Method, Options};
use rainbow_forest::generators::Family;
use rainbow_forest::harness::{parse_corpus, random_corpus, run_experiment, summarize, to_csv, to_text, HarnessOptions};
use rainbow_forest::io::{read_graph, to_edge_list, GraphJson};
use rainbow_forest::verify::{rc_exact, rc_unpruned, verify_rainbow};
use rainbow_forest::{Graph, Result};

// Writes to stdout, ignoring a closed pipe (e.g. output piped into `head`).
macro_rules! out {
    ($($t:tt)*) => {{
        use std::io::Write;
        let _ = write!(std::io::stdout(), $($t)*);
    }};
}

macro_rules! outln {
    ($($t:tt)*) => {{
        use std::io::Write;
        let _ = writeln!(std::io::stdout(), $($t)*);
    }};
}

#[derive(Parser)]
#[command(name = "rainbow-forest", version, about = "Rainbow edge-colorings from maximum induced forests")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphFormat {
    Json,
    Edgelist,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Take1,
    Take2,
    Take3,
}

#[derive(Args)]
struct GraphArgs {
    graph: PathBuf,
    /// Read 1-based DIMACS `p edge` input.
    #[arg(long)]
    dimacs: bool,
}

#[derive(Args)]
struct ForestArgs {
    /// Exact search only; fails above --cap-n.
    #[arg(long, conflicts_with = "heuristic")]
    exact: bool,
    /// Greedy maximal forest, no optimality guarantee.
    #[arg(long)]
    heuristic: bool,
    /// Vertex cap for exact search.
    #[arg(long)]
    cap_n: Option<usize>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Maximum induced forest: F, its trees, f and t.
    Forest {
        #[command(flatten)]
        input: GraphArgs,
        #[command(flatten)]
        forest: ForestArgs,
        /// Among maximum forests, pick one with the fewest trees.
        #[arg(long)]
        min_components: bool,
    },
    /// Rainbow-color a graph.
    Color {
        #[command(flatten)]
        input: GraphArgs,
        #[arg(long, value_enum, default_value = "take3")]
        method: MethodArg,
        #[command(flatten)]
        forest: ForestArgs,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Print rule applications (Take 3) to stderr.
        #[arg(long)]
        trace: bool,
        /// Print the contracted graph to stderr.
        #[arg(long)]
        dump_h: bool,
        /// Print the skeleton to stderr.
        #[arg(long)]
        dump_skeleton: bool,
        /// Print the construction's rainbow path between two vertices.
        #[arg(long, num_args = 2, value_names = ["A", "B"])]
        witness: Option<Vec<usize>>,
    },
    /// Check a coloring; exits 1 if it is not rainbow connected.
    Verify {
        #[command(flatten)]
        input: GraphArgs,
        coloring: PathBuf,
        /// Include one rainbow path per pair.
        #[arg(long)]
        paths: bool,
    },
    /// Exact rainbow connection number for small graphs.
    RcExact {
        #[command(flatten)]
        input: GraphArgs,
        /// Plain enumeration of all colorings (m <= 8); for cross-checking.
        #[arg(long)]
        unpruned: bool,
    },
    /// Generate a graph, e.g. `gnp:12,0.3` or `k-pendants:4`.
    Gen {
        family: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "edgelist")]
        format: GraphFormat,
    },
    /// Run all constructions over a corpus and report.
    Bench {
        /// Entries `family@count`; defaults to a random connected corpus.
        #[arg(long, num_args = 1..)]
        corpus: Vec<String>,
        /// Size of the default corpus.
        #[arg(long, default_value_t = 200)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        rc_exact: bool,
        /// Cross-check f against an exact feedback vertex set.
        #[arg(long)]
        fvs: bool,
        #[arg(long)]
        timings: bool,
    },
}

fn options(method: Method, f: &ForestArgs) -> Options {
    let mut o = Options::new(method);
    if f.exact {
        o.forest = ForestMode::Exact;
    } else if f.heuristic {
        o.forest = ForestMode::Heuristic;
    }
    if let Some(c) = f.cap_n {
        o.cap_n = c;
    }
    o
}

fn load(a: &GraphArgs) -> Result<Graph> {
    read_graph(&a.graph, a.dimacs)
}

fn print_json<T: serde::Serialize>(v: &T) {
    outln!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn run(cmd: Cmd) -> Result<ExitCode> {
    match cmd {
        Cmd::Forest { input, forest, min_components } => {
            let g = load(&input)?;
            let mut o = options(Method::Take2, &forest);
            o.min_components = min_components;
            let fo = choose_forest(&g, &o)?;
            print_json(&json!({
                "F": fo.vertices,
                "trees": fo.components,
                "f": fo.f_value(),
                "t": fo.t(),
                "exact": !forest.heuristic && (forest.exact || g.n() <= o.cap_n),
            }));
        }
        Cmd::Color { input, method, forest, format, trace, dump_h, dump_skeleton, witness } => {
            let g = load(&input)?;
            let method = match method {
                MethodArg::Take1 => Method::Take1,
                MethodArg::Take2 => Method::Take2,
                MethodArg::Take3 => Method::Take3,
            };
            let out = build(&g, &options(method, &forest))?;
            if let Some(reason) = &out.fallback {
                eprintln!("take3 fell back to take2: {reason}");
            }
            if dump_h {
                match out.contracted() {
                    Some(cg) => eprint!("{}", cg.dump(&g)),
                    None => eprintln!("no contracted graph for this method"),
                }
            }
            if dump_skeleton {
                match (out.contracted(), out.skeleton()) {
                    (Some(cg), Some(sk)) => eprint!("{}", sk.dump(cg)),
                    _ => eprintln!("no skeleton for this method"),
                }
            }
            if trace {
                for line in out.trace() {
                    eprintln!("{line}");
                }
            }
            let c = out.coloring();
            match format {
                Format::Json => print_json(&c.to_json(&g)),
                Format::Csv => {
                    outln!("u,v,color,rule");
                    for (e, &(u, v)) in g.edges().iter().enumerate() {
                        outln!("{u},{v},{},{}", c.colors[e], c.rules[e]);
                    }
                }
                Format::Text => {
                    outln!("palette {} ({} used), construction {:?}", c.palette, c.colors_used(), c.construction);
                    for (e, &(u, v)) in g.edges().iter().enumerate() {
                        outln!("{:>4} {}-{}  color {:<3} {}", e, g.label(u), g.label(v), c.colors[e], c.rules[e]);
                    }
                }
            }
            if let Some(w) = witness {
                let p = out.witness(w[0], w[1])?;
                eprintln!("{}", p.describe(&c.colors));
            }
        }
        Cmd::Verify { input, coloring, paths } => {
            let g = load(&input)?;
            let cj: ColoringJson = serde_json::from_str(&std::fs::read_to_string(coloring)?)?;
            let colors = cj.edge_colors(&g)?;
            let report = verify_rainbow(&g, &colors, Some(cj.palette), paths)?;
            print_json(&report);
            if !report.rainbow_connected {
                return Ok(ExitCode::from(1));
            }
        }
        Cmd::RcExact { input, unpruned } => {
            let g = load(&input)?;
            if unpruned {
                print_json(&json!({ "rc": rc_unpruned(&g)? }));
            } else {
                let (k, colors) = rc_exact(&g)?;
                let edges: Vec<_> =
                    g.edges().iter().zip(&colors).map(|(&(u, v), c)| json!({"u": u, "v": v, "color": c})).collect();
                print_json(&json!({ "rc": k, "palette": k, "edges": edges }));
            }
        }
        Cmd::Gen { family, seed, format } => {
            let g = Family::parse(&family)?.generate(seed)?;
            match format {
                GraphFormat::Json => print_json(&GraphJson::from(&g)),
                GraphFormat::Edgelist => out!("{}", to_edge_list(&g)),
            }
        }
        Cmd::Bench { corpus, count, seed, format, rc_exact, fvs, timings } => {
            let entries = if corpus.is_empty() { random_corpus(count, seed) } else { parse_corpus(&corpus, seed)? };
            let records = run_experiment(&entries, &HarnessOptions { rc_exact, fvs, timings });
            match format {
                Format::Text => out!("{}", to_text(&records)),
                Format::Csv => out!("{}", to_csv(&records, timings)?),
                Format::Json => print_json(&json!({ "summary": summarize(&records), "records": records })),
            }
            if records.iter().any(|r| r.error.is_none() && !r.all_verified()) {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse().cmd) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
