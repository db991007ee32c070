//! `strongtrace`: build, check and count strong double traces of graphs.
//!
//! Exit codes: 0 success (or the checked property holds), 1 a principled
//! negative (no such trace, property fails), 2 input error, 3 a search
//! budget ran out, 4 an internal inconsistency.

mod human;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};
use strongtrace::graph::cut_edges;
use strongtrace::synthesis::{
    antiparallel_1stable_decision, antiparallel_strong_trace, certified_double_trace, certified_one_face, d_stable_trace,
    enumerate_all, nonorientable_one_face, parallel_d_stable_trace, parallel_strong_trace, random_double_trace,
    strong_trace, AntiparallelDecision,
};
use strongtrace::{
    parse_graph, parse_trace, Budget, ConstructionCertificate, Convention, EnumerationOptions, EnumerationResult, Graph,
    SynthesisError,
};

#[derive(Debug, Parser)]
#[command(name = "strongtrace", version, about = "Strong double traces and 1-face embeddings of graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Emit machine-readable JSON with sorted keys.
    #[arg(long, global = true)]
    json: bool,
    /// Spanning trees a decision procedure may inspect.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    budget_trees: Option<u64>,
    /// Backtracking nodes a search may expand.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    budget_nodes: Option<u64>,
    /// Enumeration worker threads (0 = all cores). Output does not depend on it.
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Structural summary of a graph.
    Info { graph: PathBuf },
    /// Analyse a double trace; succeeds when it is strong (or d-stable with --d).
    Check {
        graph: PathBuf,
        #[arg(long)]
        trace: PathBuf,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        d: Option<u64>,
    },
    /// Construct a verified trace of the requested kind.
    Construct {
        graph: PathBuf,
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        d: Option<u64>,
        /// Include the certifying witness (spanning tree, Euler tour, flips).
        #[arg(long)]
        require_witness: bool,
        /// Seed for a randomized double trace (kind double only).
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Construct a 1-face embedding.
    Embed {
        graph: PathBuf,
        #[arg(long)]
        nonorientable: bool,
    },
    /// Count strong traces up to an equivalence convention.
    Enumerate {
        graph: PathBuf,
        #[arg(long, default_value = "rotation-reversal")]
        convention: ConventionArg,
        /// Omit the list of class representatives.
        #[arg(long)]
        count_only: bool,
        /// Flag the conventions whose count equals this value.
        #[arg(long)]
        expect: Option<usize>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KindArg {
    Strong,
    Double,
    Parallel,
    Antiparallel,
    Dstable,
}

#[derive(Debug, Clone, Copy)]
enum ConventionArg {
    One(Convention),
    All,
}

impl std::str::FromStr for ConventionArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s == "all" {
            return Ok(ConventionArg::All);
        }
        s.parse().map(ConventionArg::One).map_err(|_| {
            let names: Vec<_> = Convention::ALL.iter().map(|c| c.name()).collect();
            format!("unknown convention {s:?}; expected all or one of {}", names.join(", "))
        })
    }
}

/// Why a command stopped short of success.
#[derive(Debug)]
enum Failure {
    Input(String),
    Negative(Value, String),
    Budget(Value, String),
    Internal(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Negative(..) => 1,
            Failure::Input(_) => 2,
            Failure::Budget(..) => 3,
            Failure::Internal(_) => 4,
        }
    }
}

impl From<SynthesisError> for Failure {
    fn from(err: SynthesisError) -> Self {
        let message = err.to_string();
        match err {
            SynthesisError::Budget(_) => Failure::Budget(to_value(&err), message),
            SynthesisError::Internal { .. } => Failure::Internal(message),
            _ => Failure::Negative(to_value(&err), message),
        }
    }
}

/// Successful output: JSON document plus its human rendering.
struct Output {
    json: Value,
    text: String,
    /// Exit 1 even though the command ran (a checked property failed).
    negative: bool,
}

fn to_value(value: &impl Serialize) -> Value {
    serde_json::to_value(value).expect("report types serialize to JSON")
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|err| Failure::Input(format!("{}: {err}", path.display())))
}

fn load_graph(path: &Path) -> Result<Graph, Failure> {
    parse_graph(&read(path)?).map_err(|err| Failure::Input(format!("{}: {err}", path.display())))
}

fn budget(cli: &Cli) -> Budget {
    let default = Budget::default();
    Budget {
        spanning_trees: cli.budget_trees.unwrap_or(default.spanning_trees),
        search_nodes: cli.budget_nodes.unwrap_or(default.search_nodes),
    }
}

fn info(g: &Graph) -> Output {
    let bridges: Vec<[&str; 2]> = cut_edges(g)
        .into_iter()
        .map(|e| {
            let (u, v) = g.endpoints(e);
            [g.label(u), g.label(v)]
        })
        .collect();
    let json = json!({
        "vertices": g.vertex_count(),
        "edges": g.edge_count(),
        "betti": g.betti(),
        "min_degree": g.min_degree(),
        "max_degree": g.max_degree(),
        "eulerian": g.is_eulerian(),
        "tree": g.is_tree(),
        "bridges": bridges,
    });
    let text = human::info(&json);
    Output { json, text, negative: false }
}

fn check(g: &Graph, trace_path: &Path, d: Option<u64>) -> Result<Output, Failure> {
    let trace = parse_trace(g, &read(trace_path)?).map_err(|err| Failure::Input(format!("{}: {err}", trace_path.display())))?;
    let report = trace.classify_edges();
    let holds = match d {
        Some(d) => trace.is_d_stable(d as usize),
        None => report.strong,
    };
    let mut json = to_value(&report);
    json["trace"] = to_value(&trace.labels());
    json["holds"] = Value::Bool(holds);
    if let Some(d) = d {
        json["d"] = json!(d);
    }
    let text = human::check(g, &trace, &report, d, holds);
    Ok(Output { json, text, negative: !holds })
}

fn certificate(cert: ConstructionCertificate, require_witness: bool) -> Output {
    let cert = if require_witness { cert } else { cert.without_witness() };
    let json = to_value(&cert);
    let text = human::certificate(&cert, require_witness);
    Output { json, text, negative: false }
}

fn decision(d: &AntiparallelDecision, require_witness: bool) -> Output {
    let mut json = to_value(d);
    if !require_witness {
        json.as_object_mut().expect("decisions serialize to objects").remove("witness");
    }
    json["kind"] = json!("antiparallel-1-stable-decision");
    let text = human::decision(d, require_witness);
    Output { json, text, negative: !d.exists }
}

fn construct(
    g: &Graph,
    kind: KindArg,
    d: Option<u64>,
    require_witness: bool,
    seed: Option<u64>,
    budget: &Budget,
) -> Result<Output, Failure> {
    let d = d.map(|d| d as usize);
    if seed.is_some() && kind != KindArg::Double {
        return Err(Failure::Input("--seed applies to --kind double only".into()));
    }
    let cert = match (kind, d) {
        (KindArg::Strong, None) => strong_trace(g)?,
        (KindArg::Double, None) => match seed {
            None => certified_double_trace(g)?,
            Some(seed) => {
                let trace = random_double_trace(g, &mut ChaCha8Rng::seed_from_u64(seed));
                let json = json!({ "kind": "double", "seed": seed, "trace": trace.labels(), "verified": true, "report": to_value(&trace.classify_edges()) });
                let text = human::trace_block(g, &trace);
                return Ok(Output { json, text, negative: false });
            }
        },
        (KindArg::Dstable, Some(d)) => d_stable_trace(g, d)?,
        (KindArg::Dstable, None) => return Err(Failure::Input("--kind dstable needs --d".into())),
        (KindArg::Parallel, None) => parallel_strong_trace(g)?,
        (KindArg::Parallel, Some(d)) => parallel_d_stable_trace(g, d)?,
        (KindArg::Antiparallel, None) => antiparallel_strong_trace(g, budget)?,
        (KindArg::Antiparallel, Some(1)) => {
            let decided = antiparallel_1stable_decision(g, budget).map_err(SynthesisError::from)?;
            return Ok(decision(&decided, require_witness));
        }
        (KindArg::Antiparallel, Some(_)) => {
            return Err(Failure::Input("antiparallel traces are decided for --d 1 only".into()));
        }
        (KindArg::Strong | KindArg::Double, Some(_)) => {
            return Err(Failure::Input("--d applies to --kind dstable, parallel and antiparallel".into()));
        }
    };
    Ok(certificate(cert, require_witness))
}

fn embed(g: &Graph, nonorientable: bool) -> Result<Output, Failure> {
    let cert = if nonorientable { nonorientable_one_face(g)? } else { certified_one_face(g)? };
    Ok(certificate(cert, true))
}

fn labelled(g: &Graph, result: &EnumerationResult) -> Value {
    let mut json = to_value(result);
    if let Some(reps) = &result.representatives {
        let reps: Vec<Vec<&str>> = reps.iter().map(|r| r.iter().map(|&v| g.label(v)).collect()).collect();
        json["representatives"] = to_value(&reps);
    }
    json
}

fn enumerate(
    g: &Graph,
    convention: ConventionArg,
    count_only: bool,
    expect: Option<usize>,
    options: EnumerationOptions,
) -> Result<Output, Failure> {
    let options = EnumerationOptions { representatives: !count_only, ..options };
    let results = match convention {
        ConventionArg::One(c) => enumerate_all(g, &[c], &options)?,
        ConventionArg::All => enumerate_all(g, &Convention::ALL, &options)?,
    };
    let matching: Vec<&str> =
        results.iter().filter(|r| Some(r.count) == expect).map(|r| r.convention.name()).collect();
    let mut json = match (convention, &results[..]) {
        (ConventionArg::One(_), [only]) => labelled(g, only),
        _ => json!({ "conventions": results.iter().map(|r| labelled(g, r)).collect::<Vec<_>>() }),
    };
    if let Some(expect) = expect {
        json["expected"] = json!(expect);
        json["matching"] = to_value(&matching);
    }
    let text = human::enumeration(g, &results, expect);
    Ok(Output { json, text, negative: false })
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    let budget = budget(cli);
    match &cli.command {
        Command::Info { graph } => Ok(info(&load_graph(graph)?)),
        Command::Check { graph, trace, d } => check(&load_graph(graph)?, trace, *d),
        Command::Construct { graph, kind, d, require_witness, seed } => {
            construct(&load_graph(graph)?, *kind, *d, *require_witness, *seed, &budget)
        }
        Command::Embed { graph, nonorientable } => embed(&load_graph(graph)?, *nonorientable),
        Command::Enumerate { graph, convention, count_only, expect } => {
            let options = EnumerationOptions { budget, threads: cli.threads, representatives: true };
            enumerate(&load_graph(graph)?, *convention, *count_only, *expect, options)
        }
    }
}

fn render(json: &Value) -> String {
    serde_json::to_string_pretty(json).expect("JSON values always render")
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            if cli.json {
                println!("{}", render(&out.json));
            } else {
                print!("{}", out.text);
            }
            ExitCode::from(u8::from(out.negative))
        }
        Err(failure) => {
            match &failure {
                Failure::Negative(json, message) => {
                    if cli.json {
                        println!("{}", render(json));
                    } else {
                        println!("no: {message}");
                    }
                }
                Failure::Budget(json, message) => {
                    if cli.json {
                        println!("{}", render(json));
                    }
                    eprintln!("strongtrace: {message}");
                }
                Failure::Input(message) | Failure::Internal(message) => {
                    if cli.json {
                        let kind = if matches!(failure, Failure::Input(_)) { "input" } else { "internal" };
                        println!("{}", render(&json!({ "error": kind, "message": message })));
                    }
                    eprintln!("strongtrace: {message}");
                }
            }
            ExitCode::from(failure.code())
        }
    }
}
