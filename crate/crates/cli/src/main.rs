//! `hyperbasis` command-line interface.
//!
//! Exit codes: 0 success (free basis, member, equal), 1 negative answer
//! (not a member, not equal), 2 precision exhausted, 3 elliptic element
//! found, 4 invalid input or usage.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use hyperbasis::bench;
use hyperbasis::fundamental::in_fundamental_domain;
use hyperbasis::problem::parse_vertex_spec;
use hyperbasis::treeaction::evaluate;
use hyperbasis::{
    groups_equal, norm, reduce, translation_length, BruhatTitsTree, Error, MembershipSolver,
    Problem, ProjMatrix, ReducedBasis, TreeAction, Word,
};

const EXIT_NEGATIVE: u8 = 1;
const EXIT_PRECISION: u8 = 2;
const EXIT_ELLIPTIC: u8 = 3;
const EXIT_INVALID: u8 = 4;

#[derive(Parser)]
#[command(
    name = "hyperbasis",
    version,
    about = "Free bases and membership for subgroups of PGL2(Q_p)"
)]
struct Cli {
    /// Override the p-adic precision from the problem file.
    #[arg(long, global = true)]
    precision: Option<u32>,
    /// Machine-readable JSON report on stdout.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Reduce the generators to a free basis or find an elliptic element.
    Reduce {
        #[arg(long)]
        input: PathBuf,
    },
    /// Decide whether the query matrix lies in the generated group.
    Membership {
        #[arg(long)]
        input: PathBuf,
        /// Query matrix as a JSON literal, e.g. '[["5","0"],["0","1"]]'.
        #[arg(long)]
        query: Option<String>,
    },
    /// Decide whether two generating sets generate the same group.
    Equal {
        #[arg(long)]
        input: PathBuf,
        /// Second problem file; defaults to `generators_b` of the first.
        #[arg(long)]
        input_b: Option<PathBuf>,
    },
    /// Map a vertex into the fundamental domain.
    OrbitRep {
        #[arg(long)]
        input: PathBuf,
        /// Vertex as "level,offset", e.g. "2,5".
        #[arg(long)]
        vertex: Option<String>,
    },
    /// Graphviz DOT of the ball around the base vertex, with
    /// fundamental-domain vertices filled.
    ExportBall {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        radius: u64,
    },
    /// Timing tables for reduction and orbit representatives (CSV).
    Bench {
        /// Generator counts for the reduction and orbit tables.
        #[arg(long, value_delimiter = ',', default_value = "2,5,10")]
        sizes: Vec<usize>,
        /// Distances d(w, v0) for the orbit table at five generators.
        #[arg(long, value_delimiter = ',', default_value = "5,10,20,50,100")]
        distances: Vec<u64>,
        #[arg(long, default_value_t = 10)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

enum Failure {
    Lib(Error),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type CmdResult = Result<u8, Failure>;

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_INVALID)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            if let Error::ReductionAborted { words, .. } = &e {
                let shown: Vec<String> = words.iter().map(|w| w.to_string()).collect();
                eprintln!("last consistent generators: [{}]", shown.join(", "));
            }
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::PrecisionExhausted(_) | Error::DivisionByZero => EXIT_PRECISION,
        Error::ReductionAborted { source, .. } => exit_code(source),
        Error::EllipticEncountered => EXIT_ELLIPTIC,
        _ => EXIT_INVALID,
    }
}

fn run(cli: &Cli) -> CmdResult {
    let load = |path: &PathBuf| Problem::from_path(path, cli.precision);
    match &cli.command {
        Command::Reduce { input } => cmd_reduce(&load(input)?, cli.json),
        Command::Membership { input, query } => {
            let problem = load(input)?;
            let query = match query {
                Some(text) => {
                    let v: Value = serde_json::from_str(text)
                        .map_err(|e| Failure::Usage(format!("--query: {e}")))?;
                    ProjMatrix::from_json(problem.tree.context(), &v)?
                }
                None => problem
                    .query
                    .clone()
                    .ok_or_else(|| Failure::Usage("no query matrix given".into()))?,
            };
            cmd_membership(&problem, &query, cli.json)
        }
        Command::Equal { input, input_b } => {
            let a = load(input)?;
            let others = match input_b {
                Some(path) => {
                    // Read at the first file's precision so the contexts agree.
                    let b = Problem::from_path(path, Some(a.tree.context().precision()))?;
                    if b.tree.prime() != a.tree.prime() {
                        return Err(Failure::Usage("problem files use different primes".into()));
                    }
                    b.generators
                }
                None => a.generators_b.clone().ok_or_else(|| {
                    Failure::Usage("no second generator list (--input-b or generators_b)".into())
                })?,
            };
            cmd_equal(&a, &others, cli.json)
        }
        Command::OrbitRep { input, vertex } => {
            let problem = load(input)?;
            let w = match vertex {
                Some(spec) => parse_vertex_spec(&problem.tree, spec)?,
                None => problem
                    .vertex
                    .clone()
                    .unwrap_or_else(|| problem.tree.base_vertex()),
            };
            cmd_orbit_rep(&problem, &w, cli.json)
        }
        Command::ExportBall { input, radius } => cmd_export_ball(&load(input)?, *radius),
        Command::Bench {
            sizes,
            distances,
            trials,
            seed,
        } => cmd_bench(sizes, distances, *trials, *seed, cli.json),
    }
}

fn matrix_json(g: &ProjMatrix) -> Value {
    json!([
        [g.a.to_string(), g.b.to_string()],
        [g.c.to_string(), g.d.to_string()]
    ])
}

fn generator_json(tree: &BruhatTitsTree, g: &ProjMatrix, word: &Word) -> Result<Value, Failure> {
    Ok(json!({
        "matrix": matrix_json(g),
        "word": word.to_signed(),
        "word_text": word.display_with("g"),
        "norm": norm(tree, g)?,
        "translation_length": translation_length(tree, g)?,
    }))
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("serialisable"));
}

fn cmd_reduce(problem: &Problem, as_json: bool) -> CmdResult {
    let tree = &problem.tree;
    let start = std::time::Instant::now();
    let out = reduce(tree, &problem.generators)?;
    log::info!("reduction took {:?}", start.elapsed());
    let basis = out
        .basis
        .iter()
        .map(|g| generator_json(tree, &g.element, &g.word))
        .collect::<Result<Vec<_>, _>>()?;
    let witness = out
        .witness
        .as_ref()
        .map(|g| generator_json(tree, &g.element, &g.word))
        .transpose()?;
    if as_json {
        print_json(&json!({
            "flag": out.flag,
            "free": out.flag.is_free(),
            "iterations": out.iterations,
            "basis": basis,
            "witness": witness,
        }));
    } else {
        println!("flag: {}", out.flag);
        println!("iterations: {}", out.iterations);
        println!("basis ({} elements):", out.basis.len());
        for (i, (g, info)) in out.basis.iter().zip(&basis).enumerate() {
            println!("  x{} = {}", i + 1, g.element);
            println!("     word: {}", g.word.display_with("g"));
            println!(
                "     |x| = {}, l(x) = {}",
                info["norm"], info["translation_length"]
            );
        }
        if let Some(w) = &out.witness {
            println!("elliptic witness: {}", w.element);
            println!("     word: {}", w.word.display_with("g"));
        }
    }
    Ok(if out.flag.is_free() { 0 } else { EXIT_ELLIPTIC })
}

fn cmd_membership(problem: &Problem, query: &ProjMatrix, as_json: bool) -> CmdResult {
    let tree = &problem.tree;
    let solver = MembershipSolver::new(tree, &problem.generators)?;
    let answer = solver.solve(query)?;
    if let Some(word) = &answer {
        let back = evaluate(tree, &problem.generators, word)?;
        debug_assert!(back.proj_equal(query)?);
    }
    if as_json {
        print_json(&json!({
            "member": answer.is_some(),
            "word": answer.as_ref().map(|w| w.to_signed()),
            "word_text": answer.as_ref().map(|w| w.display_with("g")),
        }));
    } else {
        match &answer {
            Some(w) => println!("member: {}", w.display_with("g")),
            None => println!("not a member"),
        }
    }
    Ok(if answer.is_some() { 0 } else { EXIT_NEGATIVE })
}

fn cmd_equal(problem: &Problem, others: &[ProjMatrix], as_json: bool) -> CmdResult {
    let equal = groups_equal(&problem.tree, &problem.generators, others)?;
    if as_json {
        print_json(&json!({ "equal": equal }));
    } else {
        println!("{}", if equal { "yes" } else { "no" });
    }
    Ok(if equal { 0 } else { EXIT_NEGATIVE })
}

fn cmd_orbit_rep(problem: &Problem, w: &hyperbasis::Vertex, as_json: bool) -> CmdResult {
    let tree = &problem.tree;
    let solver = MembershipSolver::new(tree, &problem.generators)?;
    let g = solver.orbit_representative(w)?;
    let rep = tree.act(&g.element, w)?;
    if as_json {
        print_json(&json!({
            "element": matrix_json(&g.element),
            "word": g.word.to_signed(),
            "word_text": g.word.display_with("g"),
            "vertex": tree.format_vertex(w),
            "representative": tree.format_vertex(&rep),
        }));
    } else {
        println!("element: {}", g.element);
        println!("word: {}", g.word.display_with("g"));
        println!("representative: {}", tree.format_vertex(&rep));
    }
    Ok(0)
}

fn cmd_export_ball(problem: &Problem, radius: u64) -> CmdResult {
    let tree = &problem.tree;
    let outcome = reduce(tree, &problem.generators)?;
    let basis = ReducedBasis::from_outcome(tree, outcome)?;
    let dot = tree.ball_dot(radius, |v| in_fundamental_domain(tree, &basis, v))?;
    print!("{dot}");
    Ok(0)
}

fn cmd_bench(
    sizes: &[usize],
    distances: &[u64],
    trials: usize,
    seed: u64,
    as_json: bool,
) -> CmdResult {
    let reduce_rows = bench::reduce_table(sizes, trials, seed)?;
    let configs: Vec<(usize, u64)> = sizes
        .iter()
        .map(|&s| (s, 100))
        .chain(distances.iter().map(|&d| (5, d)))
        .collect();
    let orbit_rows = bench::orbit_table(&configs, trials, seed)?;
    if as_json {
        let reduce: Vec<Value> = reduce_rows
            .iter()
            .map(|r| {
                json!({
                    "generators": r.size, "trials": r.trials, "mean_seconds": r.mean_seconds,
                    "mean_iterations": r.mean_iterations,
                    "mean_seconds_per_iteration": r.mean_seconds_per_iteration,
                    "elliptic": r.elliptic, "aborted": r.aborted,
                })
            })
            .collect();
        let orbit: Vec<Value> = orbit_rows
            .iter()
            .map(|r| json!({"generators": r.size, "distance": r.distance, "runs": r.runs, "mean_seconds": r.mean_seconds}))
            .collect();
        print_json(&json!({ "reduce": reduce, "orbit": orbit }));
    } else {
        print!("{}", bench::to_csv(&reduce_rows, &orbit_rows));
    }
    Ok(0)
}
