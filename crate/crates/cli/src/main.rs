//! `ird`: solve, check and generate independent Roman domination instances.
//!
//! Exit codes: 0 success, 1 invalid labeling (`check`), 2 bad input or
//! arguments, 3 graph outside the requested class, 4 a solver produced a
//! certificate that failed validation.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use ird_core::dh::{build_decomposition, solve_dh_tree, DecompTree};
use ird_core::generate::{gen_dh, generate, GenSpec, GraphClass};
use ird_core::oracle::DEFAULT_ORACLE_CAP;
use ird_core::p4::decompose_p4sparse;
use ird_core::solver::{solve_as, solve_auto, SolverClass};
use ird_core::{validate_irdf, Graph, RomanLabeling, Solution};

const EXIT_INVALID: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_UNSUPPORTED: u8 = 3;
const EXIT_CERTIFICATE: u8 = 4;

#[derive(Parser)]
#[command(name = "ird", version, about = "Exact independent Roman domination")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute i_R for one or more graphs.
    Solve(SolveArgs),
    /// Validate a labeling against a graph.
    Check { graph: PathBuf, labeling: PathBuf },
    /// Generate a random instance.
    Gen(GenArgs),
    /// Print the decomposition tree of a distance-hereditary graph as JSON.
    Tree { graph: PathBuf },
    /// Print the union/join/spider decomposition of a P4-sparse graph.
    Decompose { graph: PathBuf },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ClassArg {
    Auto,
    Dh,
    Split,
    P4sparse,
    Oracle,
}

#[derive(Args)]
struct SolveArgs {
    /// Edge-list files (`-` reads stdin).
    #[arg(required = true)]
    files: Vec<PathBuf>,
    #[arg(long, value_enum, default_value = "auto")]
    class: ClassArg,
    /// Also print an optimal labeling.
    #[arg(long)]
    certificate: bool,
    /// One JSON record per input.
    #[arg(long)]
    json: bool,
    /// Inputs are decomposition trees in JSON instead of edge lists.
    #[arg(long)]
    tree: bool,
    /// Largest graph the exhaustive solver accepts.
    #[arg(long, env = "IRD_ORACLE_CAP", default_value_t = DEFAULT_ORACLE_CAP)]
    oracle_cap: usize,
    /// Worker threads for multiple inputs.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
    jobs: u16,
}

#[derive(Clone, Copy, ValueEnum)]
enum GenClassArg {
    Dh,
    Split,
    P4sparse,
    Cograph,
    Gnp,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, value_enum)]
    class: GenClassArg,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Pendant, true-twin and false-twin weights.
    #[arg(long, value_parser = parse_triple)]
    dh_weights: Option<[f64; 3]>,
    #[arg(long)]
    clique_fraction: Option<f64>,
    #[arg(long)]
    cross_p: Option<f64>,
    /// Union, join and spider weights.
    #[arg(long, value_parser = parse_triple)]
    p4_weights: Option<[f64; 3]>,
    #[arg(long)]
    spider_k_min: Option<usize>,
    #[arg(long)]
    spider_k_max: Option<usize>,
    /// Spiders without a head.
    #[arg(long)]
    empty_head: bool,
    #[arg(long)]
    edge_p: Option<f64>,
    /// Write PREFIX.edges (and PREFIX.tree.json for dh) instead of stdout.
    #[arg(long, value_name = "PREFIX")]
    out: Option<PathBuf>,
}

fn parse_triple(s: &str) -> Result<[f64; 3], String> {
    let parts: Vec<f64> = s
        .split(',')
        .map(|p| p.trim().parse::<f64>().map_err(|e| format!("{p:?}: {e}")))
        .collect::<Result<_, _>>()?;
    parts
        .try_into()
        .map_err(|v: Vec<f64>| format!("expected three comma-separated numbers, got {}", v.len()))
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }
}

fn read_input(path: &Path) -> Result<String, Failure> {
    let mut text = String::new();
    let result = if path.as_os_str() == "-" {
        io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        fs::read_to_string(path).map(|t| text = t)
    };
    result.map_err(|e| Failure::new(EXIT_INPUT, format!("{}: {e}", path.display())))?;
    Ok(text)
}

fn read_graph(path: &Path) -> Result<Graph, Failure> {
    Graph::parse_edge_list(&read_input(path)?)
        .map_err(|e| Failure::new(EXIT_INPUT, format!("{}: {e}", path.display())))
}

#[derive(Serialize)]
struct Timings {
    parse_ms: f64,
    solve_ms: f64,
    validate_ms: f64,
}

#[derive(Serialize)]
struct SolveResult {
    file: String,
    value: usize,
    class_used: &'static str,
    certificate: Vec<usize>,
    certificate_valid: bool,
    timings: Timings,
}

fn millis(since: Instant) -> f64 {
    since.elapsed().as_secs_f64() * 1e3
}

fn solve_one(path: &Path, args: &SolveArgs) -> Result<SolveResult, Failure> {
    let start = Instant::now();
    let text = read_input(path)?;
    let input_error =
        |e: &dyn std::fmt::Display| Failure::new(EXIT_INPUT, format!("{}: {e}", path.display()));
    let tree = if args.tree {
        Some(DecompTree::from_json(&text).map_err(|e| input_error(&e))?)
    } else {
        None
    };
    let graph = match &tree {
        Some(t) => t.to_graph(),
        None => Graph::parse_edge_list(&text).map_err(|e| input_error(&e))?,
    };
    let parse_ms = millis(start);

    let start = Instant::now();
    let unsupported = |e: &dyn std::fmt::Display| {
        Failure::new(EXIT_UNSUPPORTED, format!("{}: {e}", path.display()))
    };
    let (class, Solution { value, certificate }) = match (&tree, args.class) {
        (Some(t), _) => (SolverClass::Dh, solve_dh_tree(t)),
        (None, ClassArg::Auto) => {
            solve_auto(&graph, args.oracle_cap).map_err(|e| unsupported(&e))?
        }
        (None, fixed) => {
            let class = match fixed {
                ClassArg::Dh => SolverClass::Dh,
                ClassArg::Split => SolverClass::Split,
                ClassArg::P4sparse => SolverClass::P4Sparse,
                ClassArg::Oracle => SolverClass::Oracle,
                ClassArg::Auto => unreachable!(),
            };
            let sol = solve_as(class, &graph, args.oracle_cap).map_err(|e| unsupported(&e))?;
            (class, sol)
        }
    };
    let solve_ms = millis(start);

    let start = Instant::now();
    let report = validate_irdf(&graph, &certificate);
    let validate_ms = millis(start);
    let valid = matches!(&report, Ok(r) if r.is_valid()) && certificate.weight() == value;
    if !valid {
        return Err(Failure::new(
            EXIT_CERTIFICATE,
            format!(
                "{}: BUG: {class} solver returned value {value} with a certificate that fails validation: {}",
                path.display(),
                match report {
                    Ok(r) if r.is_valid() => format!("weight {} differs from value", certificate.weight()),
                    Ok(r) => r.violations.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "),
                    Err(e) => e.to_string(),
                }
            ),
        ));
    }
    Ok(SolveResult {
        file: path.display().to_string(),
        value,
        class_used: class.name(),
        certificate: certificate.labels().iter().map(|l| l.value()).collect(),
        certificate_valid: valid,
        timings: Timings {
            parse_ms,
            solve_ms,
            validate_ms,
        },
    })
}

fn run_solve(args: SolveArgs) -> Result<u8, Failure> {
    if args.tree && !matches!(args.class, ClassArg::Auto | ClassArg::Dh) {
        return Err(Failure::new(
            EXIT_INPUT,
            "--tree inputs are solved on the dh path only",
        ));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(args.jobs as usize)
        .build()
        .map_err(|e| Failure::new(EXIT_INPUT, e.to_string()))?;
    let results: Vec<Result<SolveResult, Failure>> =
        pool.install(|| args.files.par_iter().map(|f| solve_one(f, &args)).collect());

    let many = args.files.len() > 1;
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let mut code = 0;
    for result in results {
        match result {
            Ok(r) if args.json => {
                let line = serde_json::to_string(&r).expect("result serializes");
                let _ = writeln!(out, "{line}");
            }
            Ok(r) => {
                let prefix = if many {
                    format!("{}: ", r.file)
                } else {
                    String::new()
                };
                let _ = writeln!(out, "{prefix}value={} class={}", r.value, r.class_used);
                if args.certificate {
                    let labels: Vec<String> =
                        r.certificate.iter().map(ToString::to_string).collect();
                    let _ = writeln!(out, "{prefix}certificate={}", labels.join(","));
                }
            }
            Err(f) => {
                eprintln!("ird: {}", f.message);
                code = code.max(f.code);
            }
        }
    }
    Ok(code)
}

fn run_check(graph: &Path, labeling: &Path) -> Result<u8, Failure> {
    let g = read_graph(graph)?;
    let l = RomanLabeling::parse(&read_input(labeling)?)
        .map_err(|e| Failure::new(EXIT_INPUT, format!("{}: {e}", labeling.display())))?;
    let report = validate_irdf(&g, &l).map_err(|e| Failure::new(EXIT_INPUT, e.to_string()))?;
    if report.is_valid() {
        println!("VALID weight={}", l.weight());
        Ok(0)
    } else {
        println!(
            "INVALID weight={} violations={}",
            l.weight(),
            report.violations.len()
        );
        for v in &report.violations {
            println!("  {v}");
        }
        Ok(EXIT_INVALID)
    }
}

fn run_gen(args: GenArgs) -> Result<u8, Failure> {
    let class = match args.class {
        GenClassArg::Dh => GraphClass::Dh,
        GenClassArg::Split => GraphClass::Split,
        GenClassArg::P4sparse => GraphClass::P4Sparse,
        GenClassArg::Cograph => GraphClass::Cograph,
        GenClassArg::Gnp => GraphClass::Gnp,
    };
    let mut spec = GenSpec::new(class, args.n, args.seed);
    if let Some(w) = args.dh_weights {
        spec.dh_weights = w;
    }
    if let Some(p) = args.clique_fraction {
        spec.clique_fraction = p;
    }
    if let Some(p) = args.cross_p {
        spec.cross_p = p;
    }
    if let Some(w) = args.p4_weights {
        spec.p4_weights = w;
    }
    if let Some(k) = args.spider_k_min {
        spec.spider_k_min = k;
    }
    if let Some(k) = args.spider_k_max {
        spec.spider_k_max = k;
    }
    if let Some(p) = args.edge_p {
        spec.edge_p = p;
    }
    spec.empty_head = args.empty_head;

    let bad = |e: ird_core::generate::GenError| Failure::new(EXIT_INPUT, e.to_string());
    let (graph, tree) = if class == GraphClass::Dh {
        let (g, t) = gen_dh(&spec).map_err(bad)?;
        (g, Some(t))
    } else {
        (generate(&spec).map_err(bad)?, None)
    };

    let Some(prefix) = args.out else {
        print!("{}", graph.to_edge_list());
        return Ok(0);
    };
    let write = |path: PathBuf, contents: String| -> Result<(), Failure> {
        fs::write(&path, contents)
            .map_err(|e| Failure::new(EXIT_INPUT, format!("{}: {e}", path.display())))?;
        println!("{}", path.display());
        Ok(())
    };
    let with_suffix = |suffix: &str| {
        let mut p = prefix.clone().into_os_string();
        p.push(suffix);
        PathBuf::from(p)
    };
    write(with_suffix(".edges"), graph.to_edge_list())?;
    if let Some(t) = tree {
        write(with_suffix(".tree.json"), t.to_json() + "\n")?;
    }
    Ok(0)
}

fn run_tree(path: &Path) -> Result<u8, Failure> {
    let g = read_graph(path)?;
    let tree = build_decomposition(&g)
        .map_err(|e| Failure::new(EXIT_UNSUPPORTED, format!("{}: {e}", path.display())))?;
    println!("{}", tree.to_json());
    Ok(0)
}

fn run_decompose(path: &Path) -> Result<u8, Failure> {
    let g = read_graph(path)?;
    let d = decompose_p4sparse(&g)
        .map_err(|e| Failure::new(EXIT_UNSUPPORTED, format!("{}: {e}", path.display())))?;
    print!("{d}");
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Solve(args) => run_solve(args),
        Command::Check { graph, labeling } => run_check(&graph, &labeling),
        Command::Gen(args) => run_gen(args),
        Command::Tree { graph } => run_tree(&graph),
        Command::Decompose { graph } => run_decompose(&graph),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("ird: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
