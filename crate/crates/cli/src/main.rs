//! Command-line front end: solve single graphs, run verification campaigns,
//! enumerate and generate graphs, and classify near-Hamiltonian graphs.

use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use cyclepair::harness::{
    enumerate_labeled, graph6_items, graph_items, probe_open_question, verify_stream, Mode, Report, VerifyConfig,
};
use cyclepair::{
    classify_near_hamiltonian, encode_graph6, find_disjoint_cycles, gen_family, meets_threshold, parse_edge_list,
    parse_graph6, Error, Family, Graph, Strategy,
};
use serde_json::json;

#[derive(Parser)]
#[command(
    name = "cyclepair",
    version,
    about = "Disjoint cycles of prescribed lengths under degree-sum conditions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Find two disjoint cycles of lengths n1 and n2.
    Solve {
        /// graph6 string, edge-list text, or a file holding either.
        graph: String,
        #[arg(long)]
        n1: usize,
        #[arg(long)]
        n2: usize,
        /// proof_first, oracle_only or proof_only.
        #[arg(long, default_value = "proof_first")]
        strategy: String,
    },
    /// Run a verification campaign and print a JSON Lines report.
    Verify {
        /// theorem15, elzahar, ore_bondy or lemma27.
        #[arg(long)]
        mode: String,
        /// Enumerate all labeled graphs of this order in-process.
        #[arg(long, conflicts_with = "input", required_unless_present = "input")]
        n: Option<usize>,
        /// graph6 file, one graph per line.
        #[arg(long)]
        input: Option<PathBuf>,
        /// Worker threads, capped by CYCLEPAIR_MAX_WORKERS when set.
        #[arg(long, default_value_t = default_workers())]
        workers: usize,
        #[arg(long, default_value = "proof_first")]
        strategy: String,
        /// Also compare every solver answer with the exhaustive oracle.
        #[arg(long)]
        cross_check: bool,
    },
    /// Print every labeled graph of order n with sigma2 at least the threshold.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        sigma2_min: usize,
    },
    /// Print the graph6 encoding of a family descriptor such as `J(E3,K6)`.
    Gen { descriptor: String },
    /// Classify a graph with sigma2 >= n - 1 and print the witness.
    Classify { graph6: String },
    /// List graphs with sigma2 = n + 1 lacking disjoint cycles for a split
    /// with an even length.
    Probe {
        #[arg(long)]
        input: PathBuf,
        /// Worker threads, capped by CYCLEPAIR_MAX_WORKERS when set.
        #[arg(long, default_value_t = default_workers())]
        workers: usize,
    },
}

fn default_workers() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

/// Assertions failed.
const EXIT_FAIL: u8 = 1;
/// Malformed input.
const EXIT_INPUT: u8 = 2;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_contract() { EXIT_FAIL } else { EXIT_INPUT })
        }
    }
}

fn run(cmd: Command) -> Result<u8, Error> {
    match cmd {
        Command::Solve {
            graph,
            n1,
            n2,
            strategy,
        } => solve(&graph, n1, n2, strategy.parse()?),
        Command::Verify {
            mode,
            n,
            input,
            workers,
            strategy,
            cross_check,
        } => {
            let mode: Mode = mode.parse()?;
            if mode == Mode::Probe {
                return Err(Error::Input("use the probe subcommand for probing".into()));
            }
            let cfg = VerifyConfig {
                mode,
                workers,
                strategy: strategy.parse()?,
                cross_check,
            };
            let report = match (n, input) {
                (Some(n), _) => {
                    let graphs = enumerate_labeled(n, mode.sigma2_floor(n))?;
                    verify_stream(graph_items(graphs), &format!("labeled n={n}"), &cfg)?
                }
                (None, Some(path)) => {
                    let reader = open(&path)?;
                    verify_stream(graph6_items(reader), &path.display().to_string(), &cfg)?
                }
                (None, None) => unreachable!("clap requires --n or --input"),
            };
            Ok(emit(&report))
        }
        Command::Enumerate { n, sigma2_min } => {
            let mut out = BufWriter::new(io::stdout().lock());
            for g in enumerate_labeled(n, sigma2_min)? {
                writeln!(out, "{}", encode_graph6(&g)).map_err(io_error)?;
            }
            out.flush().map_err(io_error)?;
            Ok(0)
        }
        Command::Gen { descriptor } => {
            let family: Family = descriptor.parse()?;
            println!("{}", encode_graph6(&gen_family(&family)?));
            Ok(0)
        }
        Command::Classify { graph6 } => {
            let g = parse_graph6(graph6.trim())?;
            let class = classify_near_hamiltonian(&g)?;
            println!("{}", serde_json::to_string(&class).expect("class serializes"));
            Ok(0)
        }
        Command::Probe { input, workers } => {
            let reader = open(&input)?;
            let report = probe_open_question(graph6_items(reader), &input.display().to_string(), workers)?;
            Ok(emit(&report))
        }
    }
}

fn solve(arg: &str, n1: usize, n2: usize, strategy: Strategy) -> Result<u8, Error> {
    let text = match std::fs::read_to_string(arg) {
        Ok(t) => t,
        Err(_) => arg.to_string(),
    };
    let (g, labels) = read_graph(&text)?;
    let outcome = find_disjoint_cycles(&g, n1, n2, strategy)?;
    let named = |vs: Vec<usize>| -> Vec<String> { vs.into_iter().map(|v| labels[v].clone()).collect() };
    let cert = outcome.cert.as_ref().map(|c| {
        json!({
            "c1": named(c.c1.vertices()),
            "c2": named(c.c2.vertices()),
        })
    });
    let recovered = outcome
        .recovered
        .as_ref()
        .map(|v| json!({"step": v.step, "detail": v.detail}));
    let out = json!({
        "graph6": encode_graph6(&g),
        "n1": n1,
        "n2": n2,
        "threshold_met": meets_threshold(&g),
        "cert": cert,
        "trace": outcome.trace.to_json(),
        "recovered_contract_error": recovered,
    });
    println!("{out}");
    let missing = outcome.cert.is_none() && meets_threshold(&g);
    Ok(if missing || outcome.recovered.is_some() {
        EXIT_FAIL
    } else {
        0
    })
}

/// A single graph6 token, or edge-list text with a `n m` header.
fn read_graph(text: &str) -> Result<(Graph, Vec<String>), Error> {
    let trimmed = text.trim();
    if trimmed.split_whitespace().nth(1).is_some() {
        return parse_edge_list(trimmed);
    }
    let g = parse_graph6(trimmed)?;
    let labels = (0..g.order()).map(|v| v.to_string()).collect();
    Ok((g, labels))
}

fn open(path: &PathBuf) -> Result<BufReader<File>, Error> {
    File::open(path)
        .map(BufReader::new)
        .map_err(|e| Error::Input(format!("cannot open {}: {e}", path.display())))
}

fn io_error(e: io::Error) -> Error {
    Error::Input(format!("write failed: {e}"))
}

/// Prints the report and maps it to an exit code.
fn emit(report: &Report) -> u8 {
    print!("{}", report.to_jsonl());
    if !report.passed() {
        EXIT_FAIL
    } else if report.parse_errors > 0 {
        EXIT_INPUT
    } else {
        0
    }
}
