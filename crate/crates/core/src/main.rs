use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use graphpack::generators::GenSpec;
use graphpack::graph6;
use graphpack::harness::{
    self, read_graph_file, records_to_csv, records_to_json, run_equitable, run_verify, write_records,
    ExperimentConfig, G1Source, G2Source, Outcome, Solver, VerifyCondition,
};

const WORKERS_ENV: &str = "GRAPHPACK_WORKERS";

const EXIT_USAGE: u8 = 1;
const EXIT_VIOLATION: u8 = 2;
const EXIT_INCONCLUSIVE: u8 = 3;

#[derive(Parser)]
#[command(name = "graphpack", version, about = "Graph packing: solvers, sufficient conditions, verification")]
struct Cli {
    /// Worker threads (defaults to $GRAPHPACK_WORKERS, then the core count).
    #[arg(long, global = true)]
    workers: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Decide whether two graphs pack.
    Pack {
        g1: PathBuf,
        g2: PathBuf,
        #[arg(long, value_enum, default_value = "exact")]
        solver: Solver,
        #[arg(long, default_value_t = 10_000_000)]
        budget: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Append the record to this JSON-lines file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate every sufficient condition on a pair.
    Check {
        g1: PathBuf,
        g2: PathBuf,
        #[arg(long)]
        t: Option<usize>,
        #[arg(long)]
        s: Option<usize>,
    },
    /// Check that every instance satisfying a condition packs.
    Verify {
        #[arg(long, value_enum)]
        mode: ModeArg,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        condition: VerifyCondition,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "bounded")]
        g1_kind: G1Kind,
        #[arg(long, default_value_t = 2)]
        g1_dmax: usize,
        /// Codegree bound for k2t-free G1.
        #[arg(long, default_value_t = 2)]
        g1_t: usize,
        #[arg(long, value_enum, default_value = "bounded")]
        g2_kind: G2Kind,
        #[arg(long, default_value_t = 2)]
        g2_dmax: usize,
        #[arg(long, value_enum, default_value = "exact")]
        solver: Solver,
        #[arg(long, default_value_t = 1 << 20)]
        budget: u64,
        #[arg(long)]
        t: Option<usize>,
        #[arg(long)]
        s: Option<usize>,
        /// JSON-lines record stream (failures and inconclusive runs, or all
        /// with --keep-records).
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        keep_records: bool,
    },
    /// Equitable coloring via packing with a union of cliques.
    Equitable {
        #[arg(long = "g-file")]
        g_file: PathBuf,
        #[arg(long)]
        t: Option<usize>,
        /// Number of classes (default: maximum degree, at least 1).
        #[arg(long)]
        colors: Option<usize>,
        #[arg(long, value_enum, default_value = "both")]
        solver: Solver,
        #[arg(long, default_value_t = 1_000_000)]
        budget: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Write generated graphs as graph6 lines.
    Gen {
        #[arg(value_enum)]
        family: Family,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        a: Option<usize>,
        #[arg(long)]
        b: Option<usize>,
        #[arg(long)]
        c: Option<usize>,
        /// Clique sizes, comma separated.
        #[arg(long, value_delimiter = ',')]
        sizes: Vec<usize>,
        #[arg(long)]
        dmax: Option<usize>,
        #[arg(long)]
        t: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 2000)]
        attempt_cap: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Tabulate a JSON-lines record file.
    Report {
        records: PathBuf,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Exhaustive,
    Sample,
}

#[derive(Clone, Copy, ValueEnum)]
enum G1Kind {
    K2tFree,
    Bounded,
}

#[derive(Clone, Copy, ValueEnum)]
enum G2Kind {
    Matching,
    Bounded,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Matching,
    Cliques,
    CompleteBipartite,
    CompleteTripartite,
    Cycle,
    Star,
    SsTight,
    RandomBounded,
    RandomK2tFree,
    Empty,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

type CmdResult = Result<u8, String>;

fn need(v: Option<usize>, flag: &str) -> Result<usize, String> {
    v.ok_or_else(|| format!("--{flag} is required for this family"))
}

fn emit(out: Option<&Path>, text: &str, append: bool) -> Result<(), String> {
    match out {
        None => {
            print!("{text}");
            Ok(())
        }
        Some(p) => {
            let mut f = File::options()
                .create(true)
                .write(true)
                .append(append)
                .truncate(!append)
                .open(p)
                .map_err(|e| format!("{}: {e}", p.display()))?;
            f.write_all(text.as_bytes()).map_err(|e| format!("{}: {e}", p.display()))
        }
    }
}

fn json<T: serde::Serialize>(v: &T) -> Result<String, String> {
    serde_json::to_string_pretty(v).map(|s| s + "\n").map_err(|e| e.to_string())
}

fn run(cmd: Cmd) -> CmdResult {
    let err = |e: graphpack::Error| e.to_string();
    match cmd {
        Cmd::Pack { g1, g2, solver, budget, seed, out } => {
            let (a, b) = (read_graph_file(&g1).map_err(err)?, read_graph_file(&g2).map_err(err)?);
            let id = format!("{}+{}", g1.display(), g2.display());
            let rec = harness::run_pack(&id, &a, &b, solver, budget, seed).map_err(err)?;
            let mut buf = Vec::new();
            write_records(&mut buf, std::slice::from_ref(&rec)).map_err(err)?;
            emit(out.as_deref(), &String::from_utf8_lossy(&buf), true)?;
            Ok(if rec.body.outcome == Outcome::Inconclusive { EXIT_INCONCLUSIVE } else { 0 })
        }
        Cmd::Check { g1, g2, t, s } => {
            let (a, b) = (read_graph_file(&g1).map_err(err)?, read_graph_file(&g2).map_err(err)?);
            let v = harness::run_check(&a, &b, t, s).map_err(err)?;
            print!("{}", json(&v)?);
            Ok(0)
        }
        Cmd::Verify {
            mode,
            n,
            condition,
            trials,
            seed,
            g1_kind,
            g1_dmax,
            g1_t,
            g2_kind,
            g2_dmax,
            solver,
            budget,
            t,
            s,
            out,
            keep_records,
        } => {
            let g1 = match g1_kind {
                G1Kind::K2tFree => G1Source::K2tFree { dmax: g1_dmax, t: g1_t },
                G1Kind::Bounded => G1Source::Bounded { dmax: g1_dmax },
            };
            let g2 = match g2_kind {
                G2Kind::Matching => G2Source::Matching,
                G2Kind::Bounded => G2Source::Bounded { dmax: g2_dmax },
            };
            let mut cfg = match mode {
                ModeArg::Exhaustive => ExperimentConfig::exhaustive(n, condition),
                ModeArg::Sample => ExperimentConfig::sample(n, trials, seed, condition, g1, g2),
            };
            cfg.solver = solver;
            cfg.budget = budget;
            cfg.t = t;
            cfg.s = s;
            cfg.keep_records = keep_records;
            let mut summary = run_verify(&cfg).map_err(err)?;
            let records = std::mem::take(&mut summary.records);
            if let Some(p) = &out {
                let f = File::create(p).map_err(|e| format!("{}: {e}", p.display()))?;
                write_records(BufWriter::new(f), &records).map_err(err)?;
            }
            for r in records.iter().filter(|r| r.body.outcome == Outcome::No) {
                eprintln!("violation {}: g1={} g2={}", r.body.instance, r.body.g1, r.body.g2);
            }
            print!("{}", json(&summary)?);
            Ok(if summary.failures > 0 {
                EXIT_VIOLATION
            } else if summary.inconclusive > 0 {
                EXIT_INCONCLUSIVE
            } else {
                0
            })
        }
        Cmd::Equitable { g_file, t, colors, solver, budget, seed } => {
            let g = read_graph_file(&g_file).map_err(err)?;
            let r = run_equitable(&g, t, colors, solver, budget, seed).map_err(err)?;
            if let Some(w) = &r.warning {
                eprintln!("warning: {w}");
            }
            print!("{}", json(&r)?);
            Ok(match (r.outcome, r.valid) {
                (_, Some(false)) => EXIT_VIOLATION,
                (Outcome::No, _) if r.precondition_ok => EXIT_VIOLATION,
                (Outcome::Inconclusive, _) => EXIT_INCONCLUSIVE,
                _ => 0,
            })
        }
        Cmd::Gen {
            family,
            n,
            m,
            a,
            b,
            c,
            sizes,
            dmax,
            t,
            seed,
            attempt_cap,
            out,
        } => {
            let spec = match family {
                Family::Matching => GenSpec::Matching { n: need(n, "n")? },
                Family::Cliques => GenSpec::Cliques { sizes },
                Family::CompleteBipartite => GenSpec::CompleteBipartite { a: need(a, "a")?, b: need(b, "b")? },
                Family::CompleteTripartite => GenSpec::CompleteTripartite {
                    a: need(a, "a")?,
                    b: need(b, "b")?,
                    c: need(c, "c")?,
                },
                Family::Cycle => GenSpec::Cycle { n: need(n, "n")? },
                Family::Star => GenSpec::Star { n: need(n, "n")? },
                Family::SsTight => GenSpec::SsTight { m: need(m, "m")? },
                Family::RandomBounded => GenSpec::RandomBounded { n: need(n, "n")?, dmax: need(dmax, "dmax")?, seed },
                Family::RandomK2tFree => GenSpec::RandomK2tFree {
                    n: need(n, "n")?,
                    dmax: need(dmax, "dmax")?,
                    t: need(t, "t")?,
                    seed,
                    attempt_cap,
                },
                Family::Empty => GenSpec::Empty { n: need(n, "n")? },
            };
            let graphs = spec.generate().map_err(err)?;
            let mut buf = Vec::new();
            graph6::write_all(&mut buf, &graphs).map_err(|e| e.to_string())?;
            emit(out.as_deref(), &String::from_utf8_lossy(&buf), false)?;
            Ok(0)
        }
        Cmd::Report { records, format } => {
            let f = File::open(&records).map_err(|e| format!("{}: {e}", records.display()))?;
            let recs = harness::read_records(BufReader::new(f)).map_err(err)?;
            let text = match format {
                Format::Csv => records_to_csv(&recs).map_err(err)?,
                Format::Json => records_to_json(&recs).map_err(err)? + "\n",
            };
            io::stdout().write_all(text.as_bytes()).map_err(|e| e.to_string())?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let workers = cli
        .workers
        .or_else(|| std::env::var(WORKERS_ENV).ok().and_then(|v| v.parse().ok()));
    if let Some(w) = workers {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(w).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    }
    match run(cli.cmd) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
