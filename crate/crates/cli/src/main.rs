//! Command-line front door: verification, construction, bounds, search,
//! block statistics, and the 2D variant, with CSV output on stdout and
//! logs on stderr.
//!
//! Exit codes: 0 = property holds / command succeeded, 1 = property
//! violated, 2 = usage or I/O error, 3 = undecided (budget exhausted).

use std::fs;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};

use chg_core::bounds::{deletion_p, thm1_leading, thm1_rigorous, thm2_exponent};
use chg_core::construct::{greedy, random_deletion, sidon_erdos_turan};
use chg_core::grid2d::{density_csv, grid_greedy, is_grid_chg, GridSet, ScanOrder};
use chg_core::search::{extremal_table, table_to_csv};
use chg_core::seqstats::{block_profile, geometric_grid, profile_to_csv, tau};
use chg_core::verify::{is_chg, is_weak_chg, DEFAULT_BUDGET};
use chg_core::{IntegerSet, Params, Verdict, ViolationReport};

#[derive(Parser)]
#[command(
    name = "chg",
    version,
    about = "Toolkit for C_h[g] and weak-C_h[g] integer sets"
)]
struct Cli {
    /// Cap on worker threads (all commands currently run single-threaded).
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct ParamArgs {
    /// Subset size h of the forbidden pattern (h >= 2).
    #[arg(long)]
    h: u32,
    /// Number of translated copies g (g >= 2).
    #[arg(long)]
    g: u32,
}

#[derive(Subcommand)]
enum Command {
    /// Check whether a set file is C_h[g] (or weak-C_h[g] with --weak).
    Verify {
        /// Path to the set file (one integer per line, '#' comments).
        #[arg(long)]
        set: String,
        #[command(flatten)]
        params: ParamArgs,
        /// Require the g translates to be pairwise disjoint.
        #[arg(long)]
        weak: bool,
        /// Print the violating configurations that were found.
        #[arg(long)]
        witnesses: bool,
        /// Work budget for the disjointness search (weak mode).
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Build sets: random deletion, greedy scan, or the prime construction.
    #[command(subcommand)]
    Construct(ConstructCommand),
    /// Print the density bounds and sampling parameters for (n, h, g).
    Bounds {
        #[arg(long)]
        n: u64,
        #[command(flatten)]
        params: ParamArgs,
        /// Also compute the finite-n rigorous size bound.
        #[arg(long)]
        rigorous: bool,
    },
    /// Exact maximum-size search on [1,n] for each n up to --nmax (CSV).
    Search {
        #[arg(long)]
        nmax: u64,
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long)]
        weak: bool,
        /// Per-row time budget in seconds.
        #[arg(long, default_value_t = 10)]
        timeout: u64,
    },
    /// Block profile of a set over the N intervals partitioning [0,N^2).
    Blocks {
        #[arg(long)]
        set: String,
        #[arg(long = "N")]
        n_blocks: u64,
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Minimum of the counting-function statistic over sampled x >= m.
    Tau {
        #[arg(long)]
        set: String,
        #[arg(long)]
        m: u64,
        #[arg(long, default_value_t = 2)]
        h: u32,
    },
    /// 2D variant: verify a point set or grow one greedily.
    #[command(subcommand)]
    Grid2d(Grid2dCommand),
}

#[derive(Subcommand)]
enum ConstructCommand {
    /// Sample [1,n] at the theorem density, delete the bad elements.
    RandomDeletion {
        #[arg(long)]
        n: u64,
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 5)]
        retries: u32,
    },
    /// Keep each m = 1..n that preserves the property.
    Greedy {
        #[arg(long)]
        n: u64,
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long)]
        weak: bool,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// The q-element Sidon set {2qi + (i^2 mod q)} for a prime q.
    Sidon {
        #[arg(long)]
        prime: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum OrderArg {
    RowMajor,
    Random,
}

#[derive(Subcommand)]
enum Grid2dCommand {
    /// Check a point file (one `x y` per line) for the 2D property.
    Verify {
        #[arg(long)]
        set: String,
        #[command(flatten)]
        params: ParamArgs,
        /// Grid bound; coordinates must be < n.
        #[arg(long)]
        n: u64,
        #[arg(long)]
        witnesses: bool,
    },
    /// Greedy scan over the n x n grid; prints a density CSV row and the set.
    Greedy {
        #[arg(long)]
        n: u64,
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, value_enum, default_value_t = OrderArg::RowMajor)]
        order: OrderArg,
        /// Scan seed; required when --order random.
        #[arg(long)]
        seed: Option<u64>,
    },
}

fn usage_error(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn read_set(path: &str) -> Result<IntegerSet, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("cannot read {path}: {e}"))?;
    IntegerSet::parse(&text).map_err(|e| format!("{path}: {e}"))
}

fn verdict_exit(report: &ViolationReport, witnesses: bool) -> ExitCode {
    let (word, code) = match report.verdict {
        Verdict::Holds => ("holds", 0),
        Verdict::Violated => ("violated", 1),
        Verdict::Undecided => ("undecided", 3),
    };
    println!("RESULT={word}");
    println!("shapes_examined={}", report.shapes_examined);
    if witnesses {
        for w in &report.witnesses {
            let deltas: Vec<String> = w.shape.deltas().iter().map(u64::to_string).collect();
            let offsets: Vec<String> = w.offsets.iter().map(u64::to_string).collect();
            println!(
                "witness shape=0,{} offsets={} disjoint={}",
                deltas.join(","),
                offsets.join(","),
                w.disjoint
            );
        }
    }
    ExitCode::from(code)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.threads == 0 {
        return usage_error("--threads must be at least 1");
    }
    match run(cli.command) {
        Ok(code) => code,
        Err(msg) => usage_error(&msg),
    }
}

fn run(command: Command) -> Result<ExitCode, String> {
    match command {
        Command::Verify {
            set,
            params,
            weak,
            witnesses,
            budget,
        } => {
            let a = read_set(&set)?;
            let p = make_params(&params, weak)?;
            let report = if weak {
                is_weak_chg(&a, &p, budget)
            } else {
                is_chg(&a, &p)
            };
            Ok(verdict_exit(&report, witnesses))
        }
        Command::Construct(c) => run_construct(c),
        Command::Bounds {
            n,
            params,
            rigorous,
        } => {
            let (h, g) = (params.h, params.g);
            Params::strict(h, g).map_err(|e| e.to_string())?;
            let leading = thm1_leading(n, h.min(g), h.max(g)).map_err(|e| e.to_string())?;
            let p = deletion_p(n, h, g);
            println!("leading={leading:?}");
            println!("exponent={:?}", thm2_exponent(h, g));
            println!("p={p:e}");
            println!("np={:?}", n as f64 * p);
            if rigorous {
                let bound = thm1_rigorous(n, h.min(g), h.max(g)).map_err(|e| e.to_string())?;
                println!("rigorous={bound}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Search {
            nmax,
            params,
            weak,
            timeout,
        } => {
            let p = make_params(&params, weak)?;
            let rows = extremal_table(nmax, &p, Duration::from_secs(timeout))
                .map_err(|e| e.to_string())?;
            print!("{}", table_to_csv(&rows));
            Ok(ExitCode::SUCCESS)
        }
        Command::Blocks {
            set,
            n_blocks,
            params,
        } => {
            let a = read_set(&set)?;
            let p = make_params(&params, false)?;
            let profile = block_profile(&a, n_blocks, &p).map_err(|e| e.to_string())?;
            print!("{}", profile_to_csv(&profile));
            Ok(ExitCode::SUCCESS)
        }
        Command::Tau { set, m, h } => {
            let a = read_set(&set)?;
            let hi = a.max().unwrap_or(0);
            let xs = geometric_grid(m, hi);
            let t = tau(&a, m, h, &xs).map_err(|e| e.to_string())?;
            println!("tau={t}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Grid2d(c) => run_grid2d(c),
    }
}

fn make_params(args: &ParamArgs, weak: bool) -> Result<Params, String> {
    let make = if weak { Params::weak } else { Params::strict };
    make(args.h, args.g).map_err(|e| e.to_string())
}

fn run_construct(command: ConstructCommand) -> Result<ExitCode, String> {
    match command {
        ConstructCommand::RandomDeletion {
            n,
            params,
            seed,
            retries,
        } => {
            let p = make_params(&params, true)?;
            let trace = random_deletion(n, &p, seed, retries).map_err(|e| e.to_string())?;
            eprint!("{}", trace.to_record());
            print!("{}", trace.result);
            Ok(ExitCode::SUCCESS)
        }
        ConstructCommand::Greedy {
            n,
            params,
            weak,
            budget,
        } => {
            let p = make_params(&params, weak)?;
            let a = greedy(n, &p, budget).map_err(|e| e.to_string())?;
            eprintln!("size={}", a.len());
            print!("{a}");
            Ok(ExitCode::SUCCESS)
        }
        ConstructCommand::Sidon { prime } => {
            let a = sidon_erdos_turan(prime).map_err(|e| e.to_string())?;
            eprintln!("size={}", a.len());
            print!("{a}");
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn run_grid2d(command: Grid2dCommand) -> Result<ExitCode, String> {
    match command {
        Grid2dCommand::Verify {
            set,
            params,
            n,
            witnesses,
        } => {
            let text = fs::read_to_string(&set).map_err(|e| format!("cannot read {set}: {e}"))?;
            let a = GridSet::parse(&text, n).map_err(|e| e.to_string())?;
            let p = make_params(&params, false)?;
            let report = is_grid_chg(&a, &p);
            let (word, code) = match report.verdict {
                Verdict::Holds => ("holds", 0),
                Verdict::Violated => ("violated", 1),
                Verdict::Undecided => ("undecided", 3),
            };
            println!("RESULT={word}");
            println!("shapes_examined={}", report.shapes_examined);
            if witnesses {
                for w in &report.witnesses {
                    let deltas: Vec<String> = w
                        .shape
                        .deltas()
                        .iter()
                        .map(|(x, y)| format!("{x}:{y}"))
                        .collect();
                    let offsets: Vec<String> =
                        w.offsets.iter().map(|(x, y)| format!("{x}:{y}")).collect();
                    println!(
                        "witness shape=0:0,{} offsets={}",
                        deltas.join(","),
                        offsets.join(",")
                    );
                }
            }
            Ok(ExitCode::from(code))
        }
        Grid2dCommand::Greedy {
            n,
            params,
            order,
            seed,
        } => {
            let p = make_params(&params, false)?;
            let order = match (order, seed) {
                (OrderArg::RowMajor, None) => ScanOrder::RowMajor,
                (OrderArg::RowMajor, Some(_)) => {
                    return Err("--seed only applies to --order random".into())
                }
                (OrderArg::Random, Some(s)) => ScanOrder::Random(s),
                (OrderArg::Random, None) => return Err("--order random requires --seed".into()),
            };
            let a = grid_greedy(n, &p, order);
            eprint!("{}", density_csv(&[(n, a.len())]));
            print!("{}", a.to_file_string());
            Ok(ExitCode::SUCCESS)
        }
    }
}
