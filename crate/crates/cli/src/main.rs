//! `congr`: verify congruence claims over prime sweeps, run the exact
//! identity suites, and dump the underlying tables.
//!
//! Exit codes: 0 clean, 1 any refuted claim or failed identity, 2 usage
//! error, 3 undecided at the precision budget after retries.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use congr_core::backend::Achieved;
use congr_core::bernoulli::BernoulliCache;
use congr_core::binom::b_tables;
use congr_core::claims::{
    sweep, sweep_primes, BackendKind, ClaimId, ClaimResult, ClaimStatus, Verdict,
};
use congr_core::harmonic::{mhs_prefix_table, MhsIndex};
use congr_core::identities::{identity_check, IdentityId};
use congr_core::primes::is_prime;
use congr_core::sequences::LucasNumbers;
use congr_core::wz::{p2_parameter_grid, summation_formula_check, telescoping_check, WzPairId};
use congr_core::RationalBackend;

#[derive(Parser)]
#[command(name = "congr", version, about = "Congruence verification workbench")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Sweep congruence claims over a prime range.
    Verify(VerifyArgs),
    /// Run the exact identity and certificate-pair suites.
    Identities(IdentityArgs),
    /// Dump a table (bernoulli, mhs, b, lucas).
    Table(TableArgs),
}

#[derive(Args)]
struct VerifyArgs {
    /// Inclusive prime range, e.g. 7..199
    #[arg(long, default_value = "7..199")]
    primes: String,
    /// Comma-separated claim IDs, or "all"
    #[arg(long, default_value = "all")]
    claims: String,
    #[arg(long, value_enum, default_value_t = BackendArg::Both)]
    backend: BackendArg,
    /// Guard digits added to the p-adic precision budget
    #[arg(long, default_value_t = 10)]
    guard: u32,
    /// Worker threads; 1 forces fully sequential evaluation (0 = auto)
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    /// Report path (default stdout); CONGR_OUT overrides
    #[arg(long)]
    out: Option<String>,
    #[arg(long, value_enum, default_value_t = FormatArg::Json)]
    format: FormatArg,
    /// Skip claims tagged conjectural
    #[arg(long)]
    exclude_conjectural: bool,
    /// Stop at the first refuted claim
    #[arg(long)]
    fail_fast: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BackendArg {
    Rational,
    Padic,
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

#[derive(Args)]
struct IdentityArgs {
    /// Identity or pair ID (e.g. I-EQ26, PAIR-T5), or "all"
    #[arg(long, default_value = "all")]
    set: String,
    /// Size cap; identities use min(cap, documented default)
    #[arg(long)]
    max_n: Option<u64>,
}

#[derive(Args)]
struct TableArgs {
    #[command(subcommand)]
    kind: TableKind,
}

#[derive(Subcommand)]
enum TableKind {
    /// Bernoulli numbers B_0..B_max as "m, value"
    Bernoulli {
        #[arg(long)]
        max: usize,
    },
    /// Harmonic-sum prefix H_0..H_n for an index like "1" or "1,2"
    Mhs {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        index: String,
    },
    /// One coefficient b_{m,k}
    B {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        k: usize,
    },
    /// Lucas numbers L_0..L_max as "n, value"
    Lucas {
        #[arg(long)]
        max: u64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.cmd {
        Cmd::Verify(args) => cmd_verify(args),
        Cmd::Identities(args) => cmd_identities(args),
        Cmd::Table(args) => cmd_table(args),
    };
    match code {
        Ok(c) => c,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn parse_range(s: &str) -> Result<(u64, u64), String> {
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (
            a.parse::<u64>().map_err(|e| e.to_string())?,
            b.parse::<u64>().map_err(|e| e.to_string())?,
        ),
        None => {
            let p = s.parse::<u64>().map_err(|e| e.to_string())?;
            (p, p)
        }
    };
    if lo < 2 || lo > hi {
        return Err(format!("bad prime range {s}"));
    }
    if lo == hi && !is_prime(lo) {
        return Err(format!("{lo} is not prime"));
    }
    Ok((lo, hi))
}

fn achieved_str(a: &Option<Achieved>) -> String {
    match a {
        None => String::new(),
        Some(a) => a.to_string(),
    }
}

fn cmd_verify(args: VerifyArgs) -> Result<ExitCode, String> {
    let (lo, hi) = parse_range(&args.primes)?;
    let mut ids: Vec<ClaimId> = if args.claims == "all" {
        ClaimId::default_registry()
    } else {
        args.claims
            .split(',')
            .map(|s| ClaimId::from_str(s.trim()).map_err(|e| e.to_string()))
            .collect::<Result<_, _>>()?
    };
    if args.exclude_conjectural {
        ids.retain(|id| id.status() == ClaimStatus::Proven);
    }
    let jobs = std::env::var("CONGR_JOBS")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(args.jobs);
    let jobs = if jobs == 0 {
        std::thread::available_parallelism().map_or(1, |n| n.get())
    } else {
        jobs
    };
    let primes = sweep_primes(lo, hi);
    let backends: &[BackendKind] = match args.backend {
        BackendArg::Rational => &[BackendKind::Rational],
        BackendArg::Padic => &[BackendKind::Padic],
        BackendArg::Both => &[BackendKind::Rational, BackendKind::Padic],
    };
    let mut results: Vec<ClaimResult> = Vec::new();
    'outer: for &kind in backends {
        if args.fail_fast {
            // per-prime batches so a refutation stops further work promptly
            for &p in &primes {
                let batch = sweep(&ids, &[p], kind, args.guard, jobs);
                let refuted = batch.iter().any(|r| r.verdict == Verdict::Refuted);
                results.extend(batch);
                if refuted {
                    break 'outer;
                }
            }
        } else {
            results.extend(sweep(&ids, &primes, kind, args.guard, jobs));
        }
    }

    let out_path = std::env::var("CONGR_OUT").ok().or(args.out);
    let mut sink: Box<dyn Write> = match &out_path {
        Some(path) => Box::new(BufWriter::new(
            File::create(path).map_err(|e| format!("{path}: {e}"))?,
        )),
        None => Box::new(io::stdout().lock()),
    };
    write_report(&mut sink, &results, args.format).map_err(|e| e.to_string())?;
    drop(sink);

    let refuted = results.iter().filter(|r| r.verdict == Verdict::Refuted).count();
    let insufficient = results
        .iter()
        .filter(|r| r.verdict == Verdict::Insufficient)
        .count();
    let proven = results.iter().filter(|r| r.verdict == Verdict::Proven).count();
    eprintln!(
        "checked {} (claim, prime, backend) tasks: {proven} proven, {refuted} refuted, {insufficient} undecided",
        results.len()
    );
    Ok(if refuted > 0 {
        ExitCode::from(1)
    } else if insufficient > 0 {
        ExitCode::from(3)
    } else {
        ExitCode::SUCCESS
    })
}

fn write_report(
    sink: &mut dyn Write,
    results: &[ClaimResult],
    format: FormatArg,
) -> io::Result<()> {
    let counts = |v: Verdict| results.iter().filter(|r| r.verdict == v).count();
    match format {
        FormatArg::Json => {
            for r in results {
                let record = json!({
                    "record_type": "result",
                    "claim": r.id.name(),
                    "prime": r.p,
                    "status": r.verdict.name(),
                    "achieved_valuation": achieved_str(&r.achieved),
                    "required_valuation": r.required,
                    "backend": r.backend.name(),
                    "status_tag": match r.id.status() {
                        ClaimStatus::Proven => "proven",
                        ClaimStatus::Conjectural => "conjectural",
                    },
                    "witness": r.witness,
                    "millis": r.millis as u64,
                });
                writeln!(sink, "{record}")?;
            }
            let summary = json!({
                "record_type": "summary",
                "total": results.len(),
                "proven": counts(Verdict::Proven),
                "refuted": counts(Verdict::Refuted),
                "insufficient": counts(Verdict::Insufficient),
            });
            writeln!(sink, "{summary}")?;
        }
        FormatArg::Csv => {
            let mut w = csv::Writer::from_writer(sink);
            w.write_record([
                "record_type",
                "claim",
                "prime",
                "status",
                "achieved_valuation",
                "required_valuation",
                "backend",
                "status_tag",
                "witness",
                "millis",
            ])
            .map_err(io::Error::other)?;
            for r in results {
                w.write_record([
                    "result",
                    r.id.name(),
                    &r.p.to_string(),
                    r.verdict.name(),
                    &achieved_str(&r.achieved),
                    &r.required.to_string(),
                    r.backend.name(),
                    match r.id.status() {
                        ClaimStatus::Proven => "proven",
                        ClaimStatus::Conjectural => "conjectural",
                    },
                    r.witness.as_deref().unwrap_or(""),
                    &r.millis.to_string(),
                ])
                .map_err(io::Error::other)?;
            }
            w.write_record([
                "summary",
                "",
                "",
                &format!(
                    "total={};proven={};refuted={};insufficient={}",
                    results.len(),
                    counts(Verdict::Proven),
                    counts(Verdict::Refuted),
                    counts(Verdict::Insufficient)
                ),
                "",
                "",
                "",
                "",
                "",
                "",
            ])
            .map_err(io::Error::other)?;
            w.flush()?;
        }
    }
    Ok(())
}

fn cmd_identities(args: IdentityArgs) -> Result<ExitCode, String> {
    enum Task {
        Identity(IdentityId),
        Pair(WzPairId),
    }
    let tasks: Vec<Task> = if args.set == "all" {
        IdentityId::ALL
            .into_iter()
            .map(Task::Identity)
            .chain(WzPairId::ALL.into_iter().map(Task::Pair))
            .collect()
    } else if let Ok(id) = IdentityId::from_str(&args.set) {
        vec![Task::Identity(id)]
    } else if let Ok(id) = WzPairId::from_str(&args.set) {
        vec![Task::Pair(id)]
    } else {
        return Err(format!("unknown identity or pair id {}", args.set));
    };
    let mut failures = 0;
    for task in tasks {
        let (name, ok) = match task {
            Task::Identity(id) => {
                let max = args.max_n.map(|m| m.min(id.default_max()));
                (id.name(), identity_check(id, max).map_err(|e| e.to_string())?)
            }
            Task::Pair(id) => {
                let n = args.max_n.unwrap_or(60);
                let ok = if id.parametrized() {
                    let mut ok = true;
                    for a in p2_parameter_grid() {
                        ok &= telescoping_check(id, n, Some(&a)).map_err(|e| e.to_string())?;
                        ok &= summation_formula_check(id, n, Some(&a)).map_err(|e| e.to_string())?;
                    }
                    ok
                } else {
                    telescoping_check(id, n, None).map_err(|e| e.to_string())?
                        && summation_formula_check(id, n, None).map_err(|e| e.to_string())?
                };
                (id.name(), ok)
            }
        };
        println!("{name}: {}", if ok { "ok" } else { "FAILED" });
        if !ok {
            failures += 1;
        }
    }
    Ok(if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_table(args: TableArgs) -> Result<ExitCode, String> {
    match args.kind {
        TableKind::Bernoulli { max } => {
            let cache = BernoulliCache::with_max(max);
            for m in 0..=max {
                println!("{m}, {}", cache.get(m));
            }
        }
        TableKind::Mhs { n, index } => {
            let entries: Vec<i32> = index
                .split(',')
                .map(|s| s.trim().parse().map_err(|_| format!("bad index {index}")))
                .collect::<Result<_, _>>()?;
            let idx = MhsIndex::new(entries).map_err(|e| e.to_string())?;
            let backend = RationalBackend::new(2);
            let table = mhs_prefix_table(n, &idx, &backend).map_err(|e| e.to_string())?;
            for (i, v) in table.values.iter().enumerate() {
                println!("{i}, {v}");
            }
        }
        TableKind::B { m, k } => {
            let backend = RationalBackend::new(2);
            let table = b_tables(m.max(1), k, &backend).map_err(|e| e.to_string())?;
            println!("{}", table.b[m][k]);
        }
        TableKind::Lucas { max } => {
            let lucas = LucasNumbers::with_max(max);
            for n in 0..=max as usize {
                println!("{n}, {}", lucas.get(n));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}
