use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::json;
use sha2::{Digest, Sha256};

use tpair::analysis::{check_counting_argument, classify_paths};
use tpair::bounds::bounds_report;
use tpair::constructions::{
    bipartite_one_factor_demand, canonical_triples, one_factor_demand, seeded_permutation,
    triangle_demand,
};
use tpair::graph::{verify_realization, DemandGraph, HostGraph};
use tpair::io;
use tpair::solver::{decide_realizable, SolveConfig, SolveStatus};
use tpair::sweep::{run_sweep, Family, SweepConfig};
use tpair::Error;

const EXIT_OK: u8 = 0;
const EXIT_NOT_REALIZABLE: u8 = 1;
const EXIT_EXHAUSTED: u8 = 2;
const EXIT_USAGE: u8 = 64;
const EXIT_DATA: u8 = 65;
const EXIT_INTERNAL: u8 = 70;

#[derive(Parser)]
#[command(name = "tpair", version, about = "Terminal-pairability toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a demand family in the .dem format.
    Gen(GenArgs),
    /// Decide whether a demand is realizable in a host.
    Solve(SolveArgs),
    /// Check a claimed realization.
    Verify(VerifyArgs),
    /// Compute cherry statistics and the counting assertions on a realization.
    Analyze(AnalyzeArgs),
    /// Closed-form counting bounds for the triangle family.
    Bounds(BoundsArgs),
    /// Sweep a family over an (n, q) grid.
    Sweep(SweepArgs),
}

#[derive(Args)]
struct GenArgs {
    #[arg(long)]
    family: String,
    #[arg(long)]
    n: usize,
    /// Edge multiplicity parameter; unused by bipartite_one_factor.
    #[arg(long)]
    q: Option<u32>,
    /// Apply a seeded vertex permutation to the generated demand.
    #[arg(long)]
    relabel_seed: Option<u64>,
    /// Output path; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SolveArgs {
    /// Host: a file path, `complete:N`, or `bipartite:A,B`.
    #[arg(long)]
    host: String,
    #[arg(long)]
    demand: PathBuf,
    #[arg(long)]
    max_path_len: Option<usize>,
    #[arg(long)]
    node_budget: Option<u64>,
    /// Disable the counting-based refutation and pruning.
    #[arg(long)]
    no_counting_prune: bool,
    /// Randomize the instance routing order.
    #[arg(long)]
    seed: Option<u64>,
    /// Write the certificate (PathSystem JSON) here when realizable.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    host: String,
    #[arg(long)]
    demand: PathBuf,
    #[arg(long)]
    paths: PathBuf,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct AnalyzeArgs {
    #[arg(long)]
    demand: PathBuf,
    #[arg(long)]
    paths: PathBuf,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct BoundsArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    q: usize,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long)]
    family: String,
    /// n values: `A..B` (inclusive) or a comma list.
    #[arg(long)]
    n: String,
    /// q values: `A..B` (inclusive) or a comma list. Not accepted for the
    /// bipartite family, which fixes q = n/3.
    #[arg(long)]
    q: Option<String>,
    #[arg(long)]
    node_budget: Option<u64>,
    #[arg(long)]
    max_path_len: Option<usize>,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[arg(long)]
    json: bool,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version requests are not usage errors.
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Gen(args) => cmd_gen(args),
        Command::Solve(args) => cmd_solve(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Analyze(args) => cmd_analyze(args),
        Command::Bounds(args) => cmd_bounds(args),
        Command::Sweep(args) => cmd_sweep(args),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::Parse { .. }
        | Error::Io(_)
        | Error::Json(_)
        | Error::DimensionMismatch { .. }
        | Error::HistogramMismatch { .. } => EXIT_DATA,
        Error::InternalInvariant(_) => EXIT_INTERNAL,
        _ => EXIT_USAGE,
    }
}

fn parse_host_spec(spec: &str) -> Result<HostGraph, Error> {
    if let Some(n) = spec.strip_prefix("complete:") {
        let n = n
            .parse()
            .map_err(|_| Error::InvalidInput(format!("bad host spec {spec:?}")))?;
        return Ok(HostGraph::complete(n));
    }
    if let Some(ab) = spec.strip_prefix("bipartite:") {
        let (a, b) = ab
            .split_once(',')
            .ok_or_else(|| Error::InvalidInput(format!("bad host spec {spec:?}")))?;
        let parse = |s: &str| {
            s.parse()
                .map_err(|_| Error::InvalidInput(format!("bad host spec {spec:?}")))
        };
        return Ok(HostGraph::complete_bipartite(parse(a)?, parse(b)?));
    }
    io::parse_host(&std::fs::read_to_string(spec)?)
}

fn read_demand(path: &PathBuf) -> Result<DemandGraph, Error> {
    io::parse_demand(&std::fs::read_to_string(path)?)
}

/// `A..B` inclusive, or a comma list of values.
fn parse_range(spec: &str) -> Result<Vec<usize>, Error> {
    let bad = || Error::InvalidInput(format!("bad range {spec:?}"));
    if let Some((a, b)) = spec.split_once("..") {
        let a: usize = a.trim().parse().map_err(|_| bad())?;
        let b: usize = b.trim().parse().map_err(|_| bad())?;
        if a > b {
            return Err(bad());
        }
        return Ok((a..=b).collect());
    }
    spec.split(',')
        .map(|t| t.trim().parse().map_err(|_| bad()))
        .collect()
}

fn emit(out: &Option<PathBuf>, content: &str) -> Result<(), Error> {
    match out {
        Some(path) => std::fs::write(path, content)?,
        None => print!("{content}"),
    }
    Ok(())
}

fn cmd_gen(args: GenArgs) -> Result<u8, Error> {
    let family: Family = args.family.parse()?;
    let need_q = || {
        args.q
            .ok_or_else(|| Error::InvalidInput("this family requires --q".into()))
    };
    let mut demand = match family {
        Family::Triangle => triangle_demand(args.n, need_q()?)?,
        Family::OneFactor => one_factor_demand(args.n, need_q()?)?,
        Family::BipartiteOneFactor => bipartite_one_factor_demand(args.n)?,
    };
    if let Some(seed) = args.relabel_seed {
        demand = demand.relabel(&seeded_permutation(demand.vertex_count(), seed))?;
    }
    emit(&args.out, &io::write_demand(&demand))?;
    Ok(EXIT_OK)
}

fn cmd_solve(args: SolveArgs) -> Result<u8, Error> {
    let host = parse_host_spec(&args.host)?;
    let demand = read_demand(&args.demand)?;
    let cfg = SolveConfig {
        max_path_len: args.max_path_len,
        node_budget: args.node_budget.unwrap_or(tpair::solver::DEFAULT_NODE_BUDGET),
        use_counting_prune: !args.no_counting_prune,
        randomize: args.seed,
    };
    let outcome = decide_realizable(&host, &demand, &cfg)?;
    let bounded = args
        .max_path_len
        .is_some_and(|k| k < host.vertex_count().saturating_sub(1));

    let (status_str, code, search_exhausted, refuted) = match &outcome.status {
        SolveStatus::Realizable(_) => ("realizable", EXIT_OK, false, false),
        SolveStatus::NotRealizable {
            search_exhausted,
            refuted_by_counting,
        } => (
            if bounded && !refuted_by_counting {
                "not_realizable_bounded"
            } else {
                "not_realizable"
            },
            EXIT_NOT_REALIZABLE,
            *search_exhausted,
            *refuted_by_counting,
        ),
        SolveStatus::Exhausted => ("exhausted", EXIT_EXHAUSTED, false, false),
    };

    let mut certificate_t = None;
    if let SolveStatus::Realizable(paths) = &outcome.status {
        let report = verify_realization(&host, &demand, paths);
        if !report.valid {
            return Err(Error::InternalInvariant(format!(
                "solver certificate fails verification: {:?}",
                report.violations
            )));
        }
        certificate_t = report.length_histogram.get(&2).copied();
        if let Some(out) = &args.out {
            std::fs::write(out, io::paths_to_json(&demand, paths)?)?;
        }
    }

    if args.json {
        let doc = json!({
            "schema": 1,
            "status": status_str,
            "search_exhausted": search_exhausted,
            "refuted_by_counting": refuted,
            "nodes_explored": outcome.nodes_explored,
            "elapsed_ms": outcome.elapsed.as_millis() as u64,
            "t_observed": certificate_t,
        });
        println!("{}", serde_json::to_string_pretty(&doc)?);
    } else {
        println!(
            "{status_str} (nodes explored: {}, {:.1} ms)",
            outcome.nodes_explored,
            outcome.elapsed.as_secs_f64() * 1e3
        );
    }
    Ok(code)
}

fn cmd_verify(args: VerifyArgs) -> Result<u8, Error> {
    let host = parse_host_spec(&args.host)?;
    let demand = read_demand(&args.demand)?;
    let paths = io::paths_from_json(&std::fs::read_to_string(&args.paths)?, &demand)?;
    let report = verify_realization(&host, &demand, &paths);
    if args.json {
        let doc = json!({ "schema": 1, "report": report });
        println!("{}", serde_json::to_string_pretty(&doc)?);
    } else if report.valid {
        println!("valid (length histogram: {:?})", report.length_histogram);
    } else {
        println!("invalid:");
        for v in &report.violations {
            println!("  {v:?}");
        }
    }
    Ok(if report.valid { EXIT_OK } else { EXIT_NOT_REALIZABLE })
}

fn cmd_analyze(args: AnalyzeArgs) -> Result<u8, Error> {
    let demand = read_demand(&args.demand)?;
    let paths = io::paths_from_json(&std::fs::read_to_string(&args.paths)?, &demand)?;
    let n = demand.vertex_count();
    let triples = canonical_triples(n)?;
    let stats = classify_paths(&demand, &triples, &paths)?;
    let q = demand.max_degree();
    let check = check_counting_argument(&stats, n, q);
    if args.json {
        let doc = json!({ "schema": 1, "stats": stats, "check": check });
        println!("{}", serde_json::to_string_pretty(&doc)?);
    } else {
        println!(
            "t = {}, t2_inter = {}, short = {}",
            stats.t, stats.t2_inter, stats.short_realizations
        );
        println!("alpha = {:?}", stats.alpha);
        println!("beta  = {:?}", stats.beta);
        if check.passed {
            println!("counting assertions: passed");
        } else {
            println!("counting assertions FAILED:");
            for f in &check.failed_assertions {
                println!("  {f}");
            }
        }
    }
    Ok(if check.passed { EXIT_OK } else { EXIT_INTERNAL })
}

fn cmd_bounds(args: BoundsArgs) -> Result<u8, Error> {
    let report = bounds_report(args.n, args.q)?;
    if args.json {
        let doc = json!({ "schema": 1, "bounds": report });
        println!("{}", serde_json::to_string_pretty(&doc)?);
    } else {
        println!("n = {}, q = {}", report.n, report.q);
        println!("e(D) = {}, host edges = {}", report.e_demand, report.host_edges);
        println!(
            "t_min = {}, sum(alpha+beta)_min = {}, per-triangle min = {}, pair capacity = {}",
            report.t_min, report.sum_alpha_beta_min, report.per_triangle_min, report.pair_cap_total
        );
        println!("feasible by counting: {}", report.feasible_by_counting);
        println!(
            "q_max triangle = {}, q_max one-factor = {}",
            report.q_max_triangle, report.q_max_one_factor
        );
        println!(
            "reference lines: cs {:.4}, tpc {}, bipartite {}..{}",
            report.reference_lines.cs_lower,
            report.reference_lines.tpc_lower,
            report.reference_lines.bip_lower,
            report.reference_lines.bip_upper
        );
    }
    Ok(EXIT_OK)
}

fn cmd_sweep(args: SweepArgs) -> Result<u8, Error> {
    let start = Instant::now();
    let family: Family = args.family.parse()?;
    let ns = parse_range(&args.n)?;
    let qs = match (family, &args.q) {
        (Family::BipartiteOneFactor, Some(_)) => {
            return Err(Error::InvalidInput(
                "the bipartite_one_factor family fixes q = n/3; drop --q".into(),
            ))
        }
        (Family::BipartiteOneFactor, None) => Vec::new(),
        (_, Some(spec)) => parse_range(spec)?,
        (_, None) => return Err(Error::InvalidInput("this family requires --q".into())),
    };
    let node_budget = args.node_budget.unwrap_or(tpair::solver::DEFAULT_NODE_BUDGET);
    let cfg = SweepConfig {
        node_budget,
        max_path_len: args.max_path_len,
        jobs: args.jobs,
    };
    let rows = run_sweep(family, &ns, &qs, &cfg)?;

    // The hash covers everything that determines the rows; job count is
    // excluded because output is independent of it.
    let mut hasher = Sha256::new();
    hasher.update(format!(
        "family={family};ns={ns:?};qs={qs:?};node_budget={node_budget};max_path_len={:?}",
        args.max_path_len
    ));
    let config_hash = format!("{:x}", hasher.finalize());

    if args.json {
        let doc = json!({
            "schema": 1,
            "metadata": {
                "version": env!("CARGO_PKG_VERSION"),
                "config_hash": config_hash,
                "wall_ms": start.elapsed().as_millis() as u64,
            },
            "rows": rows,
        });
        println!("{}", serde_json::to_string_pretty(&doc)?);
    } else {
        println!("{:<22} {:>4} {:>4} {:<24} {:>12} {:>6}", "family", "n", "q", "outcome", "nodes", "t");
        for r in &rows {
            println!(
                "{:<22} {:>4} {:>4} {:<24} {:>12} {:>6}",
                r.family.as_str(),
                r.n,
                r.q,
                format!("{:?}", r.outcome),
                r.nodes_explored,
                r.t_observed.map_or("-".to_string(), |t| t.to_string()),
            );
        }
    }
    Ok(EXIT_OK)
}
