use std::fs;
use std::io::{self, Read, Write};
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use subpath_core::enumerate::{extremal_sweep, verify_theorems, write_report_csv, CensusGuard, CheckStatus, Invariant};
use subpath_core::families::FamilySpec;
use subpath_core::formulas::{reconcile, write_reconciliation_csv};
use subpath_core::indices::invariant_triple;
use subpath_core::paths::{pn_bruteforce, pn_cactus, WorkBudget};
use subpath_core::transforms::{apply_rule, Rule};
use subpath_core::{parse_edge_list, validate_cactus, Error, ExactCount, Graph};

/// Exact simple-path counts, cactus extremes and the rewrites between them.
#[derive(Debug, Parser)]
#[command(name = "subpath", version)]
struct Cli {
    /// Step cap for the exhaustive counters.
    #[arg(long, global = true, env = "SUBPATH_WORK_BUDGET", default_value_t = WorkBudget::DEFAULT_STEPS,
          value_parser = clap::value_parser!(u64).range(1..))]
    budget: u64,

    /// Cap on isomorphism classes per census layer.
    #[arg(long, global = true, env = "SUBPATH_CENSUS_GUARD", default_value_t = CensusGuard::DEFAULT_CLASSES,
          value_parser = positive_usize)]
    guard: usize,

    /// Worker threads for sweeps (defaults to all cores).
    #[arg(long, global = true, value_parser = positive_usize)]
    jobs: Option<usize>,

    /// Output format; each command has its own default.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Plain,
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Count simple paths (length-0 paths included).
    Pn {
        #[command(flatten)]
        source: Source,
        /// Always use the exhaustive counter.
        #[arg(long)]
        oracle: bool,
        /// Run both counters and fail if they disagree.
        #[arg(long, conflicts_with = "oracle")]
        check: bool,
    },
    /// Print a family member as an edge list.
    Family {
        #[command(flatten)]
        family: FamilyArgs,
    },
    /// Compare both closed forms for the pseudo triangle chain with the oracle.
    Reconcile {
        /// Vertex counts, `a..b` (inclusive) or a single value.
        #[arg(long, value_parser = parse_range)]
        n: RangeInclusive<usize>,
        /// Cycle counts, `a..b` (inclusive) or a single value.
        #[arg(long, value_parser = parse_range)]
        k: RangeInclusive<usize>,
    },
    /// Check the extremal claims on the full census of (n, k).
    Verify {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// Only report checks about this invariant.
        #[arg(long, value_parser = parse_invariant)]
        invariant: Option<Invariant>,
    },
    /// Rank every cactus of (n, k) by an invariant.
    Sweep {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, value_parser = parse_invariant, default_value = "pn")]
        invariant: Invariant,
        /// Write the CSV here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Apply one rewrite rule (first valid choice).
    Transform {
        #[arg(long, value_parser = parse_rule)]
        rule: Rule,
        /// Edge-list file, `-` for standard input.
        #[arg(long = "in", value_name = "FILE")]
        input: PathBuf,
    },
    /// pn, Wiener index and subtree number of a connected graph.
    Indices {
        /// Edge-list file, `-` for standard input.
        file: PathBuf,
    },
    /// Block structure of a graph.
    Profile {
        #[command(flatten)]
        source: Source,
    },
}

#[derive(Debug, Args)]
struct Source {
    /// Edge-list file, `-` for standard input.
    #[arg(long = "in", value_name = "FILE", conflicts_with = "name")]
    input: Option<PathBuf>,
    #[command(flatten)]
    family: OptionalFamily,
}

#[derive(Debug, Args)]
struct OptionalFamily {
    /// Build a named family member instead of reading a file.
    #[arg(long = "family", value_enum, id = "name")]
    name: Option<FamilyName>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    /// Cycle lengths for `chain`, comma separated.
    #[arg(long, value_delimiter = ',')]
    lengths: Vec<usize>,
}

#[derive(Debug, Args)]
struct FamilyArgs {
    #[arg(long = "family", value_enum)]
    name: FamilyName,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long, value_delimiter = ',')]
    lengths: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FamilyName {
    Path,
    Cycle,
    Star,
    Complete,
    Chain,
    Ptc,
    Pfg,
    Bsg,
}

fn positive_usize(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be positive".into()),
        Ok(v) => Ok(v),
        Err(e) => Err(e.to_string()),
    }
}

fn parse_invariant(s: &str) -> Result<Invariant, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_rule(s: &str) -> Result<Rule, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_range(s: &str) -> Result<RangeInclusive<usize>, String> {
    let num = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("{t:?}: {e}"));
    match s.split_once("..") {
        Some((a, b)) => Ok(num(a)?..=num(b.trim_start_matches('='))?),
        None => {
            let v = num(s)?;
            Ok(v..=v)
        }
    }
}

fn build_family(name: FamilyName, n: Option<usize>, k: Option<usize>, lengths: &[usize]) -> anyhow::Result<FamilySpec> {
    let need_n = || n.ok_or_else(|| anyhow!("--family {name:?} needs --n").context(Usage));
    let need_k = || k.ok_or_else(|| anyhow!("--family {name:?} needs --k").context(Usage));
    Ok(match name {
        FamilyName::Path => FamilySpec::Path { n: need_n()? },
        FamilyName::Cycle => FamilySpec::Cycle { n: need_n()? },
        FamilyName::Star => FamilySpec::Star { n: need_n()? },
        FamilyName::Complete => FamilySpec::Complete { n: need_n()? },
        FamilyName::Chain => FamilySpec::CycleChain { lengths: lengths.to_vec() },
        FamilyName::Ptc => FamilySpec::Ptc { n: need_n()?, k: need_k()? },
        FamilyName::Pfg => FamilySpec::Pfg { n: need_n()?, k: need_k()? },
        FamilyName::Bsg => FamilySpec::Bsg { n: need_n()?, k: need_k()? },
    })
}

/// Marks errors caused by bad invocations or inputs.
#[derive(Debug)]
struct Usage;

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("invalid input")
    }
}

/// Marks a completed run whose checks failed.
#[derive(Debug)]
struct VerificationFailed;

impl std::fmt::Display for VerificationFailed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("verification failed")
    }
}

fn read_graph(path: &Path) -> anyhow::Result<Graph> {
    let text = if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).context(Usage)?;
        s
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display())).context(Usage)?
    };
    Ok(parse_edge_list(&text).with_context(|| format!("parsing {}", path.display()))?)
}

fn load(source: &Source) -> anyhow::Result<Graph> {
    match (&source.input, source.family.name) {
        (Some(path), _) => read_graph(path),
        (None, Some(name)) => {
            let f = &source.family;
            Ok(build_family(name, f.n, f.k, &f.lengths)?.build()?)
        }
        (None, None) => Err(anyhow!("give --in FILE or --family NAME").context(Usage)),
    }
}

fn print_json<T: Serialize>(value: &T) -> anyhow::Result<()> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out)?;
    Ok(())
}

#[derive(Serialize)]
struct PnOutput {
    pn: Option<ExactCount>,
    method: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    fast: Option<ExactCount>,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle: Option<ExactCount>,
}

fn cmd_pn(cli: &Cli, source: &Source, oracle: bool, check: bool) -> anyhow::Result<()> {
    let g = load(source)?;
    let budget = WorkBudget(cli.budget);
    let fast = if oracle { None } else { validate_cactus(&g).ok().map(|p| pn_cactus(&p)) };
    let exhaustive = if oracle || check || fast.is_none() { Some(pn_bruteforce(&g, budget)?) } else { None };
    let format = cli.format.unwrap_or(Format::Plain);
    if check {
        match format {
            Format::Json => print_json(&PnOutput {
                pn: exhaustive.clone(),
                method: "check",
                fast: fast.clone(),
                oracle: exhaustive.clone(),
            })?,
            _ => {
                match &fast {
                    Some(f) => println!("fast {f}"),
                    None => println!("fast n/a (not a cactus)"),
                }
                println!("oracle {}", exhaustive.as_ref().expect("computed under --check"));
            }
        }
        if let (Some(f), Some(o)) = (&fast, &exhaustive) {
            if f != o {
                return Err(anyhow!("fast counter gave {f}, oracle gave {o}").context(VerificationFailed));
            }
        }
        return Ok(());
    }
    let (value, method) = match (&fast, &exhaustive) {
        (Some(f), _) => (f.clone(), "cactus"),
        (None, Some(o)) => (o.clone(), "exhaustive"),
        (None, None) => unreachable!("one counter always runs"),
    };
    match format {
        Format::Json => print_json(&PnOutput { pn: Some(value), method, fast: None, oracle: None }),
        _ => {
            println!("{value}");
            Ok(())
        }
    }
}

fn cmd_family(cli: &Cli, family: &FamilyArgs) -> anyhow::Result<()> {
    let spec = build_family(family.name, family.n, family.k, &family.lengths)?;
    let g = spec.build()?;
    match cli.format.unwrap_or(Format::Plain) {
        Format::Json => print_json(&g),
        _ => {
            print!("{}", g.to_edge_list());
            Ok(())
        }
    }
}

fn cmd_reconcile(cli: &Cli, n: &RangeInclusive<usize>, k: &RangeInclusive<usize>) -> anyhow::Result<()> {
    let rows = reconcile(n.clone(), k.clone(), WorkBudget(cli.budget))?;
    write_reconciliation_csv(&rows, io::stdout().lock())?;
    Ok(())
}

#[derive(Serialize)]
struct VerifyOutput<'a> {
    n: usize,
    k: usize,
    census_size: usize,
    passed: bool,
    checks: Vec<&'a subpath_core::enumerate::TheoremCheck>,
}

fn cmd_verify(cli: &Cli, n: usize, k: usize, invariant: Option<Invariant>) -> anyhow::Result<()> {
    let report = verify_theorems(n, k, CensusGuard(cli.guard), WorkBudget(cli.budget))?;
    let prefix = invariant.map(|i| format!("{i}_"));
    let checks: Vec<_> = report
        .checks
        .iter()
        .filter(|c| prefix.as_ref().map_or(true, |p| c.name.starts_with(p.as_str())))
        .collect();
    let passed = checks.iter().all(|c| c.status != CheckStatus::Fail);
    match cli.format.unwrap_or(Format::Json) {
        Format::Plain => {
            for c in &checks {
                let tag = match c.status {
                    CheckStatus::Pass => "pass",
                    CheckStatus::Fail => "FAIL",
                    CheckStatus::Skipped => "skip",
                };
                println!("{tag} {}: {}", c.name, c.detail);
            }
        }
        _ => print_json(&VerifyOutput { n, k, census_size: report.census_size, passed, checks })?,
    }
    if passed {
        Ok(())
    } else {
        Err(anyhow!("({n},{k}): a theorem check failed").context(VerificationFailed))
    }
}

#[derive(Serialize)]
struct SweepSummary {
    n: usize,
    k: usize,
    invariant: Invariant,
    census_size: usize,
    min_value: ExactCount,
    max_value: ExactCount,
    argmin: Vec<String>,
    argmax: Vec<String>,
}

fn cmd_sweep(cli: &Cli, n: usize, k: usize, invariant: Invariant, out: Option<&Path>) -> anyhow::Result<()> {
    let report = extremal_sweep(n, k, invariant, CensusGuard(cli.guard), WorkBudget(cli.budget))?;
    let summary = SweepSummary {
        n,
        k,
        invariant,
        census_size: report.census_size,
        min_value: report.min_value.clone(),
        max_value: report.max_value.clone(),
        argmin: report.argmin.iter().map(|k| k.to_hex()).collect(),
        argmax: report.argmax.iter().map(|k| k.to_hex()).collect(),
    };
    if let Some(path) = out {
        let file = fs::File::create(path).with_context(|| format!("creating {}", path.display()))?;
        write_report_csv(&report, io::BufWriter::new(file))?;
    }
    match (cli.format, out) {
        (Some(Format::Json), _) => print_json(&summary),
        (Some(Format::Plain), _) | (None, Some(_)) => {
            println!(
                "{invariant} over {} classes: min {} ({} classes), max {} ({} classes)",
                summary.census_size,
                summary.min_value,
                summary.argmin.len(),
                summary.max_value,
                summary.argmax.len()
            );
            Ok(())
        }
        (Some(Format::Csv), _) | (None, None) => {
            if out.is_none() {
                write_report_csv(&report, io::stdout().lock())?;
            }
            Ok(())
        }
    }
}

#[derive(Serialize)]
struct TransformOutput {
    rule: Rule,
    before: String,
    after: String,
    pn_before: ExactCount,
    pn_after: ExactCount,
    removed: Vec<(usize, usize)>,
    added: Vec<(usize, usize)>,
}

fn cmd_transform(cli: &Cli, rule: Rule, input: &Path) -> anyhow::Result<()> {
    let g = read_graph(input)?;
    let r = apply_rule(rule, &g)?;
    let out = TransformOutput {
        rule,
        before: r.before.to_edge_list(),
        after: r.after.to_edge_list(),
        pn_before: r.pn_before,
        pn_after: r.pn_after,
        removed: r.removed,
        added: r.added,
    };
    match cli.format.unwrap_or(Format::Json) {
        Format::Plain => {
            println!("pn {} -> {}", out.pn_before, out.pn_after);
            print!("{}", out.after);
            Ok(())
        }
        _ => print_json(&out),
    }
}

fn cmd_indices(cli: &Cli, file: &Path) -> anyhow::Result<()> {
    let g = read_graph(file)?;
    let t = invariant_triple(&g, WorkBudget(cli.budget))?;
    match cli.format.unwrap_or(Format::Json) {
        Format::Plain => {
            println!("pn {}\nwiener {}\nsubtrees {}", t.pn, t.wiener, t.subtrees);
            Ok(())
        }
        _ => print_json(&t),
    }
}

#[derive(Serialize)]
struct ProfileOutput {
    n: usize,
    m: usize,
    connected: bool,
    cactus: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    cycles: Option<usize>,
    bridges: Vec<(usize, usize)>,
    cycle_lengths: Vec<usize>,
    end_cycles: usize,
    intersection_vertices: Vec<usize>,
    chain: bool,
}

fn cmd_profile(cli: &Cli, source: &Source) -> anyhow::Result<()> {
    let g = load(source)?;
    let connected = g.is_connected();
    let bridges = if connected { subpath_core::find_bridges(&g)? } else { Vec::new() };
    let out = match validate_cactus(&g) {
        Ok(p) => ProfileOutput {
            n: g.n(),
            m: g.m(),
            connected,
            cactus: true,
            cycles: Some(p.k),
            bridges,
            cycle_lengths: p.cycle_blocks().map(|b| b.len()).collect(),
            end_cycles: p.end_cycles.len(),
            intersection_vertices: p.intersection_vertices.clone(),
            chain: p.is_cactus_chain(),
        },
        Err(_) => ProfileOutput {
            n: g.n(),
            m: g.m(),
            connected,
            cactus: false,
            cycles: None,
            bridges,
            cycle_lengths: Vec::new(),
            end_cycles: 0,
            intersection_vertices: Vec::new(),
            chain: false,
        },
    };
    match cli.format.unwrap_or(Format::Json) {
        Format::Plain => {
            println!("n {} m {} connected {} cactus {}", out.n, out.m, out.connected, out.cactus);
            if let Some(k) = out.cycles {
                println!("cycles {k} lengths {:?} chain {}", out.cycle_lengths, out.chain);
            }
            println!("bridges {:?}", out.bridges);
            Ok(())
        }
        _ => print_json(&out),
    }
}

fn run(cli: &Cli) -> anyhow::Result<()> {
    if let Some(jobs) = cli.jobs {
        rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global()?;
    }
    match &cli.command {
        Command::Pn { source, oracle, check } => cmd_pn(cli, source, *oracle, *check),
        Command::Family { family } => cmd_family(cli, family),
        Command::Reconcile { n, k } => cmd_reconcile(cli, n, k),
        Command::Verify { n, k, invariant } => cmd_verify(cli, *n, *k, *invariant),
        Command::Sweep { n, k, invariant, out } => cmd_sweep(cli, *n, *k, *invariant, out.as_deref()),
        Command::Transform { rule, input } => cmd_transform(cli, *rule, input),
        Command::Indices { file } => cmd_indices(cli, file),
        Command::Profile { source } => cmd_profile(cli, source),
    }
}

/// 2 for bad input, 3 for exhausted budgets or guards, 4 for failed checks.
fn exit_code(err: &anyhow::Error) -> u8 {
    if err.downcast_ref::<VerificationFailed>().is_some() {
        return 4;
    }
    if err.downcast_ref::<Usage>().is_some() {
        return 2;
    }
    match err.downcast_ref::<Error>() {
        Some(Error::BudgetExceeded { .. } | Error::CensusLimit { .. }) => 3,
        Some(Error::Contract(_)) => 1,
        Some(_) => 2,
        None => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
