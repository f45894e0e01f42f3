//! `fsroute`: routing, verification and exhaustive search for
//! friends-and-strangers graphs.
//!
//! Exit status: 0 success, 1 unreachable or failed verification, 2 usage
//! or input error, 3 a state or length budget was exceeded.

use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use fsroute::classify::{same_component, star_center};
use fsroute::config::{format_moves, parse_moves, replay_moves};
use fsroute::dense::{exchange_condition, solve_dense_3swap, solve_dense_exchange, three_halves_condition};
use fsroute::experiments::{
    bn_campaign, campaign_header, growth_csv, reversal_campaign, run_random_campaign, trials_csv, ExperimentConfig,
};
use fsroute::oracle::{self, components_csv, factorial, OracleOptions};
use fsroute::star::solve_star;
use fsroute::token::solve_kn;
use fsroute::{bench, Configuration, Error, Family, Graph, SolveReport};

#[derive(Parser)]
#[command(name = "fsroute", version, about = "Routing in friends-and-strangers graphs FS(X, Y)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Find a move sequence from one configuration to another.
    Solve(SolveArgs),
    /// Replay a move file and print the final configuration.
    Verify(VerifyArgs),
    /// Decide whether two configurations share a component.
    Classify(ClassifyArgs),
    /// Exhaustive search over all n! configurations.
    #[command(subcommand)]
    Oracle(OracleCommand),
    /// Randomized and growth campaigns.
    #[command(subcommand)]
    Experiment(ExperimentCommand),
    /// Measure gadget and router lengths and write a constants file.
    Bench(BenchArgs),
}

/// `X` and `Y`, each a family name or an edge-list file.
#[derive(Args)]
struct Hosts {
    /// Friendship graph: star, complete|kn, path, cycle, grid, bn,
    /// theta:i,j,k, or an edge-list file.
    #[arg(long)]
    x: String,
    /// Movement graph, same forms as --x.
    #[arg(long)]
    y: String,
    /// Vertex count when both graphs are families and no configuration
    /// file fixes it.
    #[arg(long)]
    n: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Strategy {
    Auto,
    Star,
    Kn,
    Dense3,
    DenseExchange,
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    hosts: Hosts,
    /// Start configuration file, `-` for standard input.
    #[arg(long)]
    from: String,
    /// Target configuration file, `-` for standard input.
    #[arg(long)]
    to: String,
    #[arg(long, value_enum, default_value = "auto")]
    strategy: Strategy,
    /// JSON lines: a summary object, then one object per move.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    hosts: Hosts,
    #[arg(long)]
    start: String,
    /// Move file: `moves k` then k lines `a b`.
    #[arg(long)]
    moves: String,
    /// Also require the replay to end here.
    #[arg(long)]
    target: Option<String>,
}

#[derive(Args)]
struct ClassifyArgs {
    #[command(flatten)]
    hosts: Hosts,
    #[arg(long)]
    a: String,
    #[arg(long)]
    b: String,
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum OracleCommand {
    /// Every component with its size and exact diameter.
    Components {
        #[command(flatten)]
        hosts: Hosts,
        #[arg(long)]
        json: bool,
    },
    /// Exact distance between two configurations.
    Distance {
        #[command(flatten)]
        hosts: Hosts,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        /// Print a shortest move sequence as well.
        #[arg(long)]
        path: bool,
    },
    /// Largest component diameter for each n, both graphs given as families.
    Sweep {
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        /// Sizes, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<usize>,
    },
}

#[derive(Subcommand)]
enum ExperimentCommand {
    /// Exchange routing on independent G(n,p) and G(n,q) pairs.
    Random {
        #[arg(long)]
        n: usize,
        /// Defaults to sqrt(c ln n / n).
        #[arg(long)]
        p: Option<f64>,
        #[arg(long)]
        q: Option<f64>,
        #[arg(long, default_value_t = 50)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long = "c-constant", default_value_t = 10.0)]
        c_constant: f64,
        #[arg(long)]
        json: bool,
    },
    /// Largest component diameter of FS(Star_n, B_n).
    Bn {
        #[arg(long, value_delimiter = ',', default_values_t = [6, 7, 8])]
        n: Vec<usize>,
    },
    /// Distance from the reversal to the identity in FS(K_n, Path_n).
    Reversal {
        #[arg(long, value_delimiter = ',', default_values_t = [4, 5, 6, 7])]
        n: Vec<usize>,
    },
}

#[derive(Args)]
struct BenchArgs {
    /// Instances per kind and size.
    #[arg(long, default_value_t = 1500)]
    samples: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Defaults to $FS_CONSTANTS, else ./constants.toml.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::StateBudgetExceeded { .. } | Error::UnsupportedInstance(_)) => 3,
        Some(Error::IllegalMove { .. } | Error::IllegalMoveAt { .. } | Error::Internal(_)) => 1,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("fsroute: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<u8> {
    let out = std::io::stdout();
    let mut out = out.lock();
    match cli.command {
        Command::Solve(a) => solve(a, &mut out),
        Command::Verify(a) => verify(a, &mut out),
        Command::Classify(a) => classify(a, &mut out),
        Command::Oracle(c) => oracle_cmd(c, &mut out),
        Command::Experiment(c) => experiment(c, &mut out),
        Command::Bench(a) => bench_cmd(a),
    }
}

fn read_input(path: &str) -> anyhow::Result<String> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        return Ok(s);
    }
    std::fs::read_to_string(path).with_context(|| format!("reading {path}"))
}

fn read_config(path: &str) -> anyhow::Result<Configuration> {
    Ok(read_input(path)?.parse::<Configuration>()?)
}

enum GraphSpec {
    Family(Family),
    Built(Graph),
}

fn graph_spec(s: &str) -> anyhow::Result<GraphSpec> {
    if Path::new(s).is_file() {
        return Ok(GraphSpec::Built(Graph::parse_edge_list(&read_input(s)?).map_err(Error::from)?));
    }
    s.parse::<Family>()
        .map(GraphSpec::Family)
        .map_err(|e| anyhow!(Error::from(e)).context(format!("{s:?} is neither a family nor a file")))
}

/// Builds `X` and `Y`; `hint` is the size of a configuration already read.
fn hosts(h: &Hosts, hint: Option<usize>) -> anyhow::Result<(Graph, Graph)> {
    let (x, y) = (graph_spec(&h.x)?, graph_spec(&h.y)?);
    let fixed = [&x, &y].into_iter().find_map(|g| match g {
        GraphSpec::Built(g) => Some(g.n()),
        GraphSpec::Family(Family::Theta(t)) => Some(t.vertex_count()),
        GraphSpec::Family(_) => None,
    });
    let n = fixed.or(h.n).or(hint).ok_or_else(|| anyhow!(Error::Parse("cannot tell n; pass --n".into())))?;
    let build = |g: GraphSpec| -> anyhow::Result<Graph> {
        Ok(match g {
            GraphSpec::Built(g) => g,
            GraphSpec::Family(f) => f.build(n).map_err(Error::from)?,
        })
    };
    let (x, y) = (build(x)?, build(y)?);
    if x.n() != y.n() {
        return Err(Error::InvalidConfiguration(format!("X has {} vertices and Y has {}", x.n(), y.n())).into());
    }
    Ok((x, y))
}

fn relabel_center(c: &Configuration, center: usize) -> Result<Configuration, Error> {
    let mut p = c.placement().to_vec();
    p.swap(0, center);
    Configuration::new(p)
}

/// Star solver for any star `X`: persons 0 and the center trade labels,
/// which leaves the position pairs of every move unchanged.
fn run_star(x: &Graph, y: &Graph, from: &Configuration, to: &Configuration) -> Result<SolveReport, Error> {
    let c = star_center(x).ok_or_else(|| Error::precondition("X is not a star"))?;
    let mut r = solve_star(y, &relabel_center(from, c)?, &relabel_center(to, c)?)?;
    if let Some(seq) = r.sequence.as_mut() {
        seq.start = from.clone();
    }
    Ok(r)
}

fn is_complete(x: &Graph) -> bool {
    fsroute::classify::is_complete(x)
}

/// `auto`: star, then complete, then the two degree conditions, then the
/// oracle while `n!` fits its pair budget.
fn pick(x: &Graph, y: &Graph) -> &'static str {
    if star_center(x).is_some() {
        "star"
    } else if is_complete(x) {
        "kn"
    } else if x.is_connected() && y.is_connected() && three_halves_condition(x, y) {
        "dense3"
    } else if x.is_connected() && y.is_connected() && exchange_condition(x, y) {
        "dense-exchange"
    } else {
        "oracle"
    }
}

fn solve(a: SolveArgs, out: &mut impl Write) -> anyhow::Result<u8> {
    let from = read_config(&a.from)?;
    let to = read_config(&a.to)?;
    let (x, y) = hosts(&a.hosts, Some(from.n()))?;
    if from.n() != x.n() || to.n() != x.n() {
        return Err(Error::InvalidConfiguration("configuration size must match the graphs".into()).into());
    }
    let id = match a.strategy {
        Strategy::Auto => pick(&x, &y),
        Strategy::Star => "star",
        Strategy::Kn => "kn",
        Strategy::Dense3 => "dense3",
        Strategy::DenseExchange => "dense-exchange",
    };
    let report = match id {
        "star" => run_star(&x, &y, &from, &to)?,
        "kn" => {
            if !is_complete(&x) {
                return Err(Error::precondition("strategy kn needs X = K_n").into());
            }
            solve_kn(&y, &from, &to)?
        }
        "dense3" => solve_dense_3swap(&x, &y, &from, &to)?,
        "dense-exchange" => solve_dense_exchange(&x, &y, &from, &to)?,
        _ => {
            let opts = OracleOptions::from_env();
            if factorial(x.n()) > opts.pair_budget {
                return Err(Error::UnsupportedInstance(format!(
                    "no router applies and n = {} is beyond the oracle budget",
                    x.n()
                ))
                .into());
            }
            let bound = factorial(x.n()) - 1;
            match oracle::shortest_path(&x, &y, &from, &to, &opts)? {
                Some(m) => SolveReport::found(from.clone(), m, bound, "oracle"),
                None => SolveReport::unreachable(bound, "oracle"),
            }
        }
    };
    if report.reachable && replay_moves(&x, &y, &from, report.moves())? != to {
        return Err(Error::internal(format!("{} returned a sequence that misses the target", report.solver_id)).into());
    }
    write_report(out, &report, a.json)?;
    if !report.reachable {
        eprintln!("fsroute: target is not reachable ({})", report.solver_id);
        return Ok(1);
    }
    if report.length as u64 > report.bound_budget {
        eprintln!("fsroute: length {} exceeds the budget {}", report.length, report.bound_budget);
        return Ok(3);
    }
    Ok(0)
}

fn write_report(out: &mut impl Write, r: &SolveReport, json: bool) -> anyhow::Result<()> {
    if json {
        let start = r.sequence.as_ref().map(|s| s.start.placement().to_vec());
        let head = json!({
            "solver_id": r.solver_id,
            "reachable": r.reachable,
            "length": r.length,
            "bound_budget": r.bound_budget,
            "start": start,
        });
        writeln!(out, "{head}")?;
        for (i, m) in r.moves().iter().enumerate() {
            writeln!(out, "{}", json!({ "index": i, "a": m.a, "b": m.b }))?;
        }
    } else {
        writeln!(out, "# solver={} reachable={} length={} budget={}", r.solver_id, r.reachable, r.length, r.bound_budget)?;
        if r.reachable {
            write!(out, "{}", format_moves(r.moves()))?;
        }
    }
    Ok(())
}

fn verify(a: VerifyArgs, out: &mut impl Write) -> anyhow::Result<u8> {
    let start = read_config(&a.start)?;
    let moves = parse_moves(&read_input(&a.moves)?)?;
    let (x, y) = hosts(&a.hosts, Some(start.n()))?;
    if start.n() != x.n() {
        return Err(Error::InvalidConfiguration("configuration size must match the graphs".into()).into());
    }
    let end = match replay_moves(&x, &y, &start, &moves) {
        Ok(end) => end,
        Err(Error::IllegalMoveAt { index, source }) => {
            eprintln!("fsroute: move {index} is illegal: {source}");
            writeln!(out, "illegal {index}")?;
            return Ok(1);
        }
        Err(e) => return Err(e.into()),
    };
    writeln!(out, "{end}")?;
    if let Some(t) = &a.target {
        if read_config(t)? != end {
            eprintln!("fsroute: replay does not end at the target");
            return Ok(1);
        }
    }
    Ok(0)
}

fn classify(a: ClassifyArgs, out: &mut impl Write) -> anyhow::Result<u8> {
    let ca = read_config(&a.a)?;
    let cb = read_config(&a.b)?;
    let (x, y) = hosts(&a.hosts, Some(ca.n()))?;
    let c = same_component(&x, &y, &ca, &cb, &OracleOptions::from_env())?;
    if a.json {
        writeln!(out, "{}", serde_json::to_string(&c)?)?;
    } else {
        writeln!(out, "same={} certificate={}", c.same, c.certificate.as_str())?;
    }
    Ok(if c.same { 0 } else { 1 })
}

fn oracle_cmd(c: OracleCommand, out: &mut impl Write) -> anyhow::Result<u8> {
    let opts = OracleOptions::from_env();
    match c {
        OracleCommand::Components { hosts: h, json } => {
            let (x, y) = hosts(&h, None)?;
            let comps = oracle::components(&x, &y, &opts)?;
            if json {
                for c in &comps {
                    writeln!(out, "{}", json!({ "n": x.n(), "component_id": c.component_id, "size": c.size, "diameter": c.diameter }))?;
                }
            } else {
                write!(out, "{}", components_csv(x.n(), &comps))?;
            }
            Ok(0)
        }
        OracleCommand::Distance { hosts: h, a, b, path } => {
            let ca = read_config(&a)?;
            let cb = read_config(&b)?;
            let (x, y) = hosts(&h, Some(ca.n()))?;
            match oracle::shortest_path(&x, &y, &ca, &cb, &opts)? {
                Some(m) => {
                    writeln!(out, "distance {}", m.len())?;
                    if path {
                        write!(out, "{}", format_moves(&m))?;
                    }
                    Ok(0)
                }
                None => {
                    writeln!(out, "unreachable")?;
                    Ok(1)
                }
            }
        }
        OracleCommand::Sweep { x, y, n } => {
            let (fx, fy) = (x.parse::<Family>().map_err(Error::from)?, y.parse::<Family>().map_err(Error::from)?);
            let rows = oracle::diameter_sweep(|n| Ok((fx.build(n)?, fy.build(n)?)), n, &opts)?;
            write!(out, "{}", growth_csv("max_diameter", &rows))?;
            Ok(0)
        }
    }
}

fn experiment(c: ExperimentCommand, out: &mut impl Write) -> anyhow::Result<u8> {
    let opts = OracleOptions::from_env();
    match c {
        ExperimentCommand::Random { n, p, q, trials, seed, c_constant, json } => {
            let mut cfg = ExperimentConfig::relaxed(n, c_constant, trials, seed);
            let relaxed = p.is_none() && q.is_none();
            cfg.p = p.unwrap_or(cfg.p);
            cfg.q = q.unwrap_or(cfg.q);
            let records = run_random_campaign(&cfg)?;
            writeln!(out, "{}", campaign_header(&cfg, relaxed.then_some(c_constant)))?;
            if json {
                for (i, r) in records.iter().enumerate() {
                    let mut v = serde_json::to_value(r)?;
                    v["trial"] = json!(i);
                    writeln!(out, "{v}")?;
                }
            } else {
                write!(out, "{}", trials_csv(&records))?;
            }
            Ok(0)
        }
        ExperimentCommand::Bn { n } => {
            writeln!(out, "# FS(Star_n, B_n), exact by exhaustive search")?;
            write!(out, "{}", growth_csv("max_diameter", &bn_campaign(n, &opts)?))?;
            Ok(0)
        }
        ExperimentCommand::Reversal { n } => {
            writeln!(out, "# FS(K_n, Path_n), reversal to identity, exact by exhaustive search")?;
            write!(out, "{}", growth_csv("distance", &reversal_campaign(n, &opts)?))?;
            Ok(0)
        }
    }
}

fn bench_cmd(a: BenchArgs) -> anyhow::Result<u8> {
    let obs = bench::measure(a.seed, a.samples)?;
    let c = obs.constants();
    let path = a
        .out
        .or_else(|| std::env::var_os("FS_CONSTANTS").map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("constants.toml"));
    std::fs::write(&path, bench::constants_file(&c, a.seed, a.samples)).with_context(|| format!("writing {}", path.display()))?;
    eprint!("{}", obs.report());
    eprintln!("wrote {}", path.display());
    Ok(0)
}
