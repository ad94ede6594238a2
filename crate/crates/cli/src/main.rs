//! `chipfire`, the command-line front end. Reports are JSON on stdout;
//! diagnostics go to stderr.
//!
//! Exit codes: 0 success, 1 usage error, 2 invalid input, 3 budget exceeded,
//! 4 reproduction mismatch.

mod report;
mod repro;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use chipfire::format::{parse_divisor, parse_graph, write_divisor, write_dot, write_graph};
use chipfire::{
    alpha_r, bipartite_extension, bound_preconditions, bramble_order_r, complete,
    complete_bipartite, crown, cycle, detect_bipartition, first_failing_debt, generalized_banana,
    gonality, independence_divisor, mdba, mf_gonality, path, q_reduce, rank, rank_at_least,
    scramble_order, treewidth_r_lower_bound, upper_bound, verify_bramble, verify_scramble,
    BipartitionLabels, CertificateFile, CertificateKind, Divisor, Multigraph, SearchOptions,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use report::{emit, envelope, take_elapsed, Inputs};

const EXIT_USAGE: u8 = 1;
const EXIT_INVALID: u8 = 2;
const EXIT_BUDGET: u8 = 3;
const EXIT_MISMATCH: u8 = 4;

/// Largest graph on which `cert` cross-checks against exact gonality.
const CERT_EXACT_MAX_N: usize = 10;

#[derive(Debug)]
pub struct Failure {
    code: u8,
    msg: String,
}

impl Failure {
    pub fn usage(msg: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            msg: msg.into(),
        }
    }

    fn invalid(msg: impl Into<String>) -> Self {
        Failure {
            code: EXIT_INVALID,
            msg: msg.into(),
        }
    }
}

impl From<chipfire::Error> for Failure {
    fn from(e: chipfire::Error) -> Self {
        Failure::invalid(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::invalid(e.to_string())
    }
}

#[derive(Parser)]
#[command(
    name = "chipfire",
    version,
    about = "Exact divisor theory on multigraphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a graph from a standard family.
    Gen(GenArgs),
    /// Build the bipartite extension of a simple bipartite graph.
    Extend(ExtendArgs),
    /// Baker-Norine rank of a divisor, or a check against a target rank.
    Rank(RankArgs),
    /// Burn a divisor to an effective equivalent, or q-reduce it.
    Reduce(ReduceArgs),
    /// Exact r-th gonality by exhaustive search.
    Gon(GonArgs),
    /// Exact multiplicity-free gonality; same as `gon --mf`.
    Mfgon(GonArgs),
    /// Distance-r independence number with a witness set.
    Alpha(GraphR),
    /// The independence upper bound and its divisor.
    Bound(GraphR),
    /// Verify a scramble or bramble certificate and compute its order.
    Cert(CertArgs),
    /// Run a named reproduction and compare with the recorded value.
    Repro(ReproArgs),
}

#[derive(Args)]
struct GenArgs {
    family: Family,
    /// Family parameters: `cycle N`, `path N`, `complete N`, `kbipartite A B`,
    /// `crown 2N`, `banana N M1 .. M(N-1)`.
    #[arg(required = true)]
    params: Vec<u64>,
    /// Emit Graphviz instead of the edge-list format.
    #[arg(long)]
    dot: bool,
    #[arg(short, long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Cycle,
    Path,
    Complete,
    Kbipartite,
    Crown,
    Banana,
}

impl Family {
    fn name(self) -> &'static str {
        match self {
            Family::Cycle => "cycle",
            Family::Path => "path",
            Family::Complete => "complete",
            Family::Kbipartite => "kbipartite",
            Family::Crown => "crown",
            Family::Banana => "banana",
        }
    }
}

#[derive(Args)]
struct GraphArg {
    /// Graph file: `n N` then one `u v m` line per vertex pair.
    #[arg(short, long)]
    graph: PathBuf,
}

#[derive(Args)]
struct ExtendArgs {
    #[command(flatten)]
    graph: GraphArg,
    /// Side labels (1 or 2 per vertex); detected when omitted.
    #[arg(long)]
    parts: Option<PathBuf>,
    /// Write the extension graph here and the report to stdout.
    #[arg(short, long)]
    out: Option<PathBuf>,
    /// Write the role of every extension vertex as JSON.
    #[arg(long)]
    roles: Option<PathBuf>,
}

#[derive(Args)]
struct RankArgs {
    #[command(flatten)]
    graph: GraphArg,
    /// Divisor as a quoted integer list, or a file holding one.
    #[arg(short, long)]
    divisor: String,
    /// Only decide whether the rank is at least this value.
    #[arg(short = 'r', long = "rank-target", value_parser = clap::value_parser!(u32).range(0..))]
    rank_target: Option<u32>,
    #[arg(short, long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ReduceArgs {
    #[command(flatten)]
    graph: GraphArg,
    #[arg(short, long)]
    divisor: String,
    /// q-reduce with respect to this vertex instead of burning.
    #[arg(short = 'q', long = "reduce-vertex")]
    reduce_vertex: Option<usize>,
    #[arg(short, long)]
    out: Option<PathBuf>,
}

#[derive(Args, Clone)]
struct SearchArgs {
    /// Wall-clock budget in seconds.
    #[arg(long, value_parser = parse_budget)]
    budget: Option<Duration>,
    /// Worker threads.
    #[arg(long, env = "CHIPFIRE_THREADS", value_parser = clap::value_parser!(u64).range(1..))]
    threads: Option<u64>,
}

impl SearchArgs {
    fn options(&self, start_degree: Option<u32>) -> SearchOptions {
        SearchOptions {
            budget: self.budget,
            threads: self.threads.map(|t| t as usize),
            start_degree,
        }
    }
}

#[derive(Args)]
struct GonArgs {
    #[command(flatten)]
    graph: GraphArg,
    /// Target rank; defaults to 1, or 2 with `--mf`.
    #[arg(short = 'r', long = "rank-target", value_parser = clap::value_parser!(u32).range(1..))]
    rank_target: Option<u32>,
    /// Restrict to multiplicity-free divisors.
    #[arg(long)]
    mf: bool,
    /// First degree to try; a degree that already has a witness is followed
    /// downward until one is exhausted.
    #[arg(long)]
    start_degree: Option<u32>,
    #[command(flatten)]
    search: SearchArgs,
    #[arg(short, long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct GraphR {
    #[command(flatten)]
    graph: GraphArg,
    #[arg(short = 'r', long = "rank-target", value_parser = clap::value_parser!(u32).range(1..))]
    rank_target: u32,
    #[arg(short, long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CertArgs {
    #[command(flatten)]
    graph: GraphArg,
    /// Certificate JSON: {"kind": "scramble"|"bramble", "r": R, "sets": [[..], ..]}.
    #[arg(short, long)]
    cert: PathBuf,
    #[command(flatten)]
    search: SearchArgs,
    #[arg(short, long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ReproArgs {
    /// Target name; see `--list`.
    #[arg(required_unless_present_any = ["list", "all"])]
    name: Option<String>,
    /// List the available targets.
    #[arg(long, conflicts_with = "all")]
    list: bool,
    /// Run every target.
    #[arg(long)]
    all: bool,
    /// Read targets from this TOML file instead of the built-in set.
    #[arg(long)]
    fixture: Option<PathBuf>,
    #[command(flatten)]
    search: SearchArgs,
    #[arg(short, long)]
    out: Option<PathBuf>,
}

fn parse_budget(s: &str) -> Result<Duration, String> {
    let secs: f64 = s
        .parse()
        .map_err(|_| format!("`{s}` is not a number of seconds"))?;
    if secs.is_finite() && secs > 0.0 {
        Ok(Duration::from_secs_f64(secs))
    } else {
        Err("budget must be positive".into())
    }
}

fn to_u32(x: u64) -> Result<u32, Failure> {
    u32::try_from(x).map_err(|_| Failure::usage(format!("{x} is too large")))
}

fn to_usize(x: u64) -> Result<usize, Failure> {
    usize::try_from(x).map_err(|_| Failure::usage(format!("{x} is too large")))
}

pub fn build_family(family: &str, params: &[u64]) -> Result<Multigraph, Failure> {
    let want = |k: usize| -> Result<(), Failure> {
        if params.len() == k {
            Ok(())
        } else {
            Err(Failure::usage(format!(
                "{family} takes {k} parameter(s), got {}",
                params.len()
            )))
        }
    };
    let g = match family {
        "cycle" => {
            want(1)?;
            cycle(to_usize(params[0])?)?
        }
        "path" => {
            want(1)?;
            path(to_usize(params[0])?)?
        }
        "complete" => {
            want(1)?;
            complete(to_usize(params[0])?)?
        }
        "kbipartite" => {
            want(2)?;
            complete_bipartite(to_usize(params[0])?, to_usize(params[1])?)?
        }
        "crown" => {
            want(1)?;
            crown(to_usize(params[0])?)?
        }
        "banana" => {
            let (&n, mults) = params
                .split_first()
                .ok_or_else(|| Failure::usage("banana needs N and N-1 multiplicities"))?;
            let mults = mults
                .iter()
                .map(|&m| to_u32(m))
                .collect::<Result<Vec<_>, _>>()?;
            generalized_banana(to_usize(n)?, &mults)?
        }
        other => return Err(Failure::usage(format!("unknown family `{other}`"))),
    };
    Ok(g)
}

fn read_input(path: &Path) -> Result<Vec<u8>, Failure> {
    fs::read(path).map_err(|e| Failure::invalid(format!("{}: {e}", path.display())))
}

fn load_graph(arg: &GraphArg, inputs: &mut Inputs) -> Result<Multigraph, Failure> {
    let bytes = read_input(&arg.graph)?;
    inputs.add("graph", &bytes);
    let text = String::from_utf8(bytes)
        .map_err(|_| Failure::invalid(format!("{}: not UTF-8", arg.graph.display())))?;
    parse_graph(&text).map_err(|e| Failure::invalid(format!("{}: {e}", arg.graph.display())))
}

/// An existing file is read; anything else is parsed as an inline list.
fn load_divisor(g: &Multigraph, arg: &str, inputs: &mut Inputs) -> Result<Divisor, Failure> {
    let text = if Path::new(arg).is_file() {
        String::from_utf8(read_input(Path::new(arg))?)
            .map_err(|_| Failure::invalid(format!("{arg}: not UTF-8")))?
    } else {
        arg.to_string()
    };
    let d = parse_divisor(&text)?;
    if d.len() != g.vertex_count() {
        return Err(Failure::invalid(format!(
            "divisor has {} entries, graph has {} vertices",
            d.len(),
            g.vertex_count()
        )));
    }
    inputs.add("divisor", write_divisor(&d).as_bytes());
    Ok(d)
}

struct Done {
    command: &'static str,
    inputs: Inputs,
    result: Value,
    timing: Map<String, Value>,
    out: Option<PathBuf>,
    code: u8,
}

impl Done {
    fn ok(command: &'static str, inputs: Inputs, result: Value, out: Option<PathBuf>) -> Self {
        Done {
            command,
            inputs,
            result,
            timing: Map::new(),
            out,
            code: 0,
        }
    }
}

fn cmd_gen(a: GenArgs) -> Result<Option<Done>, Failure> {
    let g = build_family(a.family.name(), &a.params)?;
    let text = if a.dot {
        write_dot(&g)
    } else {
        write_graph(&g)
    };
    match a.out {
        None => {
            print!("{text}");
            Ok(None)
        }
        Some(path) => {
            fs::write(&path, &text)?;
            let mut inputs = Inputs::default();
            inputs.add("graph", text.as_bytes());
            let result = json!({
                "family": a.family.name(),
                "params": a.params,
                "vertices": g.vertex_count(),
                "edges": g.edge_count(),
                "file": path.display().to_string(),
            });
            Ok(Some(Done::ok("gen", inputs, result, None)))
        }
    }
}

fn cmd_extend(a: ExtendArgs) -> Result<Option<Done>, Failure> {
    let mut inputs = Inputs::default();
    let g = load_graph(&a.graph, &mut inputs)?;
    let labels = match &a.parts {
        Some(p) => {
            let bytes = read_input(p)?;
            inputs.add("parts", &bytes);
            let text = String::from_utf8_lossy(&bytes);
            let part = text
                .split_whitespace()
                .filter(|t| !t.starts_with('#'))
                .map(|t| t.parse::<u8>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|_| Failure::invalid(format!("{}: labels must be 1 or 2", p.display())))?;
            BipartitionLabels::new(&g, part)?
        }
        None => detect_bipartition(&g)?,
    };
    let ext = bipartite_extension(&g, &labels)?;
    let text = write_graph(&ext.graph);
    if let Some(path) = &a.roles {
        let roles = serde_json::to_string_pretty(&ext.roles).expect("roles serialize") + "\n";
        fs::write(path, roles)?;
    }
    match a.out {
        None => {
            print!("{text}");
            Ok(None)
        }
        Some(path) => {
            fs::write(&path, &text)?;
            let result = json!({
                "vertices": ext.graph.vertex_count(),
                "edges": ext.graph.edge_count(),
                "parts": labels.as_slice(),
                "roles": ext.roles,
                "file": path.display().to_string(),
            });
            Ok(Some(Done::ok("extend", inputs, result, None)))
        }
    }
}

fn cmd_rank(a: RankArgs) -> Result<Done, Failure> {
    let mut inputs = Inputs::default();
    let g = load_graph(&a.graph, &mut inputs)?;
    let d = load_divisor(&g, &a.divisor, &mut inputs)?;
    let result = match a.rank_target {
        None => json!({ "degree": d.degree(), "rank": rank(&g, &d)? }),
        Some(r) => {
            let fail = first_failing_debt(&g, &d, r)?;
            json!({
                "degree": d.degree(),
                "target": r,
                "rank_at_least": fail.is_none(),
                "failing_debt": fail,
            })
        }
    };
    Ok(Done::ok("rank", inputs, result, a.out))
}

fn cmd_reduce(a: ReduceArgs) -> Result<Done, Failure> {
    let mut inputs = Inputs::default();
    let g = load_graph(&a.graph, &mut inputs)?;
    let d = load_divisor(&g, &a.divisor, &mut inputs)?;
    let result = match a.reduce_vertex {
        Some(q) => {
            if q >= g.vertex_count() {
                return Err(Failure::invalid(format!(
                    "vertex {q} out of range for {} vertices",
                    g.vertex_count()
                )));
            }
            let (red, script) = q_reduce(&g, &d, q)?;
            json!({
                "q": q,
                "reduced": red,
                "script": script,
                "winnable": red[q] >= 0,
            })
        }
        None => serde_json::to_value(mdba(&g, &d)?).expect("burn reports serialize"),
    };
    Ok(Done::ok("reduce", inputs, result, a.out))
}

fn cmd_gon(a: GonArgs, mf: bool) -> Result<Done, Failure> {
    let mut inputs = Inputs::default();
    let g = load_graph(&a.graph, &mut inputs)?;
    let mf = mf || a.mf;
    let r = a.rank_target.unwrap_or(if mf { 2 } else { 1 });
    let opts = a.search.options(a.start_degree);
    let rep = if mf {
        mf_gonality(&g, r, &opts)?
    } else {
        gonality(&g, r, &opts)?
    };
    let exceeded = rep.budget_exceeded;
    let mut result = serde_json::to_value(&rep).expect("search reports serialize");
    let mut timing = Map::new();
    if let Some(ms) = take_elapsed(&mut result) {
        timing.insert("search_ms".into(), ms);
    }
    Ok(Done {
        command: if mf { "mfgon" } else { "gon" },
        inputs,
        result,
        timing,
        out: a.out,
        code: if exceeded { EXIT_BUDGET } else { 0 },
    })
}

fn cmd_alpha(a: GraphR) -> Result<Done, Failure> {
    let mut inputs = Inputs::default();
    let g = load_graph(&a.graph, &mut inputs)?;
    let rep = alpha_r(&g, a.rank_target)?;
    Ok(Done::ok(
        "alpha",
        inputs,
        serde_json::to_value(rep).unwrap(),
        a.out,
    ))
}

fn cmd_bound(a: GraphR) -> Result<Done, Failure> {
    let mut inputs = Inputs::default();
    let g = load_graph(&a.graph, &mut inputs)?;
    let r = a.rank_target;
    if !bound_preconditions(&g, r) {
        return Err(Failure::invalid(format!(
            "preconditions fail for r = {r}: minimum valence {}, girth {}",
            g.min_valence(),
            serde_json::to_string(&g.girth()).unwrap()
        )));
    }
    let alpha = alpha_r(&g, r)?;
    let d = independence_divisor(&g, r)?;
    let result = json!({
        "r": r,
        "vertices": g.vertex_count(),
        "alpha": alpha.alpha,
        "independent_set": alpha.witness,
        "upper_bound": upper_bound(&g, r)?,
        "divisor": d,
        "divisor_rank_at_least_r": rank_at_least(&g, &d, r)?,
    });
    Ok(Done::ok("bound", inputs, result, a.out))
}

fn cmd_cert(a: CertArgs) -> Result<Done, Failure> {
    let mut inputs = Inputs::default();
    let g = load_graph(&a.graph, &mut inputs)?;
    let bytes = read_input(&a.cert)?;
    inputs.add("cert", &bytes);
    let text = String::from_utf8(bytes)
        .map_err(|_| Failure::invalid(format!("{}: not UTF-8", a.cert.display())))?;
    let file = CertificateFile::from_json(&text)?;
    let n = g.vertex_count();
    let scramble = file.to_scramble(n)?;
    let mut result = Map::new();
    result.insert("kind".into(), json!(file.kind));
    result.insert("r".into(), json!(file.r));
    let verdict = match file.kind {
        CertificateKind::Scramble => verify_scramble(&g, &scramble),
        CertificateKind::Bramble => verify_bramble(&g, &file.to_bramble(n)?),
    };
    result.insert("verdict".into(), json!(verdict));
    if !verdict.valid {
        return Err(Failure::invalid(format!(
            "invalid {}: {}",
            serde_json::to_string(&file.kind).unwrap().trim_matches('"'),
            serde_json::to_string(&verdict.violation).unwrap()
        )));
    }
    let order = scramble_order(&g, &scramble)?;
    result.insert("scramble_order".into(), json!(order));
    if file.kind == CertificateKind::Bramble {
        let bramble = file.to_bramble(n)?;
        result.insert(
            "bramble_order".into(),
            json!(bramble_order_r(&g, &bramble)?),
        );
        result.insert(
            "treewidth_lower_bound".into(),
            json!(treewidth_r_lower_bound(&g, &bramble)?),
        );
    }
    let mut code = 0;
    let mut timing = Map::new();
    if n <= CERT_EXACT_MAX_N {
        let mut rep = serde_json::to_value(gonality(&g, file.r, &a.search.options(None))?).unwrap();
        if let Some(ms) = take_elapsed(&mut rep) {
            timing.insert("search_ms".into(), ms);
        }
        match rep["minimum_degree"].as_u64() {
            Some(gon) => {
                let holds = order.order <= gon;
                result.insert(
                    "cross_check".into(),
                    json!({ "gonality": gon, "order_at_most_gonality": holds }),
                );
                if !holds {
                    code = EXIT_MISMATCH;
                }
            }
            None => {
                result.insert(
                    "cross_check".into(),
                    json!({ "gonality": null, "budget_exceeded": true }),
                );
            }
        }
    }
    Ok(Done {
        command: "cert",
        inputs,
        result: Value::Object(result),
        timing,
        out: a.out,
        code,
    })
}

fn cmd_repro(a: ReproArgs) -> Result<Done, Failure> {
    let mut inputs = Inputs::default();
    let all_targets = match &a.fixture {
        Some(path) => {
            let bytes = read_input(path)?;
            inputs.add("fixture", &bytes);
            repro::parse(&String::from_utf8_lossy(&bytes))?
        }
        None => {
            inputs.add("fixture", repro::fixture_text().as_bytes());
            repro::targets()
        }
    };
    if a.list {
        let names: Vec<&str> = all_targets.iter().map(|t| t.name.as_str()).collect();
        return Ok(Done::ok(
            "repro",
            inputs,
            json!({ "targets": names }),
            a.out,
        ));
    }
    let targets = if a.all {
        all_targets
    } else {
        let name = a.name.as_deref().unwrap_or_default();
        let t = all_targets
            .into_iter()
            .find(|t| t.name == name)
            .ok_or_else(|| Failure::usage(format!("unknown repro target `{name}`")))?;
        vec![t]
    };
    let opts = a.search.options(None);
    let mut values = Vec::new();
    let (mut mismatch, mut exceeded) = (false, false);
    for t in &targets {
        let out = repro::run(t, &opts)?;
        mismatch |= !out.matched && !out.budget_exceeded;
        exceeded |= out.budget_exceeded;
        values.push(out.value);
    }
    let result = if a.all {
        Value::Array(values)
    } else {
        values.pop().unwrap()
    };
    let code = if mismatch {
        EXIT_MISMATCH
    } else if exceeded {
        EXIT_BUDGET
    } else {
        0
    };
    Ok(Done {
        command: "repro",
        inputs,
        result,
        timing: Map::new(),
        out: a.out,
        code,
    })
}

fn run(cli: Cli) -> Result<Option<Done>, Failure> {
    Ok(Some(match cli.command {
        Command::Gen(a) => return cmd_gen(a),
        Command::Extend(a) => return cmd_extend(a),
        Command::Rank(a) => cmd_rank(a)?,
        Command::Reduce(a) => cmd_reduce(a)?,
        Command::Gon(a) => cmd_gon(a, false)?,
        Command::Mfgon(a) => cmd_gon(a, true)?,
        Command::Alpha(a) => cmd_alpha(a)?,
        Command::Bound(a) => cmd_bound(a)?,
        Command::Cert(a) => cmd_cert(a)?,
        Command::Repro(a) => cmd_repro(a)?,
    }))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let start = Instant::now();
    match run(cli) {
        Ok(None) => ExitCode::SUCCESS,
        Ok(Some(done)) => {
            let report = envelope(
                done.command,
                done.inputs,
                done.result,
                done.timing,
                start.elapsed(),
            );
            if let Err(e) = emit(&report, done.out.as_deref()) {
                eprintln!("chipfire: {e}");
                return ExitCode::from(EXIT_INVALID);
            }
            match done.code {
                EXIT_BUDGET => eprintln!("chipfire: budget exceeded; no value is claimed"),
                EXIT_MISMATCH => {
                    eprintln!("chipfire: computed value differs from the expected one")
                }
                _ => {}
            }
            ExitCode::from(done.code)
        }
        Err(f) => {
            eprintln!("chipfire: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}
