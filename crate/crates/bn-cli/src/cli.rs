//! Argument handling and the command implementations.

use std::fmt::Write;
use std::path::{Path, PathBuf};

use bn_core::bn_curve::{chain_model, count_rho0, genus_classical, genus_closed_form, genus_from_graph, ComponentKind};
use bn_core::bn_graph::{build_bn_graph, expected_turns_formula, sample_turns_mc, to_f64};
use bn_core::counting::boundary_counts;
use bn_core::pontableaux::{build_augmented_graph_sequences, build_augmented_graph_structure, StepKind};
use bn_core::shapes::{shape_from_bn_data, skew_shape, BrillNoetherData, Partition, SkewShape};
use bn_core::verify::{data_suite, shape_suite, Status};
use bn_core::BnError;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::json;
use thiserror::Error;

use crate::export::{graph_to_dot, graph_to_json};

pub const ENV_CAP: &str = "BN_ENUM_CAP";

#[derive(Parser, Debug)]
#[command(name = "bn", version, about = "Skew tableaux, Brill-Noether graphs and genus computations")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub opts: Opts,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    /// Print the shape σ(g,r,d,α,β) and its box count
    Shape,
    /// f^σ and the counts of every one-box extension
    Count,
    /// Genus by the closed form and by the chain model, with a verdict
    Genus,
    /// BN(σ) or BN'(σ)
    Graph,
    /// Components of the chain model
    Chain,
    /// Monte Carlo turn statistics against the exact expectation
    Sample,
    /// Run the invariant checks
    Verify,
    /// Number of points when ρ = 0
    CountPoints,
}

#[derive(Args, Debug, Default, Clone)]
pub struct Opts {
    #[arg(long, global = true)]
    pub g: Option<usize>,
    #[arg(long, global = true)]
    pub r: Option<usize>,
    #[arg(long, global = true)]
    pub d: Option<usize>,
    /// Comma-separated, e.g. 0,1
    #[arg(long, global = true, value_parser = parse_ulist)]
    pub alpha: Option<UList>,
    #[arg(long, global = true, value_parser = parse_ulist)]
    pub beta: Option<UList>,
    /// λ or λ/μ with comma-separated parts, e.g. 3,2/1
    #[arg(long, global = true, conflicts_with_all = ["g", "r", "d", "alpha", "beta"])]
    pub shape: Option<String>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    #[arg(long, global = true, value_enum)]
    pub kind: Option<GraphKind>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[arg(long, global = true)]
    pub samples: Option<u64>,
    /// Enumeration cap (boxes or genus)
    #[arg(long, global = true)]
    pub cap: Option<usize>,
    /// TOML file with any of the flags above
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Text,
    Json,
    Dot,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
pub enum GraphKind {
    #[serde(rename = "bn")]
    Bn,
    #[serde(rename = "bn-prime")]
    BnPrime,
}

/// A comma-separated list given as one flag value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UList(pub Vec<usize>);

fn parse_ulist(s: &str) -> Result<UList, String> {
    parse_list(s).map(UList)
}

pub fn parse_list(s: &str) -> Result<Vec<usize>, String> {
    s.split(',')
        .map(|x| x.trim().parse::<usize>().map_err(|_| format!("`{x}` is not a nonnegative integer")))
        .collect()
}

/// `λ` or `λ/μ`.
pub fn parse_shape(s: &str) -> Result<SkewShape, String> {
    let (l, m) = s.split_once('/').unwrap_or((s, ""));
    let part = |x: &str| -> Result<Partition, String> {
        if x.trim().is_empty() {
            return Ok(Partition::empty());
        }
        Partition::new(parse_list(x)?).map_err(|e| e.to_string())
    };
    skew_shape(&part(l)?, &part(m)?).map_err(|e| e.to_string())
}

#[derive(Deserialize, Debug, Default)]
#[serde(deny_unknown_fields)]
struct Config {
    g: Option<usize>,
    r: Option<usize>,
    d: Option<usize>,
    alpha: Option<ListValue>,
    beta: Option<ListValue>,
    shape: Option<String>,
    format: Option<Format>,
    kind: Option<GraphKind>,
    seed: Option<u64>,
    samples: Option<u64>,
    cap: Option<usize>,
}

#[derive(Deserialize, Debug)]
#[serde(untagged)]
enum ListValue {
    List(Vec<usize>),
    Text(String),
}

impl ListValue {
    fn resolve(self) -> Result<Vec<usize>, String> {
        match self {
            ListValue::List(v) => Ok(v),
            ListValue::Text(s) => parse_list(&s),
        }
    }
}

#[derive(Error, Debug)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Domain(#[from] BnError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Domain(_) => 1,
        }
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

#[derive(Debug, Clone)]
pub enum Input {
    Data(BrillNoetherData),
    Shape(SkewShape),
}

/// A fully resolved request.
#[derive(Debug, Clone)]
pub struct CommandRequest {
    pub command: Command,
    pub input: Input,
    pub format: Format,
    pub kind: GraphKind,
    pub seed: u64,
    pub samples: u64,
    pub cap: usize,
}

/// Command output and exit status.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub output: String,
    pub status: i32,
}

fn read_config(path: &Path) -> Result<Config, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    toml::from_str(&text).map_err(|e| usage(format!("bad config {}: {e}", path.display())))
}

/// Merge flags, environment, config file and defaults.
pub fn resolve(command: Command, opts: Opts, env_cap: Option<String>) -> Result<CommandRequest, CliError> {
    let cfg = match &opts.config {
        Some(p) => read_config(p)?,
        None => Config::default(),
    };
    let flag_input = opts.shape.is_some() || opts.g.is_some() || opts.r.is_some() || opts.d.is_some();
    let input = if flag_input {
        input_from(opts.shape.clone(), opts.g, opts.r, opts.d, flag_list(&opts.alpha), flag_list(&opts.beta))?
    } else {
        if cfg.shape.is_some() && (cfg.g.is_some() || cfg.r.is_some() || cfg.d.is_some()) {
            return Err(usage("config gives both a shape and data"));
        }
        let alpha = match flag_list(&opts.alpha) {
            Some(a) => Some(a),
            None => cfg.alpha.map(ListValue::resolve).transpose().map_err(usage)?,
        };
        let beta = match flag_list(&opts.beta) {
            Some(b) => Some(b),
            None => cfg.beta.map(ListValue::resolve).transpose().map_err(usage)?,
        };
        input_from(cfg.shape.clone(), cfg.g, cfg.r, cfg.d, alpha, beta)?
    };
    let env_cap = env_cap
        .map(|s| s.trim().parse::<usize>().map_err(|_| usage(format!("{ENV_CAP} must be a nonnegative integer"))))
        .transpose()?;
    let format = opts.format.or(cfg.format).unwrap_or(Format::Text);
    if format == Format::Dot && !matches!(command, Command::Graph | Command::Chain) {
        return Err(usage("--format dot is only available for graph and chain"));
    }
    Ok(CommandRequest {
        command,
        input,
        format,
        kind: opts.kind.or(cfg.kind).unwrap_or(GraphKind::Bn),
        seed: opts.seed.or(cfg.seed).unwrap_or(0),
        samples: opts.samples.or(cfg.samples).unwrap_or(10_000),
        cap: opts.cap.or(env_cap).or(cfg.cap).unwrap_or(bn_core::DEFAULT_ENUM_CAP),
    })
}

fn flag_list(v: &Option<UList>) -> Option<Vec<usize>> {
    v.as_ref().map(|l| l.0.clone())
}

fn input_from(
    shape: Option<String>,
    g: Option<usize>,
    r: Option<usize>,
    d: Option<usize>,
    alpha: Option<Vec<usize>>,
    beta: Option<Vec<usize>>,
) -> Result<Input, CliError> {
    if let Some(s) = shape {
        return parse_shape(&s).map(Input::Shape).map_err(usage);
    }
    let (Some(g), Some(r), Some(d)) = (g, r, d) else {
        return Err(usage("give --g, --r and --d, or --shape"));
    };
    let alpha = alpha.unwrap_or_else(|| vec![0; r + 1]);
    let beta = beta.unwrap_or_else(|| vec![0; r + 1]);
    BrillNoetherData::new(g, r, d, alpha, beta).map(Input::Data).map_err(|e| usage(e.to_string()))
}

fn sigma_of(input: &Input) -> Result<SkewShape, CliError> {
    match input {
        Input::Shape(s) => Ok(s.clone()),
        Input::Data(d) => Ok(shape_from_bn_data(d)?),
    }
}

fn need_data(req: &CommandRequest) -> Result<&BrillNoetherData, CliError> {
    match &req.input {
        Input::Data(d) => Ok(d),
        Input::Shape(_) => Err(usage("this command needs --g, --r and --d")),
    }
}

fn pretty(v: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("output serializes");
    s.push('\n');
    s
}

/// Run a resolved request.
pub fn run(req: &CommandRequest) -> Result<Outcome, CliError> {
    bn_core::set_enum_cap(req.cap);
    let ok = |output: String| Ok(Outcome { output, status: 0 });
    match req.command {
        Command::Shape => ok(cmd_shape(req)?),
        Command::Count => ok(cmd_count(req)?),
        Command::Genus => cmd_genus(req),
        Command::Graph => ok(cmd_graph(req)?),
        Command::Chain => ok(cmd_chain(req)?),
        Command::Sample => ok(cmd_sample(req)?),
        Command::Verify => cmd_verify(req),
        Command::CountPoints => ok(cmd_count_points(req)?),
    }
}

fn cmd_shape(req: &CommandRequest) -> Result<String, CliError> {
    let s = sigma_of(&req.input)?;
    let (lambda, mu) = s.lambda_mu();
    Ok(match req.format {
        Format::Json => pretty(&json!({
            "rows": s.rows(),
            "boxes": s.n(),
            "lambda": lambda,
            "mu": mu,
            "diagram": s.to_string(),
        })),
        _ => {
            let mut out = String::new();
            if let Input::Data(d) = &req.input {
                writeln!(out, "data: {d}").unwrap();
            }
            writeln!(out, "{s}").unwrap();
            writeln!(out, "boxes: {}", s.n()).unwrap();
            out
        }
    })
}

fn cmd_count(req: &CommandRequest) -> Result<String, CliError> {
    let s = sigma_of(&req.input)?;
    let c = boundary_counts(&s);
    Ok(match req.format {
        Format::Json => pretty(&c),
        _ => {
            let mut out = format!("f^sigma: {}\n", c.f_sigma);
            writeln!(out, "{:<5} {:>14} {:>14}", "row", "right", "left").unwrap();
            for i in 0..s.k() {
                writeln!(out, "{:<5} {:>14} {:>14}", i + 1, c.f_right[i], c.f_left[i]).unwrap();
            }
            out
        }
    })
}

fn cmd_genus(req: &CommandRequest) -> Result<Outcome, CliError> {
    let d = need_data(req)?;
    let closed = genus_closed_form(d)?;
    let graph = genus_from_graph(&chain_model(d)?)?;
    let unramified = d.alpha.iter().chain(&d.beta).all(|&x| x == 0);
    let classical = if unramified { Some(genus_classical(d.g, d.r, d.d)?) } else { None };
    let agree = closed == graph && classical.as_ref().is_none_or(|c| *c == closed);
    let verdict = if agree { "AGREE" } else { "DISAGREE" };
    let output = match req.format {
        Format::Json => pretty(&json!({
            "data": d,
            "closed_form": closed.to_string(),
            "dual_graph": graph.to_string(),
            "classical": classical.as_ref().map(|c| c.to_string()),
            "verdict": verdict,
        })),
        _ => {
            let mut out = format!("data: {d}\nclosed form: {closed}\ndual graph: {graph}\n");
            if let Some(c) = &classical {
                writeln!(out, "classical: {c}").unwrap();
            }
            writeln!(out, "verdict: {verdict}").unwrap();
            out
        }
    };
    Ok(Outcome { output, status: if agree { 0 } else { 1 } })
}

fn emit_graph<P: Serialize>(g: &bn_core::graph::LabeledGraph<P>, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = graph_to_json(g);
            s.push('\n');
            s
        }
        Format::Dot => graph_to_dot(g),
        Format::Text => {
            let mut out = format!("kind: {}\nvertices: {}\nedges: {}\n", g.kind, g.vertex_count(), g.edge_count());
            for v in g.vertices() {
                let tag = match v.genus {
                    Some(1) => " (elliptic)",
                    Some(_) => " (rational)",
                    None => "",
                };
                writeln!(out, "  v{} {}{tag}", v.id, v.label).unwrap();
            }
            for (a, b) in g.edges() {
                writeln!(out, "  v{a} -- v{b}").unwrap();
            }
            out
        }
    }
}

fn cmd_graph(req: &CommandRequest) -> Result<String, CliError> {
    Ok(match (req.kind, &req.input) {
        (GraphKind::Bn, input) => emit_graph(&build_bn_graph(&sigma_of(input)?)?, req.format),
        (GraphKind::BnPrime, Input::Data(d)) => emit_graph(&build_augmented_graph_sequences(d)?, req.format),
        (GraphKind::BnPrime, Input::Shape(s)) => emit_graph(&build_augmented_graph_structure(s)?, req.format),
    })
}

fn step_text(kind: &StepKind, position: usize) -> String {
    match kind {
        StepKind::Stall => format!("stall at {position}"),
        StepKind::Swap { a, b } => format!("swap a={a} b={b} at {position}"),
        StepKind::Plod(b) => format!("plod b={b} at {position}"),
        StepKind::Other { progress, .. } => format!("progress {progress} at {position}"),
    }
}

fn cmd_chain(req: &CommandRequest) -> Result<String, CliError> {
    let m = chain_model(need_data(req)?)?;
    Ok(match req.format {
        Format::Json => pretty(&m),
        Format::Dot => graph_to_dot(&m.dual_graph),
        Format::Text => {
            let mut out = format!("data: {}\ncomponents: {}\ngluings: {}\n", m.data, m.components.len(), m.dual_graph.edge_count());
            writeln!(out, "{:<6} {:<22} {:<12} {:<8} sequence", "index", "step", "component", "gluings").unwrap();
            for (i, c) in m.components.iter().enumerate() {
                let comp = match c.kind {
                    ComponentKind::Elliptic { curve } => format!("E_{curve}"),
                    ComponentKind::Rational { over } => format!("P1 over E_{over}"),
                };
                let step = step_text(&c.step.kind, c.step.position);
                writeln!(out, "{i:<6} {step:<22} {comp:<12} {:<8} {}", m.gluings(i), c.sequence).unwrap();
            }
            out
        }
    })
}

fn cmd_sample(req: &CommandRequest) -> Result<String, CliError> {
    let s = sigma_of(&req.input)?;
    let stats = sample_turns_mc(&s, req.samples, req.seed)?;
    let exact = expected_turns_formula(&s)?;
    let mean = stats.sample_mean.unwrap_or(f64::NAN);
    let se = stats.sample_std_error.unwrap_or(f64::NAN);
    let z = if se > 0.0 { (mean - to_f64(&exact)) / se } else { 0.0 };
    Ok(match req.format {
        Format::Json => pretty(&json!({
            "statistics": stats,
            "exact": exact.to_string(),
            "deviation_in_standard_errors": z,
        })),
        _ => format!(
            "samples: {}\nseed: {}\nrng: {}\nsample mean: {mean:.6}\nstandard error: {se:.6}\nexact: {exact} ({:.6})\ndeviation: {z:.3} standard errors\n",
            req.samples,
            req.seed,
            stats.rng.unwrap_or("-"),
            to_f64(&exact),
        ),
    })
}

fn cmd_verify(req: &CommandRequest) -> Result<Outcome, CliError> {
    let results = match &req.input {
        Input::Shape(s) => shape_suite(s),
        Input::Data(d) => data_suite(d)?,
    };
    let failed = results.iter().filter(|c| c.status == Status::Fail).count();
    let output = match req.format {
        Format::Json => pretty(&json!({ "checks": results, "failed": failed })),
        _ => {
            let mut out = String::new();
            for c in &results {
                let tag = match c.status {
                    Status::Pass => "PASS",
                    Status::Fail => "FAIL",
                    Status::Skip => "SKIP",
                };
                if c.detail.is_empty() {
                    writeln!(out, "{tag} {}", c.name).unwrap();
                } else {
                    writeln!(out, "{tag} {} ({})", c.name, c.detail).unwrap();
                }
            }
            writeln!(out, "{} checks, {failed} failed", results.len()).unwrap();
            out
        }
    };
    Ok(Outcome { output, status: if failed > 0 { 1 } else { 0 } })
}

fn cmd_count_points(req: &CommandRequest) -> Result<String, CliError> {
    let d = need_data(req)?;
    let n = count_rho0(d)?;
    Ok(match req.format {
        Format::Json => pretty(&json!({ "data": d, "points": n.to_string() })),
        _ => format!("{n}\n"),
    })
}

/// Parse arguments, run, and return what to print plus the exit status.
pub fn main_with<I, T>(args: I, env_cap: Option<String>) -> (String, String, i32)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 { (text, String::new(), 0) } else { (String::new(), text, 2) };
        }
    };
    let result = resolve(cli.command, cli.opts, env_cap).and_then(|req| run(&req));
    match result {
        Ok(o) => (o.output, String::new(), o.status),
        Err(e) => {
            let prefix = if matches!(e, CliError::Usage(_)) { "usage error" } else { "error" };
            (String::new(), format!("{prefix}: {e}\n"), e.exit_code())
        }
    }
}
