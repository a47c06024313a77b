//! The `tropos` command line.

use crate::catalog;
use crate::cells::maximal_cells;
use crate::divisor::{canonical_divisor, Divisor, PlFunction, UnitModel};
use crate::error::{Error, Result};
use crate::graph::{GraphSpec, MetricGraph};
use crate::rational::{fmt_q, serde_q, Q};
use crate::realizability::is_realizable_canonical;
use crate::reduction::{rank, reduce};
use crate::tropical::{
    enumerate_linear_system, extremals, find_tropical_dependence, in_span, verify_tropical_dependence, TropicalSpan,
    DEFAULT_STATE_CAP, DEPENDENCE_BUDGET,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NOT_REALIZABLE: i32 = 1;
pub const EXIT_NOT_CANONICAL: i32 = 2;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_FAILURE: i32 = 65;

#[derive(Parser, Debug)]
#[command(name = "tropos", version, about = "Divisors and linear systems on metric graphs")]
struct Cli {
    #[arg(long, value_enum, default_value = "json", global = true)]
    format: Format,
    /// Worker threads for enumeration (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Json,
    Text,
}

#[derive(Args, Debug, Clone)]
struct GraphArgs {
    /// Graph file in the JSON graph format.
    #[arg(long, conflicts_with = "catalog", required_unless_present = "catalog")]
    graph: Option<PathBuf>,
    /// Built-in graph name (see `tropos catalog`).
    #[arg(long)]
    catalog: Option<String>,
}

#[derive(Args, Debug, Clone)]
struct DivisorArgs {
    #[command(flatten)]
    graph: GraphArgs,
    /// Divisor file, `K` for the canonical divisor or `0`.
    #[arg(long)]
    divisor: String,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    subdiv: u32,
}

#[derive(Args, Debug, Clone)]
struct SystemArgs {
    #[command(flatten)]
    d: DivisorArgs,
    #[arg(long, env = "TROPOS_STATE_CAP", default_value_t = DEFAULT_STATE_CAP)]
    state_cap: usize,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Genus, canonical degree and size of a graph.
    Info(GraphArgs),
    /// The v-reduced representative of a divisor.
    Reduce {
        #[command(flatten)]
        d: DivisorArgs,
        /// Base vertex (host or model vertex id); defaults to the first host vertex.
        #[arg(long)]
        base: Option<String>,
    },
    /// Rank of a divisor on the subdivided unit model.
    Rank(DivisorArgs),
    /// Complete linear systems on the grid.
    Linsys {
        #[command(subcommand)]
        op: LinsysOp,
    },
    /// Span membership.
    Span {
        #[command(subcommand)]
        op: SpanOp,
    },
    /// Grid survey of the cells of |D|.
    Cells(SystemArgs),
    /// Realizability of an effective canonical divisor (exit 0, 1, or 2 if not in |K|).
    Realizable {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long)]
        divisor: String,
    },
    /// Tropical dependence of functions.
    Depend {
        #[command(subcommand)]
        op: DependOp,
    },
    /// Lists built-in graphs, or prints one in the JSON graph format.
    Catalog { name: Option<String> },
}

#[derive(Subcommand, Debug)]
enum LinsysOp {
    Enumerate(SystemArgs),
    Extremals(SystemArgs),
}

#[derive(Subcommand, Debug)]
enum SpanOp {
    Check {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long)]
        function: PathBuf,
        #[arg(long)]
        generators: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
enum DependOp {
    Verify {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long)]
        functions: PathBuf,
        #[arg(long)]
        coeffs: PathBuf,
    },
    Find {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long)]
        functions: PathBuf,
        #[arg(long, default_value_t = DEPENDENCE_BUDGET)]
        budget: usize,
    },
}

/// Runs the command line and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if code == EXIT_OK {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    let format = cli.format;
    let result = match cli.jobs {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build() {
            Ok(pool) => pool.install(|| execute(cli.command)),
            Err(e) => Err(Error::InvalidArgument(e.to_string())),
        },
        None => execute(cli.command),
    };
    match result {
        Ok((value, code)) => {
            let _ = writeln!(out, "{}", render(&value, format));
            code
        }
        Err(e) => {
            let value = json!({ "error": e.kind(), "message": e.to_string() });
            let _ = writeln!(out, "{}", render(&value, format));
            if e == Error::NotInCanonicalSystem {
                EXIT_NOT_CANONICAL
            } else {
                EXIT_FAILURE
            }
        }
    }
}

fn render(v: &Value, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(v).expect("json renders"),
        Format::Text => {
            let mut s = String::new();
            text(v, 0, &mut s);
            s.trim_end().to_string()
        }
    }
}

fn text(v: &Value, depth: usize, s: &mut String) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                if x.is_object() || x.is_array() && !x.as_array().unwrap().iter().all(scalar) {
                    s.push_str(&format!("{pad}{k}:\n"));
                    text(x, depth + 1, s);
                } else {
                    s.push_str(&format!("{pad}{k}: {}\n", inline(x)));
                }
            }
        }
        Value::Array(xs) => {
            for x in xs {
                if scalar(x) || x.is_array() && x.as_array().unwrap().iter().all(scalar) {
                    s.push_str(&format!("{pad}- {}\n", inline(x)));
                } else if let Some(line) = entry(x) {
                    s.push_str(&format!("{pad}- {line}\n"));
                } else {
                    s.push_str(&format!("{pad}-\n"));
                    text(x, depth + 1, s);
                }
            }
        }
        _ => s.push_str(&format!("{pad}{}\n", inline(v))),
    }
}

fn scalar(v: &Value) -> bool {
    !v.is_object() && !v.is_array()
}

fn inline(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(xs) => format!("[{}]", xs.iter().map(inline).collect::<Vec<_>>().join(", ")),
        Value::Object(_) => v.to_string(),
        other => other.to_string(),
    }
}

/// One-line forms for divisor and function entries.
fn entry(v: &Value) -> Option<String> {
    let m = v.as_object()?;
    let at = m.get("at")?;
    let at = match at {
        Value::String(s) => s.clone(),
        Value::Object(p) => format!("{}+{}", inline(p.get("edge")?), inline(p.get("offset")?)),
        _ => return None,
    };
    if let Some(x) = m.get("mult") {
        return Some(format!("{}·{at}", inline(x)));
    }
    m.get("value").map(|x| format!("{at} ↦ {}", inline(x)))
}

fn read_json(path: &PathBuf) -> Result<Value> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn load_graph(a: &GraphArgs) -> Result<MetricGraph> {
    match (&a.graph, &a.catalog) {
        (Some(path), _) => {
            let spec: GraphSpec = serde_json::from_value(read_json(path)?).map_err(|e| Error::Parse(e.to_string()))?;
            MetricGraph::build(&spec)
        }
        (None, Some(name)) => catalog::by_name(name),
        (None, None) => Err(Error::InvalidArgument("a graph is required".into())),
    }
}

fn load_divisor(g: &MetricGraph, arg: &str) -> Result<Divisor> {
    let d = match arg {
        "K" => canonical_divisor(g),
        "0" => Divisor::zero(),
        path => Divisor::from_json(&read_json(&PathBuf::from(path))?)?,
    };
    d.validate(g)?;
    Ok(d)
}

fn load_functions(g: &MetricGraph, path: &PathBuf) -> Result<Vec<PlFunction>> {
    match read_json(path)? {
        Value::Array(xs) => xs.iter().map(|x| PlFunction::from_json(g, x)).collect(),
        _ => Err(Error::Parse("expected a list of functions".into())),
    }
}

fn q_json(x: &Q) -> Value {
    Value::String(fmt_q(x))
}

fn execute(cmd: Command) -> Result<(Value, i32)> {
    let ok = |v: Value| Ok((v, EXIT_OK));
    match cmd {
        Command::Info(a) => {
            let g = load_graph(&a)?;
            ok(json!({
                "genus": g.arithmetic_genus(),
                "canonicalDegree": canonical_divisor(&g).degree(),
                "vertices": g.num_vertices(),
                "edges": g.num_edges(),
            }))
        }
        Command::Reduce { d, base } => {
            let g = load_graph(&d.graph)?;
            let div = load_divisor(&g, &d.divisor)?;
            let model = UnitModel::new(&g, &div.support(), d.subdiv)?;
            let v = match &base {
                None => model.refinement.vertex(0),
                Some(id) => match g.vertex_index(id) {
                    Ok(h) => model.refinement.vertex(h),
                    Err(_) => model.chips.index_of(id)?,
                },
            };
            let r = reduce(&model.chips, &model.config(&div)?, v)?;
            let fired: Vec<Value> = r
                .fired_sequence
                .iter()
                .map(|(set, m)| json!({ "set": set.iter().map(|&x| model.chips.id(x)).collect::<Vec<_>>(), "times": m }))
                .collect();
            ok(json!({
                "base": model.chips.id(v),
                "reduced": model.divisor(&r.reduced).to_json(),
                "witness": model.levels_to_pl(&r.witness).to_json(&g),
                "firedSequence": fired,
                "subdivision": d.subdiv,
            }))
        }
        Command::Rank(d) => {
            let g = load_graph(&d.graph)?;
            let div = load_divisor(&g, &d.divisor)?;
            ok(serde_json::to_value(rank(&g, &div, d.subdiv)?).expect("serializes"))
        }
        Command::Linsys { op } => {
            let (s, only_extremal) = match op {
                LinsysOp::Enumerate(s) => (s, false),
                LinsysOp::Extremals(s) => (s, true),
            };
            let g = load_graph(&s.d.graph)?;
            let div = load_divisor(&g, &s.d.divisor)?;
            let sys = if only_extremal {
                extremals(&g, &div, s.d.subdiv, s.state_cap)?
            } else {
                enumerate_linear_system(&g, &div, s.d.subdiv, s.state_cap)?
            };
            ok(sys.to_json())
        }
        Command::Span { op: SpanOp::Check { graph, function, generators } } => {
            let g = load_graph(&graph)?;
            let f = PlFunction::from_json(&g, &read_json(&function)?)?;
            let span = TropicalSpan::of(load_functions(&g, &generators)?)?;
            let coefficients: Vec<Value> = span.generators.iter().map(|h| q_json(&f.inner(&g, h))).collect();
            ok(json!({ "inSpan": in_span(&g, &f, &span), "coefficients": coefficients }))
        }
        Command::Cells(s) => {
            let g = load_graph(&s.d.graph)?;
            let div = load_divisor(&g, &s.d.divisor)?;
            ok(maximal_cells(&g, &div, s.d.subdiv, s.state_cap)?.to_json())
        }
        Command::Realizable { graph, divisor } => {
            let g = load_graph(&graph)?;
            let div = load_divisor(&g, &divisor)?;
            let report = is_realizable_canonical(&g, &div)?;
            let code = if report.realizable { EXIT_OK } else { EXIT_NOT_REALIZABLE };
            Ok((serde_json::to_value(report).expect("serializes"), code))
        }
        Command::Depend { op: DependOp::Verify { graph, functions, coeffs } } => {
            let g = load_graph(&graph)?;
            let fns = load_functions(&g, &functions)?;
            let cs = match read_json(&coeffs)? {
                Value::Array(xs) => xs.iter().map(serde_q::parse).collect::<Result<Vec<_>>>()?,
                _ => return Err(Error::Parse("expected a list of coefficients".into())),
            };
            ok(json!({ "dependent": verify_tropical_dependence(&g, &fns, &cs)? }))
        }
        Command::Depend { op: DependOp::Find { graph, functions, budget } } => {
            let g = load_graph(&graph)?;
            let fns = load_functions(&g, &functions)?;
            let found = find_tropical_dependence(&g, &fns, budget)?;
            ok(json!({ "coefficients": found.map(|cs| cs.iter().map(q_json).collect::<Vec<_>>()) }))
        }
        Command::Catalog { name: None } => ok(json!({ "graphs": catalog::NAMES })),
        Command::Catalog { name: Some(name) } => {
            let g = catalog::by_name(&name)?;
            ok(serde_json::to_value(g.to_spec()).expect("serializes"))
        }
    }
}

