//! Command-line front end for the `hyperspace` crate.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use hyperspace::homotopy::{path_to_canonical, same_component_hausdorff, vietoris_path, HyperPath};
use hyperspace::metric::{directed_hausdorff, hausdorff};
use hyperspace::oracle::{oracle_components, GridParams};
use hyperspace::rational::{fmt_q, parse_q};
use hyperspace::subsets::{component_count, direction_set};
use hyperspace::vietoris::{continuity_witness, member_basic, member_lower, member_upper, parse_open, OpenRegion, Witness};
use hyperspace::wedge::parse_wedge;
use hyperspace::{fixtures, parse_graph, parse_set, ClosedSubset, ErrorClass, RayGraph, Q};
use serde_json::{json, Map, Value};

#[derive(Parser)]
#[command(name = "hyperspace", version, about = "Exact hyperspace computations over finite ray-graphs")]
struct Cli {
    /// Print one JSON object instead of `key: value` lines.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct GraphArg {
    /// Graph file (text or JSON), or `@name` for a built-in graph.
    #[arg(long)]
    graph: String,
}

#[derive(Subcommand)]
enum Command {
    /// Hausdorff distance between two closed subsets.
    Dist {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        /// Only `sup_{x in A} d(x, B)`.
        #[arg(long)]
        directed: bool,
    },
    /// Decide whether two sets lie in the same path component of `C_n(X)`.
    Classify {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(short)]
        n: usize,
        /// Write sampled path values (`t<TAB>set`) to this file.
        #[arg(long)]
        emit_path: Option<PathBuf>,
        #[arg(long, default_value_t = 20)]
        samples: usize,
    },
    /// Explicit path from a set to the canonical element of its component, or to the whole space.
    Path {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        a: String,
        #[arg(short)]
        n: usize,
        /// Continue to the whole space.
        #[arg(long)]
        vietoris: bool,
        /// Also list this many + 1 equally spaced samples.
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Vietoris membership of a set, and continuity witnesses along its path to the whole space.
    Vietoris {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        a: String,
        /// Open region: `all` or `ball ELEM:coord r ...`. Repeat for a basic open.
        #[arg(long = "open", required = true)]
        open: Vec<String>,
        /// Search a continuity witness at this parameter.
        #[arg(long)]
        witness: Option<String>,
        #[arg(long, default_value = "1/1000")]
        res: String,
        /// Component bound for the path; defaults to the set's own component count.
        #[arg(short)]
        n: Option<usize>,
    },
    /// Cell model of the hyperspace of a wedge of intervals, circles and rays.
    Wedge {
        #[arg(long)]
        expr: String,
    },
    /// Brute-force component count on a grid.
    Oracle {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        step: String,
        #[arg(long)]
        trunc: String,
        #[arg(long)]
        delta: String,
        #[arg(short)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        max_pieces: usize,
        #[arg(long, default_value_t = 20_000)]
        cap: usize,
    },
    /// Check a graph file and summarize it.
    Validate {
        #[command(flatten)]
        graph: GraphArg,
    },
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Io(String),
    Core(hyperspace::Error),
}

impl From<hyperspace::Error> for CliError {
    fn from(e: hyperspace::Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    fn record(&self) -> (u8, Value) {
        match self {
            CliError::Usage(m) => (1, json!({"error": "usage", "class": "usage", "message": m})),
            CliError::Io(m) => (1, json!({"error": "io", "class": "usage", "message": m})),
            CliError::Core(e) => {
                let (code, class) = match e.class() {
                    ErrorClass::Parse => (2, "parse"),
                    ErrorClass::Precondition => (3, "precondition"),
                    ErrorClass::ResourceCap => (4, "resource_cap"),
                };
                (code, json!({"error": e.code(), "class": class, "message": e.to_string()}))
            }
        }
    }
}

type Outcome = Result<Map<String, Value>, CliError>;

fn load_graph(arg: &GraphArg) -> Result<RayGraph, CliError> {
    if let Some(name) = arg.graph.strip_prefix('@') {
        return fixtures::by_name(name).ok_or_else(|| CliError::Usage(format!("no built-in graph `{name}`")));
    }
    let text = fs::read_to_string(&arg.graph).map_err(|e| CliError::Io(format!("{}: {e}", arg.graph)))?;
    Ok(parse_graph(&text)?)
}

fn rational(text: &str) -> Result<Q, CliError> {
    Ok(parse_q(text.trim())?)
}

fn stages(g: &RayGraph, path: &HyperPath) -> Vec<Value> {
    let m = path.stage_count() as i128;
    path.legs()
        .iter()
        .zip(path.stage_lipschitz())
        .enumerate()
        .map(|(i, (leg, local))| {
            let (lo, hi) = path.stage_range(i);
            json!({
                "stage": leg.stage.kind().name(),
                "reversed": leg.reversed,
                "from": fmt_q(&lo),
                "to": fmt_q(&hi),
                "lipschitz_local": local.to_string(),
                "lipschitz_global": local.scale(Q::from_integer(m)).to_string(),
                "start": path.eval_stage(i, Q::from_integer(0)).map(|s| s.format(g)).unwrap_or_default(),
                "end": path.eval_stage(i, Q::from_integer(1)).map(|s| s.format(g)).unwrap_or_default(),
            })
        })
        .collect()
}

fn sample_rows(g: &RayGraph, path: &HyperPath, m: usize) -> Vec<(String, String)> {
    path.sample(m).into_iter().map(|(t, s)| (fmt_q(&t), s.format(g))).collect()
}

fn run(command: Command) -> Outcome {
    let mut out = Map::new();
    match command {
        Command::Dist { graph, a, b, directed } => {
            let g = load_graph(&graph)?;
            let (a, b) = (parse_set(&a, &g)?, parse_set(&b, &g)?);
            let d = if directed { directed_hausdorff(&g, &a, &b) } else { hausdorff(&g, &a, &b) };
            out.insert("distance".into(), json!(d.to_string()));
            out.insert("directed".into(), json!(directed));
        }
        Command::Classify { graph, a, b, n, emit_path, samples } => {
            let g = load_graph(&graph)?;
            let (a, b) = (parse_set(&a, &g)?, parse_set(&b, &g)?);
            let verdict = same_component_hausdorff(&g, &a, &b, n)?;
            out.insert("same".into(), json!(verdict.same));
            out.insert("directions_a".into(), json!(verdict.directions_a.to_string()));
            out.insert("directions_b".into(), json!(verdict.directions_b.to_string()));
            if let Some(r) = verdict.witness_ray {
                out.insert("witness_ray".into(), json!(r));
            }
            match &verdict.path {
                Some(path) => {
                    out.insert("path_stages".into(), json!(path.legs().iter().map(|l| l.stage.kind().name()).collect::<Vec<_>>()));
                    if let Some(file) = emit_path {
                        let mut text = String::from("t\tset\n");
                        for (t, s) in sample_rows(&g, path, samples) {
                            text.push_str(&format!("{t}\t{s}\n"));
                        }
                        fs::write(&file, text).map_err(|e| CliError::Io(format!("{}: {e}", file.display())))?;
                        out.insert("path_file".into(), json!(file.display().to_string()));
                        out.insert("path_samples".into(), json!(samples.max(1) + 1));
                    }
                }
                None => {
                    out.insert("path".into(), json!("none"));
                }
            }
        }
        Command::Path { graph, a, n, vietoris, samples } => {
            let g = load_graph(&graph)?;
            let a = parse_set(&a, &g)?;
            let path = if vietoris { vietoris_path(&g, &a, n)? } else { path_to_canonical(&g, &a, n)? };
            out.insert("start".into(), json!(path.start().format(&g)));
            out.insert("end".into(), json!(path.end().format(&g)));
            out.insert("directions".into(), json!(direction_set(&g, &a).to_string()));
            out.insert("stages".into(), Value::Array(stages(&g, &path)));
            if let Some(m) = samples {
                let rows = sample_rows(&g, &path, m);
                out.insert("samples".into(), json!(rows.iter().map(|(t, s)| json!({"t": t, "set": s})).collect::<Vec<_>>()));
            }
        }
        Command::Vietoris { graph, a, open, witness, res, n } => {
            let g = load_graph(&graph)?;
            let a = parse_set(&a, &g)?;
            let regions = open.iter().map(|o| parse_open(o, &g)).collect::<Result<Vec<OpenRegion>, _>>()?;
            let union = OpenRegion::union(&regions);
            out.insert("upper".into(), json!(member_upper(&g, &a, &union)));
            out.insert("lower".into(), json!(regions.iter().map(|r| member_lower(&g, &a, r)).collect::<Vec<_>>()));
            out.insert("basic".into(), json!(member_basic(&g, &a, &regions)?));
            if let Some(t0) = witness {
                let t0 = rational(&t0)?;
                let bound = n.unwrap_or_else(|| component_count(&g, &a));
                let path = vietoris_path(&g, &a, bound)?;
                out.insert("witness_t0".into(), json!(fmt_q(&t0)));
                out.insert("witness_set".into(), json!(path.eval(t0)?.format(&g)));
                match continuity_witness(&path, t0, &regions, rational(&res)?)? {
                    Witness::Delta(d) => out.insert("delta".into(), json!(fmt_q(&d))),
                    Witness::Failure { escape } => {
                        out.insert("delta".into(), json!("failure"));
                        out.insert("escape".into(), json!(fmt_q(&escape)))
                    }
                };
            }
        }
        Command::Wedge { expr } => {
            let model = parse_wedge(&expr)?.model()?;
            let stats = hyperspace::wedge::model_stats(&model);
            out.insert("model".into(), json!(model.name));
            out.insert(
                "pieces".into(),
                json!(model
                    .pieces
                    .iter()
                    .map(|p| format!(
                        "{} dim={} {}",
                        p.factors.iter().map(|c| c.name()).collect::<Vec<_>>().join("×"),
                        p.dim(),
                        if p.compact() { "compact" } else { "noncompact" }
                    ))
                    .collect::<Vec<_>>()),
            );
            out.insert(
                "gluings".into(),
                json!(model
                    .gluings
                    .iter()
                    .map(|gl| format!(
                        "{}:{} ~ {}:{}",
                        gl.a,
                        gl.face.iter().map(|c| c.name()).collect::<Vec<_>>().join("×"),
                        gl.b,
                        gl.slice
                    ))
                    .collect::<Vec<_>>()),
            );
            out.insert("dims".into(), json!(stats.dims.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(",")));
            out.insert("max_dim".into(), json!(stats.max_dim));
            out.insert("components".into(), json!(stats.components));
        }
        Command::Oracle { graph, step, trunc, delta, n, max_pieces, cap } => {
            let g = load_graph(&graph)?;
            let params = GridParams { cap, ..GridParams::new(rational(&step)?, rational(&trunc)?, n).with_max_pieces(max_pieces) };
            let report = oracle_components(&g, &params, rational(&delta)?)?;
            out.insert("sets".into(), json!(report.sets.len()));
            out.insert("components".into(), json!(report.count()));
            out.insert(
                "representatives".into(),
                json!(report
                    .components
                    .iter()
                    .map(|c| {
                        let dirs: Vec<String> = c.directions.iter().map(|d| d.to_string()).collect();
                        format!("{} size={} directions={}", c.representative.format(&g), c.size, dirs.join("|"))
                    })
                    .collect::<Vec<_>>()),
            );
            out.insert("refines_by_direction".into(), json!(report.refines_by_direction()));
            if !report.warnings.is_empty() {
                out.insert("warnings".into(), json!(report.warnings));
            }
        }
        Command::Validate { graph } => {
            let g = load_graph(&graph)?;
            let edges = g.edges().count();
            out.insert("ok".into(), json!(true));
            out.insert("vertices".into(), json!(g.vertex_count()));
            out.insert("edges".into(), json!(edges));
            out.insert("loops".into(), json!(g.edges().filter(|e| g.element(*e).is_loop()).count()));
            out.insert("rays".into(), json!(g.ray_count()));
            out.insert("components_of_cn".into(), json!(hyperspace::homotopy::component_count_formula(&g, 1)?.to_string()));
            out.insert("whole".into(), json!(ClosedSubset::whole(&g).format(&g)));
        }
    }
    Ok(out)
}

fn render_text(out: &Map<String, Value>) -> String {
    let scalar = |v: &Value| match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    };
    let mut text = String::new();
    for (key, value) in out {
        match value {
            Value::Array(items) => {
                text.push_str(&format!("{key}: {}\n", items.len()));
                for item in items {
                    match item {
                        Value::Object(fields) => {
                            let parts: Vec<String> = fields.iter().map(|(k, v)| format!("{k}={}", scalar(v))).collect();
                            text.push_str(&format!("  {}\n", parts.join("  ")));
                        }
                        other => text.push_str(&format!("  {}\n", scalar(other))),
                    }
                }
            }
            other => text.push_str(&format!("{key}: {}\n", scalar(other))),
        }
    }
    text
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion) => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let message = e.to_string();
            let first = message.lines().next().unwrap_or("invalid arguments").trim_start_matches("error: ");
            eprintln!("{}", CliError::Usage(first.to_string()).record().1);
            return ExitCode::from(1);
        }
    };
    let json_out = cli.json;
    let plain_dist = matches!(cli.command, Command::Dist { .. });
    match run(cli.command) {
        Ok(out) if json_out => {
            println!("{}", Value::Object(out));
            ExitCode::SUCCESS
        }
        Ok(out) if plain_dist => {
            println!("{}", out["distance"].as_str().unwrap_or_default());
            ExitCode::SUCCESS
        }
        Ok(out) => {
            print!("{}", render_text(&out));
            ExitCode::SUCCESS
        }
        Err(e) => {
            let (code, record) = e.record();
            eprintln!("{record}");
            ExitCode::from(code)
        }
    }
}
