//! `surface-cluster` command-line tool.
//!
//! Every command reads JSON (inline or from a file, `-` for stdin) and writes
//! JSON, DOT or a plain table. Exit status: 0 on success, 1 when the input is
//! rejected on mathematical grounds, 2 on usage errors.

use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use surface_cluster::cluster::{all_cluster_variables, denominators_along, Seed};
use surface_cluster::mutation::{mutation_class, recognize_type, Quiver};
use surface_cluster::tagged::exchange_graph;
use surface_cluster::{
    classify, decompose, initial_triangulation, recover_genus_punctures, surface_from_decomposition, tag_plain, validate_surface,
    BlockDecomposition, Error, ExchangeMatrix, IdealTriangulation, Model, SurfaceDescriptor, TaggedTriangulation,
};

#[derive(Parser)]
#[command(name = "surface-cluster", version, about = "Cluster combinatorics of triangulated surfaces")]
struct Cli {
    /// Worker threads for parallel searches.
    #[arg(long, global = true, env = "SURFACE_CLUSTER_THREADS", value_parser = clap::value_parser!(u16).range(1..))]
    threads: Option<u16>,
    /// Write the result here instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
    Table,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModelKind {
    Polygon,
    Punctured,
}

#[derive(Subcommand)]
enum Command {
    /// Surface operations.
    Surface {
        #[command(subcommand)]
        op: SurfaceOp,
    },
    /// Initial ideal triangulation of a surface.
    Triangulate {
        surface: String,
        /// Emit the all-plain tagged triangulation instead.
        #[arg(long)]
        tagged: bool,
    },
    /// Flip one arc of an ideal or tagged triangulation.
    Flip {
        triangulation: String,
        #[arg(long)]
        arc: usize,
    },
    /// Signed adjacency matrix of an ideal or tagged triangulation.
    BMatrix { triangulation: String },
    /// Tagged exchange graph explored from the initial triangulation.
    TaggedBfs {
        #[arg(long)]
        surface: String,
        #[arg(long, default_value_t = 1000, value_parser = positive)]
        max_nodes: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Mutation class up to relabeling.
    MutationClass {
        matrix: String,
        #[arg(long, default_value_t = 10_000, value_parser = positive)]
        max_size: usize,
    },
    /// Catalog type of a quiver's mutation class.
    RecognizeType {
        matrix: String,
        #[arg(long, default_value_t = 20_000, value_parser = positive)]
        max_size: usize,
    },
    /// Rank and corank; genus and punctures if the matrix came from a closed surface.
    Corank { matrix: String },
    /// Block decomposition witness, exit 1 if none exists.
    IsSurfaceMatrix { matrix: String },
    /// Surface and triangulation glued from a block decomposition.
    BlockAssemble { decomposition: String },
    /// Denominator vectors after mutating along a path.
    Denominators {
        #[arg(long)]
        matrix: String,
        /// Comma-separated mutation indices.
        #[arg(long, default_value = "")]
        path: String,
    },
    /// Cluster variables reachable from the initial seed.
    ClusterVars {
        #[arg(long)]
        matrix: String,
        #[arg(long, default_value_t = 1000, value_parser = positive)]
        limit: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Clusters of a polygon or once-punctured polygon.
    Clusters {
        #[arg(long, value_enum)]
        model: ModelKind,
        #[arg(long)]
        m: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

#[derive(Subcommand)]
enum SurfaceOp {
    /// Rank, growth and homotopy type.
    Classify { surface: String },
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be positive".into()),
        Ok(v) => Ok(v),
        Err(e) => Err(e.to_string()),
    }
}

enum Failure {
    Usage(String),
    Domain(Value),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(msg) => Failure::Usage(msg),
            e => Failure::Domain(json!({"error": e.code(), "detail": e.to_string()})),
        }
    }
}

type Outcome = Result<String, Failure>;

fn load(arg: &str) -> Result<Value, Failure> {
    let text = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else if arg == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| Failure::Usage(format!("stdin: {e}")))?;
        s
    } else {
        std::fs::read_to_string(arg).map_err(|e| Failure::Usage(format!("{arg}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{arg}: {e}")))
}

fn parse<T: serde::de::DeserializeOwned>(v: Value, what: &str) -> Result<T, Failure> {
    serde_json::from_value(v).map_err(|e| Failure::Usage(format!("invalid {what}: {e}")))
}

fn load_matrix(arg: &str) -> Result<ExchangeMatrix, Failure> {
    let v = load(arg)?;
    if v.get("edges").is_some() {
        Ok(parse::<Quiver>(v, "quiver")?.to_matrix()?)
    } else {
        parse(v, "matrix")
    }
}

enum AnyTriangulation {
    Ideal(IdealTriangulation),
    Tagged(TaggedTriangulation),
}

fn load_triangulation(arg: &str) -> Result<AnyTriangulation, Failure> {
    let v = load(arg)?;
    Ok(if v.get("base").is_some() {
        AnyTriangulation::Tagged(parse(v, "tagged triangulation")?)
    } else {
        AnyTriangulation::Ideal(parse(v, "triangulation")?)
    })
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

fn only(format: Format, allowed: &[Format]) -> Result<(), Failure> {
    if allowed.contains(&format) {
        Ok(())
    } else {
        Err(Failure::Usage("output format not supported by this command".into()))
    }
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Surface { op: SurfaceOp::Classify { surface } } => {
            let s = validate_surface(&parse::<SurfaceDescriptor>(load(&surface)?, "surface")?)?;
            Ok(to_json(&json!({"surface": s.descriptor(), "classification": classify(&s)})))
        }
        Command::Triangulate { surface, tagged } => {
            let s = validate_surface(&parse::<SurfaceDescriptor>(load(&surface)?, "surface")?)?;
            let t = initial_triangulation(&s);
            Ok(if tagged { to_json(&tag_plain(&t)) } else { to_json(&t) })
        }
        Command::Flip { triangulation, arc } => Ok(match load_triangulation(&triangulation)? {
            AnyTriangulation::Ideal(t) => to_json(&t.flip(arc)?),
            AnyTriangulation::Tagged(t) => to_json(&t.flip(arc)?),
        }),
        Command::BMatrix { triangulation } => Ok(match load_triangulation(&triangulation)? {
            AnyTriangulation::Ideal(t) => to_json(&t.signed_adjacency()),
            AnyTriangulation::Tagged(t) => to_json(&t.exchange_matrix()),
        }),
        Command::TaggedBfs { surface, max_nodes, format } => {
            let s = validate_surface(&parse::<SurfaceDescriptor>(load(&surface)?, "surface")?)?;
            let g = exchange_graph(&tag_plain(&initial_triangulation(&s)), max_nodes);
            Ok(match format {
                Format::Json => to_json(&g),
                Format::Dot => g.to_dot(),
                Format::Table => format!("vertices\t{}\nedges\t{}\ntruncated\t{}", g.len(), g.edges.len(), g.truncated),
            })
        }
        Command::MutationClass { matrix, max_size } => Ok(to_json(&mutation_class(&load_matrix(&matrix)?, max_size)?)),
        Command::RecognizeType { matrix, max_size } => {
            let guess = recognize_type(&load_matrix(&matrix)?, max_size)?;
            Ok(to_json(&json!({"type": guess.to_string()})))
        }
        Command::Corank { matrix } => {
            let b = load_matrix(&matrix)?;
            let closed = recover_genus_punctures(b.n(), b.rank()).ok().map(|(g, p)| json!({"genus": g, "punctures": p}));
            Ok(to_json(&json!({"n": b.n(), "rank": b.rank(), "corank": b.corank(), "closed_surface": closed})))
        }
        Command::IsSurfaceMatrix { matrix } => match decompose(&load_matrix(&matrix)?) {
            Some(d) => Ok(to_json(&json!({"surface_matrix": true, "decomposition": d}))),
            None => Err(Failure::Domain(json!({"error": "not_surface_matrix", "detail": "not block-decomposable"}))),
        },
        Command::BlockAssemble { decomposition } => {
            let d: BlockDecomposition = parse(load(&decomposition)?, "block decomposition")?;
            let (s, t) = surface_from_decomposition(&d)?;
            Ok(to_json(&json!({"matrix": d.matrix()?, "surface": s.descriptor(), "triangulation": t})))
        }
        Command::Denominators { matrix, path } => {
            let b = load_matrix(&matrix)?;
            let path: Vec<usize> = path
                .split(',')
                .filter(|s| !s.trim().is_empty())
                .map(|s| s.trim().parse().map_err(|_| Failure::Usage(format!("bad path entry {s:?}"))))
                .collect::<Result<_, _>>()?;
            let mut seed = Seed::initial(&b);
            for &k in &path {
                seed = seed.mutate(k)?;
            }
            let (symbolic, tropical) = denominators_along(&b, &path)?;
            let cluster: Vec<String> = seed.cluster.iter().map(|x| x.to_string()).collect();
            Ok(to_json(&json!({
                "path": path,
                "cluster": cluster,
                "denominators": symbolic,
                "tropical": tropical,
                "agree": symbolic == tropical,
            })))
        }
        Command::ClusterVars { matrix, limit, format } => {
            only(format, &[Format::Json, Format::Table])?;
            let v = all_cluster_variables(&load_matrix(&matrix)?, limit)?;
            let rows: Vec<(String, Vec<i64>)> =
                v.variables.iter().map(|x| Ok((x.to_string(), x.denominator_vector()?))).collect::<Result<_, Error>>()?;
            Ok(match format {
                Format::Table => rows.iter().map(|(x, d)| format!("{d:?}\t{x}")).collect::<Vec<_>>().join("\n"),
                _ => to_json(&json!({
                    "complete": v.complete,
                    "seeds": v.seeds,
                    "variables": rows.iter().map(|(x, d)| json!({"expression": x, "denominator": d})).collect::<Vec<_>>(),
                })),
            })
        }
        Command::Clusters { model, m, format } => {
            let model = match model {
                ModelKind::Polygon => Model::Polygon(m),
                ModelKind::Punctured => Model::Punctured(m),
            };
            let c = model.enumerate_clusters()?;
            Ok(match format {
                Format::Json => to_json(&c),
                Format::Dot => c.graph.to_dot(),
                Format::Table => c
                    .clusters
                    .iter()
                    .map(|cl| cl.iter().map(|&i| c.arcs[i].to_string()).collect::<Vec<_>>().join(" "))
                    .collect::<Vec<_>>()
                    .join("\n"),
            })
        }
    }
}

fn emit(text: &str, output: Option<&PathBuf>) -> std::io::Result<()> {
    match output {
        Some(p) => std::fs::write(p, format!("{text}\n")),
        None => writeln!(std::io::stdout().lock(), "{text}"),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        // only fails if a pool already exists, which cannot happen here
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n as usize).build_global();
    }
    let (text, code) = match run(cli.command) {
        Ok(text) => (text, 0),
        Err(Failure::Domain(v)) => (to_json(&v), 1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    match emit(&text, cli.output.as_ref()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
        _ => {}
    }
    ExitCode::from(code)
}
