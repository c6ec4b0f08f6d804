use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use prect::analysis::{DEFAULT_BUDGET_MS, DEFAULT_EXACT_CHI_LIMIT};
use prect::bilinear::{certify_isomorphism, clique_sizes, mapping_table};
use prect::cliques::clique_intersections;
use prect::construct::{Family, RectangleModel};
use prect::formats::{to_dot, to_graph6};
use prect::geometry::{build_plane_clique_structure, build_point_clique_geometry};
use prect::incidence::{DEFAULT_A6_SAMPLES, DEFAULT_SEED};
use prect::linegraph::{build_line_graph, LineGraph};
use prect::pipeline::{
    analyze_graph, bilinear_for, build_model, census_for, infer_order, model_to_json, read_graph_input,
    to_sorted_json, verify_graph, verify_model, FamilySpec, GraphInput, PipelineError, Profile, VerifyOptions,
};

#[derive(Parser)]
#[command(name = "prect", version, about = "Projective rectangles and their graphs of lines")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Construct a rectangle and write its model as JSON.
    Build(SourceArgs),
    /// Certify every property of a model or a graph of lines.
    Verify(VerifyArgs),
    /// Enumerate and classify the maximal cliques of the graph of lines.
    Cliques(SourceArgs),
    /// Certify the isomorphism with the bilinear forms graph.
    Iso(SourceArgs),
    /// Measure the point-clique and plane-clique geometries.
    Geometry(SourceArgs),
    /// Planarity, Euler and Hamilton cycles, colourings, Krein conditions.
    Analyze(VerifyArgs),
    /// Write a model, graph, census or bilinear graph in a chosen format.
    Export(ExportArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    L2k,
    Subplane,
    Plane,
}

#[derive(Args)]
struct SourceArgs {
    /// Read a model JSON or graph6 file instead of constructing one.
    #[arg(long, value_name = "FILE", conflicts_with = "family")]
    input: Option<PathBuf>,
    #[arg(long, value_enum)]
    family: Option<FamilyArg>,
    #[arg(long, default_value_t = 2)]
    p: u64,
    #[arg(long, default_value_t = 1)]
    e: u32,
    #[arg(long, default_value_t = 2)]
    k: u32,
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ProfileArg {
    Quick,
    Full,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    source: SourceArgs,
    #[arg(long, value_enum, default_value = "full")]
    profile: ProfileArg,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Sampled A6 triples under the quick profile.
    #[arg(long, default_value_t = DEFAULT_A6_SAMPLES)]
    samples: u64,
    #[arg(long, default_value_t = DEFAULT_EXACT_CHI_LIMIT)]
    exact_chi_limit: usize,
    #[arg(long, default_value_t = DEFAULT_BUDGET_MS)]
    budget_ms: u64,
    /// Record wall-clock timings in the report.
    #[arg(long)]
    timings: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Dot,
    Graph6,
}

#[derive(Clone, Copy, ValueEnum)]
enum ObjectArg {
    Model,
    Graph,
    Census,
    Bilinear,
}

#[derive(Args)]
struct ExportArgs {
    #[command(flatten)]
    source: SourceArgs,
    #[arg(long, value_enum, default_value = "json")]
    format: FormatArg,
    /// Defaults to the model for JSON and the graph of lines otherwise.
    #[arg(long, value_enum)]
    object: Option<ObjectArg>,
}

type Outcome = Result<bool, PipelineError>;

fn main() -> ExitCode {
    if let Some(t) = std::env::var("PRECT_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
    }
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Build(a) => cmd_build(&a),
        Command::Verify(a) => cmd_verify(&a, false),
        Command::Cliques(a) => cmd_cliques(&a),
        Command::Iso(a) => cmd_iso(&a),
        Command::Geometry(a) => cmd_geometry(&a),
        Command::Analyze(a) => cmd_verify(&a, true),
        Command::Export(a) => cmd_export(&a),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn family_spec(a: &SourceArgs) -> FamilySpec {
    match a.family.unwrap_or(FamilyArg::L2k) {
        FamilyArg::L2k => FamilySpec::L2k { k: a.k },
        FamilyArg::Subplane => FamilySpec::Subplane { p: a.p, e: a.e, k: a.k },
        FamilyArg::Plane => FamilySpec::Plane { p: a.p, e: a.e },
    }
}

fn load(a: &SourceArgs) -> Result<GraphInput, PipelineError> {
    match &a.input {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| PipelineError::Input(format!("{}: {e}", path.display())))?;
            read_graph_input(&text)
        }
        None => Ok(GraphInput::Model(Box::new(build_model(family_spec(a))?))),
    }
}

fn load_model(a: &SourceArgs) -> Result<RectangleModel, PipelineError> {
    match load(a)? {
        GraphInput::Model(m) => Ok(*m),
        GraphInput::Graph(_) => Err(PipelineError::Input("this command needs a model, not a bare graph".into())),
    }
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), PipelineError> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| PipelineError::Input(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn cmd_build(a: &SourceArgs) -> Outcome {
    let model = load_model(a)?;
    eprintln!(
        "built {} of order ({}, {})",
        family_spec(a),
        model.order.m,
        model.order.n
    );
    emit(&a.out, &model_to_json(&model)?)?;
    Ok(true)
}

fn options(a: &VerifyArgs) -> VerifyOptions {
    VerifyOptions {
        profile: match a.profile {
            ProfileArg::Quick => Profile::Quick,
            ProfileArg::Full => Profile::Full,
        },
        seed: a.seed,
        a6_samples: a.samples,
        exact_chi_limit: a.exact_chi_limit,
        budget_ms: a.budget_ms,
        timings: a.timings,
    }
}

fn cmd_verify(a: &VerifyArgs, analysis_only: bool) -> Outcome {
    let opts = options(a);
    let rep = match load(&a.source)? {
        GraphInput::Model(model) if analysis_only => {
            let g = build_line_graph(&model)?;
            let l22 = model.family == (Family::L2k { k: 2 });
            analyze_graph(&g, model.order.m, model.order.n, l22, &opts)
        }
        GraphInput::Model(model) => verify_model(&model, &opts)?,
        GraphInput::Graph(g) => {
            let (m, n) = infer_order(&g)?;
            if analysis_only {
                analyze_graph(&g, m, n, false, &opts)
            } else {
                verify_graph(&g, m, n, &opts)?
            }
        }
    };
    eprint!("{}", rep.summary());
    emit(&a.source.out, &rep.to_json()?)?;
    Ok(rep.passed)
}

fn cmd_cliques(a: &SourceArgs) -> Outcome {
    let model = load_model(a)?;
    let (g, census) = census_for(&model)?;
    let inter = clique_intersections(&census, &g, &model);
    for c in &census.checks {
        eprintln!("{} {}", if c.passed { "PASS" } else { "FAIL" }, c.name);
    }
    eprintln!("{} intersection laws", if inter.passed { "PASS" } else { "FAIL" });
    emit(&a.out, &to_sorted_json(&census)?)?;
    Ok(census.passed() && inter.passed)
}

fn cmd_iso(a: &SourceArgs) -> Outcome {
    let model = load_model(a)?;
    let g = build_line_graph(&model)?;
    let (cm, h) = bilinear_for(&model)?;
    let cert = certify_isomorphism(&g, &cm, &h)?;
    let doc = json!({
        "certificate": cert,
        "mapping": mapping_table(&cm, &h)?,
        "bilinear_clique_sizes": clique_sizes(&h)?,
    });
    eprintln!("{} isomorphism", if cert.valid { "PASS" } else { "FAIL" });
    emit(&a.out, &to_sorted_json(&doc)?)?;
    Ok(cert.valid)
}

fn cmd_geometry(a: &SourceArgs) -> Outcome {
    let model = load_model(a)?;
    let (g, census) = census_for(&model)?;
    let nv = g.num_vertices();
    let pg = build_point_clique_geometry(&census, nv);
    let pl = build_plane_clique_structure(&census, nv);
    let trivial = model.order.m == model.order.n;
    let ok = (trivial || pg.passed) && pl.passed;
    eprintln!("{} point-clique geometry", if trivial || pg.passed { "PASS" } else { "FAIL" });
    eprintln!("{} plane-clique structure", if pl.passed { "PASS" } else { "FAIL" });
    let doc = json!({ "point_clique_geometry": pg, "plane_clique_structure": pl });
    emit(&a.out, &to_sorted_json(&doc)?)?;
    Ok(ok)
}

fn export_graph(g: &LineGraph, name: &str, format: FormatArg) -> Result<String, PipelineError> {
    Ok(match format {
        FormatArg::Graph6 => format!("{}\n", to_graph6(g)?),
        FormatArg::Dot => to_dot(g, name),
        FormatArg::Json => to_sorted_json(&json!({
            "vertices": g.num_vertices(),
            "edges": g.edges().map(|(u, v, c)| json!([u, v, c])).collect::<Vec<_>>(),
            "colors": g.color_names(),
        }))?,
    })
}

fn cmd_export(a: &ExportArgs) -> Outcome {
    let object = a.object.unwrap_or(match a.format {
        FormatArg::Json => ObjectArg::Model,
        _ => ObjectArg::Graph,
    });
    let text = match (object, load(&a.source)?) {
        (ObjectArg::Graph, GraphInput::Graph(g)) => export_graph(&g, "lines", a.format)?,
        (_, GraphInput::Graph(_)) => {
            return Err(PipelineError::Input("a bare graph can only be exported as a graph".into()));
        }
        (ObjectArg::Model, GraphInput::Model(m)) => match a.format {
            FormatArg::Json => model_to_json(&m)?,
            _ => return Err(PipelineError::Input("a model exports only as JSON".into())),
        },
        (ObjectArg::Census, GraphInput::Model(m)) => match a.format {
            FormatArg::Json => to_sorted_json(&census_for(&m)?.1)?,
            _ => return Err(PipelineError::Input("a census exports only as JSON".into())),
        },
        (ObjectArg::Graph, GraphInput::Model(m)) => export_graph(&build_line_graph(&m)?, "lines", a.format)?,
        (ObjectArg::Bilinear, GraphInput::Model(m)) => {
            let (_, h) = bilinear_for(&m)?;
            export_graph(&h.graph, "bilinear", a.format)?
        }
    };
    emit(&a.source.out, &text)?;
    Ok(true)
}
