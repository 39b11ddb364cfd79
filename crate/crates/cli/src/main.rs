use std::collections::BTreeMap;
use std::fs;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use linecm::classify::{
    classify_pure, decide_cm, decide_gorenstein, decide_seq_cm, linear_algorithm, CatalogKind, PureClass, Verdict,
};
use linecm::formats::{parse_edge_list, parse_facet_list, write_edge_list};
use linecm::graph::{cycle_graph, path_graph, spider_graph};
use linecm::harness::{check_graph, cross_check, derive_catalog_cm, derive_catalog_gorenstein, CrossCheckOptions};
use linecm::homology::reduced_homology;
use linecm::line_graph::recognize_root;
use linecm::oracle::{is_cm, is_gorenstein, is_seq_cm, is_shellable, is_vertex_decomposable, SHELLING_FACET_LIMIT};
use linecm::simplicial::SimplicialComplex;
use linecm::{Field, Graph};

const SCHEMA: &str = "linecm/1";

const EXIT_INPUT: u8 = 2;
const EXIT_MISMATCH: u8 = 3;
const EXIT_NOT_LINE: u8 = 4;

#[derive(Parser)]
#[command(name = "linecm", version, about = "Cohen-Macaulay tests for clique complexes of line graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify the clique complex of L(H) for an edge-list graph.
    Analyze {
        file: PathBuf,
        /// Treat the input as the root H, or as a graph G to be recognized as L(H).
        #[arg(long, value_enum, default_value_t = InputKind::H)]
        input_graph: InputKind,
        /// Confirm the verdicts with the brute-force oracles.
        #[arg(long)]
        with_oracle: bool,
        /// Field for the oracles: 0 for the rationals, otherwise a prime.
        #[arg(long = "field", value_parser = parse_field)]
        fields: Vec<Field>,
    },
    /// Run every oracle on a facet-list complex.
    Verify {
        #[arg(long)]
        complex: PathBuf,
        #[arg(long = "field", value_parser = parse_field)]
        fields: Vec<Field>,
    },
    /// Derive a catalog fixture by exhaustive search.
    Catalog {
        #[arg(long = "type", value_enum)]
        kind: CatalogType,
        #[arg(long)]
        out: PathBuf,
    },
    /// Compare fast deciders with the oracles on every small connected graph.
    Crosscheck {
        #[arg(long, default_value_t = 5)]
        max_n: usize,
        #[arg(long = "field", value_parser = parse_field)]
        fields: Vec<Field>,
        #[arg(long)]
        jobs: Option<usize>,
        /// Flip the CM verdict of the graph at this position (default 0).
        #[arg(long, num_args = 0..=1, default_missing_value = "0")]
        inject_fault: Option<usize>,
    },
    /// Time the linear algorithm on large paths, cycles or spiders.
    Bench {
        #[arg(long, value_enum)]
        shape: Shape,
        #[arg(long = "size", required = true)]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 3)]
        repeat: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum InputKind {
    H,
    G,
}

#[derive(Clone, Copy, ValueEnum)]
enum CatalogType {
    Cm,
    Gorenstein,
}

#[derive(Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Shape {
    Path,
    Cycle,
    Spider,
}

fn parse_field(s: &str) -> Result<Field, String> {
    s.parse().map_err(|e: linecm::Error| e.to_string())
}

fn fields_or_default(fields: Vec<Field>) -> Vec<Field> {
    if fields.is_empty() {
        Field::DEFAULT_SET.to_vec()
    } else {
        fields
    }
}

/// A failure carrying its exit code.
struct Failure(u8, String);

impl From<linecm::Error> for Failure {
    fn from(e: linecm::Error) -> Failure {
        Failure(EXIT_INPUT, e.to_string())
    }
}

fn read(path: &PathBuf) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure(EXIT_INPUT, format!("{}: {e}", path.display())))
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn print(v: &Value) {
    emit(&format!("{}\n", serde_json::to_string_pretty(v).expect("serializable")));
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Analyze { file, input_graph, with_oracle, fields } => {
            analyze(&file, input_graph, with_oracle, fields_or_default(fields))
        }
        Command::Verify { complex, fields } => verify(&complex, fields_or_default(fields)),
        Command::Catalog { kind, out } => catalog(kind, &out),
        Command::Crosscheck { max_n, fields, jobs, inject_fault } => {
            crosscheck(max_n, fields_or_default(fields), jobs, inject_fault)
        }
        Command::Bench { shape, sizes, repeat } => bench(shape, &sizes, repeat),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure(code, message)) => {
            if !message.is_empty() {
                eprintln!("linecm: {message}");
            }
            ExitCode::from(code)
        }
    }
}

#[derive(Serialize)]
struct Verdicts {
    pure_class: PureClass,
    cm: Verdict,
    seq_cm: Verdict,
    linear_algorithm: Verdict,
    gorenstein: Verdict,
}

fn analyze(file: &PathBuf, kind: InputKind, with_oracle: bool, fields: Vec<Field>) -> Result<(), Failure> {
    let input = parse_edge_list(&read(file)?)?;
    let mut report = json!({
        "schema": SCHEMA,
        "command": "analyze",
        "input": file.display().to_string(),
        "input_graph": match kind { InputKind::H => "h", InputKind::G => "g" },
        "vertices": input.n(),
        "edges": input.m(),
    });
    let h: Graph = match kind {
        InputKind::H => input,
        InputKind::G => match recognize_root(&input).root() {
            Some(rooted) => {
                report["line_graph"] = json!(true);
                report["root"] = json!(write_edge_list(&rooted.root).lines().collect::<Vec<_>>());
                rooted.root.clone()
            }
            None => {
                report["line_graph"] = json!(false);
                print(&report);
                return Err(Failure(EXIT_NOT_LINE, String::new()));
            }
        },
    };
    let verdicts = Verdicts {
        pure_class: classify_pure(&h)?,
        cm: decide_cm(&h)?,
        seq_cm: decide_seq_cm(&h)?,
        linear_algorithm: linear_algorithm(&h)?,
        gorenstein: decide_gorenstein(&h)?,
    };
    report["verdicts"] = serde_json::to_value(&verdicts).expect("serializable");
    let mut mismatch = false;
    if with_oracle {
        let start = Instant::now();
        let record = check_graph(&h, &fields, false)?;
        mismatch = !record.mismatches.is_empty();
        report["oracle"] = json!({
            "fields": fields.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
            "verdicts": record.oracle,
            "mismatches": record.mismatches,
            "agrees": !mismatch,
            "millis": start.elapsed().as_millis(),
        });
    }
    print(&report);
    if mismatch {
        return Err(Failure(EXIT_MISMATCH, "fast deciders disagree with the oracles".into()));
    }
    Ok(())
}

fn verify(path: &PathBuf, fields: Vec<Field>) -> Result<(), Failure> {
    let parsed = parse_facet_list(&read(path)?)?;
    let cx: &SimplicialComplex = &parsed.complex;
    let pure = cx.is_pure()?;
    let mut per_field = BTreeMap::new();
    for &field in &fields {
        per_field.insert(
            field.to_string(),
            json!({
                "homology": reduced_homology(cx, field)?,
                "cm": is_cm(cx, field)?,
                "seq_cm": is_seq_cm(cx, field)?,
                "gorenstein": is_gorenstein(cx, field)?,
            }),
        );
    }
    let shellable = if cx.facets().len() <= SHELLING_FACET_LIMIT {
        json!(is_shellable(cx)?)
    } else {
        json!(format!("skipped: more than {SHELLING_FACET_LIMIT} facets"))
    };
    print(&json!({
        "schema": SCHEMA,
        "command": "verify",
        "input": path.display().to_string(),
        "vertices": parsed.labels,
        "facets": cx.facets().len(),
        "dim": cx.dim()?,
        "f_vector": cx.f_vector(),
        "pure": pure,
        "strongly_connected": if pure { json!(cx.is_strongly_connected()?) } else { Value::Null },
        "fields": per_field,
        "vertex_decomposable": is_vertex_decomposable(cx)?,
        "shellable": shellable,
    }));
    Ok(())
}

fn catalog(kind: CatalogType, out: &PathBuf) -> Result<(), Failure> {
    let cm = derive_catalog_cm()?;
    let derived = match kind {
        CatalogType::Cm => cm,
        CatalogType::Gorenstein => derive_catalog_gorenstein(&cm)?,
    };
    fs::write(out, derived.to_text()).map_err(|e| Failure(EXIT_INPUT, format!("{}: {e}", out.display())))?;
    print(&json!({
        "schema": SCHEMA,
        "command": "catalog",
        "type": match derived.kind { CatalogKind::Cm => "cm", CatalogKind::Gorenstein => "gorenstein" },
        "members": derived.graphs.len(),
        "out": out.display().to_string(),
    }));
    Ok(())
}

fn crosscheck(max_n: usize, fields: Vec<Field>, jobs: Option<usize>, fault: Option<usize>) -> Result<(), Failure> {
    let mut opts = CrossCheckOptions::new(max_n, fields);
    opts.inject_fault = fault;
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(j) = jobs {
        pool = pool.num_threads(j);
    }
    let pool = pool.build().map_err(|e| Failure(EXIT_INPUT, e.to_string()))?;
    let report = pool.install(|| cross_check(&opts))?;
    emit(&report.to_json_lines());
    let summary = json!({
        "schema": SCHEMA,
        "command": "crosscheck",
        "graphs": report.records.len(),
        "mismatches": report.mismatch_count(),
        "shelling_skips": report.capacity_skips,
        "millis": report.millis,
    });
    emit(&format!("{summary}\n"));
    if report.mismatch_count() > 0 {
        return Err(Failure(EXIT_MISMATCH, format!("{} mismatches", report.mismatch_count())));
    }
    Ok(())
}

fn bench_graph(shape: Shape, n: usize) -> Graph {
    match shape {
        Shape::Path => path_graph(n),
        Shape::Cycle => cycle_graph(n.max(3)),
        Shape::Spider => spider_graph(4, (n.max(5) - 1) / 4),
    }
}

fn bench(shape: Shape, sizes: &[usize], repeat: usize) -> Result<(), Failure> {
    let mut rows = Vec::new();
    for &n in sizes {
        if n > 10_000_000 {
            return Err(Failure(EXIT_INPUT, format!("size {n} exceeds 10^7")));
        }
        let g = bench_graph(shape, n);
        let mut times = Vec::new();
        let mut verdict = None;
        for _ in 0..repeat.max(1) {
            let start = Instant::now();
            let v = linear_algorithm(&g)?;
            times.push(start.elapsed().as_secs_f64());
            verdict = Some(v.value);
        }
        times.sort_by(f64::total_cmp);
        rows.push(json!({
            "size": n,
            "vertices": g.n(),
            "verdict": verdict,
            "min_seconds": times[0],
            "median_seconds": times[times.len() / 2],
        }));
    }
    print(&json!({ "schema": SCHEMA, "command": "bench", "shape": shape, "repeat": repeat.max(1), "runs": rows }));
    Ok(())
}
