use std::fmt::Write as _;
use std::io::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use shi_faces::chain::{t_to_w, w_to_t, MarkedFunction};
use shi_faces::counting::{self, IdentityReport};
use shi_faces::maps::{phi_catalan, phi_shi, point_to_tree, shi_tree_of_face, witness_point};
use shi_faces::oracle::{enumerate_faces, GridParams};
use shi_faces::verify::{self, CountRow, SuiteReport};
use shi_faces::{
    enumerate_trees, face_code_of_point, face_dimension, parse_rational, parse_tree, render_tree, Arrangement,
    FaceCode, Kind, RationalPoint,
};

/// Faces of the Catalan and Shi arrangements, their decorated trees and marked functions.
#[derive(Debug, Parser)]
#[command(name = "shi-faces", version)]
struct Cli {
    /// Output format
    #[arg(long, value_enum, global = true, default_value_t = Format::Table)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Face counts by dimension from the closed forms
    Count {
        kind: String,
        n: usize,
        #[arg(default_value_t = 1)]
        m: usize,
        /// Also count with the grid oracle, the trees and the marked functions
        #[arg(long)]
        exhaustive: bool,
    },
    /// Enumerate all faces with the grid oracle and write faces.json
    Enumerate {
        kind: String,
        n: usize,
        #[arg(default_value_t = 1)]
        m: usize,
        /// Write the census here instead of stdout
        #[arg(long)]
        output: Option<PathBuf>,
        /// Grid denominator (at least n + 1)
        #[arg(long)]
        denominator: Option<i64>,
        /// Grid half span, an exact rational such as 7 or 15/2
        #[arg(long)]
        half_span: Option<String>,
    },
    /// Print every decorated tree on [n], one per line
    Trees {
        n: usize,
        #[arg(long, default_value_t = 1)]
        m: usize,
        /// Only trees of Shi type
        #[arg(long)]
        shi_only: bool,
        /// Only trees with this many free nodes
        #[arg(long)]
        free: Option<usize>,
    },
    /// Convert one object along the bijections
    Map {
        #[arg(value_enum)]
        direction: Direction,
        payload: String,
        #[arg(long, default_value_t = 1)]
        m: usize,
    },
    /// Check a generating-function identity coefficient by coefficient
    Series {
        #[arg(value_enum)]
        which: SeriesKind,
        #[arg(long, default_value_t = 1)]
        m: usize,
        #[arg(long, default_value_t = 6)]
        order: usize,
    },
    /// Run every cross-check for n <= n_max and m <= m_max
    Verify {
        n_max: usize,
        #[arg(default_value_t = 1)]
        m_max: usize,
        /// Also write counts.csv rows for every checked (kind, n, m)
        #[arg(long)]
        counts: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Direction {
    TreeToFace,
    PointToTree,
    TreeToMarkedFunction,
    MarkedFunctionToTree,
    ShiFaceToTree,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SeriesKind {
    Catalan,
    Shi,
    DashTrees,
    Composition,
}

#[derive(Debug)]
enum Failure {
    /// Bad arguments or input objects.
    Usage(String),
    Input(shi_faces::Error),
    /// A check ran and did not pass.
    Check(String),
    Io(String),
}

impl From<shi_faces::Error> for Failure {
    fn from(e: shi_faces::Error) -> Self {
        Failure::Input(e)
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Usage(_) | Failure::Input(_) => 2,
            Failure::Check(_) | Failure::Io(_) => 1,
        }
    }

    fn report(&self) -> String {
        match self {
            Failure::Usage(msg) => format!("error[usage]: {msg}"),
            Failure::Input(e) => format!("error[{}]: {e}", e.code()),
            Failure::Check(msg) => format!("error[check_failed]: {msg}"),
            Failure::Io(msg) => format!("error[io]: {msg}"),
        }
    }
}

type Outcome = Result<String, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            emit(&out);
            ExitCode::SUCCESS
        }
        Err(Failure::Check(out)) => {
            emit(&out);
            eprintln!("{}", Failure::Check("at least one check failed".into()).report());
            ExitCode::from(1)
        }
        Err(f) => {
            eprintln!("{}", f.report());
            ExitCode::from(f.exit_code())
        }
    }
}

/// Writes to stdout; a closed pipe (e.g. `| head`) is not an error.
fn emit(out: &str) {
    let mut stdout = std::io::stdout().lock();
    let _ = stdout.write_all(out.as_bytes()).and_then(|()| stdout.flush());
}

fn run(cli: &Cli) -> Outcome {
    let format = cli.format;
    match &cli.command {
        Command::Count { kind, n, m, exhaustive } => cmd_count(parse_kind(kind)?, *n, *m, *exhaustive, format),
        Command::Enumerate {
            kind,
            n,
            m,
            output,
            denominator,
            half_span,
        } => cmd_enumerate(parse_kind(kind)?, *n, *m, output.as_ref(), *denominator, half_span.as_deref(), format),
        Command::Trees { n, m, shi_only, free } => cmd_trees(*n, *m, *shi_only, *free, format),
        Command::Map { direction, payload, m } => cmd_map(*direction, payload, *m, format),
        Command::Series { which, m, order } => cmd_series(*which, *m, *order, format),
        Command::Verify { n_max, m_max, counts } => cmd_verify(*n_max, *m_max, counts.as_ref(), format),
    }
}

fn parse_kind(text: &str) -> Result<Kind, Failure> {
    text.parse().map_err(Failure::Input)
}

fn check_m(m: usize) -> Result<(), Failure> {
    if m == 0 {
        return Err(Failure::Usage("m must be at least 1".into()));
    }
    Ok(())
}

fn json_out(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn csv_out(rows: &[CountRow]) -> String {
    let mut out = format!("{}\n", CountRow::CSV_HEADER);
    for r in rows {
        out.push_str(&r.to_csv());
        out.push('\n');
    }
    out
}

fn cmd_count(kind: Kind, n: usize, m: usize, exhaustive: bool, format: Format) -> Outcome {
    check_m(m)?;
    if n == 0 {
        return Err(Failure::Usage("n must be at least 1".into()));
    }
    let rows = verify::count_rows(kind, n, m, exhaustive)?;
    Ok(match format {
        Format::Json => json_out(&serde_json::to_value(&rows).expect("serializable")),
        Format::Csv => csv_out(&rows),
        Format::Table => {
            let mut out = String::new();
            if exhaustive {
                out.push_str("k\tformula\toracle\ttrees\tmarked_functions\n");
                let opt = |v: Option<usize>| v.map_or("-".to_string(), |v| v.to_string());
                for r in &rows {
                    let _ = writeln!(
                        out,
                        "{}\t{}\t{}\t{}\t{}",
                        r.k,
                        r.formula_count,
                        opt(r.oracle_count),
                        opt(r.tree_count),
                        opt(r.w_count)
                    );
                }
            } else {
                out.push_str("k\tcount\n");
                for r in &rows {
                    let _ = writeln!(out, "{}\t{}", r.k, r.formula_count);
                }
            }
            out
        }
    })
}

fn cmd_enumerate(
    kind: Kind,
    n: usize,
    m: usize,
    output: Option<&PathBuf>,
    denominator: Option<i64>,
    half_span: Option<&str>,
    format: Format,
) -> Outcome {
    let arr = Arrangement::new(kind, n, m)?;
    let minimal = GridParams::minimal(&arr);
    let half_span = match half_span {
        Some(text) => parse_rational(text).map_err(|e| Failure::Input(e.into()))?,
        None => minimal.half_span.clone(),
    };
    let params = GridParams::new(denominator.unwrap_or(minimal.denominator), half_span);
    let census = enumerate_faces(&arr, &params)?;
    let doc = json_out(&census.to_json());
    let Some(path) = output else {
        return Ok(doc);
    };
    fs::write(path, &doc).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    let counts: Vec<String> = census
        .counts_by_dim()
        .iter()
        .map(|(d, c)| format!("{d}:{c}"))
        .collect();
    Ok(match format {
        Format::Json => json_out(&json!({
            "output": path.display().to_string(),
            "faces": census.len(),
            "counts_by_dim": census.to_json()["counts_by_dim"],
        })),
        _ => format!(
            "wrote {} faces of {arr} to {}\ncounts by dimension {}\n",
            census.len(),
            path.display(),
            counts.join(" ")
        ),
    })
}

fn cmd_trees(n: usize, m: usize, shi_only: bool, free: Option<usize>, format: Format) -> Outcome {
    check_m(m)?;
    let texts: Vec<String> = enumerate_trees(n, m, shi_only)
        .iter()
        .filter(|t| free.is_none_or(|k| t.free_node_count() == k))
        .map(render_tree)
        .collect();
    Ok(match format {
        Format::Json => json_out(&json!(texts)),
        _ => texts.iter().map(|t| format!("{t}\n")).collect(),
    })
}

fn point_strings(p: &RationalPoint) -> Vec<String> {
    p.coords().iter().map(ToString::to_string).collect()
}

fn face_block(label: &str, code: &FaceCode) -> Result<String, Failure> {
    let mut out = format!("{label}: {} (dimension {})\n", code.arrangement(), face_dimension(code)?);
    for line in code.describe() {
        let _ = writeln!(out, "  {line}");
    }
    Ok(out)
}

fn cmd_map(direction: Direction, payload: &str, m: usize, format: Format) -> Outcome {
    check_m(m)?;
    match direction {
        Direction::TreeToFace => {
            let tree = parse_tree(payload, m)?;
            let cat = phi_catalan(&tree);
            let shi = tree.is_shi_type().then(|| phi_shi(&tree));
            let witness = witness_point(&tree);
            Ok(match format {
                Format::Json => json_out(&json!({
                    "tree": render_tree(&tree),
                    "catalan_face": cat.to_json(),
                    "dimension": face_dimension(&cat)?,
                    "witness": point_strings(&witness),
                    "shi_face": shi.as_ref().map(FaceCode::to_json),
                })),
                _ => {
                    let mut out = face_block("catalan face", &cat)?;
                    if let Some(shi) = &shi {
                        out.push_str(&face_block("shi face", shi)?);
                    }
                    let _ = writeln!(out, "witness: {witness}");
                    out
                }
            })
        }
        Direction::PointToTree => {
            let p: RationalPoint = payload.parse().map_err(|e: shi_faces::ParseError| Failure::Input(e.into()))?;
            let tree = point_to_tree(&p, m)?;
            tree_out(&tree, format)
        }
        Direction::TreeToMarkedFunction => {
            let tree = parse_tree(payload, m)?;
            let w = t_to_w(&tree)?;
            Ok(match format {
                Format::Json => json_out(&w.to_json()),
                _ => format!("{w}\n"),
            })
        }
        Direction::MarkedFunctionToTree => {
            let w = MarkedFunction::parse(payload, m)?;
            tree_out(&w_to_t(&w)?, format)
        }
        Direction::ShiFaceToTree => {
            let code = shi_face_payload(payload, m)?;
            let arr = code.arrangement();
            let cat = Arrangement::catalan(arr.n(), arr.m())?;
            let census = enumerate_faces(&cat, &GridParams::minimal(&cat))?;
            tree_out(&shi_tree_of_face(&code, &census)?, format)
        }
    }
}

/// A Shi face given as face JSON (as in faces.json) or as a point inside it.
fn shi_face_payload(payload: &str, m: usize) -> Result<FaceCode, Failure> {
    let trimmed = payload.trim_start();
    if trimmed.starts_with('{') {
        let value: Value =
            serde_json::from_str(trimmed).map_err(|e| Failure::Usage(format!("face JSON: {e}")))?;
        return Ok(FaceCode::from_json(&value)?);
    }
    let p: RationalPoint = payload.parse().map_err(|e: shi_faces::ParseError| Failure::Input(e.into()))?;
    Ok(face_code_of_point(&Arrangement::shi(p.dim(), m)?, &p)?)
}

fn tree_out(tree: &shi_faces::DecoratedTree, format: Format) -> Outcome {
    Ok(match format {
        Format::Json => json_out(&json!({
            "tree": render_tree(tree),
            "free_nodes": tree.free_node_count(),
            "shi_type": tree.is_shi_type(),
        })),
        _ => format!("{tree}\n"),
    })
}

fn identity_json(r: &IdentityReport) -> Value {
    serde_json::to_value(r).expect("serializable")
}

fn cmd_series(which: SeriesKind, m: usize, order: usize, format: Format) -> Outcome {
    check_m(m)?;
    let report = match which {
        SeriesKind::Catalan => counting::verify_catalan_gf(m, order),
        SeriesKind::Shi => counting::verify_shi_gf(m, order),
        SeriesKind::DashTrees => counting::verify_dash_tree_gf(m, order),
        SeriesKind::Composition => counting::verify_catalan_from_dash_trees(m, order),
    };
    let out = match format {
        Format::Json => json_out(&identity_json(&report)),
        _ => format!("{}\n", SuiteReport::from(report.clone()).summary()),
    };
    if report.passed() {
        Ok(out)
    } else {
        Err(Failure::Check(out))
    }
}

fn cmd_verify(n_max: usize, m_max: usize, counts: Option<&PathBuf>, format: Format) -> Outcome {
    check_m(m_max)?;
    if n_max == 0 {
        return Err(Failure::Usage("n_max must be at least 1".into()));
    }
    let reports = verify::run_all(n_max, m_max);
    if let Some(path) = counts {
        let mut rows = Vec::new();
        for m in 1..=m_max {
            for n in 1..=n_max {
                for kind in [Kind::Braid, Kind::MCatalan, Kind::MShi] {
                    if kind != Kind::Braid || m == 1 {
                        rows.extend(verify::count_rows(kind, n, m, true)?);
                    }
                }
            }
        }
        fs::write(path, csv_out(&rows)).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    }
    let passed = reports.iter().all(SuiteReport::passed);
    let out = match format {
        Format::Json => json_out(&json!({
            "passed": passed,
            "suites": serde_json::to_value(&reports).expect("serializable"),
        })),
        Format::Csv => {
            let mut out = String::from("suite,checked,passed,first_failure\n");
            for r in &reports {
                let first = r.failures.first().map(|f| f.replace('"', "\"\"")).unwrap_or_default();
                let _ = writeln!(out, "\"{}\",{},{},\"{first}\"", r.name, r.checked, r.passed());
            }
            out
        }
        Format::Table => {
            let mut out: String = reports.iter().map(|r| format!("{}\n", r.summary())).collect();
            let failed = reports.iter().filter(|r| !r.passed()).count();
            let _ = writeln!(out, "{} suites, {failed} failed", reports.len());
            out
        }
    };
    if passed {
        Ok(out)
    } else {
        Err(Failure::Check(out))
    }
}
