//! The `tightfin` command line.
//!
//! Exit status: 0 on success, 1 on domain errors (infeasible normalization,
//! invalid weights, malformed surfaces), 2 on usage, I/O and parse errors.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::branched::{
    self, BranchedSurface, DegreeViolation, Positivity, VerticalAnnulusRecord,
    WeightFunction,
};
use crate::farey::{self, FareyPath, Slope};
use crate::multicurve::{self, BoundaryData, MulticurveCoordinates};
use crate::scalar::{format_ratio, parse_ratio, serde_int, Int};
use crate::seifert::{self, AnalysisReport, SeifertTriple};

type BigSlope = Slope<BigInt>;

#[derive(Debug, Parser)]
#[command(name = "tightfin", version, about = "Exact slope, weight and multicurve calculator")]
pub struct Cli {
    /// Report format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Farey tessellation queries
    #[command(subcommand)]
    Farey(FareyCommand),
    /// Weight systems on a branched surface
    #[command(subcommand)]
    Weights(WeightsCommand),
    /// Remove sectors from a branched surface
    Amputate(AmputateArgs),
    /// Check vertical annulus degrees against their boundary classes
    DegreeCheck(InputArgs),
    /// Slope analysis of a small Seifert fibered space
    Seifert(SeifertArgs),
    /// Enumerate dividing sets on the 3-punctured sphere
    Multicurve(MulticurveArgs),
}

#[derive(Debug, Subcommand)]
pub enum FareyCommand {
    /// |ps - qr| for slopes p/q and r/s
    Intersect(PairArgs),
    /// Whether two slopes share a Farey edge
    Edge(PairArgs),
    /// Farey sum of two adjacent slopes
    Mediant(PairArgs),
    /// Greatest slope with an edge to the given one
    Successor {
        #[arg(long, allow_hyphen_values = true)]
        slope: BigSlope,
    },
    /// Greatest slope in (slope, upper) with an edge to slope
    Neighbor {
        #[arg(long, allow_hyphen_values = true)]
        slope: BigSlope,
        #[arg(long, allow_hyphen_values = true)]
        upper: BigSlope,
    },
    /// Shortest increasing Farey path
    Path {
        #[arg(long, allow_hyphen_values = true)]
        from: BigSlope,
        #[arg(long, allow_hyphen_values = true)]
        to: BigSlope,
    },
}

#[derive(Debug, Args)]
pub struct PairArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub a: BigSlope,
    #[arg(long, allow_hyphen_values = true)]
    pub b: BigSlope,
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Branched surface document (JSON)
    #[arg(long)]
    pub input: PathBuf,
}

#[derive(Debug, Subcommand)]
pub enum WeightsCommand {
    /// Check a weight function against the branch equations
    Check {
        #[command(flatten)]
        input: InputArgs,
        /// Weight function document: sector id -> integer
        #[arg(long)]
        weights: PathBuf,
    },
    /// Enumerate weight functions with entries in [0, max] (or [1, max])
    Solve {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        max: u64,
        #[arg(long)]
        positive: bool,
    },
    /// Euler characteristic of the surface carried with the given weights
    Euler {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        weights: PathBuf,
    },
}

#[derive(Debug, Args)]
pub struct AmputateArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Comma-separated sector ids
    #[arg(long, value_delimiter = ',', required = true)]
    pub sectors: Vec<String>,
}

#[derive(Debug, Args)]
pub struct SeifertArgs {
    /// Invariants as "(b1/a1, b2/a2, b3/a3)"
    #[arg(long, allow_hyphen_values = true)]
    pub triple: SeifertTriple<BigInt>,
    /// Largest k to tabulate
    #[arg(long, default_value = "5", value_parser = parse_k)]
    pub kmax: Ratio<BigInt>,
}

fn parse_k(s: &str) -> Result<Ratio<BigInt>, String> {
    parse_ratio(s).ok_or_else(|| format!("invalid rational {s:?}"))
}

#[derive(Debug, Args)]
pub struct MulticurveArgs {
    /// Half endpoint counts as "k1,k2,k3"
    #[arg(long)]
    pub boundary: BoundaryData,
    /// Also allow boundary-parallel arcs
    #[arg(long)]
    pub allow_bp: bool,
}

/// The on-disk branched surface format.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceDocument {
    #[serde(flatten)]
    pub surface: BranchedSurface,
    #[serde(default)]
    pub vertical_annuli: Vec<VerticalAnnulusRecord>,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Domain(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            Self::Usage(_) => 2,
            Self::Domain(_) => 1,
        }
    }
}

fn domain(e: impl std::fmt::Display) -> CliError {
    CliError::Domain(e.to_string())
}

/// Reads and validates a surface document.
pub fn load_surface(path: &Path) -> Result<SurfaceDocument, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    let doc: SurfaceDocument = serde_json::from_str(&text)
        .map_err(|e| CliError::Usage(format!("cannot parse {}: {e}", path.display())))?;
    let violations = doc.surface.validate();
    if !violations.is_empty() {
        let mut msg = format!("{} is not a valid branched surface:", path.display());
        for v in &violations {
            let _ = write!(msg, "\n  {v}");
        }
        return Err(CliError::Domain(msg));
    }
    Ok(doc)
}

fn load_weights(path: &Path) -> Result<WeightFunction<BigInt>, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::Usage(format!("cannot parse {}: {e}", path.display())))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntersectionReport {
    pub a: BigSlope,
    pub b: BigSlope,
    #[serde(with = "serde_int")]
    pub intersection_number: BigInt,
    pub edge: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MediantReport {
    pub a: BigSlope,
    pub b: BigSlope,
    pub mediant: BigSlope,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuccessorReport {
    pub slope: BigSlope,
    pub successor: BigSlope,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NeighborReport {
    pub slope: BigSlope,
    pub upper: BigSlope,
    pub neighbor: BigSlope,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathReport {
    pub from: BigSlope,
    pub to: BigSlope,
    pub length: usize,
    pub path: FareyPath<BigInt>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub valid: bool,
    pub weights: WeightFunction<BigInt>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveReport {
    pub sectors: Vec<String>,
    pub max_weight: u64,
    pub positivity: Positivity,
    pub count: usize,
    pub solutions: Vec<WeightFunction<BigInt>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EulerReport {
    pub weights: WeightFunction<BigInt>,
    #[serde(with = "serde_int")]
    pub euler_characteristic: BigInt,
    pub tori: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnnulusRow {
    pub id: String,
    pub degree: u32,
    pub tangencies: u64,
    pub boundary_classes: [branched::BoundaryClass; 2],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeReport {
    pub annuli: Vec<AnnulusRow>,
    pub violations: Vec<DegreeViolation>,
    pub consistent: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MulticurveReport {
    pub boundary: BoundaryData,
    pub allow_boundary_parallel: bool,
    pub count: usize,
    pub tight_candidates: usize,
    pub multicurves: Vec<MulticurveCoordinates>,
}

/// Runs one invocation; `argv[0]` is the program name.
pub fn run(argv: &[String], out: &mut dyn Write, err: &mut dyn Write) -> u8 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 { out.write_all(rendered.as_bytes()) } else { err.write_all(rendered.as_bytes()) };
            return code;
        }
    };
    match execute(&cli) {
        Ok(report) => {
            let _ = out.write_all(report.as_bytes());
            0
        }
        Err(Failure { error, report }) => {
            if let Some(r) = report {
                let _ = out.write_all(r.as_bytes());
            }
            let (CliError::Usage(msg) | CliError::Domain(msg)) = &error;
            let _ = writeln!(err, "error: {msg}");
            error.code()
        }
    }
}

struct Failure {
    error: CliError,
    /// A report still worth printing, e.g. the check that found invalid weights.
    report: Option<String>,
}

impl From<CliError> for Failure {
    fn from(error: CliError) -> Self {
        Self { error, report: None }
    }
}

fn emit<R: Serialize>(format: Format, report: &R, text: impl FnOnce(&R) -> String) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
            s.push('\n');
            s
        }
        Format::Text => text(report),
    }
}

fn execute(cli: &Cli) -> Result<String, Failure> {
    let f = cli.format;
    match &cli.command {
        Command::Farey(cmd) => Ok(run_farey(f, cmd)?),
        Command::Weights(cmd) => run_weights(f, cmd),
        Command::Amputate(args) => {
            let doc = load_surface(&args.input.input)?;
            let surface = doc.surface.amputate(&args.sectors).map_err(domain)?;
            let next = SurfaceDocument { surface, vertical_annuli: doc.vertical_annuli };
            Ok(emit(f, &next, surface_text))
        }
        Command::DegreeCheck(args) => {
            let doc = load_surface(&args.input)?;
            let violations = branched::check_degree_consistency(&doc.vertical_annuli);
            let report = DegreeReport {
                annuli: doc
                    .vertical_annuli
                    .iter()
                    .map(|a| AnnulusRow {
                        id: a.id.clone(),
                        degree: a.degree,
                        tangencies: branched::tangency_count(a),
                        boundary_classes: a.boundary_classes,
                    })
                    .collect(),
                consistent: violations.is_empty(),
                violations,
            };
            Ok(emit(f, &report, degree_text))
        }
        Command::Seifert(args) => {
            let report = seifert::analyze(&args.triple, &args.kmax).map_err(domain)?;
            Ok(emit(f, &report, seifert_text))
        }
        Command::Multicurve(args) => {
            let multicurves = multicurve::enumerate(&args.boundary, args.allow_bp);
            let report = MulticurveReport {
                boundary: args.boundary,
                allow_boundary_parallel: args.allow_bp,
                count: multicurves.len(),
                tight_candidates: multicurves.iter().filter(|m| m.is_tight_candidate()).count(),
                multicurves,
            };
            Ok(emit(f, &report, |r| {
                let mut s = String::new();
                for m in &r.multicurves {
                    let _ = writeln!(s, "{m}");
                }
                let _ = writeln!(s, "count: {}", r.count);
                s
            }))
        }
    }
}

fn run_farey(f: Format, cmd: &FareyCommand) -> Result<String, CliError> {
    Ok(match cmd {
        FareyCommand::Intersect(p) | FareyCommand::Edge(p) => {
            let report = IntersectionReport {
                a: p.a.clone(),
                b: p.b.clone(),
                intersection_number: farey::intersection_number(&p.a, &p.b),
                edge: farey::is_edge(&p.a, &p.b),
            };
            let edge_only = matches!(cmd, FareyCommand::Edge(_));
            emit(f, &report, |r| {
                if edge_only {
                    format!("{}\n", r.edge)
                } else {
                    format!("{}\n", r.intersection_number)
                }
            })
        }
        FareyCommand::Mediant(p) => {
            let mediant = farey::mediant(&p.a, &p.b).map_err(domain)?;
            let report = MediantReport { a: p.a.clone(), b: p.b.clone(), mediant };
            emit(f, &report, |r| format!("{}\n", r.mediant))
        }
        FareyCommand::Successor { slope } => {
            let successor = farey::successor(slope).map_err(domain)?;
            emit(f, &SuccessorReport { slope: slope.clone(), successor }, |r| format!("{}\n", r.successor))
        }
        FareyCommand::Neighbor { slope, upper } => {
            let neighbor = farey::greatest_neighbor_below(slope, upper).map_err(domain)?;
            let report = NeighborReport { slope: slope.clone(), upper: upper.clone(), neighbor };
            emit(f, &report, |r| format!("{}\n", r.neighbor))
        }
        FareyCommand::Path { from, to } => {
            let path = farey::shortest_increasing_path(from, to).map_err(domain)?;
            let report = PathReport { from: from.clone(), to: to.clone(), length: path.len(), path };
            emit(f, &report, |r| format!("{}\n", r.path))
        }
    })
}

fn run_weights(f: Format, cmd: &WeightsCommand) -> Result<String, Failure> {
    match cmd {
        WeightsCommand::Check { input, weights } => {
            let doc = load_surface(&input.input)?;
            let w = load_weights(weights)?;
            let valid = branched::check_weights(&doc.surface, &w).map_err(domain)?;
            let report = CheckReport { valid, weights: w };
            let text = emit(f, &report, |r| format!("{} {}\n", r.weights, if r.valid { "valid" } else { "invalid" }));
            if valid {
                Ok(text)
            } else {
                Err(Failure {
                    error: CliError::Domain("weights violate the branch equations".into()),
                    report: Some(text),
                })
            }
        }
        WeightsCommand::Solve { input, max, positive } => {
            let doc = load_surface(&input.input)?;
            let positivity = if *positive { Positivity::Positive } else { Positivity::Nonnegative };
            let solutions = branched::enumerate_weights(&doc.surface, &BigInt::from(*max), positivity);
            let report = SolveReport {
                sectors: doc.surface.sector_ids().into_iter().map(String::from).collect(),
                max_weight: *max,
                positivity,
                count: solutions.len(),
                solutions,
            };
            Ok(emit(f, &report, |r| {
                let mut s = format!("sectors: {}\n", r.sectors.join(" "));
                for w in &r.solutions {
                    let _ = writeln!(s, "{w}");
                }
                let _ = writeln!(s, "count: {}", r.count);
                s
            }))
        }
        WeightsCommand::Euler { input, weights } => {
            let doc = load_surface(&input.input)?;
            let w = load_weights(weights)?;
            let chi = branched::carried_euler(&doc.surface, &w).map_err(domain)?;
            let report = EulerReport { tori: chi == BigInt::from(0), euler_characteristic: chi, weights: w };
            Ok(emit(f, &report, |r| format!("{}\n", r.euler_characteristic)))
        }
    }
}

/// Right-aligned columns under a header row.
fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut s = String::new();
    let mut line = |cells: &mut dyn Iterator<Item = &str>| {
        let parts: Vec<String> = cells.zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect();
        let _ = writeln!(s, "{}", parts.join("  ").trim_end());
    };
    line(&mut header.iter().copied());
    for row in rows {
        line(&mut row.iter().map(String::as_str));
    }
    s
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn seifert_text<T: Int>(r: &AnalysisReport<T>) -> String {
    let mut s = String::new();
    let mut field = |k: &str, v: String| {
        let _ = writeln!(s, "{k:<20} {v}");
    };
    field("input", r.input.to_string());
    field("normalized", r.normalized.to_string());
    field("euler number", format_ratio(&r.euler_number));
    field("torus bundle", yes_no(r.torus_bundle).into());
    field("duals", format!("{}, {}", r.duals.0, r.duals.1));
    field(
        "family",
        match &r.family {
            Some(fam) => format!("r1 = {}, r2 = {}, step = {}", fam.r1, fam.r2, format_ratio(&fam.step)),
            None => "empty".into(),
        },
    );
    field("limit slope", r.limit_slope.to_string());
    field("zero-twisting torus", yes_no(r.zero_twisting_torus).into());
    let rows: Vec<Vec<String>> = r
        .rows
        .iter()
        .map(|row| {
            vec![
                format_ratio(&row.k),
                row.k1.to_string(),
                row.k2.to_string(),
                row.s_k.to_string(),
                row.determinant.to_string(),
                yes_no(row.edge).into(),
                yes_no(row.coprime).into(),
            ]
        })
        .collect();
    s.push('\n');
    s.push_str(&table(&["k", "k1", "k2", "s_k", "det", "edge", "coprime"], &rows));
    s.push('\n');
    let mut field = |k: &str, v: String| {
        let _ = writeln!(s, "{k:<20} {v}");
    };
    if let Some(v) = r.limit_gap_verified {
        field("s_k - s = D/(a3 den)", yes_no(v).into());
    }
    field("s_k decreasing", yes_no(r.decreasing).into());
    let _ = writeln!(s, "verdict: {}", r.verdict);
    s
}

fn degree_text(r: &DegreeReport) -> String {
    let rows: Vec<Vec<String>> = r
        .annuli
        .iter()
        .map(|a| {
            let cls = |c: &branched::BoundaryClass| match c {
                branched::BoundaryClass::Essential => "essential",
                branched::BoundaryClass::DiskBounding => "disk",
            };
            vec![
                a.id.clone(),
                a.degree.to_string(),
                a.tangencies.to_string(),
                format!("{}/{}", cls(&a.boundary_classes[0]), cls(&a.boundary_classes[1])),
            ]
        })
        .collect();
    let mut s = table(&["annulus", "degree", "tangencies", "boundary"], &rows);
    for v in &r.violations {
        let _ = writeln!(s, "violation: {} {:?}", v.annulus, v.kind);
    }
    let _ = writeln!(s, "consistent: {}", yes_no(r.consistent));
    s
}

fn surface_text(d: &SurfaceDocument) -> String {
    let b = &d.surface;
    let mut s = String::new();
    let ids: Vec<&str> = b.sector_ids().into_iter().collect();
    let _ = writeln!(s, "sectors: {}", ids.join(" "));
    for c in &b.branch_curves {
        let _ = writeln!(s, "branch curve {c}");
    }
    for bc in &b.boundary_curves {
        let _ = writeln!(s, "boundary {} {:?}", bc.sector, bc.role);
    }
    s
}
