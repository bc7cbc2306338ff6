//! Command-line front end. Exit codes: 0 when every identity holds, 1 when
//! one fails, 2 on invalid input.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::{self, IsTerminal, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::agw::verify_agw;
use crate::error::Error;
use crate::exact::{format_rational, rat_int, Rational};
use crate::invariants::{
    check_face_todd, check_pick_with, check_tetrahedron_with, check_twisted_todd_with, check_u_independence,
    check_untwisted_signature_with, exp_kahler, kahler_volume, twisted_genus, DelzantPolytope, Report,
};
use crate::localization::{GenericVector, Partition};
use crate::polytope::{signature_from_h, Facet, HPolytope};
use crate::series::{elementary_symmetric, genus_series, product_over_facets, GenusKind, MultiPoly};

/// On-disk polytope: the inequalities `<x, normal> >= offset`, in file order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolytopeFile {
    pub name: String,
    pub dim: usize,
    pub facets: Vec<FacetEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FacetEntry {
    pub normal: Vec<i64>,
    pub offset: i64,
}

impl PolytopeFile {
    pub fn parse(text: &str) -> Result<Self, Failure> {
        serde_json::from_str(text).map_err(|e| Failure::invalid(format!("malformed polytope file: {e}")))
    }

    pub fn to_polytope(&self) -> crate::Result<HPolytope> {
        let facets = self.facets.iter().map(|f| Facet::new(f.normal.clone(), f.offset)).collect();
        HPolytope::new(self.dim, facets, Some(self.name.clone()))
    }

    pub fn from_polytope(p: &HPolytope) -> Self {
        Self {
            name: p.name().unwrap_or("unnamed").to_owned(),
            dim: p.dim(),
            facets: p.facets().iter().map(|f| FacetEntry { normal: f.normal.clone(), offset: f.offset }).collect(),
        }
    }
}

/// A diagnostic and the exit code it maps to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    fn invalid(message: impl Into<String>) -> Self {
        Self { code: 2, message: message.into() }
    }

    fn context(self, what: &Path) -> Self {
        Self { message: format!("{}: {}", what.display(), self.message), ..self }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        // disagreement between independent evaluations is a failed identity, not bad input
        let code = if matches!(e, Error::Inconsistent(_)) { 1 } else { 2 };
        Self { code, message: e.to_string() }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Self::invalid(e.to_string())
    }
}

pub fn load_polytope(path: &Path) -> Result<DelzantPolytope, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::from(e).context(path))?;
    let file = PolytopeFile::parse(&text).map_err(|f| f.context(path))?;
    let p = file.to_polytope().map_err(|e| Failure::from(e).context(path))?;
    DelzantPolytope::new(p).map_err(|e| Failure::from(e).context(path))
}

#[derive(Parser, Debug)]
#[command(name = "toric-pick", version, about = "Exact Pick-type identities for Delzant polytopes")]
pub struct Cli {
    /// Output format; defaults to a table on a terminal and JSON otherwise.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Generic vector override, e.g. `1,2,4`. It is still checked for
    /// genericity and cross-evaluated at a second vector.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub u: Option<GenericVector>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check an identity and print its report.
    Verify {
        kind: VerifyKind,
        /// Polytope file (not used by `agw`).
        file: Option<PathBuf>,
    },
    /// Print a single exact quantity.
    Compute {
        kind: ComputeKind,
        file: PathBuf,
        /// Partition of the dimension, e.g. `1,1` (chern).
        #[arg(long)]
        partition: Option<Partition>,
        /// Facet number, counted from 1 in file order (gysin).
        #[arg(long)]
        facet: Option<usize>,
        /// Exponent of the facet class (gysin).
        #[arg(long)]
        power: Option<usize>,
        /// Include per-vertex contributions.
        #[arg(long)]
        breakdown: bool,
        /// Include per-face lattice counts (count).
        #[arg(long)]
        faces: bool,
    },
    /// Run every applicable check on each `*.json` file in a directory.
    Corpus { dir: PathBuf },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum VerifyKind {
    Pick,
    Todd,
    FaceTodd,
    Tetrahedron,
    Signature,
    Agw,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum ComputeKind {
    Chern,
    Count,
    Hvector,
    Volume,
    Gysin,
    SignatureTwisted,
    ToddTwisted,
}

/// Result of a `compute` command.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Computation {
    pub quantity: String,
    pub polytope: String,
    pub value: String,
    pub breakdown: BTreeMap<String, Value>,
    pub generic_vectors: Vec<Vec<i64>>,
}

impl Computation {
    fn new(quantity: &str, dp: &DelzantPolytope, value: &Rational) -> Self {
        Self {
            quantity: quantity.to_owned(),
            polytope: dp.name().to_owned(),
            value: format_rational(value),
            breakdown: BTreeMap::new(),
            generic_vectors: Vec::new(),
        }
    }

    fn with(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.breakdown.insert(key.to_owned(), value.into());
        self
    }
}

/// What a command produced, before rendering.
#[derive(Clone, Debug, PartialEq)]
pub enum Output {
    Report(Report),
    Computation(Computation),
    Corpus(Vec<(String, Report)>),
}

impl Output {
    pub fn holds(&self) -> bool {
        match self {
            Output::Report(r) => r.holds,
            Output::Computation(_) => true,
            Output::Corpus(rs) => rs.iter().all(|(_, r)| r.holds),
        }
    }

    /// JSON with sorted keys.
    pub fn to_json(&self) -> String {
        let value = match self {
            Output::Report(r) => serde_json::to_value(r),
            Output::Computation(c) => serde_json::to_value(c),
            Output::Corpus(rs) => Ok(json!({
                "all_hold": self.holds(),
                "reports": rs.iter().map(|(file, r)| json!({ "file": file, "report": r })).collect::<Vec<_>>(),
            })),
        }
        .expect("reports serialize");
        serde_json::to_string_pretty(&value).expect("values serialize") + "\n"
    }

    pub fn to_table(&self) -> String {
        let mut s = String::new();
        match self {
            Output::Report(r) => {
                row(&mut s, "identity", &r.identity);
                row(&mut s, "polytope", &r.polytope);
                row(&mut s, "lhs", &format_rational(&r.lhs));
                row(&mut s, "rhs", &format_rational(&r.rhs));
                row(&mut s, "holds", &r.holds.to_string());
                vectors(&mut s, &r.generic_vectors);
                breakdown(&mut s, &r.breakdown);
            }
            Output::Computation(c) => {
                row(&mut s, "quantity", &c.quantity);
                row(&mut s, "polytope", &c.polytope);
                row(&mut s, "value", &c.value);
                vectors(&mut s, &c.generic_vectors);
                breakdown(&mut s, &c.breakdown);
            }
            Output::Corpus(rs) => {
                let width = rs.iter().map(|(f, _)| f.len()).max().unwrap_or(4).max(4);
                let _ = writeln!(s, "{:width$}  {:14}  {:>10}  {:>10}  holds", "file", "identity", "lhs", "rhs");
                for (file, r) in rs {
                    let _ = writeln!(
                        s,
                        "{file:width$}  {:14}  {:>10}  {:>10}  {}",
                        r.identity,
                        format_rational(&r.lhs),
                        format_rational(&r.rhs),
                        r.holds
                    );
                }
                let failed = rs.iter().filter(|(_, r)| !r.holds).count();
                let _ = writeln!(s, "{} checks, {} failed", rs.len(), failed);
            }
        }
        s
    }
}

fn row(s: &mut String, key: &str, value: &str) {
    let _ = writeln!(s, "{key:<10}{value}");
}

fn vectors(s: &mut String, vs: &[Vec<i64>]) {
    if !vs.is_empty() {
        let text = vs.iter().map(|v| GenericVector(v.clone()).to_string()).collect::<Vec<_>>().join(" ");
        row(s, "vectors", &text);
    }
}

fn breakdown(s: &mut String, b: &BTreeMap<String, Value>) {
    for (key, value) in b {
        match value {
            Value::Array(items) if items.iter().any(|v| v.is_object() || v.is_array()) => {
                let _ = writeln!(s, "{key}:");
                for item in items {
                    let _ = writeln!(s, "  {item}");
                }
            }
            Value::String(text) => {
                let _ = writeln!(s, "{key}: {text}");
            }
            other => {
                let _ = writeln!(s, "{key}: {other}");
            }
        }
    }
}

fn contributions(dp: &DelzantPolytope, f: &MultiPoly, u: &GenericVector) -> Result<Value, Failure> {
    Ok(dp
        .localizer()
        .contributions(f, u)?
        .into_iter()
        .map(|c| json!({ "vertex": c.vertex, "value": format_rational(&c.value) }))
        .collect())
}

fn generic(dp: &DelzantPolytope, u: Option<&GenericVector>) -> Result<GenericVector, Failure> {
    let u = u.cloned().unwrap_or_else(|| dp.localizer().choose_generic());
    dp.localizer().weights(&u)?;
    Ok(u)
}

fn need_file(file: Option<&Path>) -> Result<&Path, Failure> {
    file.ok_or_else(|| Failure::invalid("a polytope file is required"))
}

pub fn verify(kind: VerifyKind, file: Option<&Path>, u: Option<&GenericVector>) -> Result<Report, Failure> {
    if kind == VerifyKind::Agw {
        if u.is_some() {
            return Err(Failure::invalid("--u does not apply to verify agw"));
        }
        return Ok(verify_agw()?);
    }
    let path = need_file(file)?;
    let dp = load_polytope(path)?;
    let with_context = |e: Error| Failure::from(e).context(path);
    if kind == VerifyKind::FaceTodd {
        if u.is_some() {
            return Err(Failure::invalid("--u does not apply to verify face-todd; faces use their own vectors"));
        }
        return check_face_todd(&dp).map_err(with_context);
    }
    let u = generic(&dp, u).map_err(|f| f.context(path))?;
    match kind {
        VerifyKind::Pick => check_pick_with(&dp, &u),
        VerifyKind::Todd => check_twisted_todd_with(&dp, &u),
        VerifyKind::Tetrahedron => check_tetrahedron_with(&dp, &u),
        VerifyKind::Signature => check_untwisted_signature_with(&dp, &u),
        VerifyKind::FaceTodd | VerifyKind::Agw => unreachable!("handled above"),
    }
    .map_err(with_context)
}

/// Options for `compute`.
#[derive(Clone, Debug, Default)]
pub struct ComputeOptions {
    pub partition: Option<Partition>,
    pub facet: Option<usize>,
    pub power: Option<usize>,
    pub breakdown: bool,
    pub faces: bool,
}

pub fn compute(
    kind: ComputeKind,
    path: &Path,
    opts: &ComputeOptions,
    u: Option<&GenericVector>,
) -> Result<Computation, Failure> {
    let dp = load_polytope(path)?;
    compute_on(kind, &dp, opts, u).map_err(|f| f.context(path))
}

fn compute_on(
    kind: ComputeKind,
    dp: &DelzantPolytope,
    opts: &ComputeOptions,
    u: Option<&GenericVector>,
) -> Result<Computation, Failure> {
    let n = dp.dim();
    let m = dp.num_facets();
    match kind {
        ComputeKind::Chern => {
            let w = opts.partition.as_ref().ok_or_else(|| Failure::invalid("chern needs --partition"))?;
            let u = generic(dp, u)?;
            let c = dp.localizer().chern_number_at(w, &u)?;
            let u2 = dp.localizer().alternate_to(&u);
            let c2 = dp.localizer().chern_number_at(w, &u2)?;
            if c2.value != c.value {
                return Err(Error::Inconsistent(format!("c{w} differs between {u} and {u2}")).into());
            }
            let mut out = Computation::new("chern", dp, &rat_int(c.value.clone()))
                .with("partition", w.to_string())
                .with("fixed_point_route", format_rational(&c.fixed_point_route))
                .with("symmetric_route", format_rational(&c.symmetric_route));
            if opts.breakdown {
                let mut class = MultiPoly::one(m, n);
                for &k in w.parts() {
                    class = class.mul(&elementary_symmetric(m, k as usize, n))?;
                }
                out = out.with("vertex_contributions", contributions(dp, &class, &u)?);
            }
            out.generic_vectors = vec![u.0, u2.0];
            Ok(out)
        }
        ComputeKind::Count => {
            let counts = dp.counts()?;
            let mut out = Computation::new("count", dp, &rat_int(counts.total()))
                .with("interior", counts.interior())
                .with("boundary", counts.boundary());
            if opts.faces {
                let faces = dp.simple().faces();
                let rows: Vec<Value> = counts
                    .faces
                    .iter()
                    .map(|fc| {
                        let f = faces.face(fc.face);
                        json!({
                            "facets": f.facet_set.iter().map(|i| i + 1).collect::<Vec<_>>(),
                            "dim": fc.dim,
                            "closed": fc.closed,
                            "relint": fc.relint,
                        })
                    })
                    .collect();
                out = out.with("faces", rows);
            }
            Ok(out)
        }
        ComputeKind::Hvector => {
            let h = dp.simple().h_vector();
            let sigma = signature_from_h(&h);
            Ok(Computation::new("hvector", dp, &sigma)
                .with("h_vector", h.h.iter().map(|v| v.to_string()).collect::<Vec<_>>())
                .with("f_vector", dp.simple().faces().f_vector().to_vec())
                .with("palindromic", h.is_palindromic()))
        }
        ComputeKind::Volume => {
            let volume = dp.simple().volume();
            let u = generic(dp, u)?;
            let kahler = kahler_volume(dp, &u)?;
            if kahler != volume {
                return Err(Error::Inconsistent(format!("triangulated volume {volume} != localized {kahler}")).into());
            }
            let mut out = Computation::new("volume", dp, &volume).with("localized", format_rational(&kahler));
            out.generic_vectors = vec![u.0];
            Ok(out)
        }
        ComputeKind::Gysin => {
            let facet = opts.facet.ok_or_else(|| Failure::invalid("gysin needs --facet"))?;
            if facet == 0 || facet > m {
                return Err(Failure::invalid(format!("--facet must be between 1 and {m}, got {facet}")));
            }
            let power = opts.power.unwrap_or(n);
            let u = generic(dp, u)?;
            let mut e = vec![0u32; m];
            e[facet - 1] = u32::try_from(power).map_err(|_| Failure::invalid("--power is too large"))?;
            let class = MultiPoly::monomial(m, n, e, Rational::from_integer(1.into()));
            let value = dp.localizer().integrate_poly(&class, &u)?;
            let mut out = Computation::new("gysin", dp, &value).with("facet", facet).with("power", power);
            if power == n {
                let vertex_sum = dp.localizer().gysin_power(facet - 1, n, &u)?;
                if vertex_sum != value {
                    return Err(Error::Inconsistent(format!("facet vertex sum {vertex_sum} != {value}")).into());
                }
                out = out.with("facet_vertex_sum", format_rational(&vertex_sum));
                if n == 3 {
                    let triple = dp.localizer().gysin_cube_triple_product(facet - 1, &u)?;
                    if triple != value {
                        return Err(Error::Inconsistent(format!("triple-product form {triple} != {value}")).into());
                    }
                    out = out.with("triple_product_form", format_rational(&triple));
                }
            }
            if opts.breakdown {
                out = out.with("vertex_contributions", contributions(dp, &class, &u)?);
            }
            out.generic_vectors = vec![u.0];
            Ok(out)
        }
        ComputeKind::SignatureTwisted | ComputeKind::ToddTwisted => {
            let (name, genus) = if kind == ComputeKind::ToddTwisted {
                ("todd-twisted", GenusKind::Todd)
            } else {
                ("signature-twisted", GenusKind::SignatureHalf)
            };
            let u = generic(dp, u)?;
            let u2 = dp.localizer().alternate_to(&u);
            let value = twisted_genus(dp, genus, &u)?;
            let second = twisted_genus(dp, genus, &u2)?;
            if value != second {
                return Err(Error::Inconsistent(format!("{name}: {value} at {u} but {second} at {u2}")).into());
            }
            let mut out = Computation::new(name, dp, &value);
            if opts.breakdown {
                let series = genus_series(genus, n);
                let class = exp_kahler(dp.polytope()).mul(&product_over_facets(&series, m, n))?;
                out = out.with("vertex_contributions", contributions(dp, &class, &u)?);
            }
            out.generic_vectors = vec![u.0, u2.0];
            Ok(out)
        }
    }
}

/// Every applicable check for one polytope.
pub fn suite(dp: &DelzantPolytope) -> Result<Vec<Report>, Failure> {
    let mut reports = vec![
        check_pick_with(dp, &dp.localizer().choose_generic())?,
        check_twisted_todd_with(dp, &dp.localizer().choose_generic())?,
        check_face_todd(dp)?,
        check_untwisted_signature_with(dp, &dp.localizer().choose_generic())?,
    ];
    if dp.dim() == 3 && dp.num_facets() == 4 {
        reports.push(check_tetrahedron_with(dp, &dp.localizer().choose_generic())?);
    }
    reports.push(check_u_independence(dp)?);
    Ok(reports)
}

/// Polytope files directly inside `dir`, sorted by name.
pub fn corpus_files(dir: &Path) -> Result<Vec<PathBuf>, Failure> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)
        .map_err(|e| Failure::from(e).context(dir))?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.is_file() && p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    if files.is_empty() {
        return Err(Failure::invalid(format!("{}: no polytope files", dir.display())));
    }
    Ok(files)
}

pub fn corpus(dir: &Path) -> Result<Vec<(String, Report)>, Failure> {
    let mut out = Vec::new();
    for path in corpus_files(dir)? {
        let dp = load_polytope(&path)?;
        let label = path.file_name().map(|f| f.to_string_lossy().into_owned()).unwrap_or_default();
        for report in suite(&dp).map_err(|f| f.context(&path))? {
            out.push((label.clone(), report));
        }
    }
    Ok(out)
}

pub fn execute(cli: &Cli) -> Result<Output, Failure> {
    let u = cli.u.as_ref();
    match &cli.command {
        Command::Verify { kind, file } => verify(*kind, file.as_deref(), u).map(Output::Report),
        Command::Compute { kind, file, partition, facet, power, breakdown, faces } => {
            let opts = ComputeOptions {
                partition: partition.clone(),
                facet: *facet,
                power: *power,
                breakdown: *breakdown,
                faces: *faces,
            };
            compute(*kind, file, &opts, u).map(Output::Computation)
        }
        Command::Corpus { dir } => {
            if u.is_some() {
                return Err(Failure::invalid("--u does not apply to corpus"));
            }
            corpus(dir).map(Output::Corpus)
        }
    }
}

pub fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format.unwrap_or(if io::stdout().is_terminal() { Format::Table } else { Format::Json });
    match execute(&cli) {
        Ok(output) => {
            let text = match format {
                Format::Json => output.to_json(),
                Format::Table => output.to_table(),
            };
            let mut stdout = io::stdout().lock();
            if stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(2);
            }
            ExitCode::from(if output.holds() { 0 } else { 1 })
        }
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}
