//! Command-line front end. Exit codes: 0 success, 1 input or internal
//! error, 2 a well-formed negative result.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::alex::{make_acyclic_fibered, CertificateJson};
use crate::chain::{parse_catalog_spec, EquivariantComplex, CATALOG_NAMES};
use crate::error::{Error, Result};
use crate::grp::{GroupPresentation, IntGrading};
use crate::rep::{
    character_from_exponents, torsion_characters, torsion_coordinates, AbelianCoords, RepFile, UnitaryRep,
};
use crate::suites::{run_suites, Suite, VerifyOptions, VerifyReport};
use crate::twist::{twisted_homology, HomologyReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_NEGATIVE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "acyclic", version, about = "Exact twisted homology and acyclicity certificates")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Twisted homology dimensions of a complex with coefficients in a representation.
    Homology {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        rep: RepSource,
        /// Weights for --character: generator j goes to zeta_n^{a phi_j} (default all 1).
        #[arg(long, allow_hyphen_values = true)]
        phi: Option<String>,
        #[command(flatten)]
        out: Output,
    },
    /// Certificate that a character through a grading makes the complex acyclic.
    Acyclify {
        #[command(flatten)]
        source: Source,
        /// Grading values on the generators, e.g. 1,0,0.
        #[arg(long, allow_hyphen_values = true)]
        phi: String,
        #[command(flatten)]
        out: Output,
    },
    /// Every torsion character of H_1, and those that make the complex acyclic.
    Search {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        out: Output,
    },
    /// Runs the seeded property suites.
    Verify {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// One of euler, trivial, h0, shapiro, les, obstruction.
        #[arg(long)]
        suite: Option<String>,
        /// Breaks d_2 of lens(5,1) in the Euler battery (negative control).
        #[arg(long, hide = true)]
        corrupt_fixture: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Lists catalog entries, or prints one as JSON.
    Catalog {
        #[arg(long)]
        catalog: Option<String>,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
pub struct Source {
    /// NAME[:params], e.g. lens:5,1 or free_product_of:t3+lens:3,1.
    #[arg(long)]
    pub catalog: Option<String>,
    /// JSON file with "group", "ranks" and "boundaries".
    #[arg(long)]
    pub complex: Option<PathBuf>,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
pub struct RepSource {
    /// n:a, the character g -> zeta_n^{a phi(g)}.
    #[arg(long)]
    pub character: Option<String>,
    /// Trivial representation of the given dimension.
    #[arg(long)]
    pub trivial: Option<usize>,
    /// JSON file with "dim", "conductor" and "generators".
    #[arg(long)]
    pub rep: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct Output {
    /// Write JSON here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

struct Loaded {
    label: String,
    complex: EquivariantComplex,
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("cannot read {}: {e}", path.display())))
}

fn load(source: &Source) -> Result<Loaded> {
    match (&source.catalog, &source.complex) {
        (Some(spec), _) => {
            let e = parse_catalog_spec(spec)?;
            Ok(Loaded { label: e.label(), complex: e.complex })
        }
        (None, Some(path)) => {
            let complex: EquivariantComplex = serde_json::from_str(&read(path)?)
                .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
            Ok(Loaded { label: path.display().to_string(), complex })
        }
        (None, None) => Err(Error::Parse("one of --catalog or --complex is required".into())),
    }
}

pub fn parse_int_list(s: &str) -> Result<Vec<i64>> {
    s.split(',')
        .map(|x| x.trim().parse::<i64>().map_err(|_| Error::Parse(format!("bad integer {x:?} in {s:?}"))))
        .collect()
}

fn parse_phi(s: &str, p: &GroupPresentation) -> Result<IntGrading> {
    let v = parse_int_list(s)?;
    if v.len() != p.num_generators() {
        return Err(Error::Shape(format!(
            "--phi has {} values, the group has {} generators",
            v.len(),
            p.num_generators()
        )));
    }
    Ok(IntGrading(v))
}

#[derive(Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum RepDescription {
    Character { n: u64, a: i64, weights: Vec<i64> },
    Trivial { dim: usize },
    File { path: String, dim: usize },
}

/// `n:a` with weights: generator j goes to `zeta_n^{a w_j}`.
fn character_rep(spec: &str, weights: &[i64], p: &GroupPresentation) -> Result<(UnitaryRep, RepDescription)> {
    let (n, a) = spec
        .split_once(':')
        .ok_or_else(|| Error::Parse(format!("--character expects n:a, got {spec:?}")))?;
    let n: u64 = n.trim().parse().map_err(|_| Error::Parse(format!("bad character order {n:?}")))?;
    let a: i64 = a.trim().parse().map_err(|_| Error::Parse(format!("bad character power {a:?}")))?;
    if n == 0 {
        return Err(Error::Parse("character order must be positive".into()));
    }
    let exps: Vec<i64> = weights.iter().map(|&w| (a as i128 * w as i128).rem_euclid(n as i128) as i64).collect();
    let r = character_from_exponents(p, n, &exps)?;
    Ok((r, RepDescription::Character { n, a, weights: weights.to_vec() }))
}

fn load_rep(rs: &RepSource, weights: Option<&str>, p: &GroupPresentation) -> Result<(UnitaryRep, RepDescription)> {
    if let Some(spec) = &rs.character {
        let w = match weights {
            Some(s) => parse_phi(s, p)?.0,
            None => vec![1; p.num_generators()],
        };
        return character_rep(spec, &w, p);
    }
    if let Some(k) = rs.trivial {
        if k == 0 {
            return Err(Error::InvalidRep("trivial representation needs dimension >= 1".into()));
        }
        return Ok((UnitaryRep::trivial(p, k), RepDescription::Trivial { dim: k }));
    }
    if let Some(path) = &rs.rep {
        let file: RepFile =
            serde_json::from_str(&read(path)?).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        let r = UnitaryRep::from_file(file, p)?;
        let dim = r.dim();
        return Ok((r, RepDescription::File { path: path.display().to_string(), dim }));
    }
    Err(Error::Parse("one of --character, --trivial or --rep is required".into()))
}

#[derive(Serialize)]
struct HomologyOutput {
    source: String,
    representation: RepDescription,
    #[serde(flatten)]
    report: HomologyReport,
}

#[derive(Serialize)]
struct ObstructionOutput {
    source: String,
    phi: Vec<i64>,
    obstruction: Obstruction,
    message: String,
}

#[derive(Serialize)]
struct Obstruction {
    degree: usize,
    free_rank: usize,
}

#[derive(Serialize)]
struct FoundCharacter {
    coordinates: Vec<i64>,
    conductor: u64,
    dims: Vec<usize>,
}

#[derive(Serialize)]
struct SearchOutput {
    source: String,
    torsion_factors: Vec<u64>,
    tested: usize,
    acyclifying: Vec<FoundCharacter>,
    #[serde(skip_serializing_if = "Option::is_none")]
    note: Option<String>,
}

#[derive(Serialize)]
struct CatalogListing {
    entries: Vec<CatalogLine>,
}

#[derive(Serialize)]
struct CatalogLine {
    name: &'static str,
    usage: &'static str,
}

fn usage_of(name: &str) -> &'static str {
    match name {
        "lens" => "lens:p,q (gcd(p,q) = 1)",
        "s1x_sigma" => "s1x_sigma:g (g >= 1)",
        "handlebody" => "handlebody:g",
        "free_product_of" => "free_product_of:A+B (e.g. free_product_of:t3+lens:3,1)",
        "s1xs2" => "s1xs2",
        "t3" => "t3",
        "quaternion_q8" => "quaternion_q8",
        "trefoil_exterior" => "trefoil_exterior",
        "torus2d" => "torus2d",
        "circle" => "circle",
        _ => "",
    }
}

/// JSON text and exit code of a successful run.
struct Outcome {
    json: String,
    code: i32,
}

fn to_json<T: Serialize>(v: &T) -> Result<String> {
    serde_json::to_string_pretty(v).map_err(|e| Error::Internal(format!("serialization failed: {e}")))
}

fn homology(source: &Source, rs: &RepSource, weights: Option<&str>) -> Result<Outcome> {
    let l = load(source)?;
    let (r, representation) = load_rep(rs, weights, l.complex.group())?;
    let report = twisted_homology(&l.complex, &r)?;
    Ok(Outcome { json: to_json(&HomologyOutput { source: l.label, representation, report })?, code: EXIT_OK })
}

fn acyclify(source: &Source, phi: &str) -> Result<Outcome> {
    let l = load(source)?;
    let phi = parse_phi(phi, l.complex.group())?;
    match make_acyclic_fibered(&l.complex, &phi) {
        Ok(cert) => {
            let verified = cert.verify(&l.complex)?;
            let json: CertificateJson = cert.to_json(verified);
            Ok(Outcome { json: to_json(&json)?, code: if verified { EXIT_OK } else { EXIT_ERROR } })
        }
        Err(e @ Error::FreeRankObstruction { degree, rank }) => {
            let out = ObstructionOutput {
                source: l.label,
                phi: phi.0,
                obstruction: Obstruction { degree, free_rank: rank },
                message: e.to_string(),
            };
            Ok(Outcome { json: to_json(&out)?, code: EXIT_NEGATIVE })
        }
        Err(e) => Err(e),
    }
}

fn search(source: &Source) -> Result<Outcome> {
    let l = load(source)?;
    let p = l.complex.group();
    let factors = AbelianCoords::new(p).torsion_factors();
    let coords = torsion_coordinates(&factors);
    let chars = torsion_characters(p)?;
    let mut acyclifying = Vec::new();
    for (a, r) in coords.iter().zip(&chars) {
        let h = twisted_homology(&l.complex, r)?;
        if h.acyclic {
            acyclifying.push(FoundCharacter { coordinates: a.clone(), conductor: r.conductor(), dims: h.dims });
        }
    }
    let note = if acyclifying.is_empty() {
        Some(if factors.is_empty() {
            "H_1 has no torsion, so only the trivial character was tested; try higher-dimensional representations (homology --rep)".to_string()
        } else {
            "no abelian character is acyclic; try higher-dimensional representations (homology --rep)".to_string()
        })
    } else {
        None
    };
    let code = if acyclifying.is_empty() { EXIT_NEGATIVE } else { EXIT_OK };
    let out = SearchOutput { source: l.label, torsion_factors: factors, tested: chars.len(), acyclifying, note };
    Ok(Outcome { json: to_json(&out)?, code })
}

fn verify(seed: u64, suite: Option<&str>, corrupt_fixture: bool) -> Result<Outcome> {
    let only = suite.map(str::parse::<Suite>).transpose()?;
    let report: VerifyReport = run_suites(&VerifyOptions { seed, only, corrupt_fixture })?;
    let code = if report.all_passed { EXIT_OK } else { EXIT_ERROR };
    Ok(Outcome { json: to_json(&report)?, code })
}

fn catalog(spec: Option<&str>) -> Result<Outcome> {
    let json = match spec {
        Some(s) => to_json(&parse_catalog_spec(s)?)?,
        None => to_json(&CatalogListing {
            entries: CATALOG_NAMES.iter().map(|&name| CatalogLine { name, usage: usage_of(name) }).collect(),
        })?,
    };
    Ok(Outcome { json, code: EXIT_OK })
}

fn emit(json: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, format!("{json}\n"))
            .map_err(|e| Error::Io(format!("cannot write {}: {e}", path.display()))),
        None => {
            use std::io::Write;
            let mut stdout = std::io::stdout().lock();
            match writeln!(stdout, "{json}").and_then(|_| stdout.flush()) {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => {
                    Err(Error::Io(format!("cannot write to stdout: {e}")))
                }
                _ => Ok(()),
            }
        }
    }
}

pub fn execute(cli: &Cli) -> i32 {
    let (result, out) = match &cli.command {
        Command::Homology { source, rep, phi, out } => (homology(source, rep, phi.as_deref()), out),
        Command::Acyclify { source, phi, out } => (acyclify(source, phi), out),
        Command::Search { source, out } => (search(source), out),
        Command::Verify { seed, suite, corrupt_fixture, out } => {
            (verify(*seed, suite.as_deref(), *corrupt_fixture), out)
        }
        Command::Catalog { catalog: spec, out } => (catalog(spec.as_deref()), out),
    };
    match result.and_then(|o| emit(&o.json, out.out.as_deref()).map(|_| o.code)) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_ERROR
        }
    }
}

/// Parses arguments and runs. Usage errors exit with 1, since 2 is
/// reserved for negative results.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(&cli),
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_ERROR,
            };
            let _ = e.print();
            code
        }
    }
}
