//! Command-line front end. Every command reads JSON files, writes one JSON
//! document to stdout, and reports failures as JSON on stderr.
//!
//! Exit codes: 0 success, 1 domain error or failed verification, 2 bad
//! input (usage, unreadable or malformed files).

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::canonicalize::{canonical_transform, validate_s_family, Family};
use crate::codes::{catalog, make_code, CodeName, SphericalCode};
use crate::correspondence::{
    arrangement_from_code, code_from_arrangement, verify_arrangement, FamilyFrame, RotationParam,
};
use crate::error::{Error, Result};
use crate::inversive::Tolerance;
use crate::io::{self, CatalogEntry, Document, LocusReport, Metadata, Payload, SoddyOutput};
use crate::linalg::vector;
use crate::render::{render, Format};
use crate::soddy::{cardinality_hint, mutually_tangent_family, soddy_arrangement, soddy_params};
use crate::steiner::{classify_steiner, tight_code};

#[derive(Parser, Debug)]
#[command(name = "kissing", version, about = "Kissing arrangements of spheres tangent to a family")]
pub struct Cli {
    /// Relative tolerance for geometric predicates.
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub rel_tol: f64,
    /// Absolute tolerance for geometric predicates.
    #[arg(long, global = true, default_value_t = 1e-12)]
    pub abs_tol: f64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug)]
pub struct FamilyArg {
    /// Family file (family, arrangement or soddy document, or bare JSON).
    #[arg(short = 'f', long = "family")]
    pub family: PathBuf,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check the S-family conditions.
    Validate(FamilyArg),
    /// Transform chain to canonical position.
    Canonicalize(FamilyArg),
    /// Locus sphere and contact angle.
    Locus(FamilyArg),
    /// Arrangement for a code.
    Build {
        #[command(flatten)]
        family: FamilyArg,
        /// Catalog name (e.g. hexagon, polygon:7, cell24) or code file.
        #[arg(short = 'c', long = "code")]
        code: String,
        /// Rotation matrix file (array of rows).
        #[arg(long)]
        rotation: Option<PathBuf>,
    },
    /// Code of an arrangement.
    Extract {
        #[command(flatten)]
        family: FamilyArg,
        #[arg(short = 'a', long = "arrangement")]
        arrangement: PathBuf,
    },
    /// Greedy tight code.
    Tight {
        #[arg(short = 'd', long = "dim")]
        dim: usize,
        #[arg(long)]
        psi: f64,
        /// Seed clique file (array of d-1 unit vectors).
        #[arg(long)]
        seed: Option<PathBuf>,
        #[arg(long, default_value_t = crate::codes::ANGLE_TOL)]
        angle_tol: f64,
    },
    /// Steiner class of a code.
    Classify {
        #[arg(short = 'c', long = "code")]
        code: String,
        #[arg(long)]
        psi: f64,
        #[arg(long, default_value_t = crate::codes::ANGLE_TOL)]
        angle_tol: f64,
    },
    /// Mutually tangent family and its arrangement.
    Soddy {
        #[arg(short = 'n')]
        n: usize,
        #[arg(short = 'm')]
        m: usize,
        #[arg(short = 'c', long = "code")]
        code: Option<String>,
    },
    /// Hexlet for three mutually tangent spheres in space.
    Hexlet(FamilyArg),
    /// Check an arrangement against a family.
    Verify {
        /// Defaults to the family stored with the arrangement.
        #[arg(short = 'f', long = "family")]
        family: Option<PathBuf>,
        #[arg(short = 'a', long = "arrangement")]
        arrangement: PathBuf,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
    /// Export an arrangement as SVG, JSON or PLY (chosen by extension).
    Render {
        #[arg(short = 'a', long = "arrangement")]
        arrangement: PathBuf,
        #[arg(short = 'o', long = "output")]
        output: PathBuf,
    },
    /// Named code catalog.
    Codes {
        #[command(subcommand)]
        action: CodesAction,
    },
}

#[derive(Subcommand, Debug)]
pub enum CodesAction {
    List,
    Emit {
        name: String,
        #[arg(short = 'k', long)]
        k: Option<usize>,
        #[arg(short = 'd', long)]
        d: Option<usize>,
    },
}

enum Failure {
    Input(Error),
    Domain(Error),
    Verification(Box<Document>),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::MalformedInput { .. } | Error::SchemaMismatch(_) | Error::Io(_) => Failure::Input(e),
            other => Failure::Domain(other),
        }
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn load_family(path: &Path) -> Result<Family> {
    io::load_family(&read(path)?)
}

/// A file path if it exists, otherwise a catalog name.
fn resolve_code(spec: &str) -> Result<SphericalCode> {
    let path = Path::new(spec);
    if path.is_file() {
        return io::load_code(&read(path)?);
    }
    make_code(spec.parse::<CodeName>()?)
}

fn emit_name(name: &str, k: Option<usize>, d: Option<usize>) -> Result<CodeName> {
    let full = match (name, k, d) {
        ("polygon", Some(k), _) => format!("polygon:{k}"),
        ("simplex" | "crosspolytope", _, Some(d)) => format!("{name}:{d}"),
        _ => name.to_string(),
    };
    full.parse()
}

/// Code used by `soddy` when none is given: the named optimum where one is
/// known, otherwise the greedy tight code.
fn default_soddy_code(n: usize, m: usize) -> Result<SphericalCode> {
    let d = n + 2 - m;
    let psi = soddy_params(m)?.psi_m;
    match (d, m) {
        (1, _) => SphericalCode::new(1, vec![vector(&[1.0]), vector(&[-1.0])]),
        (2, 3) => make_code(CodeName::Polygon { k: 6 }),
        (3, 3) => make_code(CodeName::Cuboctahedron),
        (4, 3) => make_code(CodeName::Cell24),
        _ => tight_code(d, psi, None, crate::codes::ANGLE_TOL),
    }
}

fn execute(cli: &Cli, metadata: &Metadata) -> std::result::Result<Option<Document>, Failure> {
    let tol = Tolerance::new(cli.rel_tol, cli.abs_tol);
    let doc = |p: Payload| Some(Document::new(p).with_metadata(metadata.clone()));
    Ok(match &cli.command {
        Command::Validate(a) => doc(Payload::Report(validate_s_family(&load_family(&a.family)?, tol)?)),
        Command::Canonicalize(a) => doc(Payload::CanonicalForm(canonical_transform(&load_family(&a.family)?, tol)?)),
        Command::Locus(a) => {
            let frame = FamilyFrame::new(&load_family(&a.family)?, tol)?;
            doc(Payload::Locus(LocusReport { locus: frame.locus, contact_angle: frame.angle }))
        }
        Command::Build { family, code, rotation } => {
            let f = load_family(&family.family)?;
            let x = resolve_code(code)?;
            let a = match rotation {
                Some(p) => io::load_rotation(&read(p)?)?,
                None => RotationParam::identity(x.dim),
            };
            doc(Payload::Arrangement(arrangement_from_code(&f, &x, &a, tol)?))
        }
        Command::Extract { family, arrangement } => {
            let f = load_family(&family.family)?;
            let spheres = io::load_spheres(&read(arrangement)?)?;
            let (code, angle) = code_from_arrangement(&f, &spheres, tol)?;
            doc(Payload::Code(match angle.psi() {
                Some(psi) => code.with_psi(psi),
                None => code,
            }))
        }
        Command::Tight { dim, psi, seed, angle_tol } => {
            let seed = seed.as_ref().map(|p| read(p).and_then(|t| io::load_points(&t))).transpose()?;
            doc(Payload::Code(tight_code(*dim, *psi, seed.as_deref(), *angle_tol)?))
        }
        Command::Classify { code, psi, angle_tol } => {
            doc(Payload::SteinerClass(classify_steiner(&resolve_code(code)?, *psi, *angle_tol)?))
        }
        Command::Soddy { n, m, code } => {
            let family = mutually_tangent_family(*n, *m)?;
            let x = match code {
                Some(c) => resolve_code(c)?,
                None => default_soddy_code(*n, *m)?,
            };
            let arrangement = soddy_arrangement(&family, &x, tol)?;
            doc(Payload::Soddy(SoddyOutput {
                params: soddy_params(*m)?,
                family,
                arrangement,
                cardinality_hint: cardinality_hint(*n, *m),
            }))
        }
        Command::Hexlet(a) => {
            let f = load_family(&a.family)?;
            if f.ambient_dim != 3 || f.len() != 3 {
                return Err(Error::BadDims(format!(
                    "hexlet needs 3 spheres in R^3, got {} in R^{}",
                    f.len(),
                    f.ambient_dim
                ))
                .into());
            }
            doc(Payload::Arrangement(soddy_arrangement(&f, &make_code(CodeName::Polygon { k: 6 })?, tol)?))
        }
        Command::Verify { family, arrangement, tol: vtol } => {
            let text = read(arrangement)?;
            let (f, spheres) = match family {
                Some(p) => (load_family(p)?, io::load_spheres(&text)?),
                None => {
                    let arr = io::load_arrangement(&text)?;
                    (arr.family, arr.spheres)
                }
            };
            let report = verify_arrangement(&f, &spheres, *vtol);
            let pass = report.pass;
            let out = Document::new(Payload::Verification(report)).with_metadata(metadata.clone());
            if !pass {
                return Err(Failure::Verification(Box::new(out)));
            }
            Some(out)
        }
        Command::Render { arrangement, output } => {
            let arr = io::load_arrangement(&read(arrangement)?)?;
            let text = render(&arr, Format::from_path(output)?)?;
            std::fs::write(output, text).map_err(|e| Error::Io(format!("{}: {e}", output.display())))?;
            None
        }
        Command::Codes { action: CodesAction::List } => doc(Payload::Catalog(
            catalog()
                .into_iter()
                .map(|c| CatalogEntry {
                    name: c.to_string(),
                    dim: c.dim(),
                    cardinality: c.cardinality(),
                    min_angle: c.min_angle(),
                })
                .collect(),
        )),
        Command::Codes { action: CodesAction::Emit { name, k, d } } => {
            doc(Payload::Code(make_code(emit_name(name, *k, *d)?)?))
        }
    })
}

fn error_json(kind: &str, message: &str) -> String {
    serde_json::json!({ "error": kind, "message": message }).to_string()
}

/// Runs the CLI on `args` (including the program name).
pub fn run_with_io<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return 0;
            }
            let _ = writeln!(err, "{}", error_json("Usage", e.to_string().trim()));
            return 2;
        }
    };
    let mut metadata = Metadata::default();
    metadata.tolerances.insert("rel".into(), cli.rel_tol);
    metadata.tolerances.insert("abs".into(), cli.abs_tol);
    if let Command::Verify { tol, .. } = &cli.command {
        metadata.tolerances.insert("verify".into(), *tol);
    }
    metadata.command = Some(args.iter().skip(1).map(|a| a.to_string_lossy()).collect::<Vec<_>>().join(" "));

    match execute(&cli, &metadata) {
        Ok(Some(doc)) => {
            let _ = out.write_all(io::serialize(&doc).as_bytes());
            0
        }
        Ok(None) => 0,
        Err(Failure::Verification(doc)) => {
            let _ = out.write_all(io::serialize(&doc).as_bytes());
            let _ = writeln!(err, "{}", error_json("VerificationFailed", "arrangement failed verification"));
            1
        }
        Err(Failure::Input(e)) => {
            let _ = writeln!(err, "{}", error_json(e.kind(), &e.to_string()));
            2
        }
        Err(Failure::Domain(e)) => {
            let _ = writeln!(err, "{}", error_json(e.kind(), &e.to_string()));
            1
        }
    }
}

/// Runs the CLI against the process arguments and standard streams.
pub fn run() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with_io(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}
