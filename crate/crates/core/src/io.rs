//! JSON documents: a versioned envelope around every domain type, plus
//! lenient loaders that also accept the bare payload.

use std::collections::BTreeMap;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::canonicalize::{CanonicalForm, Family, SFamilyReport};
use crate::codes::SphericalCode;
use crate::correspondence::{Arrangement, RotationParam, VerificationReport};
use crate::error::{Error, Result};
use crate::inversive::GenSphere;
use crate::linalg::{Matrix, Vector};
use crate::locus::{ContactAngle, LocusSphere};
use crate::soddy::SoddyParams;
use crate::steiner::SteinerClass;

pub const SCHEMA_VERSION: &str = "1.0";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LocusReport {
    pub locus: LocusSphere,
    pub contact_angle: ContactAngle,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SoddyOutput {
    pub params: SoddyParams,
    pub family: Family,
    pub arrangement: Arrangement,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cardinality_hint: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub name: String,
    pub dim: usize,
    pub cardinality: usize,
    pub min_angle: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "payload", rename_all = "snake_case")]
pub enum Payload {
    Family(Family),
    Code(SphericalCode),
    Arrangement(Arrangement),
    Report(SFamilyReport),
    CanonicalForm(CanonicalForm),
    Locus(LocusReport),
    Verification(VerificationReport),
    SteinerClass(SteinerClass),
    Soddy(SoddyOutput),
    Catalog(Vec<CatalogEntry>),
}

impl Payload {
    pub fn kind(&self) -> &'static str {
        match self {
            Payload::Family(_) => "family",
            Payload::Code(_) => "code",
            Payload::Arrangement(_) => "arrangement",
            Payload::Report(_) => "report",
            Payload::CanonicalForm(_) => "canonical_form",
            Payload::Locus(_) => "locus",
            Payload::Verification(_) => "verification",
            Payload::SteinerClass(_) => "steiner_class",
            Payload::Soddy(_) => "soddy",
            Payload::Catalog(_) => "catalog",
        }
    }

    /// Re-checks the invariants serde cannot express.
    pub fn validate(&self) -> Result<()> {
        match self {
            Payload::Family(f) => f.check(),
            Payload::Code(c) => c.validate(),
            Payload::Arrangement(a) => validate_arrangement(a),
            Payload::CanonicalForm(cf) => cf.canonical_members.iter().try_for_each(GenSphere::validate),
            Payload::Soddy(s) => {
                s.family.check()?;
                validate_arrangement(&s.arrangement)
            }
            _ => Ok(()),
        }
    }
}

fn validate_arrangement(a: &Arrangement) -> Result<()> {
    a.family.check()?;
    for s in &a.spheres {
        if s.dim() != a.family.ambient_dim {
            return Err(Error::DimensionMismatch { expected: a.family.ambient_dim, found: s.dim() });
        }
        s.validate()?;
    }
    Ok(())
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Metadata {
    #[serde(default)]
    pub tolerances: BTreeMap<String, f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub command: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Document {
    pub schema_version: String,
    #[serde(flatten)]
    pub payload: Payload,
    #[serde(default)]
    pub metadata: Metadata,
}

impl Document {
    pub fn new(payload: Payload) -> Self {
        Document { schema_version: SCHEMA_VERSION.into(), payload, metadata: Metadata::default() }
    }

    pub fn with_metadata(mut self, metadata: Metadata) -> Self {
        self.metadata = metadata;
        self
    }

    pub fn kind(&self) -> &'static str {
        self.payload.kind()
    }
}

fn malformed(e: serde_json::Error) -> Error {
    Error::MalformedInput { line: e.line(), column: e.column(), message: e.to_string() }
}

/// Pretty JSON with a trailing newline; floats use the shortest
/// representation that parses back to the same value.
pub fn serialize(doc: &Document) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents always serialize");
    s.push('\n');
    s
}

pub fn parse(text: &str) -> Result<Document> {
    let value: Value = serde_json::from_str(text).map_err(malformed)?;
    match value.get("schema_version") {
        Some(Value::String(v)) if v == SCHEMA_VERSION => {}
        Some(Value::String(v)) => return Err(Error::SchemaMismatch(v.clone())),
        Some(other) => return Err(Error::SchemaMismatch(other.to_string())),
        None => return Err(Error::SchemaMismatch("missing".into())),
    }
    // parse the text again so type errors carry a position
    let doc: Document = serde_json::from_str(text).map_err(malformed)?;
    doc.payload.validate()?;
    Ok(doc)
}

fn is_document(v: &Value) -> bool {
    v.get("schema_version").is_some()
}

fn bare<T: DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(malformed)
}

fn wrong_kind(expected: &str, found: &str) -> Error {
    Error::BadParams(format!("expected a {expected} document, found `{found}`"))
}

/// A family from a family, arrangement or soddy document, or a bare family
/// object, or a bare array of spheres.
pub fn load_family(text: &str) -> Result<Family> {
    let value: Value = serde_json::from_str(text).map_err(malformed)?;
    if is_document(&value) {
        return match parse(text)?.payload {
            Payload::Family(f) => Ok(f),
            Payload::Arrangement(a) => Ok(a.family),
            Payload::Soddy(s) => Ok(s.family),
            other => Err(wrong_kind("family", other.kind())),
        };
    }
    let family = if value.is_array() { Family::new(bare::<Vec<GenSphere>>(text)?)? } else { bare::<Family>(text)? };
    family.check()?;
    Ok(family)
}

/// A code from a code document, a bare code object, or a bare array of
/// coordinate arrays.
pub fn load_code(text: &str) -> Result<SphericalCode> {
    let value: Value = serde_json::from_str(text).map_err(malformed)?;
    if is_document(&value) {
        return match parse(text)?.payload {
            Payload::Code(c) => Ok(c),
            other => Err(wrong_kind("code", other.kind())),
        };
    }
    if value.is_array() {
        let rows: Vec<Vec<f64>> = bare(text)?;
        let dim = rows.first().map_or(0, Vec::len);
        return SphericalCode::new(dim, rows.iter().map(|r| Vector::from_column_slice(r)).collect());
    }
    let code: SphericalCode = bare(text)?;
    code.validate()?;
    Ok(code)
}

/// The spheres of an arrangement or soddy document, a bare arrangement,
/// or a bare array of spheres.
pub fn load_spheres(text: &str) -> Result<Vec<GenSphere>> {
    let value: Value = serde_json::from_str(text).map_err(malformed)?;
    let spheres = if is_document(&value) {
        match parse(text)?.payload {
            Payload::Arrangement(a) => a.spheres,
            Payload::Soddy(s) => s.arrangement.spheres,
            other => return Err(wrong_kind("arrangement", other.kind())),
        }
    } else if value.is_array() {
        bare::<Vec<GenSphere>>(text)?
    } else {
        bare::<Arrangement>(text)?.spheres
    };
    spheres.iter().try_for_each(GenSphere::validate)?;
    Ok(spheres)
}

/// A full arrangement (family included).
pub fn load_arrangement(text: &str) -> Result<Arrangement> {
    let value: Value = serde_json::from_str(text).map_err(malformed)?;
    let arr = if is_document(&value) {
        match parse(text)?.payload {
            Payload::Arrangement(a) => a,
            Payload::Soddy(s) => s.arrangement,
            other => return Err(wrong_kind("arrangement", other.kind())),
        }
    } else {
        bare::<Arrangement>(text)?
    };
    validate_arrangement(&arr)?;
    Ok(arr)
}

/// A rotation given as an array of rows.
pub fn load_rotation(text: &str) -> Result<RotationParam> {
    let rows: Vec<Vec<f64>> = bare(text)?;
    let n = rows.len();
    if rows.iter().any(|r| r.len() != n) {
        return Err(Error::BadParams("rotation must be a square array of rows".into()));
    }
    RotationParam::new(Matrix::from_fn(n, n, |i, j| rows[i][j]))
}

/// Seed points given as an array of coordinate arrays.
pub fn load_points(text: &str) -> Result<Vec<Vector>> {
    let rows: Vec<Vec<f64>> = bare(text)?;
    Ok(rows.iter().map(|r| Vector::from_column_slice(r)).collect())
}
