//! JSON input formats: ring descriptions, matrices, and scenario files.
//!
//! A ring file describes an Artinian local algebra as a quotient of a
//! polynomial ring. A scenario file names a ring (inline or by path),
//! fixes a seed, and lists assertions against the engine. Paths inside a
//! scenario resolve relative to the scenario file's directory.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use cizero::artin::{algebra_from_texts, ArtinAlgebra};
use cizero::poly::{MonomialOrder, PolyRing};
use cizero::scalar::Field;

/// Coefficient field: the string "Q" or {"gf": p} for a prime p.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FieldSpec {
    Name(String),
    Prime { gf: u32 },
}

impl FieldSpec {
    pub fn to_field(&self) -> Result<Field, String> {
        match self {
            FieldSpec::Name(s) if s == "Q" => Ok(Field::Rational),
            FieldSpec::Name(s) => Err(format!(
                "unknown field {:?}; use \"Q\" or {{\"gf\": p}}",
                s
            )),
            FieldSpec::Prime { gf } => {
                Field::prime(*gf as u64).map_err(|e| e.to_string())
            }
        }
    }
}

/// Ring description: coefficient field, variable names, relation strings.
/// Relations are parsed with the polynomial grammar documented in the
/// README; the quotient must be finite dimensional and local.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingSpec {
    pub field: FieldSpec,
    pub vars: Vec<String>,
    pub relations: Vec<String>,
}

impl RingSpec {
    pub fn build(&self) -> Result<Arc<ArtinAlgebra>, String> {
        let field = self.field.to_field()?;
        let vars: Vec<&str> = self.vars.iter().map(|s| s.as_str()).collect();
        let ring = PolyRing::new(field, &vars, MonomialOrder::DegRevLex)
            .map_err(|e| e.to_string())?;
        let rels: Vec<&str> = self.relations.iter().map(|s| s.as_str()).collect();
        algebra_from_texts(&ring, &rels).map_err(|e| e.to_string())
    }
}

/// Square matrix over the ring, row-major polynomial strings.
///
/// Convention: matrices act on row vectors from the right, so the row of
/// variables x = (x_1, ..., x_n) produces the row x * m with entries
/// (x * m)_j = sum_i x_i * m[i][j].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixSpec {
    pub entries: Vec<Vec<String>>,
    /// Free-text restatement of the action convention, carried so matrix
    /// files are self-describing; ignored by the engine.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub convention: Option<String>,
}

/// Ring reference inside a scenario: a path string or an inline RingSpec.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RingRef {
    Path(String),
    Inline(RingSpec),
}

/// One assertion: an operation name, its inputs, and an optional expected
/// outcome. Without an expected value the assertion passes when the
/// operation's own verdict holds (or, for plain computations, when the
/// computation succeeds).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Assertion {
    pub op: String,
    #[serde(default)]
    pub inputs: Map<String, Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected: Option<Value>,
}

/// Scenario file: named list of assertions against one ring.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub name: String,
    pub ring: RingRef,
    #[serde(default)]
    pub seed: u64,
    pub assertions: Vec<Assertion>,
}

fn read_to_string(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {}", path.display(), e))
}

/// Parses a JSON file, reporting the path and the parser's line/column on
/// failure.
pub fn parse_json_file<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, String> {
    let text = read_to_string(path)?;
    serde_json::from_str(&text).map_err(|e| format!("{}: {}", path.display(), e))
}

/// Loads a ring from a file path.
pub fn load_ring_file(path: &Path) -> Result<Arc<ArtinAlgebra>, String> {
    let spec: RingSpec = parse_json_file(path)?;
    spec.build().map_err(|e| format!("{}: {}", path.display(), e))
}

/// Loads a ring from a command-line argument: inline JSON when the
/// argument starts with '{', otherwise a file path.
pub fn load_ring_arg(arg: &str) -> Result<Arc<ArtinAlgebra>, String> {
    if arg.trim_start().starts_with('{') {
        let spec: RingSpec =
            serde_json::from_str(arg).map_err(|e| format!("inline ring: {}", e))?;
        spec.build()
    } else {
        load_ring_file(Path::new(arg))
    }
}

/// Reads a matrix argument: inline JSON or a file path. Returns the
/// matrix as a JSON value in the {"entries": [[...]]} shape accepted by
/// the assertion inputs.
pub fn load_matrix_arg(arg: &str) -> Result<Value, String> {
    let lead = arg.trim_start().chars().next();
    let spec: MatrixSpec = match lead {
        Some('{') => {
            serde_json::from_str(arg).map_err(|e| format!("inline matrix: {}", e))?
        }
        Some('[') => {
            let entries: Vec<Vec<String>> =
                serde_json::from_str(arg).map_err(|e| format!("inline matrix: {}", e))?;
            MatrixSpec { entries, convention: None }
        }
        _ => parse_json_file(Path::new(arg))?,
    };
    serde_json::to_value(&spec).map_err(|e| e.to_string())
}

/// Resolves the ring of a scenario, with paths taken relative to `base`
/// (the scenario file's directory).
pub fn resolve_ring(ring: &RingRef, base: &Path) -> Result<Arc<ArtinAlgebra>, String> {
    match ring {
        RingRef::Inline(spec) => spec.build(),
        RingRef::Path(p) => {
            let mut path = PathBuf::from(p);
            if path.is_relative() {
                path = base.join(path);
            }
            load_ring_file(&path)
        }
    }
}
