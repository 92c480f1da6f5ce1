//! The on-disk JSON format for algebras. Catalog entries and user files
//! share this schema, so `serialize(parse(file))` is byte-identical for
//! canonical files and `parse(serialize(spec))` reproduces the spec.
//!
//! Schema (all rationals are canonical strings `"p"` or `"p/q"`):
//!
//! ```json
//! {
//!   "dim": 6,
//!   "basis": ["E1", ...],
//!   "signature": [1, 1, -1, 1, 1, -1],          // XOR "gram"
//!   "gram": [["1", "0", ...], ...],
//!   "brackets": [{"i": 1, "j": 2, "coeffs": {"3": "2"}}, ...],
//!   "J": [["0", ...], ...],                      // optional, column-major action
//!   "isotropy": [[["0", ...], ...], ...]         // optional, list of matrices
//! }
//! ```
//!
//! Indices are 1-based with `i < j`; duplicate `(i, j)` entries, unknown
//! keys, and non-canonical rationals are rejected.

use std::collections::BTreeMap;

use serde::Deserialize;
use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::catalog::HomogeneousSpaceSpec;
use crate::hermitian::AlmostComplexSpec;
use crate::lie::{DerivationCandidate, LieAlgebraSpec};
use crate::linalg::Matrix;
use crate::metric::MetricSpec;
use crate::scalar::{format_rational, parse_rational, Rational};

#[derive(Debug, Error)]
pub enum AlgebraFileError {
    /// JSON syntax error, with line and column from the parser.
    #[error("parse error at line {line}, column {column}: {message}")]
    Json { line: usize, column: usize, message: String },
    /// Structurally valid JSON that violates the schema.
    #[error("schema error: {0}")]
    Schema(String),
}

fn schema(msg: impl Into<String>) -> AlgebraFileError {
    AlgebraFileError::Schema(msg.into())
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct AlgebraFile {
    dim: usize,
    basis: Vec<String>,
    #[serde(default)]
    signature: Option<Vec<i64>>,
    #[serde(default)]
    gram: Option<Vec<Vec<String>>>,
    brackets: Vec<BracketEntry>,
    #[serde(default, rename = "J")]
    j: Option<Vec<Vec<String>>>,
    #[serde(default)]
    isotropy: Option<Vec<Vec<Vec<String>>>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct BracketEntry {
    i: usize,
    j: usize,
    coeffs: BTreeMap<String, String>,
}

fn parse_rational_cell(s: &str, what: &str) -> Result<Rational, AlgebraFileError> {
    parse_rational(s).map_err(|e| schema(format!("{what}: {e}")))
}

fn parse_matrix(
    rows: &[Vec<String>],
    dim: usize,
    what: &str,
) -> Result<Matrix<Rational>, AlgebraFileError> {
    if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
        return Err(schema(format!("{what} must be a {dim}x{dim} matrix")));
    }
    let mut m = Matrix::zeros(dim, dim);
    for (r, row) in rows.iter().enumerate() {
        for (c, cell) in row.iter().enumerate() {
            m[(r, c)] = parse_rational_cell(cell, &format!("{what}[{}][{}]", r + 1, c + 1))?;
        }
    }
    Ok(m)
}

/// Parses a JSON document into a spec named `name`. Syntax errors carry
/// line/column; schema violations are listed with the offending field.
pub fn parse_algebra_file(
    text: &str,
    name: &str,
) -> Result<HomogeneousSpaceSpec, AlgebraFileError> {
    let file: AlgebraFile = serde_json::from_str(text).map_err(|e| AlgebraFileError::Json {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;

    let dim = file.dim;
    if dim == 0 {
        return Err(schema("dim must be positive"));
    }
    if file.basis.len() != dim {
        return Err(schema(format!(
            "basis has {} labels, expected {dim}",
            file.basis.len()
        )));
    }

    let metric = match (&file.signature, &file.gram) {
        (Some(_), Some(_)) => {
            return Err(schema("exactly one of `signature` and `gram` must be present, got both"))
        }
        (None, None) => {
            return Err(schema("exactly one of `signature` and `gram` must be present, got neither"))
        }
        (Some(signs), None) => {
            if signs.len() != dim {
                return Err(schema(format!(
                    "signature has {} entries, expected {dim}",
                    signs.len()
                )));
            }
            if signs.iter().any(|&s| s != 1 && s != -1) {
                return Err(schema("signature entries must be 1 or -1"));
            }
            MetricSpec::orthonormal_signs(signs).expect("validated signs")
        }
        (None, Some(rows)) => {
            let gram = parse_matrix(rows, dim, "gram")?;
            MetricSpec::general(gram).map_err(|e| schema(e.to_string()))?
        }
    };

    let mut entries: Vec<((usize, usize, usize), Rational)> = Vec::new();
    let mut seen: Vec<(usize, usize)> = Vec::new();
    for entry in &file.brackets {
        if entry.i < 1 || entry.j < 1 || entry.i > dim || entry.j > dim {
            return Err(schema(format!(
                "bracket indices ({}, {}) out of range 1..={dim}",
                entry.i, entry.j
            )));
        }
        if entry.i >= entry.j {
            return Err(schema(format!(
                "bracket indices ({}, {}) must satisfy i < j",
                entry.i, entry.j
            )));
        }
        let key = (entry.i, entry.j);
        if seen.contains(&key) {
            return Err(schema(format!(
                "duplicate bracket entry for (i, j) = ({}, {})",
                entry.i, entry.j
            )));
        }
        seen.push(key);
        for (ks, cs) in &entry.coeffs {
            let k: usize = ks
                .parse()
                .map_err(|_| schema(format!("bracket coefficient key `{ks}` is not an index")))?;
            if k < 1 || k > dim {
                return Err(schema(format!("bracket coefficient index {k} out of range 1..={dim}")));
            }
            let c = parse_rational_cell(
                cs,
                &format!("brackets ({}, {}) coefficient {k}", entry.i, entry.j),
            )?;
            entries.push(((entry.i - 1, entry.j - 1, k - 1), c));
        }
    }

    let alg = LieAlgebraSpec::new(dim, file.basis.clone(), entries)
        .map_err(|e| schema(e.to_string()))?;

    let acs = match &file.j {
        None => None,
        Some(rows) => Some(
            AlmostComplexSpec::new(parse_matrix(rows, dim, "J")?)
                .map_err(|e| schema(e.to_string()))?,
        ),
    };

    let isotropy = match &file.isotropy {
        None => Vec::new(),
        Some(list) => list
            .iter()
            .enumerate()
            .map(|(n, rows)| {
                let m = parse_matrix(rows, dim, &format!("isotropy[{n}]"))?;
                DerivationCandidate::new(m).map_err(|e| schema(e.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?,
    };

    Ok(HomogeneousSpaceSpec {
        name: name.to_string(),
        alg,
        metric,
        acs,
        isotropy,
        notes: Vec::new(),
    })
}

fn matrix_to_json(m: &Matrix<Rational>) -> Value {
    Value::Array(
        (0..m.n_rows())
            .map(|r| {
                Value::Array(
                    (0..m.n_cols())
                        .map(|c| json!(format_rational(&m[(r, c)])))
                        .collect(),
                )
            })
            .collect(),
    )
}

/// Serializes a spec to the canonical JSON document (sorted keys).
pub fn spec_to_json(spec: &HomogeneousSpaceSpec) -> Value {
    let dim = spec.alg.dim();
    let mut m = Map::new();
    m.insert("dim".into(), json!(dim));
    m.insert("basis".into(), json!(spec.alg.basis_labels()));

    match spec.metric.signature_eps() {
        Some(eps) => {
            let signs: Vec<i64> = eps
                .iter()
                .map(|e| if *e == Rational::from_integer(1.into()) { 1 } else { -1 })
                .collect();
            m.insert("signature".into(), json!(signs));
        }
        None => {
            m.insert("gram".into(), matrix_to_json(spec.metric.gram()));
        }
    }

    // group sparse constants by (i, j)
    let mut grouped: BTreeMap<(usize, usize), Map<String, Value>> = BTreeMap::new();
    for (&(i, j, k), v) in spec.alg.alpha() {
        grouped
            .entry((i, j))
            .or_default()
            .insert((k + 1).to_string(), json!(format_rational(v)));
    }
    let brackets: Vec<Value> = grouped
        .into_iter()
        .map(|((i, j), coeffs)| {
            json!({
                "i": i + 1,
                "j": j + 1,
                "coeffs": Value::Object(coeffs),
            })
        })
        .collect();
    m.insert("brackets".into(), Value::Array(brackets));

    if let Some(acs) = &spec.acs {
        m.insert("J".into(), matrix_to_json(acs.matrix()));
    }
    if !spec.isotropy.is_empty() {
        m.insert(
            "isotropy".into(),
            Value::Array(spec.isotropy.iter().map(|d| matrix_to_json(d.matrix())).collect()),
        );
    }
    Value::Object(m)
}

/// Canonical file form: pretty-printed sorted-key JSON plus trailing newline.
pub fn spec_to_canonical_string(spec: &HomogeneousSpaceSpec) -> String {
    crate::report::canonical_json_string(&spec_to_json(spec))
}
