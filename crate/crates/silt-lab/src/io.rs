//! File formats: algebra definitions, module literals, complex literals.
//!
//! See FORMATS.md at the repository root for the full schemas. Coefficients
//! are decimal integers or `"num/den"` strings, always exact.

use crate::algebra::{AlgVec, AlgebraError, FinDimAlgebra};
use crate::field::{FieldError, GroundField, Scalar};
use crate::matrix::Mat;
use crate::quiver::{Arrow, BoundQuiver, QuiverError, Relation};
use serde::{Deserialize, Serialize};
use std::fmt;

pub const DEFAULT_PATH_LENGTH_BOUND: usize = 64;

#[derive(Debug)]
pub enum IoError {
    Json(String),
    Field(FieldError),
    Quiver(QuiverError),
    Algebra(AlgebraError),
    Shape(String),
}

impl fmt::Display for IoError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IoError::Json(e) => write!(f, "invalid JSON: {e}"),
            IoError::Field(e) => write!(f, "{e}"),
            IoError::Quiver(e) => write!(f, "{e}"),
            IoError::Algebra(e) => write!(f, "{e}"),
            IoError::Shape(e) => write!(f, "malformed input: {e}"),
        }
    }
}

impl std::error::Error for IoError {}

impl From<FieldError> for IoError {
    fn from(e: FieldError) -> Self {
        IoError::Field(e)
    }
}

impl From<QuiverError> for IoError {
    fn from(e: QuiverError) -> Self {
        IoError::Quiver(e)
    }
}

impl From<AlgebraError> for IoError {
    fn from(e: AlgebraError) -> Self {
        match e {
            AlgebraError::Quiver(q) => IoError::Quiver(q),
            other => IoError::Algebra(other),
        }
    }
}

#[derive(Serialize, Deserialize, Debug, Clone)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum FieldDoc {
    Prime { p: u64 },
    Rational,
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct ArrowDoc {
    pub name: String,
    pub from: String,
    pub to: String,
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct RelationTermDoc {
    pub coeff: String,
    pub path: Vec<String>,
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct RelationDoc {
    pub terms: Vec<RelationTermDoc>,
}

/// Top-level algebra definition document.
#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct AlgebraDoc {
    #[serde(default)]
    pub name: Option<String>,
    pub field: FieldDoc,
    pub vertices: Vec<String>,
    pub arrows: Vec<ArrowDoc>,
    #[serde(default)]
    pub relations: Vec<RelationDoc>,
}

pub fn ground_field(doc: &FieldDoc) -> Result<GroundField, IoError> {
    match doc {
        FieldDoc::Prime { p } => Ok(GroundField::new_prime(*p)?),
        FieldDoc::Rational => Ok(GroundField::Rational),
    }
}

pub fn parse_algebra_doc(doc: &AlgebraDoc) -> Result<FinDimAlgebra, IoError> {
    parse_algebra_doc_bounded(doc, DEFAULT_PATH_LENGTH_BOUND)
}

pub fn parse_algebra_doc_bounded(
    doc: &AlgebraDoc,
    path_len_bound: usize,
) -> Result<FinDimAlgebra, IoError> {
    let field = ground_field(&doc.field)?;
    let vertex_index = |name: &str| -> Result<usize, IoError> {
        doc.vertices
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| IoError::Quiver(QuiverError::UnknownVertex(name.to_string())))
    };
    let arrows: Vec<Arrow> = doc
        .arrows
        .iter()
        .map(|a| {
            Ok(Arrow {
                name: a.name.clone(),
                from: vertex_index(&a.from)?,
                to: vertex_index(&a.to)?,
            })
        })
        .collect::<Result<_, IoError>>()?;
    let arrow_index = |name: &str| -> Result<usize, IoError> {
        arrows
            .iter()
            .position(|a| a.name == name)
            .ok_or_else(|| IoError::Quiver(QuiverError::UnknownArrow(name.to_string())))
    };
    let relations: Vec<Relation> = doc
        .relations
        .iter()
        .map(|r| {
            let terms = r
                .terms
                .iter()
                .map(|t| {
                    let coeff = field.parse(&t.coeff)?;
                    let path = t
                        .path
                        .iter()
                        .map(|n| arrow_index(n))
                        .collect::<Result<Vec<_>, IoError>>()?;
                    Ok((coeff, path))
                })
                .collect::<Result<Vec<_>, IoError>>()?;
            Ok(Relation { terms })
        })
        .collect::<Result<_, IoError>>()?;
    let quiver = BoundQuiver { vertices: doc.vertices.clone(), arrows, relations };
    Ok(FinDimAlgebra::from_quiver(&quiver, field, path_len_bound)?)
}

pub fn parse_algebra_str(s: &str) -> Result<FinDimAlgebra, IoError> {
    let doc: AlgebraDoc = serde_json::from_str(s).map_err(|e| IoError::Json(e.to_string()))?;
    parse_algebra_doc(&doc)
}

pub fn algebra_name(s: &str) -> Option<String> {
    serde_json::from_str::<AlgebraDoc>(s).ok().and_then(|d| d.name)
}

/// Module literal: per-vertex dimensions plus one matrix per arrow, entries
/// row-major, `matrix[r][c]`, shaped `dims[to] x dims[from]`.
#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct ModuleDoc {
    pub dims: Vec<usize>,
    #[serde(default)]
    pub matrices: std::collections::BTreeMap<String, Vec<Vec<String>>>,
}

pub fn parse_matrix(
    field: GroundField,
    rows: usize,
    cols: usize,
    doc: &[Vec<String>],
) -> Result<Mat, IoError> {
    if doc.len() != rows || doc.iter().any(|r| r.len() != cols) {
        return Err(IoError::Shape(format!("expected a {rows}x{cols} matrix")));
    }
    let mut m = Mat::zero(field, rows, cols);
    for (r, row) in doc.iter().enumerate() {
        for (c, s) in row.iter().enumerate() {
            m.set(r, c, field.parse(s)?);
        }
    }
    Ok(m)
}

pub fn render_matrix(field: GroundField, m: &Mat) -> Vec<Vec<String>> {
    (0..m.rows)
        .map(|r| (0..m.cols).map(|c| field.render(m.at(r, c))).collect())
        .collect()
}

/// Complex literal: multiplicity vectors for the two degrees and the
/// differential as a `(sum pzero) x (sum pminus)` matrix of algebra
/// elements, each given by its coefficient vector over the algebra basis.
#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct ComplexDoc {
    pub pminus: Vec<usize>,
    pub pzero: Vec<usize>,
    pub diff: Vec<Vec<Vec<String>>>,
}

pub fn parse_alg_elem(a: &FinDimAlgebra, coeffs: &[String]) -> Result<AlgVec, IoError> {
    if coeffs.len() != a.dim {
        return Err(IoError::Shape(format!(
            "algebra element needs {} coefficients, got {}",
            a.dim,
            coeffs.len()
        )));
    }
    coeffs
        .iter()
        .map(|s| a.field.parse(s).map_err(IoError::from))
        .collect()
}

pub fn render_alg_elem(a: &FinDimAlgebra, x: &AlgVec) -> Vec<String> {
    x.iter().map(|c| a.field.render(c)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn fixture_roundtrip_is_deterministic() {
        // Re-parsing the serialized definition reproduces the same basis and
        // structure constants.
        let a = fixtures::a2();
        let b = fixtures::a2();
        assert_eq!(a.labels, b.labels);
        for i in 0..a.dim {
            for j in 0..a.dim {
                assert_eq!(a.mul_basis(i, j), b.mul_basis(i, j));
            }
        }
    }

    #[test]
    fn bad_field_is_rejected() {
        let doc = r#"{"field":{"type":"prime","p":12},"vertices":["1"],"arrows":[]}"#;
        assert!(matches!(parse_algebra_str(doc), Err(IoError::Field(_))));
    }

    #[test]
    fn unknown_vertex_is_rejected() {
        let doc = r#"{"field":{"type":"prime","p":101},"vertices":["1"],
                      "arrows":[{"name":"a","from":"1","to":"9"}]}"#;
        assert!(matches!(parse_algebra_str(doc), Err(IoError::Quiver(_))));
    }

    #[test]
    fn rational_field_parses() {
        let doc = r#"{"field":{"type":"rational"},"vertices":["1","2"],
                      "arrows":[{"name":"a","from":"1","to":"2"}]}"#;
        let a = parse_algebra_str(doc).unwrap();
        assert_eq!(a.dim, 3);
    }
}
