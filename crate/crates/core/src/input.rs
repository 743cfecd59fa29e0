//! Text and JSON input formats for lattices and point sets.
//!
//! Lattice JSON is either `{"dim": n, "columns": [[..], ..]}` or
//! `{"cell": [a, b, c, alpha, beta, gamma]}` (degrees; `[a, b, gamma]` in
//! 2D). Points are `{"frac": [[..], ..], "labels": [..]}` or plain text with
//! one fractional point per line. Inline matrices list the basis vectors one
//! after another: `"1 0 -5 1"` is `(1, 0), (-5, 1)`.

use std::path::Path;

use serde::Deserialize;

use crate::error::LatticeError;
use crate::lattice::{cell_params_to_basis, cell_params_to_basis_2d, validate_basis, Basis, FracPoint};

#[derive(Debug, thiserror::Error)]
pub enum InputError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

#[derive(Deserialize)]
#[serde(untagged, deny_unknown_fields)]
enum LatticeSpec {
    Columns { dim: usize, columns: Vec<Vec<f64>> },
    Cell { cell: Vec<f64> },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PointsSpec {
    frac: Vec<Vec<f64>>,
    #[serde(default)]
    labels: Option<Vec<String>>,
}

fn numbers(s: &str) -> Result<Vec<f64>, InputError> {
    s.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<f64>().map_err(|_| InputError::Parse(format!("not a number: {t:?}"))))
        .collect()
}

/// `identity2`, `identity3`, or 4 / 9 numbers listing the basis vectors in order.
pub fn parse_matrix(s: &str) -> Result<Basis, InputError> {
    match s.trim() {
        "identity2" => return Ok(Basis::identity(2)?),
        "identity3" => return Ok(Basis::identity(3)?),
        _ => {}
    }
    let v = numbers(s)?;
    let n = match v.len() {
        4 => 2,
        9 => 3,
        k => return Err(InputError::Parse(format!("expected 4 or 9 matrix entries, got {k}"))),
    };
    let cols: Vec<&[f64]> = v.chunks(n).collect();
    Ok(validate_basis(&cols)?)
}

/// `a b gamma` (2D) or `a b c alpha beta gamma` (3D), angles in degrees.
pub fn parse_cell_params(s: &str) -> Result<Basis, InputError> {
    basis_from_params(&numbers(s)?)
}

fn basis_from_params(p: &[f64]) -> Result<Basis, InputError> {
    match *p {
        [a, b, g] => Ok(cell_params_to_basis_2d(a, b, g)?),
        [a, b, c, al, be, ga] => Ok(cell_params_to_basis(a, b, c, al, be, ga)?),
        _ => Err(InputError::Parse(format!("expected 3 or 6 cell parameters, got {}", p.len()))),
    }
}

pub fn parse_point(s: &str) -> Result<FracPoint, InputError> {
    Ok(FracPoint::new(&numbers(s)?)?)
}

pub fn parse_lattice_json(text: &str) -> Result<Basis, InputError> {
    match serde_json::from_str::<LatticeSpec>(text)? {
        LatticeSpec::Columns { dim, columns } => {
            if columns.len() != dim || columns.iter().any(|c| c.len() != dim) {
                return Err(InputError::Parse(format!("expected {dim} columns of {dim} components")));
            }
            Ok(validate_basis(&columns)?)
        }
        LatticeSpec::Cell { cell } => basis_from_params(&cell),
    }
}

/// Points with optional labels, from JSON or whitespace text.
pub fn parse_points(text: &str) -> Result<(Vec<FracPoint>, Option<Vec<String>>), InputError> {
    if text.trim_start().starts_with('{') {
        let spec: PointsSpec = serde_json::from_str(text)?;
        let pts = spec.frac.iter().map(|p| FracPoint::new(p)).collect::<Result<Vec<_>, _>>()?;
        return Ok((pts, spec.labels));
    }
    let pts = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(parse_point)
        .collect::<Result<Vec<_>, _>>()?;
    Ok((pts, None))
}

fn read(path: &Path) -> Result<String, InputError> {
    std::fs::read_to_string(path).map_err(|source| InputError::Io { path: path.display().to_string(), source })
}

pub fn load_lattice(path: &Path) -> Result<Basis, InputError> {
    parse_lattice_json(&read(path)?)
}

pub fn load_points(path: &Path) -> Result<(Vec<FracPoint>, Option<Vec<String>>), InputError> {
    parse_points(&read(path)?)
}
