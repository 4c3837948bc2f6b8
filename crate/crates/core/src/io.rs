//! JSON interchange for complexes and connectivity certificates.
//!
//! A fan file looks like
//!
//! ```json
//! {
//!   "ambient_dim": 2,
//!   "rays": [[1, 0], [0, 1], [-1, -1]],
//!   "vertices": [],
//!   "lineality": [],
//!   "cells": [{"v": [], "r": [0, 1]}, {"v": [], "r": [1, 2]}, {"v": [], "r": [0, 2]}],
//!   "weights": [1, 1, 1]
//! }
//! ```
//!
//! Rays and lineality generators are integer vectors, vertices are lists of
//! `"p/q"` strings, and a cell with an empty `"v"` list is a cone with apex at
//! the origin. Integers too large for a JSON number are written as strings.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::polyhedral::{validate_complex, Cell, Complex};
use crate::ratlin::{parse_rational, primitive_vector, Rational};
use crate::{Error, QVector, Result};

/// Reads a JSON number or `"p/q"` string.
pub fn rational_from_json(v: &Value) -> Result<Rational> {
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(Rational::from_integer(i.into()))
            } else if let Some(u) = n.as_u64() {
                Ok(Rational::from_integer(u.into()))
            } else {
                Err(Error::Parse(format!("expected an exact number, found {n}")))
            }
        }
        Value::String(s) => parse_rational(s),
        other => Err(Error::Parse(format!("expected a number, found {other}"))),
    }
}

fn integer_to_json(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(i) => Value::from(i),
        None => Value::from(x.to_string()),
    }
}

fn vector_from_json(row: &[Value], n: usize) -> Result<QVector> {
    if row.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: row.len(),
        });
    }
    row.iter().map(rational_from_json).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellEntry {
    pub v: Vec<usize>,
    pub r: Vec<usize>,
}

/// The on-disk form of a [`Complex`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FanFile {
    pub ambient_dim: usize,
    pub rays: Vec<Vec<Value>>,
    #[serde(default)]
    pub vertices: Vec<Vec<Value>>,
    #[serde(default)]
    pub lineality: Vec<Vec<Value>>,
    pub cells: Vec<CellEntry>,
    #[serde(default)]
    pub weights: Vec<u64>,
}

impl FanFile {
    pub fn from_complex(c: &Complex) -> Self {
        let ints = |v: &QVector| -> Vec<Value> {
            primitive_vector(v)
                .expect("pool rays and lineality generators are nonzero")
                .iter()
                .map(integer_to_json)
                .collect()
        };
        FanFile {
            ambient_dim: c.ambient_dim(),
            rays: c.rays().iter().map(ints).collect(),
            vertices: c
                .vertices()
                .iter()
                .map(|v| v.iter().map(|x| Value::from(x.to_string())).collect())
                .collect(),
            lineality: c.lineality_basis().iter().map(ints).collect(),
            cells: c
                .cells()
                .iter()
                .map(|cell| CellEntry {
                    v: cell.vertices.clone(),
                    r: cell.rays.clone(),
                })
                .collect(),
            weights: c.weights().to_vec(),
        }
    }

    /// Builds the complex and checks that it is a valid polyhedral complex.
    pub fn to_complex(&self) -> Result<Complex> {
        let n = self.ambient_dim;
        let parse_all = |rows: &[Vec<Value>]| -> Result<Vec<QVector>> {
            rows.iter().map(|r| vector_from_json(r, n)).collect()
        };
        let weights = (!self.weights.is_empty()).then(|| self.weights.clone());
        let c = Complex::new(
            n,
            parse_all(&self.vertices)?,
            parse_all(&self.rays)?,
            parse_all(&self.lineality)?,
            self.cells
                .iter()
                .map(|e| Cell::new(e.v.clone(), e.r.clone()))
                .collect(),
            weights,
        )?;
        let report = validate_complex(&c, true);
        match report.violation {
            Some(v) => Err(Error::InvalidComplex(v.to_string())),
            None => Ok(c),
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    /// Deterministic rendering with one vector or cell per line.
    pub fn to_json_string(&self) -> String {
        let mut out = String::from("{\n");
        let _ = writeln!(out, "  \"ambient_dim\": {},", self.ambient_dim);
        write_rows(&mut out, "rays", &self.rays, false);
        write_rows(&mut out, "vertices", &self.vertices, false);
        write_rows(&mut out, "lineality", &self.lineality, false);
        let cells: Vec<String> = self
            .cells
            .iter()
            .map(|c| format!("{{\"v\": {}, \"r\": {}}}", compact(&c.v), compact(&c.r)))
            .collect();
        write_lines(&mut out, "cells", &cells, false);
        let _ = writeln!(out, "  \"weights\": {}", compact(&self.weights));
        out.push_str("}\n");
        out
    }
}

fn compact<T: Serialize>(x: &T) -> String {
    let s = serde_json::to_string(x).expect("plain data serializes");
    s.replace(',', ", ")
}

fn write_rows(out: &mut String, key: &str, rows: &[Vec<Value>], last: bool) {
    let lines: Vec<String> = rows.iter().map(compact).collect();
    write_lines(out, key, &lines, last);
}

fn write_lines(out: &mut String, key: &str, lines: &[String], last: bool) {
    let comma = if last { "" } else { "," };
    if lines.is_empty() {
        let _ = writeln!(out, "  \"{key}\": []{comma}");
        return;
    }
    let _ = writeln!(out, "  \"{key}\": [");
    for (i, l) in lines.iter().enumerate() {
        let sep = if i + 1 < lines.len() { "," } else { "" };
        let _ = writeln!(out, "    {l}{sep}");
    }
    let _ = writeln!(out, "  ]{comma}");
}

/// Minimum facet cut as reported next to a certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinCutEntry {
    /// `None` when no removal leaving two facets disconnects.
    pub size: Option<usize>,
    pub witness: Option<Vec<usize>>,
}

/// The on-disk form of a connectivity certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateFile {
    pub k: usize,
    pub verdict: bool,
    pub witness: Option<Vec<usize>>,
    pub d: usize,
    pub lineality_dim: usize,
    pub facets: usize,
    pub ridges: usize,
    pub subsets_examined: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mincut: Option<MinCutEntry>,
}

impl CertificateFile {
    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("plain data serializes");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratlin::rat;

    fn line() -> Complex {
        Complex::new(
            2,
            vec![],
            vec![
                QVector::from_ints(&[1, 0]),
                QVector::from_ints(&[0, 1]),
                QVector::from_ints(&[-1, -1]),
            ],
            vec![],
            vec![Cell::cone(vec![0]), Cell::cone(vec![1]), Cell::cone(vec![2])],
            None,
        )
        .unwrap()
    }

    #[test]
    fn rationals_from_json() {
        assert_eq!(rational_from_json(&Value::from(3)).unwrap(), rat(3, 1));
        assert_eq!(rational_from_json(&Value::from("-2/4")).unwrap(), rat(-1, 2));
        assert!(rational_from_json(&Value::from(0.5)).is_err());
        assert!(rational_from_json(&Value::Null).is_err());
    }

    #[test]
    fn round_trip_is_stable() {
        let f = FanFile::from_complex(&line());
        let text = f.to_json_string();
        let again = FanFile::parse(&text).unwrap().to_complex().unwrap();
        assert_eq!(FanFile::from_complex(&again).to_json_string(), text);
    }

    #[test]
    fn rational_vertices_round_trip() {
        let c = Complex::new(
            1,
            vec![QVector::new(vec![rat(1, 3)]), QVector::new(vec![rat(5, 2)])],
            vec![],
            vec![],
            vec![Cell::new(vec![0, 1], vec![])],
            Some(vec![2]),
        )
        .unwrap();
        let text = FanFile::from_complex(&c).to_json_string();
        assert!(text.contains("\"1/3\""));
        let back = FanFile::parse(&text).unwrap().to_complex().unwrap();
        assert!(back.same_facets(&c));
        assert_eq!(back.weights(), &[2]);
    }

    #[test]
    fn invalid_files_are_rejected() {
        let overlapping = r#"{"ambient_dim": 2, "rays": [[1, 0], [0, 1], [1, 1], [-1, 2]],
            "cells": [{"v": [], "r": [0, 1]}, {"v": [], "r": [2, 3]}]}"#;
        assert!(matches!(
            FanFile::parse(overlapping).unwrap().to_complex(),
            Err(Error::InvalidComplex(_))
        ));
        let wrong_dim = r#"{"ambient_dim": 2, "rays": [[1]], "cells": [{"v": [], "r": [0]}]}"#;
        assert!(matches!(
            FanFile::parse(wrong_dim).unwrap().to_complex(),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(matches!(FanFile::parse("{"), Err(Error::Parse(_))));
    }

    #[test]
    fn certificate_omits_missing_mincut() {
        let c = CertificateFile {
            k: 2,
            verdict: false,
            witness: Some(vec![0]),
            d: 2,
            lineality_dim: 0,
            facets: 12,
            ridges: 7,
            subsets_examined: 1,
            mincut: None,
        };
        let text = c.to_json_string();
        assert!(!text.contains("mincut"));
        let back: CertificateFile = serde_json::from_str(&text).unwrap();
        assert_eq!(back, c);
    }
}
