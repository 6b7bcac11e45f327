//! Input documents describing a characteristic pair.
//!
//! ```json
//! {
//!   "dim": 2,
//!   "mode": "quasitoric",
//!   "orientation": 1,
//!   "facets": [
//!     {"normal": [-1, -1], "offset": 1},
//!     {"normal": [1, 0], "offset": 0},
//!     {"normal": [0, 1], "offset": "0/1"}
//!   ],
//!   "lambda": [[-1, -1], [1, 0], [0, 1]],
//!   "nu": [1, 2]
//! }
//! ```
//!
//! Facet `i` is the half-space `<normal, x> >= -offset`; `lambda` lists one
//! column per facet. In `toric` mode `lambda` must be absent and is derived
//! from the normals.

use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use quasitoric_core::algebra::Rational;
use quasitoric_core::char_pair::{CharMatrix, NuVector};
use quasitoric_core::polytope::{Facet, HPolytope, Orientation};
use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::num::{format_rational, parse_int, parse_rational, Int};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    SyntaxError {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("schema error in `{field}`: {message}")]
    SchemaError { field: String, message: String },
    #[error("dimension mismatch in `{field}`: expected {expected}, found {found}")]
    DimensionMismatch {
        field: String,
        expected: usize,
        found: usize,
    },
}

impl ParseError {
    fn schema(field: impl Into<String>, message: impl Into<String>) -> Self {
        ParseError::SchemaError {
            field: field.into(),
            message: message.into(),
        }
    }

    /// The field the error points at, if any.
    pub fn field(&self) -> Option<&str> {
        match self {
            ParseError::SyntaxError { .. } => None,
            ParseError::SchemaError { field, .. } | ParseError::DimensionMismatch { field, .. } => {
                Some(field)
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Mode {
    #[default]
    Quasitoric,
    Toric,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Quasitoric => "quasitoric",
            Mode::Toric => "toric",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputDocument {
    pub dim: usize,
    pub facets: Vec<Facet>,
    /// One column per facet.
    pub lambda: Option<Vec<Vec<BigInt>>>,
    pub orientation: Orientation,
    pub nu: Option<Vec<BigInt>>,
    pub mode: Mode,
}

impl InputDocument {
    pub fn hpolytope(&self) -> Result<HPolytope, quasitoric_core::polytope::PolytopeError> {
        HPolytope::new(self.dim, self.facets.clone())
    }

    pub fn char_matrix(&self) -> Option<Result<CharMatrix, quasitoric_core::char_pair::CharError>> {
        self.lambda
            .as_ref()
            .map(|cols| CharMatrix::new(self.dim, cols.clone()))
    }

    pub fn nu_vector(&self) -> Option<Result<NuVector, quasitoric_core::char_pair::CharError>> {
        self.nu.as_ref().map(|v| NuVector::new(v.clone()))
    }

    pub fn to_value(&self) -> Value {
        let facets: Vec<Value> = self
            .facets
            .iter()
            .map(|f| {
                let offset = if f.offset.is_integer() {
                    match f.offset.to_integer().to_i64() {
                        Some(x) => json!(x),
                        None => json!(format_rational(&f.offset)),
                    }
                } else {
                    json!(format_rational(&f.offset))
                };
                json!({ "normal": int_values(&f.normal), "offset": offset })
            })
            .collect();
        let mut m = Map::new();
        m.insert("dim".into(), json!(self.dim));
        m.insert("mode".into(), json!(self.mode.as_str()));
        m.insert("orientation".into(), json!(self.orientation.sign()));
        m.insert("facets".into(), Value::Array(facets));
        if let Some(cols) = &self.lambda {
            m.insert(
                "lambda".into(),
                Value::Array(cols.iter().map(|c| int_values(c)).collect()),
            );
        }
        if let Some(nu) = &self.nu {
            m.insert("nu".into(), int_values(nu));
        }
        Value::Object(m)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_value()).expect("values serialize")
    }
}

fn int_values(v: &[BigInt]) -> Value {
    serde_json::to_value(v.iter().cloned().map(Int).collect::<Vec<_>>()).expect("ints serialize")
}

fn int_at(v: &Value, field: &str) -> Result<BigInt, ParseError> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .or_else(|| n.as_u64().map(BigInt::from))
            .ok_or_else(|| ParseError::schema(field, "expected an integer")),
        Value::String(s) => {
            parse_int(s).ok_or_else(|| ParseError::schema(field, "expected an integer"))
        }
        _ => Err(ParseError::schema(field, "expected an integer")),
    }
}

fn int_vec_at(v: &Value, field: &str) -> Result<Vec<BigInt>, ParseError> {
    let arr = v
        .as_array()
        .ok_or_else(|| ParseError::schema(field, "expected an array of integers"))?;
    arr.iter()
        .enumerate()
        .map(|(i, x)| int_at(x, &format!("{field}[{i}]")))
        .collect()
}

fn rational_at(v: &Value, field: &str) -> Result<Rational, ParseError> {
    match v {
        Value::String(s) => parse_rational(s)
            .ok_or_else(|| ParseError::schema(field, "expected \"p/q\" or an integer")),
        _ => int_at(v, field)
            .map(Rational::from_integer)
            .map_err(|_| ParseError::schema(field, "expected \"p/q\" or an integer")),
    }
}

fn check_len(field: String, expected: usize, found: usize) -> Result<(), ParseError> {
    if expected != found {
        return Err(ParseError::DimensionMismatch {
            field,
            expected,
            found,
        });
    }
    Ok(())
}

const KNOWN_FIELDS: [&str; 6] = ["dim", "facets", "lambda", "orientation", "nu", "mode"];

/// Parses and validates a document; errors name the offending field.
pub fn parse_input(text: &str) -> Result<InputDocument, ParseError> {
    let value: Value = serde_json::from_str(text).map_err(|e| ParseError::SyntaxError {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    from_value(&value)
}

pub fn from_value(value: &Value) -> Result<InputDocument, ParseError> {
    let obj = value
        .as_object()
        .ok_or_else(|| ParseError::schema("$", "expected an object"))?;
    if let Some(k) = obj.keys().find(|k| !KNOWN_FIELDS.contains(&k.as_str())) {
        return Err(ParseError::schema(k.clone(), "unknown field"));
    }

    let dim = obj
        .get("dim")
        .ok_or_else(|| ParseError::schema("dim", "missing"))?
        .as_u64()
        .filter(|&d| d > 0)
        .ok_or_else(|| ParseError::schema("dim", "expected a positive integer"))?
        as usize;

    let mode = match obj.get("mode") {
        None => Mode::Quasitoric,
        Some(Value::String(s)) if s == "quasitoric" => Mode::Quasitoric,
        Some(Value::String(s)) if s == "toric" => Mode::Toric,
        Some(_) => {
            return Err(ParseError::schema(
                "mode",
                "expected \"quasitoric\" or \"toric\"",
            ))
        }
    };

    let facets_v = obj
        .get("facets")
        .ok_or_else(|| ParseError::schema("facets", "missing"))?
        .as_array()
        .ok_or_else(|| ParseError::schema("facets", "expected an array"))?;
    let mut facets = Vec::with_capacity(facets_v.len());
    for (i, f) in facets_v.iter().enumerate() {
        let field = format!("facets[{i}]");
        let fo = f
            .as_object()
            .ok_or_else(|| ParseError::schema(field.clone(), "expected an object"))?;
        if let Some(k) = fo.keys().find(|k| *k != "normal" && *k != "offset") {
            return Err(ParseError::schema(format!("{field}.{k}"), "unknown field"));
        }
        let nf = format!("{field}.normal");
        let normal = int_vec_at(
            fo.get("normal")
                .ok_or_else(|| ParseError::schema(nf.clone(), "missing"))?,
            &nf,
        )?;
        check_len(nf, dim, normal.len())?;
        let of = format!("{field}.offset");
        let offset = rational_at(
            fo.get("offset")
                .ok_or_else(|| ParseError::schema(of.clone(), "missing"))?,
            &of,
        )?;
        facets.push(Facet::new(normal, offset));
    }

    let lambda = match (mode, obj.get("lambda")) {
        (Mode::Toric, Some(_)) => {
            return Err(ParseError::schema("lambda", "not allowed in toric mode"))
        }
        (Mode::Quasitoric, None) => {
            return Err(ParseError::schema("lambda", "required in quasitoric mode"))
        }
        (Mode::Toric, None) => None,
        (Mode::Quasitoric, Some(v)) => {
            let cols = v
                .as_array()
                .ok_or_else(|| ParseError::schema("lambda", "expected an array of columns"))?;
            check_len("lambda".into(), facets.len(), cols.len())?;
            let mut out = Vec::with_capacity(cols.len());
            for (j, c) in cols.iter().enumerate() {
                let field = format!("lambda[{j}]");
                let col = int_vec_at(c, &field)?;
                check_len(field, dim, col.len())?;
                out.push(col);
            }
            Some(out)
        }
    };

    let orientation = match obj.get("orientation") {
        None => Orientation::Standard,
        Some(v) => v
            .as_i64()
            .and_then(Orientation::from_sign)
            .ok_or_else(|| ParseError::schema("orientation", "expected 1 or -1"))?,
    };

    let nu = match obj.get("nu") {
        None | Some(Value::Null) => None,
        Some(v) => {
            let nu = int_vec_at(v, "nu")?;
            check_len("nu".into(), dim, nu.len())?;
            Some(nu)
        }
    };

    Ok(InputDocument {
        dim,
        facets,
        lambda,
        orientation,
        nu,
        mode,
    })
}
