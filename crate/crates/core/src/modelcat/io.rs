//! JSON file formats for star reps and automorphism pairs.
//!
//! ```json
//! {"n": 4, "dimV": 2, "outer": [{"dim": 1, "map": [["1"], ["0"]]}, ...]}
//! {"dim": 1, "m": [["2"]]}
//! ```
//!
//! Maps are row-major with shape `dimV x dim`; entries are rational strings.

use serde_json::{json, Map, Value};

use crate::exactlin::{RatMatrix, Rational};

use super::{AutPair, OuterSpace, StarSumRep};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("malformed JSON at line {line}, column {column}: {message}")]
    Json {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{path}: {message}")]
    Schema { path: String, message: String },
    #[error("{path}: invalid rational {value:?}: {source}")]
    Rational {
        path: String,
        value: String,
        source: crate::exactlin::ParseRationalError,
    },
}

fn schema(path: &str, message: impl Into<String>) -> FormatError {
    FormatError::Schema {
        path: path.to_string(),
        message: message.into(),
    }
}

/// Either kind of input file, told apart by its keys. The AutPair matrix is
/// not yet checked against the pair invariants; see [`AutPair::new`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModelFile {
    Rep(StarSumRep),
    AutPair(RatMatrix),
}

pub fn parse_json(text: &str) -> Result<Value, FormatError> {
    serde_json::from_str(text).map_err(|e| FormatError::Json {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str, path: &str) -> Result<&'a Value, FormatError> {
    obj.get(key).ok_or_else(|| schema(path, format!("missing key {key:?}")))
}

fn as_count(v: &Value, path: &str) -> Result<usize, FormatError> {
    v.as_u64()
        .and_then(|n| usize::try_from(n).ok())
        .ok_or_else(|| schema(path, "expected a non-negative integer"))
}

fn parse_matrix(v: &Value, rows: usize, cols: usize, path: &str) -> Result<RatMatrix, FormatError> {
    let arr = v.as_array().ok_or_else(|| schema(path, "expected an array of rows"))?;
    if arr.len() != rows {
        return Err(schema(path, format!("expected {rows} rows, found {}", arr.len())));
    }
    let mut data = Vec::with_capacity(rows * cols);
    for (i, row) in arr.iter().enumerate() {
        let rpath = format!("{path}[{i}]");
        let row = row.as_array().ok_or_else(|| schema(&rpath, "expected an array"))?;
        if row.len() != cols {
            return Err(schema(&rpath, format!("expected {cols} entries, found {}", row.len())));
        }
        for (j, e) in row.iter().enumerate() {
            let epath = format!("{rpath}[{j}]");
            let s = e.as_str().ok_or_else(|| schema(&epath, "expected a rational string"))?;
            let q = s.parse::<Rational>().map_err(|source| FormatError::Rational {
                path: epath.clone(),
                value: s.to_string(),
                source,
            })?;
            data.push(q);
        }
    }
    Ok(RatMatrix::new(rows, cols, data).expect("sized"))
}

pub fn rep_from_value(v: &Value) -> Result<StarSumRep, FormatError> {
    let obj = v.as_object().ok_or_else(|| schema("$", "expected an object"))?;
    let n = as_count(field(obj, "n", "$")?, "$.n")?;
    let dim_v = as_count(field(obj, "dimV", "$")?, "$.dimV")?;
    let outer_v = field(obj, "outer", "$")?
        .as_array()
        .ok_or_else(|| schema("$.outer", "expected an array"))?;
    if outer_v.len() != n {
        return Err(schema("$.outer", format!("n = {n} but {} outer spaces given", outer_v.len())));
    }
    let mut outer = Vec::with_capacity(n);
    for (a, o) in outer_v.iter().enumerate() {
        let path = format!("$.outer[{a}]");
        let oo = o.as_object().ok_or_else(|| schema(&path, "expected an object"))?;
        let dim = as_count(field(oo, "dim", &path)?, &format!("{path}.dim"))?;
        let map = parse_matrix(field(oo, "map", &path)?, dim_v, dim, &format!("{path}.map"))?;
        outer.push(OuterSpace { dim, map });
    }
    StarSumRep::new(dim_v, outer).map_err(|e| schema("$", e.to_string()))
}

/// Parses the matrix of an AutPair file without checking the pair invariants.
pub fn autpair_matrix_from_value(v: &Value) -> Result<RatMatrix, FormatError> {
    let obj = v.as_object().ok_or_else(|| schema("$", "expected an object"))?;
    let dim = as_count(field(obj, "dim", "$")?, "$.dim")?;
    parse_matrix(field(obj, "m", "$")?, dim, dim, "$.m")
}

pub fn parse_rep(text: &str) -> Result<StarSumRep, FormatError> {
    rep_from_value(&parse_json(text)?)
}

/// Distinguishes rep files (`"outer"`) from AutPair files (`"m"`).
pub fn parse_model_value(v: &Value) -> Result<ModelFile, FormatError> {
    match v.as_object() {
        Some(o) if o.contains_key("outer") => rep_from_value(v).map(ModelFile::Rep),
        Some(o) if o.contains_key("m") => autpair_matrix_from_value(v).map(ModelFile::AutPair),
        _ => Err(schema("$", "expected a rep (\"outer\") or an AutPair (\"m\") object")),
    }
}

fn matrix_value(m: &RatMatrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array(m.row(i).iter().map(|q| Value::String(q.to_string())).collect()))
            .collect(),
    )
}

pub fn rep_to_value(rep: &StarSumRep) -> Value {
    let outer: Vec<Value> = rep
        .outer()
        .iter()
        .map(|o| json!({"dim": o.dim, "map": matrix_value(&o.map)}))
        .collect();
    json!({"n": rep.n(), "dimV": rep.dim_v(), "outer": outer})
}

pub fn autpair_to_value(pair: &AutPair) -> Value {
    json!({"dim": pair.dim(), "m": matrix_value(pair.m())})
}

pub fn matrix_to_value(m: &RatMatrix) -> Value {
    matrix_value(m)
}
