//! JSON interchange format for matrices.
//!
//! ```json
//! {"rows": 2, "cols": 2, "data": [[1, 0], [0, 0], [0, 0], [0, 0]]}
//! ```
//!
//! `data` holds `[re, im]` pairs in row-major order. Output writes every
//! double with 17 significant digits so it parses back bit for bit.

use std::io::Read;
use std::path::Path;

use serde::{Deserialize, Serialize, Serializer};
use serde_json::value::RawValue;

use crate::error::{Error, Result};
use crate::linalg::{CMatrix, C64};

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixFile {
    rows: usize,
    cols: usize,
    data: Vec<[f64; 2]>,
}

/// A double written with 17 significant digits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Real17(pub f64);

impl Serialize for Real17 {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        if !self.0.is_finite() {
            return serializer.serialize_none();
        }
        let raw = RawValue::from_string(format_real(self.0)).map_err(serde::ser::Error::custom)?;
        raw.serialize(serializer)
    }
}

/// `v` in scientific notation with 17 significant digits.
pub fn format_real(v: f64) -> String {
    format!("{v:.16e}")
}

/// Serializable form of a matrix.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<[Real17; 2]>,
}

impl From<&CMatrix> for MatrixJson {
    fn from(m: &CMatrix) -> Self {
        Self {
            rows: m.rows(),
            cols: m.cols(),
            data: m.data().iter().map(|z| [Real17(z.re), Real17(z.im)]).collect(),
        }
    }
}

fn parse_error(origin: &str, location: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Parse { origin: origin.to_string(), location: location.into(), message: message.into() }
}

/// Parses a matrix from JSON text; `origin` names the source in errors.
pub fn parse_matrix_str(text: &str, origin: &str) -> Result<CMatrix> {
    let file: MatrixFile = serde_json::from_str(text).map_err(|e| {
        parse_error(origin, format!("line {} column {}", e.line(), e.column()), e.to_string())
    })?;
    if file.rows == 0 || file.cols == 0 {
        return Err(parse_error(origin, "field `rows`/`cols`", format!("empty shape {}x{}", file.rows, file.cols)));
    }
    let expected = file.rows.checked_mul(file.cols);
    if expected != Some(file.data.len()) {
        return Err(parse_error(
            origin,
            "field `data`",
            format!("{} entries for a {}x{} matrix", file.data.len(), file.rows, file.cols),
        ));
    }
    if let Some(k) = file.data.iter().position(|[re, im]| !re.is_finite() || !im.is_finite()) {
        return Err(parse_error(origin, format!("field `data[{k}]`"), "entry is not finite"));
    }
    let data = file.data.iter().map(|&[re, im]| C64::new(re, im)).collect();
    CMatrix::new(file.rows, file.cols, data)
}

/// Reads a matrix from a file, or from standard input when `path` is `-`.
pub fn parse_matrix(path: &Path) -> Result<CMatrix> {
    let origin = path.display().to_string();
    let mut text = String::new();
    let read = if origin == "-" {
        std::io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| text = t)
    };
    read.map_err(|e| parse_error(&origin, "file", e.to_string()))?;
    parse_matrix_str(&text, &origin)
}

/// Matrix as pretty-printed JSON text.
pub fn matrix_to_string(m: &CMatrix) -> String {
    serde_json::to_string_pretty(&MatrixJson::from(m)).expect("matrix serialization cannot fail")
}

pub fn write_matrix(path: &Path, m: &CMatrix) -> Result<()> {
    let mut text = matrix_to_string(m);
    text.push('\n');
    std::fs::write(path, text).map_err(|e| parse_error(&path.display().to_string(), "file", e.to_string()))
}
