//! Matrix file formats.
//!
//! Text: a line holding `n`, followed by `n` lines of `n` whitespace-separated
//! decimals. Values are written with 17 significant digits so that reading
//! back reproduces the same binary64 bits.
//!
//! JSON: `{"n": 3, "rows": [[...], [...], [...]]}`.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{Mat, MatError};

#[derive(Serialize, Deserialize)]
struct MatJson {
    n: usize,
    rows: Vec<Vec<f64>>,
}

/// 17 significant digits in scientific notation.
pub fn format_f64(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn to_text(m: &Mat) -> String {
    let mut out = String::new();
    writeln!(out, "{}", m.n()).unwrap();
    for row in m.rows() {
        let line: Vec<String> = row.iter().map(|&v| format_f64(v)).collect();
        writeln!(out, "{}", line.join(" ")).unwrap();
    }
    out
}

pub fn parse_text(s: &str) -> Result<Mat, MatError> {
    let mut lines = s.lines().map(str::trim).filter(|l| !l.is_empty());
    let header = lines.next().ok_or_else(|| MatError::Parse("empty input".into()))?;
    let n: usize = header
        .parse()
        .map_err(|_| MatError::Parse(format!("bad dimension line {header:?}")))?;
    let mut rows = Vec::with_capacity(n);
    for (i, line) in lines.enumerate() {
        if i >= n {
            return Err(MatError::Parse(format!("more than {n} rows")));
        }
        let row = line
            .split_whitespace()
            .map(|tok| {
                tok.parse::<f64>()
                    .map_err(|_| MatError::Parse(format!("row {i}: bad number {tok:?}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(row);
    }
    if rows.len() != n {
        return Err(MatError::Parse(format!("expected {n} rows, found {}", rows.len())));
    }
    Mat::from_rows(&rows)
}

pub fn to_json(m: &Mat) -> String {
    serde_json::to_string(&MatJson {
        n: m.n(),
        rows: m.to_rows(),
    })
    .expect("matrix serializes")
}

pub fn parse_json(s: &str) -> Result<Mat, MatError> {
    let parsed: MatJson = serde_json::from_str(s).map_err(|e| MatError::Parse(e.to_string()))?;
    let m = Mat::from_rows(&parsed.rows)?;
    if m.n() != parsed.n {
        return Err(MatError::Parse(format!(
            "declared n = {} but found {} rows",
            parsed.n,
            m.n()
        )));
    }
    Ok(m)
}

/// Parses either format, choosing JSON when the input starts with `{`.
pub fn parse_any(s: &str) -> Result<Mat, MatError> {
    if s.trim_start().starts_with('{') {
        parse_json(s)
    } else {
        parse_text(s)
    }
}
