//! Matrix text format: one row per line, comma-separated entries. Each entry
//! is an integer, a decimal or an exact `p/q` rational. Blank lines and
//! lines starting with `#` are ignored.

use num_rational::BigRational;

use super::Matrix;
use crate::error::{Error, Result};
use crate::rational::{format_rational, parse_rational};

pub fn parse_matrix(text: &str) -> Result<Matrix> {
    let mut rows: Vec<Vec<BigRational>> = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let row = line
            .split(',')
            .map(|cell| {
                parse_rational(cell).map_err(|e| match e {
                    Error::Parse { message, .. } => Error::Parse {
                        line: idx + 1,
                        message,
                    },
                    other => other,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(Error::Parse {
            line: 0,
            message: "no matrix rows".into(),
        });
    }
    Matrix::from_rows(rows)
}

/// Writes exact entries; integers without denominator, otherwise `p/q`.
pub fn write_matrix(m: &Matrix) -> String {
    let mut out = String::new();
    for row in m.rows() {
        let cells: Vec<String> = row.iter().map(format_rational).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}
