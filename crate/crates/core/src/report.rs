//! Structured report helpers. Exact rationals serialize as strings
//! (`"7"`, `"-3/4"`) so no precision is lost; floats stay JSON numbers.

use num_rational::BigRational;
use serde::Serializer;

use crate::linalg::Matrix;
use crate::rational::format_rational;

pub fn rational<S: Serializer>(value: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(value))
}

pub fn opt_rational<S: Serializer>(value: &Option<BigRational>, s: S) -> Result<S::Ok, S::Error> {
    match value {
        Some(v) => s.serialize_str(&format_rational(v)),
        None => s.serialize_none(),
    }
}

/// Matrix as a list of rows in the matrix text format.
pub fn matrix<S: Serializer>(m: &Matrix, s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(m.n()))?;
    for row in m.rows() {
        let line: Vec<String> = row.iter().map(format_rational).collect();
        seq.serialize_element(&line.join(","))?;
    }
    seq.end()
}
