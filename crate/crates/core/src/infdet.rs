//! Truncations `det(I − A(n))` of infinite determinants and the
//! exponential bound `exp(½ Σ A_ij² − Σ A_ii)` on their limit.
//!
//! Only spec kinds whose diagonal sum and square sum are known in closed
//! form (or are finite sums) are supported.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::det_f64;
use crate::rational::{parse_rational, to_f64};

/// A number given either as a JSON number or as a rational string.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ScalarRepr", into = "f64")]
pub struct Scalar(pub f64);

#[derive(Deserialize)]
#[serde(untagged)]
enum ScalarRepr {
    Number(f64),
    Text(String),
}

impl TryFrom<ScalarRepr> for Scalar {
    type Error = Error;

    fn try_from(value: ScalarRepr) -> Result<Self> {
        match value {
            ScalarRepr::Number(v) => Ok(Scalar(v)),
            ScalarRepr::Text(t) => Ok(Scalar(to_f64(&parse_rational(&t)?))),
        }
    }
}

impl From<Scalar> for f64 {
    fn from(s: Scalar) -> f64 {
        s.0
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SupportEntry {
    /// 1-based
    pub row: usize,
    /// 1-based
    pub col: usize,
    pub value: Scalar,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum InfiniteMatrixSpec {
    /// `A_ii = c·rⁱ` for `i ≥ 1`, zero off the diagonal; needs `|r| < 1`.
    DiagonalGeometric { c: Scalar, r: Scalar },
    /// Explicit nonzero entries; every other entry is zero.
    FiniteSupport { entries: Vec<SupportEntry> },
    /// Dense top-left block, zero outside it.
    Table { rows: Vec<Vec<Scalar>> },
}

impl InfiniteMatrixSpec {
    pub fn diagonal_geometric(c: f64, r: f64) -> Result<Self> {
        let spec = Self::DiagonalGeometric {
            c: Scalar(c),
            r: Scalar(r),
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn finite_support(entries: &[(usize, usize, f64)]) -> Result<Self> {
        let spec = Self::FiniteSupport {
            entries: entries
                .iter()
                .map(|&(row, col, v)| SupportEntry {
                    row,
                    col,
                    value: Scalar(v),
                })
                .collect(),
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn zero() -> Self {
        Self::FiniteSupport { entries: vec![] }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let spec: Self = serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            message: e.to_string(),
        })?;
        spec.validate()?;
        Ok(spec)
    }

    /// Checks the summability hypotheses.
    pub fn validate(&self) -> Result<()> {
        let finite = |v: f64, what: &str| {
            if v.is_finite() {
                Ok(())
            } else {
                Err(Error::DivergentSpec(format!("{what} is not finite")))
            }
        };
        match self {
            Self::DiagonalGeometric { c, r } => {
                finite(c.0, "c")?;
                finite(r.0, "r")?;
                if r.0.abs() >= 1.0 {
                    return Err(Error::DivergentSpec(format!(
                        "|r| = {} >= 1: diagonal sums diverge",
                        r.0.abs()
                    )));
                }
            }
            Self::FiniteSupport { entries } => {
                for e in entries {
                    if e.row == 0 || e.col == 0 {
                        return Err(Error::InvalidParameter(
                            "support indices are 1-based".into(),
                        ));
                    }
                    finite(e.value.0, "support entry")?;
                }
            }
            Self::Table { rows } => {
                for v in rows.iter().flatten() {
                    finite(v.0, "table entry")?;
                }
            }
        }
        Ok(())
    }

    /// `A_ij`, 1-based.
    pub fn entry(&self, i: usize, j: usize) -> f64 {
        match self {
            Self::DiagonalGeometric { c, r } => {
                if i == j {
                    c.0 * r.0.powi(i as i32)
                } else {
                    0.0
                }
            }
            Self::FiniteSupport { entries } => entries
                .iter()
                .filter(|e| e.row == i && e.col == j)
                .map(|e| e.value.0)
                .sum(),
            Self::Table { rows } => rows
                .get(i.wrapping_sub(1))
                .and_then(|row| row.get(j.wrapping_sub(1)))
                .map_or(0.0, |v| v.0),
        }
    }

    /// Sums over the whole infinite matrix.
    pub fn sums(&self) -> InfiniteSums {
        match self {
            Self::DiagonalGeometric { c, r } => {
                let (c, r) = (c.0, r.0);
                let trace = c * r / (1.0 - r);
                InfiniteSums {
                    trace,
                    trace_abs: c.abs() * r.abs() / (1.0 - r.abs()),
                    square: c * c * r * r / (1.0 - r * r),
                    total: trace,
                }
            }
            _ => self.truncated_sums(self.support_size()),
        }
    }

    /// Smallest `n` such that every nonzero entry lies in `A(n)`, for the
    /// finite kinds.
    fn support_size(&self) -> usize {
        match self {
            Self::DiagonalGeometric { .. } => usize::MAX,
            Self::FiniteSupport { entries } => {
                entries.iter().map(|e| e.row.max(e.col)).max().unwrap_or(0)
            }
            Self::Table { rows } => rows
                .len()
                .max(rows.iter().map(Vec::len).max().unwrap_or(0)),
        }
    }

    /// Sums over the `n × n` truncation `A(n)`.
    pub fn truncated_sums(&self, n: usize) -> InfiniteSums {
        let mut s = InfiniteSums::default();
        let mut add = |i: usize, j: usize, v: f64| {
            if i == j {
                s.trace += v;
                s.trace_abs += v.abs();
            }
            s.square += v * v;
            s.total += v;
        };
        match self {
            Self::DiagonalGeometric { .. } => {
                for i in 1..=n {
                    add(i, i, self.entry(i, i));
                }
            }
            Self::FiniteSupport { entries } => {
                for e in entries.iter().filter(|e| e.row <= n && e.col <= n) {
                    add(e.row, e.col, e.value.0);
                }
            }
            Self::Table { rows } => {
                for (i, row) in rows.iter().enumerate().take(n) {
                    for (j, v) in row.iter().enumerate().take(n) {
                        add(i + 1, j + 1, v.0);
                    }
                }
            }
        }
        s
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct InfiniteSums {
    /// `Σ A_ii`
    pub trace: f64,
    /// `Σ |A_ii|`
    pub trace_abs: f64,
    /// `Σ A_ij²`
    pub square: f64,
    /// `Σ A_ij`
    pub total: f64,
}

/// `det(I − A(n))`; `n = 1` gives `1 − A_11`.
pub fn truncated_det(spec: &InfiniteMatrixSpec, n: usize) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidDimension("truncation needs n >= 1".into()));
    }
    let mut data = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            let id = if i == j { 1.0 } else { 0.0 };
            data[i * n + j] = id - spec.entry(i + 1, j + 1);
        }
    }
    Ok(det_f64(n, &mut data))
}

/// `exp(½ Σ A_ij² − Σ A_ii)`
pub fn koch_bound(spec: &InfiniteMatrixSpec) -> Result<f64> {
    spec.validate()?;
    let s = spec.sums();
    Ok((0.5 * s.square - s.trace).exp())
}

/// Both branches of the entry-sum bound applied to `I − A(n)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FiniteBounds {
    /// `β^(n/2) = (1 + (1/n)Σ A_ij² − (2/n)Σ A_ii)^(n/2)`, always valid.
    pub beta_power: f64,
    /// `|α| κ^((n−1)/2)`, valid only when `α² ≥ β`.
    pub alpha_kappa: f64,
}

pub fn finite_bounds(spec: &InfiniteMatrixSpec, n: usize) -> FiniteBounds {
    let s = spec.truncated_sums(n);
    let nf = n as f64;
    let beta = (nf + s.square - 2.0 * s.trace) / nf;
    let alpha = (nf - s.total) / nf;
    let beta_power = beta.max(0.0).powf(nf / 2.0);
    let alpha_kappa = if n == 1 {
        alpha.abs()
    } else {
        let kappa = ((nf * beta - alpha * alpha) / (nf - 1.0)).max(0.0);
        alpha.abs() * kappa.powf((nf - 1.0) / 2.0)
    };
    FiniteBounds {
        beta_power,
        alpha_kappa,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConvergenceRow {
    pub n: usize,
    pub truncated_det: f64,
    pub finite_bound: f64,
    pub alpha_kappa_bound: f64,
    pub koch_bound: f64,
}

pub fn convergence_report(spec: &InfiniteMatrixSpec, n_max: usize) -> Result<Vec<ConvergenceRow>> {
    if n_max == 0 {
        return Err(Error::InvalidDimension("n_max must be >= 1".into()));
    }
    let koch = koch_bound(spec)?;
    (1..=n_max)
        .map(|n| {
            let fb = finite_bounds(spec, n);
            Ok(ConvergenceRow {
                n,
                truncated_det: truncated_det(spec, n)?,
                finite_bound: fb.beta_power,
                alpha_kappa_bound: fb.alpha_kappa,
                koch_bound: koch,
            })
        })
        .collect()
}
