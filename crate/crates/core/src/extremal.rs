//! Matrices with prescribed `s = nα`, `q = nβ` whose determinants reach the
//! bounds, and a checker for the necessary conditions a determinant
//! maximizer over such matrices must satisfy.

use std::ops::Neg;

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{det_float, entry_stats, EntryCase, EntryStats, Matrix};
use crate::rational::{self, format_rational, from_int, to_f64};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Variant {
    /// `γI + ((α − γ)/n) J`
    ShiftedIdentity,
    /// Block diagonal of scaled rotations.
    OrthogonalBlocks,
}

#[derive(Debug, Clone, Serialize)]
pub struct ExtremalRecipe {
    pub n: usize,
    #[serde(serialize_with = "crate::report::rational")]
    pub alpha: BigRational,
    #[serde(serialize_with = "crate::report::rational")]
    pub beta: BigRational,
    pub variant: Variant,
    /// Shifted identity: `((nβ − α²)/(n − 1))^(1/2)`. Orthogonal blocks:
    /// the rotation cosine of the 3×3 block, absent for even `n`.
    pub gamma: Option<f64>,
    #[serde(serialize_with = "crate::report::opt_rational")]
    pub gamma_exact: Option<BigRational>,
    /// True when every entry is the exact value, not a rounded double.
    pub exact: bool,
    #[serde(serialize_with = "crate::report::matrix")]
    pub matrix: Matrix,
    pub claimed_det: f64,
    #[serde(serialize_with = "crate::report::opt_rational")]
    pub claimed_det_exact: Option<BigRational>,
}

fn check_beta(alpha: &BigRational, beta: &BigRational) -> Result<()> {
    if !beta.is_positive() {
        return Err(Error::NonpositiveBeta(format_rational(beta)));
    }
    let _ = alpha;
    Ok(())
}

fn infeasible(alpha: &BigRational, beta: &BigRational, reason: &str) -> Error {
    Error::InfeasiblePair {
        alpha: format_rational(alpha),
        beta: format_rational(beta),
        reason: reason.into(),
    }
}

fn dimension(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidDimension(format!("n = {n}")));
    }
    Ok(())
}

/// `γI + ((α − γ)/n) J` with determinant `α γ^(n−1)`. Requires `α² ≤ nβ`.
pub fn construct_shifted(n: usize, alpha: &BigRational, beta: &BigRational) -> Result<ExtremalRecipe> {
    dimension(n)?;
    check_beta(alpha, beta)?;
    let nr = from_int(n as i64);
    let gamma_sq = (&nr * beta - alpha * alpha) / from_int(n as i64 - 1);
    if gamma_sq.is_negative() {
        return Err(infeasible(alpha, beta, "alpha^2 > n*beta"));
    }
    let recipe = match rational::sqrt_exact(&gamma_sq) {
        Some(g) => {
            let off = (alpha - &g) / &nr;
            let matrix = Matrix::shifted_identity(&g, &off, n)?;
            let det = alpha * rational::pow(&g, n - 1);
            ExtremalRecipe {
                n,
                alpha: alpha.clone(),
                beta: beta.clone(),
                variant: Variant::ShiftedIdentity,
                gamma: Some(to_f64(&g)),
                gamma_exact: Some(g),
                exact: true,
                matrix,
                claimed_det: to_f64(&det),
                claimed_det_exact: Some(det),
            }
        }
        None => {
            let g = to_f64(&gamma_sq).sqrt();
            let a = to_f64(alpha);
            let off = (a - g) / n as f64;
            let diag = g + off;
            let values: Vec<f64> = (0..n * n)
                .map(|k| if k / n == k % n { diag } else { off })
                .collect();
            ExtremalRecipe {
                n,
                alpha: alpha.clone(),
                beta: beta.clone(),
                variant: Variant::ShiftedIdentity,
                gamma: Some(g),
                gamma_exact: None,
                exact: false,
                matrix: Matrix::from_f64(n, &values)?,
                claimed_det: a * g.powi(n as i32 - 1),
                claimed_det_exact: None,
            }
        }
    };
    Ok(recipe)
}

/// Entries of the 2×2 block `[[a, d], [−d, a]]` and the scaled 3×3 block
/// `√β [[g, h, 0], [−h, g, 0], [0, 0, 1]]`.
struct BlockParts<T> {
    a: T,
    d: T,
    b3: Option<[T; 4]>, // (√β·g, √β·h, √β) plus a zero
}

fn assemble<T>(n: usize, parts: &BlockParts<T>, negate: bool) -> Vec<T>
where
    T: Clone + Zero + Neg<Output = T>,
{
    let mut out = vec![T::zero(); n * n];
    let pairs = if n.is_multiple_of(2) { n / 2 } else { n / 2 - 1 };
    for k in 0..pairs {
        let o = 2 * k;
        out[o * n + o] = parts.a.clone();
        out[o * n + o + 1] = parts.d.clone();
        out[(o + 1) * n + o] = -parts.d.clone();
        out[(o + 1) * n + o + 1] = parts.a.clone();
    }
    if let Some([sg, sh, sb, _]) = &parts.b3 {
        let o = 2 * pairs;
        out[o * n + o] = sg.clone();
        out[o * n + o + 1] = sh.clone();
        out[(o + 1) * n + o] = -sh.clone();
        out[(o + 1) * n + o + 1] = sg.clone();
        out[(o + 2) * n + o + 2] = sb.clone();
    }
    if negate {
        for v in out.iter_mut() {
            *v = -v.clone();
        }
        if n % 2 == 1 {
            // restore the sign of the determinant by swapping rows 1 and 2
            for j in 0..n {
                out.swap(j, n + j);
            }
        }
    }
    out
}

/// Block-diagonal matrix of scaled rotations with determinant `β^(n/2)`.
/// Requires `α² ≤ β`.
pub fn construct_orthogonal(n: usize, alpha: &BigRational, beta: &BigRational) -> Result<ExtremalRecipe> {
    dimension(n)?;
    check_beta(alpha, beta)?;
    if alpha * alpha > *beta {
        return Err(infeasible(alpha, beta, "alpha^2 > beta"));
    }
    let negate = alpha.is_negative();
    let a = alpha.abs();
    let odd = n % 2 == 1;
    let three = from_int(3);
    let one = from_int(1);
    let two = from_int(2);

    let exact_parts = (|| {
        let d = rational::sqrt_exact(&(beta - &a * &a))?;
        let b3 = if odd {
            let sb = rational::sqrt_exact(beta)?;
            let g = (&three * &a / &sb - &one) / &two;
            let h = rational::sqrt_exact(&(&one - &g * &g))?;
            Some(([&sb * &g, &sb * &h, sb.clone(), BigRational::zero()], g))
        } else {
            None
        };
        Some((d, b3))
    })();

    let claimed_det_exact = rational::half_power_exact(beta, n);
    let claimed_det = to_f64(beta).powf(n as f64 / 2.0);
    let recipe = match exact_parts {
        Some((d, b3)) => {
            let gamma_exact = b3.as_ref().map(|(_, g)| g.clone());
            let parts = BlockParts {
                a: a.clone(),
                d,
                b3: b3.map(|(block, _)| block),
            };
            let entries = assemble(n, &parts, negate);
            ExtremalRecipe {
                n,
                alpha: alpha.clone(),
                beta: beta.clone(),
                variant: Variant::OrthogonalBlocks,
                gamma: gamma_exact.as_ref().map(to_f64),
                gamma_exact,
                exact: true,
                matrix: Matrix::from_vec(n, entries)?,
                claimed_det,
                claimed_det_exact,
            }
        }
        None => {
            let af = to_f64(&a);
            let bf = to_f64(beta);
            let d = (bf - af * af).max(0.0).sqrt();
            let (b3, gamma) = if odd {
                let sb = bf.sqrt();
                let g = 0.5 * (3.0 * af / sb - 1.0);
                let h = (1.0 - g * g).max(0.0).sqrt();
                (Some([sb * g, sb * h, sb, 0.0]), Some(g))
            } else {
                (None, None)
            };
            let entries = assemble(n, &BlockParts { a: af, d, b3 }, negate);
            ExtremalRecipe {
                n,
                alpha: alpha.clone(),
                beta: beta.clone(),
                variant: Variant::OrthogonalBlocks,
                gamma,
                gamma_exact: None,
                exact: false,
                matrix: Matrix::from_f64(n, &entries)?,
                claimed_det,
                claimed_det_exact,
            }
        }
    };
    Ok(recipe)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Regime {
    /// `MMᵀ = βI`, `det M = β^(n/2)`
    OrthogonalRows,
    /// Equal row and column sums, `MMᵀ = (β − δ)I + δJ`,
    /// `det M = |α| (β − δ)^((n−1)/2)`
    EqualLineSums,
}

#[derive(Debug, Clone, Serialize)]
pub struct CharacterizationReport {
    pub stats: EntryStats,
    /// `(α² − β)/(n − 1)`
    #[serde(serialize_with = "crate::report::rational")]
    pub delta: BigRational,
    pub regimes: Vec<Regime>,
    /// `s(Mᵢ) = α` for all rows; `None` when only the orthogonal regime applies.
    pub rowsum_ok: Option<bool>,
    pub colsum_ok: Option<bool>,
    pub gram_ok: bool,
    pub det_ok: bool,
    pub det: f64,
    pub max_residual: f64,
}

impl CharacterizationReport {
    pub fn all_ok(&self) -> bool {
        self.gram_ok && self.det_ok && self.rowsum_ok != Some(false) && self.colsum_ok != Some(false)
    }
}

struct Checker {
    tol: f64,
    max_residual: f64,
}

impl Checker {
    fn check(&mut self, value: f64, target: f64) -> bool {
        let residual = (value - target).abs();
        if residual.is_nan() {
            self.max_residual = f64::NAN;
            return false;
        }
        self.max_residual = self.max_residual.max(residual);
        residual <= self.tol * target.abs().max(1.0)
    }
}

/// Checks the conditions every determinant maximizer with `M`'s entry sum
/// and square sum satisfies. Passing does not prove maximality.
///
/// Each identity is tested entrywise as `|value − target| ≤ tol·max(1, |target|)`;
/// `max_residual` is the largest absolute deviation. The determinant is
/// compared in absolute value, since a row swap fixes its sign without
/// affecting any other condition.
pub fn verify_characterization(m: &Matrix, tol: f64) -> CharacterizationReport {
    let n = m.n();
    let stats = entry_stats(m);
    let delta = (&stats.alpha * &stats.alpha - &stats.beta) / from_int(n as i64 - 1);
    let regimes = match stats.case_tag {
        EntryCase::AlphaSqLtBeta => vec![Regime::OrthogonalRows],
        EntryCase::AlphaSqEqBeta => vec![Regime::OrthogonalRows, Regime::EqualLineSums],
        EntryCase::AlphaSqGtBeta => vec![Regime::EqualLineSums],
    };

    let a = m.to_f64();
    let mut gram = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            gram[i * n + j] = (0..n).map(|k| a[i * n + k] * a[j * n + k]).sum();
        }
    }
    let det = det_float(m);
    let alpha = to_f64(&stats.alpha);
    let beta = to_f64(&stats.beta);
    let delta_f = to_f64(&delta);
    let nf = n as f64;

    let mut checker = Checker { tol, max_residual: 0.0 };
    let mut gram_ok = true;
    let mut det_ok = true;
    let mut rowsum_ok = None;
    let mut colsum_ok = None;
    for regime in &regimes {
        match regime {
            Regime::OrthogonalRows => {
                for i in 0..n {
                    for j in 0..n {
                        let target = if i == j { beta } else { 0.0 };
                        gram_ok &= checker.check(gram[i * n + j], target);
                    }
                }
                det_ok &= checker.check(det.abs(), beta.powf(nf / 2.0));
            }
            Regime::EqualLineSums => {
                let mut rows = true;
                let mut cols = true;
                for i in 0..n {
                    rows &= checker.check((0..n).map(|j| a[i * n + j]).sum(), alpha);
                    cols &= checker.check((0..n).map(|j| a[j * n + i]).sum(), alpha);
                }
                rowsum_ok = Some(rows);
                colsum_ok = Some(cols);
                for i in 0..n {
                    for j in 0..n {
                        let target = if i == j { beta } else { delta_f };
                        gram_ok &= checker.check(gram[i * n + j], target);
                    }
                }
                let target = alpha.abs() * (beta - delta_f).max(0.0).powf((nf - 1.0) / 2.0);
                det_ok &= checker.check(det.abs(), target);
            }
        }
    }
    CharacterizationReport {
        stats,
        delta,
        regimes,
        rowsum_ok,
        colsum_ok,
        gram_ok,
        det_ok,
        det,
        max_residual: checker.max_residual,
    }
}
