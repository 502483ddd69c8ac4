//! Closed-form determinant bounds built from `α = s/n`, `β = q/n` and
//! `κ = (nβ − α²)/(n − 1)`, plus the application bounds derived from them.

mod apps;

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::Result;
use crate::linalg::{entry_stats, EntryCase, EntryStats, Matrix};
use crate::rational::{self, to_f64};

pub use apps::{
    best_excess_check, brent_bound, hadamard_row_bound, progression_bound, progression_entries,
    relate_gap, ryser_bound, trace_det_check, BestReport, BrentInput, ProgressionBound,
    ProgressionMode, RelateGap, RyserInput, TraceDetReport,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum FormulaTag {
    /// `β^(n/2)`
    BetaPower,
    /// `|α| κ^((n−1)/2)`
    AlphaKappa,
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundReport {
    pub stats: EntryStats,
    pub bound: f64,
    pub formula_tag: FormulaTag,
    pub beta_power: f64,
    /// `|α| κ^((n−1)/2)` regardless of whether it is a valid bound.
    pub alpha_kappa: f64,
    pub feasible: bool,
}

/// `base^exponent` in floating point for a non-negative rational base.
pub(crate) fn real_power(base: &BigRational, exponent: f64) -> f64 {
    if base.is_zero() {
        return if exponent == 0.0 { 1.0 } else { 0.0 };
    }
    to_f64(base).powf(exponent)
}

pub fn gasper_bound_from_stats(stats: EntryStats) -> BoundReport {
    let n = stats.n as f64;
    let beta_power = real_power(&stats.beta, n / 2.0);
    let feasible = stats.feasible();
    let kappa = if stats.kappa.is_negative() {
        BigRational::zero()
    } else {
        stats.kappa.clone()
    };
    let alpha_kappa = to_f64(&stats.alpha.abs()) * real_power(&kappa, (n - 1.0) / 2.0);
    let (formula_tag, bound) = match stats.case_tag {
        EntryCase::AlphaSqLtBeta => (FormulaTag::BetaPower, beta_power),
        EntryCase::AlphaSqEqBeta | EntryCase::AlphaSqGtBeta => {
            // Never report more than β^(n/2); the two agree on the tie.
            (FormulaTag::AlphaKappa, alpha_kappa.min(beta_power))
        }
    };
    BoundReport {
        stats,
        bound,
        formula_tag,
        beta_power,
        alpha_kappa,
        feasible,
    }
}

/// Three-case upper bound on `|det M|` from the entry sum and square sum.
pub fn gasper_bound(m: &Matrix) -> BoundReport {
    gasper_bound_from_stats(entry_stats(m))
}

/// One orientation of the complex bound: `α` comes from the real part.
#[derive(Debug, Clone, Serialize)]
pub struct ComplexOrientation {
    #[serde(serialize_with = "crate::report::rational")]
    pub alpha: BigRational,
    #[serde(serialize_with = "crate::report::rational")]
    pub kappa: BigRational,
    pub case_tag: EntryCase,
    pub formula_tag: FormulaTag,
    pub bound: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ComplexBoundReport {
    pub n: usize,
    /// `s(A)/n` for `A + iB`.
    #[serde(serialize_with = "crate::report::rational")]
    pub alpha: BigRational,
    /// `(q(A) + q(B))/n`, shared by both orientations.
    #[serde(serialize_with = "crate::report::rational")]
    pub beta: BigRational,
    /// `(2nβ − α²)/(2n − 1)` for `A + iB`.
    #[serde(serialize_with = "crate::report::rational")]
    pub kappa: BigRational,
    /// Bound for `|det(A + iB)|`.
    pub bound_direct: f64,
    /// Bound for `|det(B + iA)|`, which has the same modulus.
    pub bound_swapped: f64,
    pub bound: f64,
    pub direct: ComplexOrientation,
    pub swapped: ComplexOrientation,
}

fn complex_orientation(n: usize, real_sum: &BigRational, beta: &BigRational) -> ComplexOrientation {
    let nr = rational::from_int(n as i64);
    let alpha = real_sum / &nr;
    let kappa = (rational::from_int(2 * n as i64) * beta - &alpha * &alpha)
        / rational::from_int(2 * n as i64 - 1);
    let case_tag = EntryCase::classify(&alpha, beta);
    let beta_power = real_power(beta, n as f64 / 2.0);
    let (formula_tag, bound) = match case_tag {
        EntryCase::AlphaSqLtBeta => (FormulaTag::BetaPower, beta_power),
        _ => {
            let k = if kappa.is_negative() { BigRational::zero() } else { kappa.clone() };
            let v = to_f64(&alpha.abs()).sqrt() * real_power(&k, (2 * n - 1) as f64 / 4.0);
            (FormulaTag::AlphaKappa, v.min(beta_power))
        }
    };
    ComplexOrientation {
        alpha,
        kappa,
        case_tag,
        formula_tag,
        bound,
    }
}

/// Bound on `|det(A + iB)|` via the real `2n × 2n` embedding, evaluated for
/// both `A + iB` and `B + iA`; the reported bound is the smaller one.
pub fn complex_bound(real: &Matrix, imag: &Matrix) -> Result<ComplexBoundReport> {
    real.check_same_dim(imag)?;
    let n = real.n();
    let a = entry_stats(real);
    let b = entry_stats(imag);
    let beta = (&a.q + &b.q) / rational::from_int(n as i64);
    let direct = complex_orientation(n, &a.s, &beta);
    let swapped = complex_orientation(n, &b.s, &beta);
    Ok(ComplexBoundReport {
        n,
        alpha: direct.alpha.clone(),
        beta,
        kappa: direct.kappa.clone(),
        bound_direct: direct.bound,
        bound_swapped: swapped.bound,
        bound: direct.bound.min(swapped.bound),
        direct,
        swapped,
    })
}

/// `|det(A + iB)|` computed exactly as the square root of the determinant
/// of the real embedding, which equals `|det(A + iB)|²`.
pub fn complex_abs_det(real: &Matrix, imag: &Matrix) -> Result<f64> {
    let embedded = Matrix::complex_embedding(real, imag)?;
    Ok(to_f64(&crate::linalg::det_exact(&embedded)).max(0.0).sqrt())
}
