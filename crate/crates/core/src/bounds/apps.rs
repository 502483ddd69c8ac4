//! Application bounds: row-norm Hadamard, Best's excess bound, Ryser's 0/1
//! bound, the Brent–Osborne–Smith perturbation bounds, the det/trace
//! inequality, arithmetic-progression entries, and the comparison of the
//! two extremal determinant values.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::{real_power, FormulaTag};
use crate::error::{Error, Result};
use crate::linalg::{det_exact, entry_stats, EntryCase, Matrix};
use crate::rational::{self, format_rational, to_f64};

/// `∏ᵢ ‖Mᵢ‖₂`
pub fn hadamard_row_bound(m: &Matrix) -> f64 {
    m.rows()
        .map(|row| {
            row.iter()
                .map(|v| {
                    let f = to_f64(v);
                    f * f
                })
                .sum::<f64>()
                .sqrt()
        })
        .product()
}

#[derive(Debug, Clone, Serialize)]
pub struct BestReport {
    pub is_hadamard: bool,
    #[serde(serialize_with = "crate::report::rational")]
    pub excess: BigRational,
    /// `n^(3/2)`
    pub bound: f64,
    pub excess_within_bound: bool,
}

/// Excess `s(M)` of a ±1 matrix against `n√n`.
pub fn best_excess_check(m: &Matrix) -> Result<BestReport> {
    let n = m.n();
    let one = BigRational::one();
    for (idx, v) in m.entries().iter().enumerate() {
        if v.abs() != one {
            return Err(Error::NotSignMatrix {
                row: idx / n + 1,
                col: idx % n + 1,
                value: format_rational(v),
            });
        }
    }
    let gram = m.gram();
    let nr = rational::from_int(n as i64);
    let is_hadamard = (0..n).all(|i| {
        (0..n).all(|j| {
            let v = gram.get(i, j);
            if i == j {
                *v == nr
            } else {
                v.is_zero()
            }
        })
    });
    let excess = entry_stats(m).s;
    let bound = (n as f64).powf(1.5);
    // excess <= n sqrt(n)  <=>  excess <= 0 or excess^2 <= n^3
    let excess_within_bound =
        !excess.is_positive() || &excess * &excess <= rational::pow(&nr, 3);
    Ok(BestReport {
        is_hadamard,
        excess,
        bound,
        excess_within_bound,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RyserInput {
    pub n: usize,
    /// Number of ones.
    pub t: usize,
    pub k: f64,
}

impl RyserInput {
    pub fn new(n: usize, t: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidDimension(format!("n = {n}")));
        }
        if t > n * n {
            return Err(Error::InvalidParameter(format!(
                "t = {t} exceeds n^2 = {}",
                n * n
            )));
        }
        Ok(Self {
            n,
            t,
            k: t as f64 / n as f64,
        })
    }

    /// Counts the ones of a 0/1 matrix.
    pub fn from_matrix(m: &Matrix) -> Result<Self> {
        let n = m.n();
        let mut t = 0;
        for (idx, v) in m.entries().iter().enumerate() {
            if v.is_one() {
                t += 1;
            } else if !v.is_zero() {
                return Err(Error::NotZeroOneMatrix {
                    row: idx / n + 1,
                    col: idx % n + 1,
                    value: format_rational(v),
                });
            }
        }
        Self::new(n, t)
    }
}

/// Three-case bound for 0/1 matrices with `t` ones, `k = t/n`.
pub fn ryser_bound(input: &RyserInput) -> f64 {
    let n = input.n as f64;
    let k = input.k;
    match input.t.cmp(&input.n) {
        std::cmp::Ordering::Less => k.powf(n / 2.0),
        std::cmp::Ordering::Equal => 1.0,
        std::cmp::Ordering::Greater => {
            k.powf((n + 1.0) / 2.0) * ((n - k) / (n - 1.0)).powf((n - 1.0) / 2.0)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BrentInput {
    pub n: usize,
    pub epsilon: f64,
    pub zero_diagonal: bool,
}

impl BrentInput {
    pub fn new(n: usize, epsilon: f64, zero_diagonal: bool) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidDimension(format!("n = {n}")));
        }
        if !(epsilon > 0.0 && epsilon.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "epsilon must be finite and > 0 (got {epsilon})"
            )));
        }
        Ok(Self {
            n,
            epsilon,
            zero_diagonal,
        })
    }

    /// Checks `|E_ij| ≤ ε` (and `E_ii = 0` for the zero-diagonal variant).
    pub fn check_perturbation(&self, e: &Matrix) -> Result<()> {
        if e.n() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: e.n(),
            });
        }
        let cap = rational::from_f64(self.epsilon).expect("finite epsilon");
        for i in 0..self.n {
            for j in 0..self.n {
                let v = e.get(i, j);
                let bad = v.abs() > cap || (self.zero_diagonal && i == j && !v.is_zero());
                if bad {
                    return Err(Error::PerturbationExceedsCap {
                        row: i + 1,
                        col: j + 1,
                        value: format_rational(v),
                    });
                }
            }
        }
        Ok(())
    }
}

/// Bound on `|det(I − E)|` for `|E_ij| ≤ ε`.
pub fn brent_bound(input: &BrentInput) -> f64 {
    let n = input.n as f64;
    let e = input.epsilon;
    let base = if input.zero_diagonal {
        1.0 + (n - 1.0) * e * e
    } else {
        1.0 + 2.0 * e + n * e * e
    };
    base.powf(n / 2.0)
}

#[derive(Debug, Clone, Serialize)]
pub struct TraceDetReport {
    #[serde(serialize_with = "crate::report::rational")]
    pub det: BigRational,
    /// `(det M)²`
    pub lhs: f64,
    /// `(q(M)/n)^n`, i.e. `(tr(MMᵀ)/n)^n`
    pub rhs: f64,
    pub holds: bool,
    pub equality: bool,
}

/// `(det M)^(2/n) ≤ tr(MMᵀ)/n`, compared exactly after raising both sides
/// to the `n`-th power.
pub fn trace_det_check(m: &Matrix) -> TraceDetReport {
    let det = det_exact(m);
    let lhs = &det * &det;
    let rhs = rational::pow(&entry_stats(m).beta, m.n());
    TraceDetReport {
        lhs: to_f64(&lhs),
        rhs: to_f64(&rhs),
        holds: lhs <= rhs,
        equality: lhs == rhs,
        det,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ProgressionMode {
    /// Entries are a permutation of `p, p+q, …, p+(n²−1)q`.
    FullSquare,
    /// Each of `p, p+q, …, p+(n−1)q` appears `n` times.
    Repeated,
}

/// The entry multiset of a progression family, sorted ascending.
pub fn progression_entries(
    n: usize,
    p: &BigRational,
    q: &BigRational,
    mode: ProgressionMode,
) -> Vec<BigRational> {
    let terms = match mode {
        ProgressionMode::FullSquare => n * n,
        ProgressionMode::Repeated => n,
    };
    let copies = n * n / terms;
    let mut out: Vec<BigRational> = (0..terms)
        .flat_map(|k| {
            let v = p + q * rational::from_int(k as i64);
            std::iter::repeat_n(v, copies)
        })
        .collect();
    out.sort();
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct ProgressionBound {
    pub n: usize,
    pub mode: ProgressionMode,
    #[serde(serialize_with = "crate::report::rational")]
    pub p: BigRational,
    #[serde(serialize_with = "crate::report::rational")]
    pub q: BigRational,
    #[serde(serialize_with = "crate::report::rational")]
    pub r: BigRational,
    #[serde(serialize_with = "crate::report::rational")]
    pub rho: BigRational,
    #[serde(serialize_with = "crate::report::rational")]
    pub sigma: BigRational,
    /// Position of `r²` relative to `ρ`; matches the sign of `α² − β`.
    pub case_tag: EntryCase,
    pub formula_tag: FormulaTag,
    pub sigma_power: f64,
    pub bound: f64,
}

pub fn progression_bound(
    n: usize,
    p: &BigRational,
    q: &BigRational,
    mode: ProgressionMode,
) -> Result<ProgressionBound> {
    if n < 2 {
        return Err(Error::InvalidDimension(format!("n = {n}")));
    }
    if !q.is_positive() {
        return Err(Error::NonpositiveStep(format_rational(q)));
    }
    let int = |v: i64| rational::from_int(v);
    let ni = n as i64;
    let twelve = int(12);
    let (r, rho, spread) = match mode {
        ProgressionMode::FullSquare => (
            p / q + int(ni * ni - 1) / int(2),
            int(ni * ni * ni + ni * ni + ni + 1) / &twelve,
            int(ni.pow(4) - 1) / &twelve,
        ),
        ProgressionMode::Repeated => (
            p / q + int(ni - 1) / int(2),
            int(ni + 1) / &twelve,
            int(ni * ni - 1) / &twelve,
        ),
    };
    let sigma = int(ni) * q * q * (&r * &r + spread);
    let case_tag = EntryCase::classify(&r, &rho);
    let nf = n as f64;
    let sigma_power = real_power(&sigma, nf / 2.0);
    let (formula_tag, bound) = match case_tag {
        EntryCase::AlphaSqLtBeta => (FormulaTag::BetaPower, sigma_power),
        _ => {
            let v = nf.powf(nf)
                * to_f64(q).powf(nf)
                * to_f64(&r.abs())
                * real_power(&rho, (nf - 1.0) / 2.0);
            (FormulaTag::AlphaKappa, v.min(sigma_power))
        }
    };
    Ok(ProgressionBound {
        n,
        mode,
        p: p.clone(),
        q: q.clone(),
        r,
        rho,
        sigma,
        case_tag,
        formula_tag,
        sigma_power,
        bound,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct RelateGap {
    /// `|α| ((nβ − α²)/(n − 1))^((n−1)/2)`
    pub lhs: f64,
    /// `β^(n/2)`
    pub rhs: f64,
    pub equal: bool,
}

/// Compares the determinants of the two extremal constructions; equality
/// holds exactly when `α² = β`.
pub fn relate_gap(alpha: &BigRational, beta: &BigRational, n: usize) -> Result<RelateGap> {
    if n < 2 {
        return Err(Error::InvalidDimension(format!("n = {n}")));
    }
    if !beta.is_positive() {
        return Err(Error::NonpositiveBeta(format_rational(beta)));
    }
    let nr = rational::from_int(n as i64);
    let alpha_sq = alpha * alpha;
    if alpha_sq > &nr * beta {
        return Err(Error::InfeasiblePair {
            alpha: format_rational(alpha),
            beta: format_rational(beta),
            reason: "alpha^2 > n*beta leaves no matrix with these sums".into(),
        });
    }
    let kappa = (&nr * beta - &alpha_sq) / rational::from_int(n as i64 - 1);
    let nf = n as f64;
    let rhs = real_power(beta, nf / 2.0);
    let lhs = to_f64(&alpha.abs()) * real_power(&kappa, (nf - 1.0) / 2.0);
    let equal = alpha_sq == *beta;
    Ok(RelateGap {
        lhs: if equal { rhs } else { lhs.min(rhs) },
        rhs,
        equal,
    })
}
