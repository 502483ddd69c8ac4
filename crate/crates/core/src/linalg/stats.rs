use std::cmp::Ordering;

use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use super::Matrix;
use crate::rational;

/// Which side of `α² = β` the entry statistics fall on, decided exactly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum EntryCase {
    AlphaSqLtBeta,
    AlphaSqEqBeta,
    AlphaSqGtBeta,
}

impl EntryCase {
    pub fn classify(alpha: &BigRational, beta: &BigRational) -> Self {
        match (alpha * alpha).cmp(beta) {
            Ordering::Less => Self::AlphaSqLtBeta,
            Ordering::Equal => Self::AlphaSqEqBeta,
            Ordering::Greater => Self::AlphaSqGtBeta,
        }
    }
}

/// Entry sum `s`, square sum `q` and the derived means `α = s/n`,
/// `β = q/n`, `κ = (nβ − α²)/(n − 1)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EntryStats {
    pub n: usize,
    #[serde(serialize_with = "crate::report::rational")]
    pub s: BigRational,
    #[serde(serialize_with = "crate::report::rational")]
    pub q: BigRational,
    #[serde(serialize_with = "crate::report::rational")]
    pub alpha: BigRational,
    #[serde(serialize_with = "crate::report::rational")]
    pub beta: BigRational,
    #[serde(serialize_with = "crate::report::rational")]
    pub kappa: BigRational,
    pub case_tag: EntryCase,
}

impl EntryStats {
    /// Stats of any collection of `n²` entries with sum `s` and square sum `q`.
    pub fn from_sums(n: usize, s: BigRational, q: BigRational) -> Self {
        assert!(n >= 2, "entry statistics need n >= 2");
        let nr = rational::from_int(n as i64);
        let alpha = &s / &nr;
        let beta = &q / &nr;
        let kappa = (&nr * &beta - &alpha * &alpha) / rational::from_int(n as i64 - 1);
        let case_tag = EntryCase::classify(&alpha, &beta);
        Self {
            n,
            s,
            q,
            alpha,
            beta,
            kappa,
            case_tag,
        }
    }

    pub fn from_entries<'a>(n: usize, entries: impl IntoIterator<Item = &'a BigRational>) -> Self {
        let (s, q) = entries.into_iter().fold(
            (BigRational::zero(), BigRational::zero()),
            |(s, q), v| (s + v, q + v * v),
        );
        Self::from_sums(n, s, q)
    }

    /// `α² ≤ nβ`, the condition for a matrix with these stats to exist.
    pub fn feasible(&self) -> bool {
        &self.alpha * &self.alpha <= rational::from_int(self.n as i64) * &self.beta
    }
}

pub fn entry_stats(m: &Matrix) -> EntryStats {
    EntryStats::from_entries(m.n(), m.entries())
}
