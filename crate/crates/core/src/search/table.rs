use num_rational::BigRational;
use serde::Serialize;

use super::{SearchMode, SearchProblem};
use crate::bounds::{progression_bound, progression_entries, ProgressionMode};
use crate::error::{Error, Result};
use crate::rational::{from_int, to_f64};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RatioTableOptions {
    pub seed: u64,
    pub iteration_budget: u64,
    pub workers: usize,
}

impl Default for RatioTableOptions {
    fn default() -> Self {
        Self {
            seed: 1,
            iteration_budget: 1_000_000,
            workers: 0,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RatioRow {
    pub n: usize,
    #[serde(serialize_with = "crate::report::rational")]
    pub best: BigRational,
    pub bound: f64,
    pub ratio: f64,
    /// True when `best` is the exact maximum.
    pub certificate: bool,
    pub mode: SearchMode,
    pub nodes_visited: u64,
}

/// Best `|det|` against the progression bound for `n = 2..=n_max`, with
/// entries `1, 2, …` (`p = q = 1`). Cells whose arrangement space exceeds
/// the exhaustive limit fall back to annealing and carry no certificate.
pub fn ratio_table(n_max: usize, family: ProgressionMode, options: RatioTableOptions) -> Result<Vec<RatioRow>> {
    if n_max < 2 {
        return Err(Error::InvalidDimension(format!("n_max = {n_max}")));
    }
    let one = from_int(1);
    (2..=n_max)
        .map(|n| {
            let entries = progression_entries(n, &one, &one, family);
            let bound = progression_bound(n, &one, &one, family)?.bound;
            let exhaustive = SearchProblem::exhaustive(n, entries.clone())?.with_workers(options.workers);
            let result = match exhaustive.run() {
                Ok(r) => r,
                Err(Error::SearchSpaceTooLarge { .. }) => SearchProblem::anneal(
                    n,
                    entries,
                    options.seed,
                    options.iteration_budget,
                )?
                .run()?,
                Err(e) => return Err(e),
            };
            Ok(RatioRow {
                n,
                ratio: to_f64(&result.best_abs_det) / bound,
                best: result.best_abs_det,
                bound,
                certificate: result.exhaustive_certificate,
                mode: result.mode,
                nodes_visited: result.nodes_visited,
            })
        })
        .collect()
}
