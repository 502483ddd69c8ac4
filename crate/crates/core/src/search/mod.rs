//! Maximal-determinant search over all arrangements of a fixed entry
//! multiset, with the entry-sum bound as the reference for tightness.
//!
//! All arrangements share `s` and `q`, so a single bound covers the whole
//! search space.

mod anneal;
mod exhaustive;
mod kernel;
mod table;

use num_rational::BigRational;
use serde::Serialize;

use crate::bounds::{gasper_bound_from_stats, BoundReport};
use crate::error::{Error, Result};
use crate::linalg::{EntryStats, Matrix};
use crate::rational::to_f64;

pub use anneal::anneal_max_det;
pub use exhaustive::{exhaustive_max_det, search_space_size, EXHAUSTIVE_LIMIT};
pub use table::{ratio_table, RatioRow, RatioTableOptions};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum SearchMode {
    Exhaustive,
    Anneal,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchProblem {
    pub n: usize,
    /// The entry multiset, kept sorted ascending.
    pub entries: Vec<BigRational>,
    pub mode: SearchMode,
    pub seed: u64,
    pub iteration_budget: u64,
    /// Fix the largest entry at (1,1). Only disabled to cross-check certificates.
    pub symmetry_reduction: bool,
    /// Worker threads for exhaustive search; 0 uses the global pool.
    pub workers: usize,
}

impl SearchProblem {
    fn new(n: usize, mut entries: Vec<BigRational>, mode: SearchMode) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidDimension(format!("n = {n}")));
        }
        if entries.len() != n * n {
            return Err(Error::InvalidParameter(format!(
                "{} entries given, {} needed for n = {n}",
                entries.len(),
                n * n
            )));
        }
        if n * n > u16::MAX as usize {
            return Err(Error::InvalidParameter(format!("n = {n} is too large to search")));
        }
        entries.sort();
        Ok(Self {
            n,
            entries,
            mode,
            seed: 0,
            iteration_budget: 0,
            symmetry_reduction: true,
            workers: 0,
        })
    }

    pub fn exhaustive(n: usize, entries: Vec<BigRational>) -> Result<Self> {
        Self::new(n, entries, SearchMode::Exhaustive)
    }

    pub fn anneal(n: usize, entries: Vec<BigRational>, seed: u64, iteration_budget: u64) -> Result<Self> {
        let mut p = Self::new(n, entries, SearchMode::Anneal)?;
        p.seed = seed;
        p.iteration_budget = iteration_budget;
        Ok(p)
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers;
        self
    }

    pub fn without_symmetry_reduction(mut self) -> Self {
        self.symmetry_reduction = false;
        self
    }

    pub fn stats(&self) -> EntryStats {
        EntryStats::from_entries(self.n, self.entries.iter())
    }

    pub fn bound(&self) -> BoundReport {
        gasper_bound_from_stats(self.stats())
    }

    /// Dispatches on `mode`.
    pub fn run(&self) -> Result<SearchResult> {
        match self.mode {
            SearchMode::Exhaustive => exhaustive_max_det(self),
            SearchMode::Anneal => anneal_max_det(self),
        }
    }

    /// Distinct values (ascending) and the rank of every sorted entry.
    fn ranked(&self) -> (Vec<BigRational>, Vec<u16>) {
        let mut values: Vec<BigRational> = Vec::new();
        let mut ranks = Vec::with_capacity(self.entries.len());
        for v in &self.entries {
            if values.last() != Some(v) {
                values.push(v.clone());
            }
            ranks.push((values.len() - 1) as u16);
        }
        (values, ranks)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SearchResult {
    pub n: usize,
    pub mode: SearchMode,
    #[serde(serialize_with = "crate::report::matrix")]
    pub best_matrix: Matrix,
    #[serde(serialize_with = "crate::report::rational")]
    pub best_abs_det: BigRational,
    pub best_abs_det_f64: f64,
    pub upper_bound: f64,
    pub bound: BoundReport,
    pub ratio: f64,
    pub nodes_visited: u64,
    pub exhaustive_certificate: bool,
}

impl SearchResult {
    fn new(
        problem: &SearchProblem,
        best_matrix: Matrix,
        best_abs_det: BigRational,
        nodes_visited: u64,
        exhaustive_certificate: bool,
    ) -> Self {
        let bound = problem.bound();
        let best = to_f64(&best_abs_det);
        let ratio = if bound.bound > 0.0 { best / bound.bound } else { 0.0 };
        Self {
            n: problem.n,
            mode: problem.mode,
            best_matrix,
            best_abs_det,
            best_abs_det_f64: best,
            upper_bound: bound.bound,
            bound,
            ratio,
            nodes_visited,
            exhaustive_certificate,
        }
    }
}

/// Parses `"a..b"` (inclusive integer range) or a comma-separated list of
/// rationals.
pub fn parse_entries(spec: &str) -> Result<Vec<BigRational>> {
    use crate::rational::{from_int, parse_rational};
    let spec = spec.trim();
    if let Some((lo, hi)) = spec.split_once("..") {
        let bad = || Error::Parse {
            line: 0,
            message: format!("bad range {spec:?}"),
        };
        let lo: i64 = lo.trim().parse().map_err(|_| bad())?;
        let hi: i64 = hi.trim().parse().map_err(|_| bad())?;
        if hi < lo || hi - lo > 1 << 16 {
            return Err(bad());
        }
        return Ok((lo..=hi).map(from_int).collect());
    }
    spec.split(',').map(parse_rational).collect()
}
