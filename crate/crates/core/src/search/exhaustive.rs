use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;

use super::kernel::{AbsDet, Kernel};
use super::{SearchMode, SearchProblem, SearchResult};
use crate::error::{Error, Result};

/// Maximum number of arrangements (after symmetry reduction) that
/// exhaustive search will enumerate.
pub const EXHAUSTIVE_LIMIT: u64 = 100_000_000;

fn multinomial(counts: &[usize]) -> BigUint {
    let total: usize = counts.iter().sum();
    let fact = |k: usize| (1..=k).fold(BigUint::one(), |acc, i| acc * i);
    counts.iter().fold(fact(total), |acc, &c| acc / fact(c))
}

fn counts_of(ranks: &[u16], distinct: usize) -> Vec<usize> {
    let mut counts = vec![0; distinct];
    for &r in ranks {
        counts[r as usize] += 1;
    }
    counts
}

/// Number of distinct arrangements the exhaustive search would visit.
pub fn search_space_size(problem: &SearchProblem) -> BigUint {
    let (values, ranks) = problem.ranked();
    let mut counts = counts_of(&ranks, values.len());
    if problem.symmetry_reduction {
        *counts.last_mut().expect("non-empty multiset") -= 1;
    }
    multinomial(&counts)
}

/// Lexicographic successor among distinct permutations; false at the last one.
fn next_permutation(a: &mut [u16]) -> bool {
    if a.len() < 2 {
        return false;
    }
    let mut i = a.len() - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = a.len() - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

/// All distinct sequences of length `len` drawn from `counts`, in lex order.
fn prefixes(counts: &mut [usize], len: usize, current: &mut Vec<u16>, out: &mut Vec<Vec<u16>>) {
    if current.len() == len {
        out.push(current.clone());
        return;
    }
    for r in 0..counts.len() {
        if counts[r] > 0 {
            counts[r] -= 1;
            current.push(r as u16);
            prefixes(counts, len, current, out);
            current.pop();
            counts[r] += 1;
        }
    }
}

struct TaskBest {
    best: AbsDet,
    arrangement: Vec<u16>,
    nodes: u64,
}

fn run_task(kernel: &Kernel, head: &[u16], counts: &[usize]) -> TaskBest {
    let mut suffix: Vec<u16> = counts
        .iter()
        .enumerate()
        .flat_map(|(r, &c)| std::iter::repeat_n(r as u16, c))
        .collect();
    let mut arrangement: Vec<u16> = head.iter().chain(&suffix).copied().collect();
    let split = head.len();
    let mut buf = Vec::with_capacity(arrangement.len());
    let mut best = kernel.abs_det(&arrangement, &mut buf);
    let mut best_arrangement = arrangement.clone();
    let mut nodes = 1u64;
    while next_permutation(&mut suffix) {
        arrangement[split..].copy_from_slice(&suffix);
        let d = kernel.abs_det(&arrangement, &mut buf);
        nodes += 1;
        if d > best {
            best = d;
            best_arrangement.copy_from_slice(&arrangement);
        }
    }
    TaskBest {
        best,
        arrangement: best_arrangement,
        nodes,
    }
}

/// Exact maximum of `|det|` over every arrangement of the multiset.
///
/// The largest entry is fixed at (1,1): row and column permutations move
/// any entry there without changing `|det|`, so every orbit is still
/// visited. Work is split by the remainder of the first row; among optimal
/// arrangements the lexicographically least (row-major, within the reduced
/// space) is reported, independent of the number of workers.
pub fn exhaustive_max_det(problem: &SearchProblem) -> Result<SearchResult> {
    if problem.mode != SearchMode::Exhaustive {
        return Err(Error::InvalidParameter("problem mode is not EXHAUSTIVE".into()));
    }
    let size = search_space_size(problem);
    if size.to_u64().is_none_or(|s| s > EXHAUSTIVE_LIMIT) {
        return Err(Error::SearchSpaceTooLarge {
            size: size.to_string(),
            limit: EXHAUSTIVE_LIMIT,
        });
    }
    let n = problem.n;
    let (values, ranks) = problem.ranked();
    let kernel = Kernel::new(n, values);
    let mut counts = counts_of(&ranks, kernel.values.len());
    let mut fixed = Vec::new();
    if problem.symmetry_reduction {
        let top = counts.len() - 1;
        counts[top] -= 1;
        fixed.push(top as u16);
    }
    let remaining: usize = counts.iter().sum();
    let prefix_len = (n - fixed.len()).min(remaining);
    let mut heads = Vec::new();
    prefixes(&mut counts, fixed.len() + prefix_len, &mut fixed.clone(), &mut heads);
    // prefixes() extends from `fixed`, so every head already starts with it.

    let task = |head: &Vec<u16>| {
        let mut rest = counts.clone();
        for &r in &head[fixed.len()..] {
            rest[r as usize] -= 1;
        }
        run_task(&kernel, head, &rest)
    };
    let results: Vec<TaskBest> = if problem.workers > 0 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(problem.workers)
            .build()
            .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?;
        pool.install(|| heads.par_iter().map(task).collect())
    } else {
        heads.par_iter().map(task).collect()
    };

    let mut nodes = 0u64;
    let mut winner: Option<TaskBest> = None;
    for r in results {
        nodes += r.nodes;
        match &winner {
            Some(w) if r.best <= w.best => {}
            _ => winner = Some(r),
        }
    }
    let winner = winner.expect("at least one task");
    let best_abs_det = kernel.to_rational(&winner.best);
    let matrix = kernel.matrix(&winner.arrangement);
    Ok(SearchResult::new(problem, matrix, best_abs_det, nodes, true))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::from_int;
    use crate::search::parse_entries;

    #[test]
    fn next_permutation_handles_duplicates() {
        let mut a = [0u16, 0, 1, 1];
        let mut count = 1;
        while next_permutation(&mut a) {
            count += 1;
        }
        assert_eq!(count, 6);
        assert_eq!(a, [1, 1, 0, 0]);
    }

    #[test]
    fn space_sizes() {
        let p = SearchProblem::exhaustive(3, parse_entries("1..9").unwrap()).unwrap();
        assert_eq!(search_space_size(&p), BigUint::from(40320u32));
        let p = p.without_symmetry_reduction();
        assert_eq!(search_space_size(&p), BigUint::from(362880u32));
        let p = SearchProblem::exhaustive(2, parse_entries("1,1,2,2").unwrap()).unwrap();
        assert_eq!(search_space_size(&p), BigUint::from(3u32));
    }

    #[test]
    fn small_progressions() {
        let p = SearchProblem::exhaustive(2, parse_entries("1..4").unwrap()).unwrap();
        let r = exhaustive_max_det(&p).unwrap();
        assert_eq!(r.best_abs_det, from_int(10));
        assert!(r.exhaustive_certificate);
        assert!((r.ratio - 10.0 / (10.0 * 1.25f64.sqrt())).abs() < 1e-12);
        // lexicographically least optimum with 4 in the corner
        assert_eq!(r.best_matrix, crate::Matrix::from_i64_rows(&[&[4, 1], &[2, 3]]).unwrap());

        let p = SearchProblem::exhaustive(2, parse_entries("1,1,2,2").unwrap()).unwrap();
        let r = exhaustive_max_det(&p).unwrap();
        assert_eq!(r.best_abs_det, from_int(3));
        assert!((r.ratio - 1.0).abs() < 1e-12);
        assert_eq!(r.nodes_visited, 3);
    }

    #[test]
    fn all_equal_entries() {
        let p = SearchProblem::exhaustive(3, vec![from_int(7); 9]).unwrap();
        let r = exhaustive_max_det(&p).unwrap();
        assert_eq!(r.best_abs_det, from_int(0));
        assert_eq!(r.nodes_visited, 1);
    }

    #[test]
    fn guard_trips_on_large_spaces() {
        let p = SearchProblem::exhaustive(4, parse_entries("1..16").unwrap()).unwrap();
        match exhaustive_max_det(&p) {
            Err(Error::SearchSpaceTooLarge { size, .. }) => assert_eq!(size, "1307674368000"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn rational_multiset() {
        // {1/2, 1, 3/2, 2} is {1,2,3,4}/2, so the optimum is 10/4.
        let p = SearchProblem::exhaustive(2, parse_entries("1/2,1,3/2,2").unwrap()).unwrap();
        let r = exhaustive_max_det(&p).unwrap();
        assert_eq!(r.best_abs_det, BigRational::new(5.into(), 2.into()));
    }

    use num_rational::BigRational;
}
