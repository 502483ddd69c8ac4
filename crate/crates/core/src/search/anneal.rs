use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::kernel::Kernel;
use super::{SearchMode, SearchProblem, SearchResult};
use crate::error::{Error, Result};

/// Temperatures are in units of the upper bound, so the schedule does not
/// depend on the scale of the entries.
const START_TEMP: f64 = 0.25;
const END_TEMP: f64 = 2e-4;

/// Simulated annealing over entry transpositions with geometric cooling.
///
/// Every candidate is evaluated exactly. The chain is single threaded and
/// driven by a ChaCha stream seeded from `problem.seed`, so a fixed seed
/// reproduces the result on every platform.
pub fn anneal_max_det(problem: &SearchProblem) -> Result<SearchResult> {
    if problem.mode != SearchMode::Anneal {
        return Err(Error::InvalidParameter("problem mode is not ANNEAL".into()));
    }
    let n = problem.n;
    let (values, mut state) = problem.ranked();
    let kernel = Kernel::new(n, values);
    let scale = match problem.bound().bound {
        b if b > 0.0 && b.is_finite() => b,
        _ => 1.0,
    };

    let mut rng = ChaCha8Rng::seed_from_u64(problem.seed);
    state.shuffle(&mut rng);
    let mut buf = Vec::with_capacity(state.len());
    let mut best = kernel.abs_det(&state, &mut buf);
    let mut current_score = best.to_f64() / scale;
    let mut best_state = state.clone();
    let mut nodes = 1u64;

    let movable = state.iter().any(|&r| r != state[0]);
    let budget = problem.iteration_budget;
    if movable {
        let cells = state.len();
        let ratio = END_TEMP / START_TEMP;
        for step in 0..budget {
            let temp = START_TEMP * ratio.powf(step as f64 / budget as f64);
            let i = rng.gen_range(0..cells);
            let mut j = rng.gen_range(0..cells - 1);
            if j >= i {
                j += 1;
            }
            if state[i] == state[j] {
                continue;
            }
            state.swap(i, j);
            let candidate = kernel.abs_det(&state, &mut buf);
            nodes += 1;
            let score = candidate.to_f64() / scale;
            let accept = score >= current_score
                || rng.gen::<f64>() < ((score - current_score) / temp).exp();
            if accept {
                if candidate > best {
                    best = candidate;
                    best_state.copy_from_slice(&state);
                }
                current_score = score;
            } else {
                state.swap(i, j);
            }
        }
    }
    let best_abs_det = kernel.to_rational(&best);
    Ok(SearchResult::new(
        problem,
        kernel.matrix(&best_state),
        best_abs_det,
        nodes,
        false,
    ))
}
