use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;

use super::{Outcome, RngSpec, SolveResult, TraceStep};
use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::space::{Assignment, Space};

/// Swap resampling on a permutation space: start from a uniform
/// permutation; while some event holds, take the first violated event, pick
/// one of its support positions uniformly, and swap its image with that of
/// a uniformly chosen other position.
pub fn solve_permutation(instance: &Instance, rng: RngSpec, budget: u64) -> Result<SolveResult> {
    let Space::Permutation(space) = instance.space() else {
        return Err(Error::NeedsPermutationSpace);
    };
    if budget == 0 {
        return Err(Error::InvalidParameters("budget must be at least 1".into()));
    }
    let n = space.n();
    let mut gen = rng.rng();
    let mut values: Vec<u32> = (0..n as u32).collect();
    values.shuffle(&mut gen);
    let events = instance.events();
    let by_var = instance.var_index();
    let mut violated: BTreeSet<usize> =
        events.iter().enumerate().filter(|(_, e)| e.holds(&values)).map(|(k, _)| k).collect();
    let mut trace = Vec::new();
    let mut swaps = 0u64;
    while let Some(&k) = violated.first() {
        if swaps >= budget || n < 2 {
            break;
        }
        let support = events[k].support();
        let pos = support[gen.gen_range(0..support.len())];
        let mut partner = gen.gen_range(0..n - 1);
        if partner >= pos {
            partner += 1;
        }
        values.swap(pos, partner);
        trace.push(TraceStep { step: swaps, event: k });
        swaps += 1;
        for &j in by_var[pos].iter().chain(&by_var[partner]) {
            if events[j].holds(&values) {
                violated.insert(j);
            } else {
                violated.remove(&j);
            }
        }
    }
    let outcome = if violated.is_empty() { Outcome::Solved } else { Outcome::BudgetExhausted };
    Ok(SolveResult { outcome, assignment: Assignment::new(values), resample_count: swaps, trace, seed: rng.seed })
}
