//! Constructive side: find a point avoiding every bad event.
//!
//! Randomness comes from ChaCha8 (`rand_chacha`) seeded with
//! `seed_from_u64(seed)`; identical seed and instance give an identical
//! result and trace.

mod cycle;
mod greedy;
mod permutation;
mod resample;

use std::fmt::Write as _;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub use cycle::extract_cycle;
pub use greedy::greedy_leaders;
pub use permutation::solve_permutation;
pub use resample::{solve_resample, Resampler};

use crate::error::Result;
use crate::instance::Instance;
use crate::space::Assignment;

/// Seed for the solver's pseudo-random stream.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RngSpec {
    pub seed: u64,
}

impl RngSpec {
    pub fn new(seed: u64) -> Self {
        Self { seed }
    }

    pub fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Solved,
    BudgetExhausted,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TraceStep {
    pub step: u64,
    /// Declaration index of the resampled event.
    pub event: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult {
    pub outcome: Outcome,
    /// The final point; avoids every bad event when solved.
    pub assignment: Assignment,
    pub resample_count: u64,
    pub trace: Vec<TraceStep>,
    pub seed: u64,
}

impl SolveResult {
    pub fn solved(&self) -> bool {
        self.outcome == Outcome::Solved
    }

    /// One line per step: `step <i> resample <event-id>`.
    pub fn trace_dump(&self, instance: &Instance) -> String {
        let mut out = String::new();
        for s in &self.trace {
            let _ = writeln!(out, "step {} resample {}", s.step, instance.events()[s.event].id());
        }
        out
    }
}

/// `64 n (d + 1)` with a known dependency bound, else `64 n^2`; at least 1.
pub fn default_budget(events: usize, d: Option<u64>) -> u64 {
    let n = events as u64;
    let budget = match d {
        Some(d) => 64 * n * (d + 1),
        None => 64 * n * n,
    };
    budget.max(1)
}

/// Ids of the events that hold at `a`, in declaration order.
pub fn verify_assignment(instance: &Instance, a: &Assignment) -> Result<Vec<String>> {
    Ok(violations(instance, a)?
        .into_iter()
        .map(|k| instance.events()[k].id().to_string())
        .collect())
}

/// Declaration indices of the events that hold at `a`.
pub fn violations(instance: &Instance, a: &Assignment) -> Result<Vec<usize>> {
    instance.space().check_assignment(a)?;
    Ok(instance
        .events()
        .iter()
        .enumerate()
        .filter(|(_, e)| e.holds(&a.values))
        .map(|(k, _)| k)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::event::BadEvent;
    use crate::space::{Space, VariableSpace};

    #[test]
    fn all_zero_coloring_violates_monochromatic() {
        let s: Space = VariableSpace::uniform(8, 2).unwrap().into();
        let e = BadEvent::monochromatic("m", (0..8).collect(), &s).unwrap();
        let inst = Instance::new("t", s, vec![e]).unwrap();
        assert_eq!(verify_assignment(&inst, &Assignment::new(vec![0; 8])).unwrap(), vec!["m"]);
        assert!(verify_assignment(&inst, &Assignment::new(vec![0; 7])).is_err());
    }

    #[test]
    fn alternating_coloring_has_no_monochromatic_3ap() {
        let inst = crate::instances::gen_vdw(8, 3).unwrap();
        let a = Assignment::new(vec![0, 0, 1, 1, 0, 0, 1, 1]);
        assert!(verify_assignment(&inst, &a).unwrap().is_empty());
    }

    #[test]
    fn budgets() {
        assert_eq!(default_budget(100, Some(32)), 64 * 100 * 33);
        assert_eq!(default_budget(10, None), 6400);
        assert_eq!(default_budget(0, None), 1);
    }
}
