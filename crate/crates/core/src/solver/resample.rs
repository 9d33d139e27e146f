use std::collections::BTreeSet;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{Outcome, RngSpec, SolveResult, TraceStep};
use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::space::{Assignment, Space};

/// Step-by-step resampling over a product space.
///
/// Starts from a uniform point; each step takes the violated event with
/// the smallest declaration index and redraws its support uniformly.
pub struct Resampler<'a> {
    instance: &'a Instance,
    by_var: Vec<Vec<usize>>,
    values: Vec<u32>,
    violated: BTreeSet<usize>,
    rng: ChaCha8Rng,
    steps: u64,
    stamp: Vec<u64>,
}

impl<'a> Resampler<'a> {
    pub fn new(instance: &'a Instance, rng: RngSpec) -> Result<Self> {
        let Space::Product(space) = instance.space() else {
            return Err(Error::NeedsProductSpace);
        };
        let mut rng = rng.rng();
        let values: Vec<u32> = space.domains().iter().map(|&d| rng.gen_range(0..d)).collect();
        let violated = instance
            .events()
            .iter()
            .enumerate()
            .filter(|(_, e)| e.holds(&values))
            .map(|(k, _)| k)
            .collect();
        Ok(Self {
            instance,
            by_var: instance.var_index(),
            values,
            violated,
            rng,
            steps: 0,
            stamp: vec![0; instance.len()],
        })
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    pub fn steps(&self) -> u64 {
        self.steps
    }

    pub fn next_violated(&self) -> Option<usize> {
        self.violated.first().copied()
    }

    /// Resamples the first violated event; `None` when nothing is violated.
    pub fn step(&mut self) -> Option<usize> {
        let k = self.next_violated()?;
        let event = &self.instance.events()[k];
        for (&v, &r) in event.support().iter().zip(event.radices()) {
            self.values[v] = self.rng.gen_range(0..r);
        }
        self.steps += 1;
        let stamp = self.steps;
        for &v in event.support() {
            for &j in &self.by_var[v] {
                if self.stamp[j] == stamp {
                    continue;
                }
                self.stamp[j] = stamp;
                if self.instance.events()[j].holds(&self.values) {
                    self.violated.insert(j);
                } else {
                    self.violated.remove(&j);
                }
            }
        }
        Some(k)
    }
}

pub fn solve_resample(instance: &Instance, rng: RngSpec, budget: u64) -> Result<SolveResult> {
    if budget == 0 {
        return Err(Error::InvalidParameters("budget must be at least 1".into()));
    }
    let mut run = Resampler::new(instance, rng)?;
    let mut trace = Vec::new();
    while run.next_violated().is_some() && run.steps() < budget {
        let step = run.steps();
        if let Some(event) = run.step() {
            trace.push(TraceStep { step, event });
        }
    }
    let outcome = if run.next_violated().is_none() { Outcome::Solved } else { Outcome::BudgetExhausted };
    Ok(SolveResult {
        outcome,
        assignment: Assignment::new(run.values.clone()),
        resample_count: run.steps(),
        trace,
        seed: rng.seed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::event::BadEvent;
    use crate::solver::verify_assignment;
    use crate::space::VariableSpace;

    #[test]
    fn zero_events_solved_immediately() {
        let s: Space = VariableSpace::uniform(5, 3).unwrap().into();
        let inst = Instance::new("empty", s, vec![]).unwrap();
        let r = solve_resample(&inst, RngSpec::new(1), 1).unwrap();
        assert!(r.solved());
        assert_eq!(r.resample_count, 0);
        let initial = Resampler::new(&inst, RngSpec::new(1)).unwrap();
        assert_eq!(r.assignment.values, initial.values());
    }

    #[test]
    fn deterministic_and_sound() {
        let s: Space = VariableSpace::uniform(10, 2).unwrap().into();
        let events = (0..8)
            .map(|i| BadEvent::monochromatic(format!("e{i}"), vec![i, i + 1, i + 2], &s).unwrap())
            .collect();
        let inst = Instance::new("t", s, events).unwrap();
        let a = solve_resample(&inst, RngSpec::new(42), 10_000).unwrap();
        let b = solve_resample(&inst, RngSpec::new(42), 10_000).unwrap();
        assert_eq!(a, b);
        assert!(a.solved());
        assert!(verify_assignment(&inst, &a.assignment).unwrap().is_empty());
    }

    #[test]
    fn unsatisfiable_exhausts_budget() {
        let s: Space = VariableSpace::uniform(1, 2).unwrap().into();
        let e0 = BadEvent::patterns("zero", vec![0], vec![vec![0]], &s).unwrap();
        let e1 = BadEvent::patterns("one", vec![0], vec![vec![1]], &s).unwrap();
        let inst = Instance::new("t", s, vec![e0, e1]).unwrap();
        let r = solve_resample(&inst, RngSpec::new(3), 50).unwrap();
        assert_eq!(r.outcome, Outcome::BudgetExhausted);
        assert_eq!(r.resample_count, 50);
        assert_eq!(r.trace.len(), 50);
        assert!(solve_resample(&inst, RngSpec::new(3), 0).is_err());
    }
}
