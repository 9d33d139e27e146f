#![allow(dead_code)]

use lll_core::{BadEvent, Instance, Space, VariableSpace};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Random product space of at most `max_points` points and up to
/// `max_events` pattern events, each forbidding a few tuples of its support.
pub fn random_instance(seed: u64, max_events: usize, max_points: u64) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut domains = Vec::new();
    let mut size = 1u64;
    loop {
        let d = if rng.gen_bool(0.75) { 2 } else { 3 };
        if size * d > max_points || domains.len() >= 14 {
            break;
        }
        size *= d;
        domains.push(d as u32);
    }
    let space: Space = VariableSpace::new(domains.clone()).unwrap().into();
    let vars: Vec<usize> = (0..domains.len()).collect();
    let n = rng.gen_range(1..=max_events);
    let events = (0..n)
        .map(|i| {
            let width = rng.gen_range(1..=vars.len().min(6));
            let mut support: Vec<usize> = vars.choose_multiple(&mut rng, width).copied().collect();
            support.sort_unstable();
            let proj: usize = support.iter().map(|&v| domains[v] as usize).product();
            let count = rng.gen_range(1..=(proj / 16).max(1));
            let mut patterns: Vec<Vec<u32>> = (0..count)
                .map(|_| support.iter().map(|&v| rng.gen_range(0..domains[v])).collect())
                .collect();
            patterns.sort();
            patterns.dedup();
            BadEvent::patterns(format!("e{i}"), support, patterns, &space).unwrap()
        })
        .collect();
    Instance::new("random", space, events).unwrap()
}

/// Every valuation of the space, in lexicographic order.
pub fn all_points(space: &Space) -> Vec<Vec<u32>> {
    let domains: Vec<u32> = (0..space.num_vars()).map(|v| space.domain(v)).collect();
    let mut out = vec![Vec::new()];
    for &d in &domains {
        out = out
            .into_iter()
            .flat_map(|p| {
                (0..d).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    out
}

/// Reads an event on a full valuation.
pub fn holds_full(e: &BadEvent, point: &[u32]) -> bool {
    e.holds(point)
}
