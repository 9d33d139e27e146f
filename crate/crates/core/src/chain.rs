//! Chains of consecutively independent sets, and bounded searches for the
//! small constructions separating pairwise from family independence.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::enumerate::EnumConfig;
use crate::error::{Error, Result};
use crate::event::BadEvent;
use crate::measure::independent;
use crate::rational::{frac, Rational};
use crate::space::{Space, VariableSpace};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChainStatus {
    /// Some hypothesis fails; nothing is claimed.
    HypothesesNotMet,
    /// Hypotheses hold and the intersection is non-empty.
    NonEmpty,
    /// Hypotheses hold and the intersection is empty.
    Empty,
}

#[derive(Debug, Clone)]
pub struct ChainReport {
    pub universe: usize,
    /// Every set must have fraction strictly above this: `1 - 1/(n-1)`.
    pub threshold: Rational,
    pub fractions: Vec<Rational>,
    pub above_threshold: Vec<bool>,
    /// `consecutive_independent[i]` refers to sets `i` and `i + 1`.
    pub consecutive_independent: Vec<bool>,
    pub intersection_size: usize,
    /// The statement is a theorem for `n <= 4`; beyond that it is open.
    pub proven_range: bool,
    pub status: ChainStatus,
}

impl ChainReport {
    pub fn hypotheses_hold(&self) -> bool {
        self.above_threshold.iter().all(|&b| b) && self.consecutive_independent.iter().all(|&b| b)
    }
}

fn subset_event(space: &Space, id: String, members: &[usize]) -> Result<BadEvent> {
    let m = space.domain(0) as usize;
    let mut table = vec![false; m];
    for &x in members {
        if x >= m {
            return Err(Error::InvalidParameters(format!("element {x} outside universe of size {m}")));
        }
        table[x] = true;
    }
    BadEvent::truth_table(id, vec![0], table, space)
}

/// Checks the chain hypotheses on explicit subsets of `{0..universe-1}` and
/// reports whether the intersection is empty.
pub fn chain_check(universe: usize, sets: &[Vec<usize>]) -> Result<ChainReport> {
    let n = sets.len();
    if n < 2 {
        return Err(Error::InvalidParameters("a chain needs at least two sets".into()));
    }
    if universe == 0 || universe > u32::MAX as usize {
        return Err(Error::InvalidParameters(format!("bad universe size {universe}")));
    }
    let space: Space = VariableSpace::new(vec![universe as u32])?.into();
    let events = sets
        .iter()
        .enumerate()
        .map(|(i, s)| subset_event(&space, format!("A{}", i + 1), s))
        .collect::<Result<Vec<_>>>()?;
    let threshold = Rational::from_integer(1.into()) - frac(1, n as i64 - 1);
    let cfg = EnumConfig::default();
    let fractions: Vec<Rational> = events
        .iter()
        .map(|e| {
            let size = (0..universe as u32).filter(|&x| e.holds(&[x])).count();
            frac(size as i64, universe as i64)
        })
        .collect();
    let above_threshold = fractions.iter().map(|f| *f > threshold).collect();
    let consecutive_independent = events
        .windows(2)
        .map(|w| independent(&space, w[0].as_set(), w[1].as_set(), &cfg))
        .collect::<Result<Vec<_>>>()?;
    let intersection_size = (0..universe as u32)
        .filter(|&x| events.iter().all(|e| e.holds(&[x])))
        .count();
    let mut report = ChainReport {
        universe,
        threshold,
        fractions,
        above_threshold,
        consecutive_independent,
        intersection_size,
        proven_range: n <= 4,
        status: ChainStatus::HypothesesNotMet,
    };
    if report.hypotheses_hold() {
        report.status = if intersection_size > 0 { ChainStatus::NonEmpty } else { ChainStatus::Empty };
    }
    Ok(report)
}

#[derive(Debug, Clone)]
pub struct ChainSearchReport {
    pub n: usize,
    pub attempts: usize,
    /// Chains built that satisfied every hypothesis.
    pub valid_chains: usize,
    /// A verified counterexample (universe size, sets), if one was found.
    pub counterexample: Option<(usize, Vec<Vec<usize>>)>,
}

/// Randomized search for `n` subsets of a universe of at most
/// `max_universe` points satisfying the chain hypotheses with an empty
/// intersection. Each new set is built independent of its predecessor and
/// biased away from the running intersection. A find is re-verified with
/// [`chain_check`] before being reported.
pub fn chain_search(n: usize, max_universe: usize, attempts: usize, seed: u64) -> Result<ChainSearchReport> {
    if n < 2 || max_universe < 2 {
        return Err(Error::InvalidParameters("chain search needs n >= 2 and a universe of at least 2".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = ChainSearchReport { n, attempts: 0, valid_chains: 0, counterexample: None };
    for _ in 0..attempts {
        report.attempts += 1;
        let m = rng.gen_range(2..=max_universe);
        let Some(sets) = build_chain(n, m, &mut rng) else { continue };
        let check = chain_check(m, &sets)?;
        if !check.hypotheses_hold() {
            continue;
        }
        report.valid_chains += 1;
        if check.status == ChainStatus::Empty {
            report.counterexample = Some((m, sets));
            break;
        }
    }
    Ok(report)
}

/// Smallest size strictly above `(1 - 1/(n-1)) * m`.
fn min_size(n: usize, m: usize) -> usize {
    // size/m > (n-2)/(n-1)  <=>  size*(n-1) > m*(n-2)
    (m * (n - 2)) / (n - 1) + 1
}

fn build_chain(n: usize, m: usize, rng: &mut ChaCha8Rng) -> Option<Vec<Vec<usize>>> {
    let lo = min_size(n, m);
    if lo > m {
        return None;
    }
    let mut universe: Vec<usize> = (0..m).collect();
    universe.shuffle(rng);
    let first_size = rng.gen_range(lo..=m);
    let mut sets = vec![universe[..first_size].to_vec()];
    let mut running: Vec<bool> = vec![false; m];
    for &x in &sets[0] {
        running[x] = true;
    }
    for _ in 1..n {
        let prev = sets.last()?;
        let a = prev.len();
        // sizes b with a*b divisible by m and a feasible overlap a*b/m
        let sizes: Vec<usize> = (lo..=m)
            .filter(|&b| (a * b) % m == 0)
            .filter(|&b| {
                let x = a * b / m;
                x <= a && b - x <= m - a
            })
            .collect();
        let &b = sizes.choose(rng)?;
        let overlap = a * b / m;
        let mut in_prev = vec![false; m];
        for &x in prev {
            in_prev[x] = true;
        }
        let mut outside_running: Vec<usize> = prev.iter().copied().filter(|&x| !running[x]).collect();
        let mut inside_running: Vec<usize> = prev.iter().copied().filter(|&x| running[x]).collect();
        outside_running.shuffle(rng);
        inside_running.shuffle(rng);
        let mut next: Vec<usize> = outside_running.into_iter().chain(inside_running).take(overlap).collect();
        let mut rest: Vec<usize> = (0..m).filter(|&x| !in_prev[x]).collect();
        rest.shuffle(rng);
        next.extend(rest.into_iter().take(b - overlap));
        next.sort_unstable();
        let mut in_next = vec![false; m];
        for &x in &next {
            in_next[x] = true;
        }
        for (x, r) in running.iter_mut().enumerate() {
            *r = *r && in_next[x];
        }
        sets.push(next);
    }
    Some(sets)
}

/// Three subsets `a, b1, b2` of `{0..universe-1}`, as bitmasks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IndependenceWitness {
    pub universe: usize,
    pub a: u32,
    pub b1: u32,
    pub b2: u32,
}

impl IndependenceWitness {
    pub fn members(mask: u32) -> Vec<usize> {
        (0..32).filter(|i| mask & (1 << i) != 0).collect()
    }
}

fn indep_masks(x: u32, y: u32, m: usize) -> bool {
    (x & y).count_ones() as usize * m == x.count_ones() as usize * y.count_ones() as usize
}

fn nontrivial(x: u32, m: usize) -> bool {
    x != 0 && (x.count_ones() as usize) < m
}

fn search_witness(max_universe: usize, accept: impl Fn(u32, u32, u32, usize) -> bool) -> Option<IndependenceWitness> {
    for m in 1..=max_universe.min(8) {
        let full = 1u32 << m;
        for a in 0..full {
            if !nontrivial(a, m) {
                continue;
            }
            for b1 in 0..full {
                if !nontrivial(b1, m) {
                    continue;
                }
                for b2 in 0..full {
                    if nontrivial(b2, m) && accept(a, b1, b2, m) {
                        return Some(IndependenceWitness { universe: m, a, b1, b2 });
                    }
                }
            }
        }
    }
    None
}

/// Pairwise independent, yet `a` depends on `b1 ∩ b2`.
pub fn find_pairwise_not_family(max_universe: usize) -> Option<IndependenceWitness> {
    search_witness(max_universe, |a, b1, b2, m| {
        indep_masks(a, b1, m)
            && indep_masks(a, b2, m)
            && indep_masks(b1, b2, m)
            && !indep_masks(a, b1 & b2, m)
    })
}

/// `a` independent from the family `{b1, b2}`, yet the three are not
/// pairwise independent.
pub fn find_family_not_pairwise(max_universe: usize) -> Option<IndependenceWitness> {
    search_witness(max_universe, |a, b1, b2, m| {
        indep_masks(a, b1, m)
            && indep_masks(a, b2, m)
            && indep_masks(a, b1 & b2, m)
            && !indep_masks(b1, b2, m)
    })
}
