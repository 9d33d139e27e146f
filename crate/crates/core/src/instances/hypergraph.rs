use rand::seq::SliceRandom;
use rand::Rng;

use super::{exhausted, overlap_counts, seeded, MAX_ATTEMPTS};
use crate::checker::EConstant;
use crate::error::{Error, Result};
use crate::event::BadEvent;
use crate::instance::{Instance, InstanceGate};
use crate::rational::{frac, int, pow2, to_exact, Rational};
use crate::space::{Space, VariableSpace};

/// Random `k`-uniform `k`-regular set system on `size` points (and `size`
/// sets), 2-colored; one monochromatic event per set.
pub fn gen_hypergraph(k: usize, size: usize, seed: u64) -> Result<Instance> {
    if k < 2 || size < k {
        return Err(Error::InvalidParameters(format!("need k >= 2 and at least k points (k = {k}, size = {size})")));
    }
    let mut rng = seeded(seed);
    for _ in 0..MAX_ATTEMPTS {
        let mut slots: Vec<usize> = (0..size).flat_map(|p| std::iter::repeat_n(p, k)).collect();
        slots.shuffle(&mut rng);
        if repair(&mut slots, k, &mut rng) {
            let sets: Vec<Vec<usize>> = slots.chunks(k).map(<[usize]>::to_vec).collect();
            return hypergraph_instance(&sets, size);
        }
    }
    Err(exhausted(format!("{k}-uniform {k}-regular system on {size} points")))
}

/// Swaps repeated points out of their set until every set is proper.
fn repair(slots: &mut [usize], k: usize, rng: &mut impl Rng) -> bool {
    let n = slots.len();
    for _ in 0..50 * n {
        let bad = (0..n).find(|&i| {
            let set = i / k * k;
            slots[set..i].contains(&slots[i])
        });
        let Some(i) = bad else {
            return true;
        };
        let j = rng.gen_range(0..n);
        if j / k == i / k {
            continue;
        }
        let (a, b) = (slots[i], slots[j]);
        let set_i = &slots[i / k * k..i / k * k + k];
        let set_j = &slots[j / k * k..j / k * k + k];
        if !set_i.contains(&b) && !set_j.contains(&a) {
            slots.swap(i, j);
        }
    }
    false
}

pub fn hypergraph_instance(sets: &[Vec<usize>], points: usize) -> Result<Instance> {
    let space: Space = VariableSpace::uniform(points, 2)?.into();
    let events = sets
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let e = BadEvent::monochromatic(format!("set{i}"), s.clone(), &space)?;
            let m = pow2(1 - e.support().len() as i64);
            Ok(e.with_analytic_measure(m))
        })
        .collect::<Result<Vec<_>>>()?;
    let d = overlap_counts(sets, points).into_iter().max().map_or(1, |c| c as u64 + 1);
    let k = sets.iter().map(Vec::len).min().unwrap_or(0) as i64;
    Ok(Instance::new("hypergraph", space, events)?
        .with_meta("k", k)
        .with_gate(hypergraph_gate(pow2(1 - k), d))
        .with_dependency_bound(d))
}

/// Passes through `1/(4d)` when possible, otherwise through
/// `1/(e(d+1))` decided at both ends of the enclosure of `e`.
fn hypergraph_gate(measure: Rational, d: u64) -> InstanceGate {
    let four_d = frac(1, 4 * d as i64);
    let four_d_ok = measure <= four_d;
    let e = EConstant::default();
    let scale = int(d as i64 + 1);
    let e_decision = (d > 2).then(|| e.decide(|ev| &measure * ev * &scale <= Rational::from_integer(1.into())));
    let e_ok = e_decision.is_some_and(|v| v.holds());
    let passed = four_d_ok || e_ok;
    InstanceGate::new(
        "hypergraph",
        format!(
            "{m} <= 1/(4*{d}) is {four_d_ok}; {m} <= 1/(e*{}) is {}",
            d + 1,
            e_decision.map_or("n/a", |v| v.as_str()),
            m = to_exact(&measure)
        ),
        passed,
    )
    .input("d", d)
    .input("measure", to_exact(&measure))
    .input("four_d", four_d_ok)
    .input("e_variant", e_decision.map_or("n/a", |v| v.as_str()))
}
