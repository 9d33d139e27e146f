use num_bigint::BigUint;
use num_traits::One;

use super::overlap_counts;
use crate::error::{Error, Result};
use crate::event::BadEvent;
use crate::instance::{Instance, InstanceGate};
use crate::rational::pow2;
use crate::space::{Space, VariableSpace};

/// Above this many integers the family is checked by arithmetic only.
pub const MAX_VDW_VARIABLES: usize = 100_000;

const MAX_PROGRESSIONS: usize = 5_000_000;

/// `k^2 * ceil(n / (k - 1))`, a bound on the progressions meeting a given
/// one, itself included.
pub fn vdw_analytic_degree(n: u64, k: u64) -> BigUint {
    BigUint::from(k) * BigUint::from(k) * BigUint::from(n.div_ceil(k - 1))
}

/// Symmetric gate `2^(1-k) <= 1/(4d)`, i.e. `d <= 2^(k-3)`, with the
/// analytic `d` (or an exact scan when `scanned` is given).
pub fn vdw_gate(n: u64, k: u64, scanned: Option<u64>) -> InstanceGate {
    let analytic = vdw_analytic_degree(n, k);
    let coarse = BigUint::from(n) * BigUint::from(k) + BigUint::one();
    let limit = if k >= 3 { BigUint::one() << (k - 3) } else { BigUint::from(0u8) };
    let (d, source) = match scanned {
        Some(d) => (BigUint::from(d), "scan"),
        None => (analytic.clone(), "analytic"),
    };
    let passed = k >= 3 && d <= limit;
    let comparison = match source {
        "analytic" => format!("{k}^2*ceil({n}/{}) = {d} <= 2^{} = {limit}", k - 1, k.saturating_sub(3)),
        _ => format!("d = {d} <= 2^{} = {limit}", k.saturating_sub(3)),
    };
    InstanceGate::new("vdw", comparison, passed)
        .input("n", n)
        .input("k", k)
        .input("d_source", source)
        .input("d", &d)
        .input("analytic_d", analytic)
        .input("coarse_d", coarse)
        .input("limit", limit)
}

fn progressions(n: usize, k: usize) -> impl Iterator<Item = (usize, usize)> {
    (1..n.max(1)).flat_map(move |s| {
        let span = (k - 1) * s;
        (1..=n.saturating_sub(span)).map(move |a| (a, s))
    })
}

/// 2-colorings of `1..=n` (variable `i` is the integer `i + 1`) with one
/// monochromatic event per `k`-term progression.
pub fn gen_vdw(n: usize, k: usize) -> Result<Instance> {
    if k < 3 {
        return Err(Error::InvalidParameters(format!("progression length k = {k} must be at least 3")));
    }
    if n > MAX_VDW_VARIABLES {
        let gate = vdw_gate(n as u64, k as u64, None);
        let bound: Option<u64> = gate.get("d").and_then(|d| d.parse().ok());
        let mut inst = Instance::new("vdw", VariableSpace::new(Vec::new())?.into(), Vec::new())?
            .with_meta("n", n)
            .with_meta("k", k)
            .with_gate(gate);
        inst.dependency_bound = bound;
        inst.certificate_only = true;
        return Ok(inst);
    }
    let count: usize = (1..n.max(1)).map(|s| n.saturating_sub((k - 1) * s)).sum();
    if count > MAX_PROGRESSIONS {
        return Err(Error::InvalidParameters(format!(
            "{count} progressions exceed the materialization limit of {MAX_PROGRESSIONS}"
        )));
    }
    let space: Space = VariableSpace::uniform(n, 2)?.into();
    let measure = pow2(1 - k as i64);
    let mut events = Vec::with_capacity(count);
    let mut supports = Vec::with_capacity(count);
    for (a, s) in progressions(n, k) {
        let support: Vec<usize> = (0..k).map(|j| a - 1 + j * s).collect();
        events.push(
            BadEvent::monochromatic(format!("ap{a}+{s}"), support.clone(), &space)?
                .with_analytic_measure(measure.clone()),
        );
        supports.push(support);
    }
    let scanned = overlap_counts(&supports, n).into_iter().max().map_or(1, |c| c as u64 + 1);
    Ok(Instance::new("vdw", space, events)?
        .with_meta("n", n)
        .with_meta("k", k)
        .with_gate(vdw_gate(n as u64, k as u64, Some(scanned)))
        .with_dependency_bound(scanned))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::time::Instant;

    #[test]
    fn fifteen_million_arithmetic() {
        let start = Instant::now();
        let inst = gen_vdw(15_000_000, 32).unwrap();
        assert!(inst.certificate_only);
        assert!(inst.is_empty());
        let gate = inst.gate.as_ref().unwrap();
        assert_eq!(gate.get("d"), Some("495483904"));
        assert!(gate.passed);
        assert_eq!(vdw_analytic_degree(15_000_000, 32), BigUint::from(495_483_904u64));
        assert!(BigUint::from(495_483_904u64) < BigUint::one() << 29);
        assert!(start.elapsed().as_secs_f64() < 0.1);
    }

    #[test]
    fn k12_n39_passes_by_scan() {
        assert_eq!((1u64 << 9) * 11 / 144, 39);
        let inst = gen_vdw(39, 12).unwrap();
        assert_eq!(inst.len(), 28 + 17 + 6);
        assert!(inst.gate.unwrap().passed);
    }

    #[test]
    fn rejects_short_progressions() {
        assert!(gen_vdw(10, 2).is_err());
    }

    #[test]
    fn analytic_bounds_dominate_scan() {
        for k in 3..=8usize {
            for n in k..=60usize {
                let inst = gen_vdw(n, k).unwrap();
                let supports: Vec<Vec<usize>> = inst.events().iter().map(|e| e.support().to_vec()).collect();
                let worst = overlap_counts(&supports, n).into_iter().max().unwrap_or(0) as u64;
                assert!(vdw_analytic_degree(n as u64, k as u64) >= BigUint::from(worst + 1), "k={k} n={n}");
                assert!((n * k) as u64 >= worst, "k={k} n={n}");
            }
        }
    }
}
