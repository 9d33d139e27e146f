use std::collections::{BTreeMap, BTreeSet};

use crate::instance::InstanceGate;
use crate::rational::{frac, pow2, to_exact, Rational};

/// For each set, `a_i` counts the chosen `i`-element sets meeting it (the
/// set itself included); the gate needs `sum_i a_i 2^-i <= 1/8` and at
/// least 3 elements in every set.
pub fn gen_setsystem_gate(sets: &[Vec<usize>]) -> InstanceGate {
    let sets: Vec<BTreeSet<usize>> = sets.iter().map(|s| s.iter().copied().collect()).collect();
    let bound = frac(1, 8);
    let mut worst = Rational::from_integer(0.into());
    let mut failure = None;
    for (k, s) in sets.iter().enumerate() {
        if s.len() < 3 {
            failure.get_or_insert(format!("set {k} has {} < 3 elements", s.len()));
        }
        let mut a: BTreeMap<usize, u64> = BTreeMap::new();
        for t in &sets {
            if !s.is_disjoint(t) {
                *a.entry(t.len()).or_default() += 1;
            }
        }
        let sum: Rational = a.iter().map(|(&i, &c)| Rational::from_integer(c.into()) * pow2(-(i as i64))).sum();
        if sum > bound {
            failure.get_or_insert(format!("set {k} has sum {} > 1/8", to_exact(&sum)));
        }
        if sum > worst {
            worst = sum;
        }
    }
    let passed = failure.is_none();
    let comparison = match &failure {
        None => format!("max sum a_i 2^-i = {} <= 1/8", to_exact(&worst)),
        Some(f) => f.clone(),
    };
    InstanceGate::new("setsystem", comparison, passed)
        .input("sets", sets.len())
        .input("max_sum", to_exact(&worst))
}
