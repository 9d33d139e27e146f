//! Dependency degrees: for each event, which other events it is certified
//! independent from, and `d_k = n - |certified family|` (counting `k`).

use crate::enumerate::EnumConfig;
use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::measure::{independent_from_family, is_null, EventSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DependencyMode {
    /// Disjoint supports (and empty events) only; needs a product space.
    Structural,
    /// Structural family grown greedily by exact family-independence checks.
    Exhaustive,
}

/// Stores, per event, the other events that are *not* certified; the
/// certified family is its complement (excluding the event itself).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DependencyReport {
    pub mode: DependencyMode,
    pub uncertified: Vec<Vec<usize>>,
}

impl DependencyReport {
    pub fn len(&self) -> usize {
        self.uncertified.len()
    }

    pub fn is_empty(&self) -> bool {
        self.uncertified.is_empty()
    }

    pub fn degree(&self, k: usize) -> usize {
        self.uncertified[k].len() + 1
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.len()).map(|k| self.degree(k)).collect()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.len()).map(|k| self.degree(k)).max().unwrap_or(1)
    }

    /// Indices certified for event `k`, in declaration order.
    pub fn certified(&self, k: usize) -> Vec<usize> {
        let skip = &self.uncertified[k];
        (0..self.len()).filter(|&j| j != k && skip.binary_search(&j).is_err()).collect()
    }
}

pub fn dependency_degrees(instance: &Instance, mode: DependencyMode, cfg: &EnumConfig) -> Result<DependencyReport> {
    match mode {
        DependencyMode::Structural => structural(instance, cfg),
        DependencyMode::Exhaustive => exhaustive(instance, cfg),
    }
}

fn null_flags(instance: &Instance, cfg: &EnumConfig) -> Vec<bool> {
    instance.events().iter().map(|e| is_null(instance.space(), e, cfg)).collect()
}

fn structural(instance: &Instance, cfg: &EnumConfig) -> Result<DependencyReport> {
    if instance.space().is_permutation() {
        return Err(Error::NeedsProductSpace);
    }
    let null = null_flags(instance, cfg);
    let by_var = instance.var_index();
    let mut mark = vec![usize::MAX; instance.len()];
    let uncertified = instance
        .events()
        .iter()
        .enumerate()
        .map(|(k, e)| {
            if null[k] {
                return Vec::new();
            }
            let mut out = Vec::new();
            for &v in e.support() {
                for &j in &by_var[v] {
                    if j != k && !null[j] && mark[j] != k {
                        mark[j] = k;
                        out.push(j);
                    }
                }
            }
            out.sort_unstable();
            out
        })
        .collect();
    Ok(DependencyReport { mode: DependencyMode::Structural, uncertified })
}

fn exhaustive(instance: &Instance, cfg: &EnumConfig) -> Result<DependencyReport> {
    let n = instance.len();
    let null = null_flags(instance, cfg);
    let events = instance.events();
    let base = if instance.space().is_permutation() {
        DependencyReport {
            mode: DependencyMode::Exhaustive,
            uncertified: (0..n)
                .map(|k| if null[k] { Vec::new() } else { (0..n).filter(|&j| j != k && !null[j]).collect() })
                .collect(),
        }
    } else {
        structural(instance, cfg)?
    };
    let mut uncertified = Vec::with_capacity(n);
    for k in 0..n {
        let mut family: Vec<usize> = base.certified(k).into_iter().filter(|&j| !null[j]).collect();
        let mut rejected = Vec::new();
        for &j in &base.uncertified[k] {
            family.push(j);
            let sets: Vec<EventSet> = family.iter().map(|&i| events[i].good()).collect();
            if !independent_from_family(instance.space(), events[k].good(), &sets, cfg)? {
                family.pop();
                rejected.push(j);
            }
        }
        uncertified.push(rejected);
    }
    Ok(DependencyReport { mode: DependencyMode::Exhaustive, uncertified })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::event::BadEvent;
    use crate::space::{Space, VariableSpace};

    #[test]
    fn disjoint_events_have_degree_one() {
        let s: Space = VariableSpace::uniform(9, 2).unwrap().into();
        let events = (0..3)
            .map(|i| BadEvent::monochromatic(format!("e{i}"), vec![3 * i, 3 * i + 1, 3 * i + 2], &s).unwrap())
            .collect();
        let inst = Instance::new("t", s, events).unwrap();
        let r = dependency_degrees(&inst, DependencyMode::Structural, &EnumConfig::default()).unwrap();
        assert_eq!(r.degrees(), vec![1, 1, 1]);
        assert_eq!(r.certified(0), vec![1, 2]);
    }

    #[test]
    fn exhaustive_finds_hidden_independence() {
        // Parity of x0,x1 is independent of x0 alone although supports overlap.
        let s: Space = VariableSpace::uniform(2, 2).unwrap().into();
        let parity = BadEvent::truth_table("p", vec![0, 1], vec![false, true, true, false], &s).unwrap();
        let first = BadEvent::truth_table("f", vec![0], vec![false, true], &s).unwrap();
        let inst = Instance::new("t", s, vec![parity, first]).unwrap();
        let cfg = EnumConfig::default();
        let st = dependency_degrees(&inst, DependencyMode::Structural, &cfg).unwrap();
        assert_eq!(st.degrees(), vec![2, 2]);
        let ex = dependency_degrees(&inst, DependencyMode::Exhaustive, &cfg).unwrap();
        assert_eq!(ex.degrees(), vec![1, 1]);
    }

    #[test]
    fn null_events_do_not_count() {
        let s: Space = VariableSpace::uniform(3, 2).unwrap().into();
        let a = BadEvent::monochromatic("a", vec![0, 1], &s).unwrap();
        let empty = BadEvent::patterns("z", vec![1, 2], vec![], &s).unwrap();
        let inst = Instance::new("t", s, vec![a, empty]).unwrap();
        let r = dependency_degrees(&inst, DependencyMode::Structural, &EnumConfig::default()).unwrap();
        assert_eq!(r.degrees(), vec![1, 1]);
    }
}
