use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_traits::Pow;
use rand::seq::SliceRandom;
use rand::Rng;

use super::{exhausted, seeded, MAX_ATTEMPTS};
use crate::error::{Error, Result};
use crate::event::BadEvent;
use crate::instance::{Instance, InstanceGate};
use crate::space::{Space, VariableSpace};

/// Finite directed graph given by out-neighbor lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Digraph {
    out: Vec<Vec<usize>>,
}

impl Digraph {
    pub fn new(out: Vec<Vec<usize>>) -> Result<Self> {
        let n = out.len();
        for (v, list) in out.iter().enumerate() {
            if let Some(&w) = list.iter().find(|&&w| w >= n) {
                return Err(Error::InvalidParameters(format!("edge {v} -> {w} leaves 0..{n}")));
            }
            if list.iter().collect::<BTreeSet<_>>().len() != list.len() {
                return Err(Error::InvalidParameters(format!("vertex {v} repeats an out-neighbor")));
            }
        }
        Ok(Self { out })
    }

    /// Union of `degree` random permutations without fixed points or
    /// repeated edges: every vertex has in- and out-degree `degree`.
    pub fn random_regular(n: usize, degree: usize, seed: u64) -> Result<Self> {
        if degree >= n {
            return Err(Error::InvalidParameters(format!("degree {degree} needs more than {n} vertices")));
        }
        let mut rng = seeded(seed);
        'attempt: for _ in 0..MAX_ATTEMPTS {
            let mut out = vec![Vec::with_capacity(degree); n];
            for _ in 0..degree {
                let mut perm: Vec<usize> = (0..n).collect();
                perm.shuffle(&mut rng);
                let clash = |v: usize, w: usize, out: &[Vec<usize>]| w == v || out[v].contains(&w);
                let mut placed = false;
                for _ in 0..100 * n {
                    let Some(v) = (0..n).find(|&v| clash(v, perm[v], &out)) else {
                        placed = true;
                        break;
                    };
                    let u = rng.gen_range(0..n);
                    if !clash(v, perm[u], &out) && !clash(u, perm[v], &out) {
                        perm.swap(u, v);
                    }
                }
                if !placed {
                    continue 'attempt;
                }
                for v in 0..n {
                    out[v].push(perm[v]);
                }
            }
            return Self::new(out);
        }
        Err(exhausted(format!("{degree}-regular digraph on {n} vertices")))
    }

    pub fn len(&self) -> usize {
        self.out.len()
    }

    pub fn is_empty(&self) -> bool {
        self.out.is_empty()
    }

    pub fn out(&self, v: usize) -> &[usize] {
        &self.out[v]
    }

    pub fn min_out_degree(&self) -> usize {
        self.out.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn max_in_degree(&self) -> usize {
        let mut deg = vec![0; self.len()];
        for list in &self.out {
            for &w in list {
                deg[w] += 1;
            }
        }
        deg.into_iter().max().unwrap_or(0)
    }
}

/// `k^delta >= 4 delta Delta (k-1)^delta` in integers.
pub fn digraph_gate(delta_out: u64, delta_in: u64, k: u64) -> InstanceGate {
    let lhs = BigUint::from(k).pow(delta_out as u32);
    let rhs = BigUint::from(4 * delta_out * delta_in) * BigUint::from(k.saturating_sub(1)).pow(delta_out as u32);
    InstanceGate::new(
        "digraph",
        format!("{k}^{delta_out} = {lhs} >= 4*{delta_out}*{delta_in}*{}^{delta_out} = {rhs}", k.saturating_sub(1)),
        lhs >= rhs,
    )
    .input("min_out", delta_out)
    .input("max_in", delta_in)
    .input("k", k)
}

/// Labels in `Z_k`; the event at `v` is "no out-neighbor carries label
/// `label(v) + 1 mod k`".
pub fn gen_digraph_labels(graph: &Digraph, k: u32) -> Result<Instance> {
    if k == 0 {
        return Err(Error::InvalidParameters("k must be positive".into()));
    }
    let space: Space = VariableSpace::uniform(graph.len(), k)?.into();
    let mut events = Vec::with_capacity(graph.len());
    for v in 0..graph.len() {
        let mut support: Vec<usize> = graph.out(v).to_vec();
        support.push(v);
        support.sort_unstable();
        support.dedup();
        let me = support.binary_search(&v).expect("v is in its support");
        let total = (k as usize)
            .checked_pow(support.len() as u32)
            .ok_or_else(|| Error::InvalidParameters(format!("vertex {v}: label table too large")))?;
        let mut bits = Vec::with_capacity(total);
        let mut digits = vec![0u32; support.len()];
        for _ in 0..total {
            let want = (digits[me] + 1) % k;
            let hit = support.iter().zip(&digits).any(|(&w, &x)| graph.out(v).contains(&w) && x == want);
            bits.push(!hit);
            for d in digits.iter_mut().rev() {
                *d += 1;
                if *d < k {
                    break;
                }
                *d = 0;
            }
        }
        events.push(BadEvent::truth_table(format!("v{v}"), support, bits, &space)?);
    }
    let gate = digraph_gate(graph.min_out_degree() as u64, graph.max_in_degree() as u64, u64::from(k));
    let out: Vec<String> = (0..graph.len())
        .map(|v| graph.out(v).iter().map(usize::to_string).collect::<Vec<_>>().join(","))
        .collect();
    Ok(Instance::new("digraph", space, events)?
        .with_meta("k", k)
        .with_meta("out", out.join(";"))
        .with_gate(gate))
}

impl Digraph {
    /// Recovers the digraph stored in an instance's `out` metadata.
    pub fn from_instance(instance: &Instance) -> Result<Self> {
        let raw = instance
            .meta("out")
            .ok_or_else(|| Error::InvalidParameters("instance has no digraph".into()))?;
        if instance.space().num_vars() == 0 {
            return Self::new(Vec::new());
        }
        let parse = |t: &str| t.parse::<usize>().map_err(|_| Error::InvalidParameters(format!("bad vertex `{t}`")));
        let out = raw
            .split(';')
            .map(|l| if l.is_empty() { Ok(Vec::new()) } else { l.split(',').map(parse).collect() })
            .collect::<Result<Vec<_>>>()?;
        Self::new(out)
    }
}
