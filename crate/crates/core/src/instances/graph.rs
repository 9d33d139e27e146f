use std::collections::BTreeSet;

use num_traits::ToPrimitive;

use crate::checker::EConstant;
use crate::error::{Error, Result};
use crate::event::BadEvent;
use crate::instance::{Instance, InstanceGate};
use crate::rational::{frac, int};
use crate::space::{Space, VariableSpace};

/// Simple undirected graph on `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    /// Edges are normalized to `u < v`; loops and repeats are rejected.
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::with_capacity(edges.len());
        for (u, v) in edges {
            if u >= n || v >= n || u == v {
                return Err(Error::InvalidParameters(format!("invalid edge ({u}, {v}) on {n} vertices")));
            }
            let e = (u.min(v), u.max(v));
            if !seen.insert(e) {
                return Err(Error::InvalidParameters(format!("repeated edge ({}, {})", e.0, e.1)));
            }
            out.push(e);
        }
        Ok(Self { n, edges: out })
    }

    pub fn cycle(n: usize) -> Result<Self> {
        Self::new(n, (0..n).map(|i| (i, (i + 1) % n)).collect())
    }

    pub fn complete(n: usize) -> Result<Self> {
        Self::new(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect())
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for &(u, v) in &self.edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        deg
    }

    pub fn max_degree(&self) -> usize {
        self.degrees().into_iter().max().unwrap_or(0)
    }

    pub fn neighbors(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        adj
    }

    fn is_single_cycle(&self) -> bool {
        if self.n < 3 || self.edges.len() != self.n || self.degrees().iter().any(|&d| d != 2) {
            return false;
        }
        let adj = self.neighbors();
        let (mut prev, mut cur, mut steps) = (0, adj[0][0], 1);
        while cur != 0 {
            let next = if adj[cur][0] == prev { adj[cur][1] } else { adj[cur][0] };
            prev = cur;
            cur = next;
            steps += 1;
        }
        steps == self.n
    }
}

/// Position of every vertex inside its class; vertices may be unclassed.
fn class_ranks(n: usize, classes: &[Vec<usize>]) -> Result<Vec<Option<(usize, u32)>>> {
    let mut rank = vec![None; n];
    for (c, class) in classes.iter().enumerate() {
        if class.is_empty() {
            return Err(Error::InvalidParameters(format!("class {c} is empty")));
        }
        for (i, &v) in class.iter().enumerate() {
            if v >= n {
                return Err(Error::InvalidParameters(format!("class {c} names vertex {v} outside 0..{n}")));
            }
            if rank[v].is_some() {
                return Err(Error::InvalidParameters(format!("vertex {v} belongs to two classes")));
            }
            rank[v] = Some((c, i as u32));
        }
    }
    Ok(rank)
}

/// One chosen vertex per class; the event of edge `(u, v)` is "both ends
/// chosen", empty when they share a class.
pub fn gen_transversal(graph: &Graph, classes: &[Vec<usize>]) -> Result<Instance> {
    let rank = class_ranks(graph.len(), classes)?;
    let sizes: Vec<u32> = classes.iter().map(|c| c.len() as u32).collect();
    let space: Space = VariableSpace::new(sizes.clone())?.into();
    let mut events = Vec::new();
    for &(u, v) in graph.edges() {
        let (Some((cu, ru)), Some((cv, rv))) = (rank[u], rank[v]) else {
            continue;
        };
        let id = format!("edge{u}-{v}");
        let event = if cu == cv {
            BadEvent::patterns(id, vec![cu], Vec::new(), &space)?.with_analytic_measure(frac(0, 1))
        } else {
            let (a, b) = if cu < cv { ((cu, ru), (cv, rv)) } else { ((cv, rv), (cu, ru)) };
            let m = frac(1, i64::from(sizes[cu]) * i64::from(sizes[cv]));
            BadEvent::patterns(id, vec![a.0, b.0], vec![vec![a.1, b.1]], &space)?.with_analytic_measure(m)
        };
        events.push(event);
    }
    let delta = graph.max_degree() as u64;
    let e = EConstant::default();
    let need = (int(2) * &e.hi * int(delta as i64)).ceil().to_integer().to_u64().unwrap_or(u64::MAX) + 1;
    let min = sizes.iter().copied().min().unwrap_or(0) as u64;
    let gate = InstanceGate::new(
        "transversal",
        format!("min class size {min} >= ceil(2*e_hi*{delta})+1 = {need}"),
        min >= need,
    )
    .input("delta", delta)
    .input("min_class", min)
    .input("required", need);
    let special = graph.is_single_cycle() && sizes.iter().all(|&s| s == 11) && graph.len() == 11 * classes.len();
    let mut inst = Instance::new("transversal", space, events)?.with_gate(gate);
    if special {
        inst = inst.with_meta("special-case", "cycle-11n");
    }
    Ok(inst)
}

/// Each vertex picks a color from its list; the event of edge `(u, v)` and
/// shared color `c` is "both pick `c`".
pub fn gen_listcoloring(graph: &Graph, lists: &[Vec<u32>], d: u64) -> Result<Instance> {
    if lists.len() != graph.len() {
        return Err(Error::LengthMismatch { expected: graph.len(), got: lists.len() });
    }
    for (v, l) in lists.iter().enumerate() {
        let distinct: BTreeSet<&u32> = l.iter().collect();
        if distinct.len() != l.len() {
            return Err(Error::InvalidParameters(format!("list of vertex {v} repeats a color")));
        }
    }
    let sizes: Vec<u32> = lists.iter().map(|l| l.len() as u32).collect();
    let space: Space = VariableSpace::new(sizes.clone())?.into();
    let pos = |v: usize, c: u32| lists[v].iter().position(|&x| x == c).map(|p| p as u32);
    let mut events = Vec::new();
    for &(u, v) in graph.edges() {
        for (i, &c) in lists[u].iter().enumerate() {
            if let Some(j) = pos(v, c) {
                let m = frac(1, i64::from(sizes[u]) * i64::from(sizes[v]));
                let e = BadEvent::patterns(format!("edge{u}-{v}c{c}"), vec![u, v], vec![vec![i as u32, j]], &space)?;
                events.push(e.with_analytic_measure(m));
            }
        }
    }
    let adj = graph.neighbors();
    let mut failure = None;
    let mut worst = 0u64;
    for (v, l) in lists.iter().enumerate() {
        for &c in l {
            let count = adj[v].iter().filter(|&&u| lists[u].contains(&c)).count() as u64;
            worst = worst.max(count);
            if count > d && failure.is_none() {
                failure = Some(format!("vertex {v} color {c} has {count} > {d} neighbors listing it"));
            }
        }
    }
    if failure.is_none() {
        if let Some((v, l)) = lists.iter().enumerate().find(|(_, l)| (l.len() as u64) < 10 * d) {
            failure = Some(format!("vertex {v} list size {} < 10*{d}", l.len()));
        }
    }
    let passed = failure.is_none();
    let comparison = failure.unwrap_or_else(|| format!("lists >= 10*{d} and max neighbor count {worst} <= {d}"));
    let gate = InstanceGate::new("listcoloring", comparison, passed).input("d", d).input("max_count", worst);
    Ok(Instance::new("listcoloring", space, events)?.with_gate(gate).with_meta("d", d))
}
