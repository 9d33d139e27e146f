use rand::seq::SliceRandom;

use super::seeded;
use crate::error::{Error, Result};
use crate::event::BadEvent;
use crate::instance::{Instance, InstanceGate};
use crate::rational::{frac, to_exact};
use crate::space::{Space, VariableSpace};

/// Students standing on a circle, each labeled with their group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CircleLayout {
    groups: usize,
    order: Vec<usize>,
    /// Rank of each position among its groupmates, in circle order.
    rank: Vec<u32>,
}

impl CircleLayout {
    pub fn new(groups: usize, order: Vec<usize>) -> Result<Self> {
        if let Some(&g) = order.iter().find(|&&g| g >= groups) {
            return Err(Error::InvalidParameters(format!("group {g} out of range 0..{groups}")));
        }
        let mut sizes = vec![0u32; groups];
        let rank = order
            .iter()
            .map(|&g| {
                sizes[g] += 1;
                sizes[g] - 1
            })
            .collect();
        if let Some(g) = sizes.iter().position(|&s| s == 0) {
            return Err(Error::InvalidParameters(format!("group {g} has no members")));
        }
        Ok(Self { groups, order, rank })
    }

    /// Uniformly shuffled circle of `groups` groups of `size`.
    pub fn random(groups: usize, size: usize, seed: u64) -> Self {
        let mut order: Vec<usize> = (0..groups).flat_map(|g| std::iter::repeat_n(g, size)).collect();
        order.shuffle(&mut seeded(seed));
        Self::new(groups, order).expect("every group is non-empty")
    }

    pub fn groups(&self) -> usize {
        self.groups
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn group_of(&self, position: usize) -> usize {
        self.order[position]
    }

    pub fn rank_of(&self, position: usize) -> u32 {
        self.rank[position]
    }

    /// Positions of group `g` in circle order.
    pub fn members(&self, g: usize) -> Vec<usize> {
        (0..self.order.len()).filter(|&p| self.order[p] == g).collect()
    }

    pub fn group_sizes(&self) -> Vec<u32> {
        let mut sizes = vec![0; self.groups];
        for &g in &self.order {
            sizes[g] += 1;
        }
        sizes
    }

    /// Position chosen by a leader assignment for group `g`.
    pub fn leader_position(&self, g: usize, choice: u32) -> Option<usize> {
        self.members(g).get(choice as usize).copied()
    }

    /// Recovers the layout stored in an instance's `order` metadata.
    pub fn from_instance(instance: &Instance) -> Result<Self> {
        let raw = instance
            .meta("order")
            .ok_or_else(|| Error::InvalidParameters("instance has no circle order".into()))?;
        let order = raw
            .split(',')
            .map(|t| t.parse::<usize>().map_err(|_| Error::InvalidParameters(format!("bad group `{t}`"))))
            .collect::<Result<Vec<_>>>()?;
        let groups = instance.space().num_vars();
        Self::new(groups, order)
    }
}

pub fn gen_circle(groups: usize, size: usize, seed: u64) -> Result<Instance> {
    if groups == 0 || size == 0 {
        return Err(Error::InvalidParameters("need at least one group of at least one student".into()));
    }
    circle_instance(&CircleLayout::random(groups, size, seed))
}

/// One variable per group choosing its leader; the event at position `x`
/// is "x and its clockwise neighbor are both leaders", empty when they are
/// groupmates.
pub fn circle_instance(layout: &CircleLayout) -> Result<Instance> {
    let sizes = layout.group_sizes();
    let space: Space = VariableSpace::new(sizes.clone())?.into();
    let n = layout.len();
    let mut events = Vec::with_capacity(n);
    for x in 0..n {
        let y = (x + 1) % n;
        let (gx, gy) = (layout.group_of(x), layout.group_of(y));
        let id = format!("pos{x}");
        let event = if gx == gy {
            BadEvent::patterns(id, vec![gx], Vec::new(), &space)?.with_analytic_measure(frac(0, 1))
        } else {
            let (mut a, mut b) = ((gx, layout.rank_of(x)), (gy, layout.rank_of(y)));
            if a.0 > b.0 {
                std::mem::swap(&mut a, &mut b);
            }
            let m = frac(1, i64::from(sizes[gx]) * i64::from(sizes[gy]));
            BadEvent::patterns(id, vec![a.0, b.0], vec![vec![a.1, b.1]], &space)?.with_analytic_measure(m)
        };
        events.push(event);
    }
    let order: Vec<String> = layout.order().iter().map(usize::to_string).collect();
    let max_size = sizes.iter().copied().max().unwrap_or(0);
    let d = 4 * u64::from(max_size);
    Ok(Instance::new("circle", space, events)?
        .with_meta("groups", layout.groups())
        .with_meta("order", order.join(","))
        .with_gate(circle_gate(&sizes))
        .with_dependency_bound(d))
}

/// Each event touches two groups, each member of which appears in two
/// events, so `d = 4 * max_size`; the gate is `1/min_size^2 <= 1/(4d)`.
fn circle_gate(sizes: &[u32]) -> InstanceGate {
    let min = u64::from(sizes.iter().copied().min().unwrap_or(1));
    let max = u64::from(sizes.iter().copied().max().unwrap_or(1));
    let d = 4 * max;
    let measure = frac(1, (min * min) as i64);
    let threshold = frac(1, (4 * d) as i64);
    InstanceGate::new(
        "circle",
        format!("{} <= 1/(4*{d}) = {}", to_exact(&measure), to_exact(&threshold)),
        measure <= threshold,
    )
    .input("groups", sizes.len())
    .input("min_size", min)
    .input("d", d)
    .input("measure", to_exact(&measure))
    .input("threshold", to_exact(&threshold))
}
