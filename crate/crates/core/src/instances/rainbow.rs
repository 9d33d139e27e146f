use std::collections::BTreeMap;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::event::{missing_color_measure, BadEvent};
use crate::instance::{Instance, InstanceGate};
use crate::rational::Rational;
use crate::space::{Space, VariableSpace};

/// `4 r m (m-1) (r-1)^m < r^m`, the integer form of
/// `4 r m (m-1) (1 - 1/r)^m < 1`.
pub fn rainbow_gate(m: u64, r: u64) -> InstanceGate {
    let lhs = BigUint::from(4 * r * m * m.saturating_sub(1)) * BigUint::from(r.saturating_sub(1)).pow(m as u32);
    let rhs = BigUint::from(r).pow(m as u32);
    let mut passed = lhs < rhs;
    let mut comparison = format!("4*{r}*{m}*{}*{}^{m} = {lhs} < {r}^{m} = {rhs}", m.saturating_sub(1), r.saturating_sub(1));
    let mut gate_chain = None;
    if m == 26 && r == 3 {
        let chain = rainbow_chain_26_3();
        passed &= chain;
        comparison.push_str("; (3/2)^26 > 2^13 > 8000 > 7800");
        gate_chain = Some(chain);
    }
    let mut gate = InstanceGate::new("rainbow", comparison, passed).input("m", m).input("r", r);
    if let Some(chain) = gate_chain {
        gate = gate.input("chain", chain);
    }
    gate
}

/// `(3/2)^26 > 2^13 > 8000 > 7800 = 4*3*26*25`, each link in integers.
pub fn rainbow_chain_26_3() -> bool {
    let three = BigUint::from(3u8).pow(26u32);
    let two = BigUint::from(2u8);
    let links = [
        three.clone() > two.pow(26u32) * BigUint::from(7800u32),
        three > two.pow(39u32),
        two.pow(13u32) > BigUint::from(8000u32),
        BigUint::from(8000u32) > BigUint::from(7800u32),
        BigUint::from(4u32 * 3 * 26 * 25) == BigUint::from(7800u32),
    ];
    links.iter().all(|&l| l)
}

/// Colorings of `X ∪ (X + M_1) ∪ ...` with `r` colors; the event at `x`
/// is "some color is missing from `x, x + M_1, ...`".
pub fn gen_rainbow(xs: &[Rational], offsets: &[Rational], r: u32) -> Result<Instance> {
    if r < 2 {
        return Err(Error::InvalidParameters(format!("r = {r} colors; at least 2 are required")));
    }
    let mut index: BTreeMap<Rational, usize> = BTreeMap::new();
    let mut supports = Vec::with_capacity(xs.len());
    let mut seen = std::collections::BTreeSet::new();
    for x in xs {
        if !seen.insert(x.clone()) {
            continue;
        }
        let support: Vec<usize> = std::iter::once(x.clone())
            .chain(offsets.iter().map(|m| x + m))
            .map(|p| {
                let next = index.len();
                *index.entry(p).or_insert(next)
            })
            .collect();
        supports.push(support);
    }
    let space: Space = VariableSpace::uniform(index.len(), r)?.into();
    let events = supports
        .into_iter()
        .enumerate()
        .map(|(i, s)| {
            let e = BadEvent::missing_color(format!("x{i}"), s, &space)?;
            let m = missing_color_measure(e.support().len() as u64, u64::from(r));
            Ok(e.with_analytic_measure(m))
        })
        .collect::<Result<Vec<_>>>()?;
    let m = offsets.len() as u64 + 1;
    let points: Vec<String> = {
        let mut by_index: Vec<(&usize, &Rational)> = index.iter().map(|(p, i)| (i, p)).collect();
        by_index.sort();
        by_index.into_iter().map(|(_, p)| p.to_string()).collect()
    };
    Ok(Instance::new("rainbow", space, events)?
        .with_meta("r", r)
        .with_meta("m", m)
        .with_meta("points", points.join(","))
        .with_gate(rainbow_gate(m, u64::from(r)))
        .with_dependency_bound(m * m.saturating_sub(1) + 1))
}
