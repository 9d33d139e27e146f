//! Exact measures and the two independence notions.
//!
//! Subsets `A, B` of a finite `M` are independent when
//! `|A ∩ B| · |M| = |A| · |B|`. `A` is independent from a family when it is
//! independent from the intersection of every non-empty subfamily.
//! Everything is counted on the projection onto the union of supports.

use num_bigint::BigUint;
use num_traits::Zero;

use crate::enumerate::{for_each_point, union_support, EnumConfig};
use crate::error::{Error, Result};
use crate::event::BadEvent;
use crate::rational::Rational;
use crate::space::Space;

/// A bad event or its complement (the corresponding good set).
#[derive(Debug, Clone, Copy)]
pub struct EventSet<'a> {
    pub event: &'a BadEvent,
    pub complement: bool,
}

impl<'a> EventSet<'a> {
    #[inline]
    pub fn contains(&self, values: &[u32]) -> bool {
        self.event.holds(values) != self.complement
    }

    pub fn complemented(self) -> Self {
        Self { event: self.event, complement: !self.complement }
    }
}

impl BadEvent {
    /// The event itself as a subset of the space.
    pub fn as_set(&self) -> EventSet<'_> {
        EventSet { event: self, complement: false }
    }

    /// The good set: the complement of the event.
    pub fn good(&self) -> EventSet<'_> {
        EventSet { event: self, complement: true }
    }
}

/// `|event| / |M|`, using a closed form when one applies, else projected
/// enumeration, else a declared analytic measure.
pub fn measure(space: &Space, event: &BadEvent, cfg: &EnumConfig) -> Result<Rational> {
    if let Some(m) = event.shortcut_measure(space) {
        return Ok(m);
    }
    match enumerated_measure(space, event, cfg) {
        Err(Error::EnumerationCap { .. }) if event.analytic_measure().is_some() => {
            Ok(event.analytic_measure().cloned().unwrap_or_default())
        }
        other => other,
    }
}

/// Measure by enumeration over the event's support only.
pub fn enumerated_measure(space: &Space, event: &BadEvent, cfg: &EnumConfig) -> Result<Rational> {
    joint_measure(space, &[event.as_set()], cfg)
}

/// Fraction of the intersection of `sets` (1 for an empty list).
pub fn joint_measure(space: &Space, sets: &[EventSet<'_>], cfg: &EnumConfig) -> Result<Rational> {
    let vars = union_support(sets.iter().map(|s| s.event));
    let mut hits: u128 = 0;
    let total = for_each_point(space, &vars, cfg, |v| {
        if sets.iter().all(|s| s.contains(v)) {
            hits += 1;
        }
    })?;
    Ok(Rational::new(hits.into(), total.into()))
}

pub fn independent(space: &Space, a: EventSet<'_>, b: EventSet<'_>, cfg: &EnumConfig) -> Result<bool> {
    independent_from_family(space, a, &[b], cfg)
}

/// True iff `a` is independent of every non-empty subfamily intersection.
pub fn independent_from_family(
    space: &Space,
    a: EventSet<'_>,
    family: &[EventSet<'_>],
    cfg: &EnumConfig,
) -> Result<bool> {
    Ok(family_violation(space, a, family, cfg)?.is_none())
}

/// The first subfamily (by bitmask order, as family indices) whose
/// intersection `a` is dependent on, if any.
pub fn family_violation(
    space: &Space,
    a: EventSet<'_>,
    family: &[EventSet<'_>],
    cfg: &EnumConfig,
) -> Result<Option<Vec<usize>>> {
    let k = family.len();
    if k == 0 {
        return Ok(None);
    }
    if k > cfg.max_family {
        return Err(Error::FamilyCap { size: k, cap: cfg.max_family });
    }
    let vars = union_support(std::iter::once(a.event).chain(family.iter().map(|s| s.event)));
    let masks = 1usize << k;
    let mut count = vec![0u128; masks];
    let mut count_a = vec![0u128; masks];
    let mut size_a: u128 = 0;
    let total = for_each_point(space, &vars, cfg, |v| {
        let mask = family
            .iter()
            .enumerate()
            .fold(0usize, |m, (i, s)| if s.contains(v) { m | (1 << i) } else { m });
        count[mask] += 1;
        if a.contains(v) {
            count_a[mask] += 1;
            size_a += 1;
        }
    })?;
    // superset sums: count[S] becomes |∩_{i∈S} B_i|
    for bit in 0..k {
        for mask in 0..masks {
            if mask & (1 << bit) == 0 {
                count[mask] += count[mask | (1 << bit)];
                count_a[mask] += count_a[mask | (1 << bit)];
            }
        }
    }
    for mask in 1..masks {
        if !product_eq(count_a[mask], total, size_a, count[mask]) {
            return Ok(Some((0..k).filter(|i| mask & (1 << i) != 0).collect()));
        }
    }
    Ok(None)
}

fn product_eq(a: u128, b: u128, c: u128, d: u128) -> bool {
    match (a.checked_mul(b), c.checked_mul(d)) {
        (Some(x), Some(y)) => x == y,
        _ => BigUint::from(a) * BigUint::from(b) == BigUint::from(c) * BigUint::from(d),
    }
}

/// Disjoint supports in a product space certify independence from the
/// whole family without counting.
pub fn support_disjoint_certificate(a: &BadEvent, family: &[&BadEvent]) -> bool {
    family.iter().all(|b| !a.shares_support(b))
}

/// Whether the event is empty (zero measure), when that can be decided
/// within the caps.
pub fn is_null(space: &Space, event: &BadEvent, cfg: &EnumConfig) -> bool {
    matches!(measure(space, event, cfg), Ok(m) if m.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::event::missing_color_measure;
    use crate::rational::{frac, int, pow, pow2};
    use crate::space::VariableSpace;

    fn bits(n: usize) -> Space {
        VariableSpace::uniform(n, 2).unwrap().into()
    }

    /// A subset of `{0..m-1}` as a one-variable truth-table event.
    fn subset(space: &Space, id: &str, members: &[u32]) -> BadEvent {
        let m = space.domain(0) as usize;
        let mut t = vec![false; m];
        for &x in members {
            t[x as usize] = true;
        }
        BadEvent::truth_table(id, vec![0], t, space).unwrap()
    }

    #[test]
    fn monochromatic_measures() {
        let s = bits(32);
        let cfg = EnumConfig::default();
        let e8 = BadEvent::monochromatic("a", (0..8).collect(), &s).unwrap();
        assert_eq!(measure(&s, &e8, &cfg).unwrap(), pow2(-7));
        assert_eq!(enumerated_measure(&s, &e8, &cfg).unwrap(), pow2(-7));
        let e32 = BadEvent::monochromatic("b", (0..32).collect(), &s).unwrap();
        assert_eq!(measure(&s, &e32, &cfg).unwrap(), pow2(-31));
    }

    #[test]
    fn missing_color_26_cells() {
        // Oracle: brute force over 8 cells agrees with inclusion-exclusion.
        let s8: Space = VariableSpace::uniform(8, 3).unwrap().into();
        let e = BadEvent::missing_color("x", (0..8).collect(), &s8).unwrap();
        let cfg = EnumConfig::default();
        assert_eq!(enumerated_measure(&s8, &e, &cfg).unwrap(), missing_color_measure(8, 3));

        let s: Space = VariableSpace::uniform(26, 3).unwrap().into();
        let e = BadEvent::missing_color("x", (0..26).collect(), &s).unwrap();
        let m = measure(&s, &e, &cfg).unwrap();
        let three_pow_26 = pow(&int(3), 26);
        assert_eq!(m, (int(3) * pow(&int(2), 26) - int(3)) / three_pow_26);
        assert!(m <= int(3) * pow(&frac(2, 3), 26));
    }

    #[test]
    fn joint_measures() {
        let cfg = EnumConfig::default();
        let s = bits(13);
        let a = BadEvent::monochromatic("a", vec![0, 1, 2], &s).unwrap();
        let b = BadEvent::monochromatic("b", vec![3, 4, 5], &s).unwrap();
        assert_eq!(joint_measure(&s, &[a.as_set(), b.as_set()], &cfg).unwrap(), frac(1, 16));
        let c = BadEvent::monochromatic("c", (0..8).collect(), &s).unwrap();
        let d = BadEvent::monochromatic("d", (5..13).collect(), &s).unwrap();
        assert_eq!(joint_measure(&s, &[c.as_set(), d.as_set()], &cfg).unwrap(), frac(2, 1 << 13));
        assert_eq!(joint_measure(&s, &[], &cfg).unwrap(), int(1));
    }

    #[test]
    fn small_set_independence() {
        let cfg = EnumConfig::default();
        let m4: Space = VariableSpace::new(vec![4]).unwrap().into();
        let a = subset(&m4, "a", &[0, 1]);
        let b = subset(&m4, "b", &[0, 2]);
        assert!(independent(&m4, a.as_set(), b.as_set(), &cfg).unwrap());
        let m6: Space = VariableSpace::new(vec![6]).unwrap().into();
        let a = subset(&m6, "a", &[0, 1]);
        let b = subset(&m6, "b", &[0, 2]);
        assert!(!independent(&m6, a.as_set(), b.as_set(), &cfg).unwrap());
        let all = subset(&m6, "m", &[0, 1, 2, 3, 4, 5]);
        assert!(independent(&m6, all.as_set(), b.as_set(), &cfg).unwrap());
    }

    #[test]
    fn family_of_disjoint_monochromatic_sets() {
        let cfg = EnumConfig::default();
        let s = bits(12);
        let a = BadEvent::monochromatic("a", vec![0, 1, 2], &s).unwrap();
        let b1 = BadEvent::monochromatic("b1", vec![3, 4, 5], &s).unwrap();
        let b2 = BadEvent::monochromatic("b2", vec![6, 7, 8], &s).unwrap();
        assert!(independent_from_family(&s, a.as_set(), &[b1.as_set(), b2.as_set()], &cfg).unwrap());
        assert!(independent_from_family(&s, a.as_set(), &[], &cfg).unwrap());
        assert!(support_disjoint_certificate(&a, &[&b1, &b2]));
        assert!(support_disjoint_certificate(&a, &[]));
    }

    #[test]
    fn family_cap() {
        let s = bits(30);
        let events: Vec<BadEvent> = (0..22)
            .map(|i| BadEvent::monochromatic(format!("e{i}"), vec![i], &s).unwrap())
            .collect();
        let fam: Vec<EventSet> = events[1..].iter().map(|e| e.as_set()).collect();
        let err = independent_from_family(&s, events[0].as_set(), &fam, &EnumConfig::default());
        assert_eq!(err, Err(Error::FamilyCap { size: 21, cap: 20 }));
    }

    #[test]
    fn overlapping_supports_not_certified() {
        let s = bits(13);
        let a = BadEvent::monochromatic("a", (0..8).collect(), &s).unwrap();
        let b = BadEvent::monochromatic("b", (5..13).collect(), &s).unwrap();
        assert!(!support_disjoint_certificate(&a, &[&b]));
        assert!(!independent(&s, a.as_set(), b.as_set(), &EnumConfig::default()).unwrap());
    }
}
