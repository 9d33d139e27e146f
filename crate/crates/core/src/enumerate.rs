//! Brute-force enumeration over the projection of a space onto a set of
//! variables. Fractions of support-determined events are invariant under
//! this projection, so all exact counting goes through here.

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::event::BadEvent;
use crate::space::Space;

pub const DEFAULT_MAX_POINTS: u128 = 1 << 24;
pub const DEFAULT_MAX_FAMILY: usize = 20;

pub const ENV_MAX_POINTS: &str = "LLL_MAX_POINTS";
pub const ENV_MAX_FAMILY: &str = "LLL_MAX_FAMILY";

/// Caps on brute-force work.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumConfig {
    /// Largest number of projected points enumerated in one pass.
    pub max_points: u128,
    /// Largest family size for independence-from-family checks.
    pub max_family: usize,
}

impl Default for EnumConfig {
    fn default() -> Self {
        Self { max_points: DEFAULT_MAX_POINTS, max_family: DEFAULT_MAX_FAMILY }
    }
}

impl EnumConfig {
    /// Defaults overridden by `LLL_MAX_POINTS` / `LLL_MAX_FAMILY` when set and parseable.
    pub fn from_env() -> Self {
        let mut cfg = Self::default();
        if let Some(v) = std::env::var(ENV_MAX_POINTS).ok().and_then(|s| s.trim().parse().ok()) {
            cfg.max_points = v;
        }
        if let Some(v) = std::env::var(ENV_MAX_FAMILY).ok().and_then(|s| s.trim().parse().ok()) {
            cfg.max_family = v;
        }
        cfg
    }

    pub fn with_max_points(mut self, max_points: u128) -> Self {
        self.max_points = max_points;
        self
    }

    pub fn with_max_family(mut self, max_family: usize) -> Self {
        self.max_family = max_family;
        self
    }
}

/// Sorted union of the supports.
pub fn union_support<'a>(events: impl IntoIterator<Item = &'a BadEvent>) -> Vec<usize> {
    let mut vars: Vec<usize> = events.into_iter().flat_map(|e| e.support().iter().copied()).collect();
    vars.sort_unstable();
    vars.dedup();
    vars
}

pub(crate) fn check_cap(space: &Space, vars: &[usize], cfg: &EnumConfig) -> Result<u128> {
    let size: BigUint = space.projection_size(vars);
    match size.to_u128() {
        Some(n) if n <= cfg.max_points => Ok(n),
        _ => Err(Error::EnumerationCap { required: size.to_string(), cap: cfg.max_points }),
    }
}

/// Calls `f` once per point of the projection onto `vars` (sorted, distinct).
/// The slice passed to `f` is indexed by global variable; only `vars` are
/// meaningful. Returns the number of points visited.
pub(crate) fn for_each_point(
    space: &Space,
    vars: &[usize],
    cfg: &EnumConfig,
    mut f: impl FnMut(&[u32]),
) -> Result<u128> {
    let total = check_cap(space, vars, cfg)?;
    if total == 0 {
        return Ok(0);
    }
    let width = vars.last().map_or(0, |&v| v + 1);
    let mut values = vec![0u32; width];
    match space {
        Space::Product(_) => {
            let radices: Vec<u32> = vars.iter().map(|&v| space.domain(v)).collect();
            loop {
                f(&values);
                // odometer, last variable fastest
                let mut i = vars.len();
                loop {
                    if i == 0 {
                        return Ok(total);
                    }
                    i -= 1;
                    let slot = &mut values[vars[i]];
                    *slot += 1;
                    if *slot < radices[i] {
                        break;
                    }
                    *slot = 0;
                }
            }
        }
        Space::Permutation(p) => {
            let mut used = vec![false; p.n()];
            injections(vars, 0, p.n() as u32, &mut used, &mut values, &mut f);
            Ok(total)
        }
    }
}

fn injections(
    vars: &[usize],
    depth: usize,
    n: u32,
    used: &mut [bool],
    values: &mut [u32],
    f: &mut impl FnMut(&[u32]),
) {
    if depth == vars.len() {
        f(values);
        return;
    }
    for v in 0..n {
        if used[v as usize] {
            continue;
        }
        used[v as usize] = true;
        values[vars[depth]] = v;
        injections(vars, depth + 1, n, used, values, f);
        used[v as usize] = false;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::{PermutationSpace, VariableSpace};

    #[test]
    fn product_visits_every_point_once() {
        let s: Space = VariableSpace::new(vec![2, 3, 4]).unwrap().into();
        let mut seen = std::collections::HashSet::new();
        let n = for_each_point(&s, &[0, 2], &EnumConfig::default(), |v| {
            assert!(seen.insert((v[0], v[2])));
        })
        .unwrap();
        assert_eq!(n, 8);
        assert_eq!(seen.len(), 8);
    }

    #[test]
    fn empty_projection_is_one_point() {
        let s: Space = VariableSpace::new(vec![2]).unwrap().into();
        let mut calls = 0;
        assert_eq!(for_each_point(&s, &[], &EnumConfig::default(), |_| calls += 1).unwrap(), 1);
        assert_eq!(calls, 1);
    }

    #[test]
    fn permutation_injections() {
        let s: Space = PermutationSpace::new(4).unwrap().into();
        let mut count = 0;
        let n = for_each_point(&s, &[1, 3], &EnumConfig::default(), |v| {
            assert_ne!(v[1], v[3]);
            count += 1;
        })
        .unwrap();
        assert_eq!((n, count), (12, 12));
    }

    #[test]
    fn cap_is_enforced() {
        let s: Space = VariableSpace::uniform(30, 2).unwrap().into();
        let vars: Vec<usize> = (0..30).collect();
        let err = for_each_point(&s, &vars, &EnumConfig::default(), |_| {}).unwrap_err();
        assert!(matches!(err, Error::EnumerationCap { .. }));
        let cfg = EnumConfig::default().with_max_points(1 << 10);
        assert!(for_each_point(&s, &vars[..11], &cfg, |_| {}).is_err());
        assert!(for_each_point(&s, &vars[..10], &cfg, |_| {}).is_ok());
    }
}
