//! Brute-force verification of the inequality driving the symmetric proof:
//!
//! `|A_1 ∩ … ∩ A_{k+t}| >= |A_1 ∩ … ∩ A_k| (1 - 1/d)^t` for all `k + t <= n`,
//! where `A_i` are the good sets (complements of the bad events), together
//! with the scalar fact `(1 - 1/d)^d >= 1/4` for `d >= 2`.

use std::fmt::Write as _;

use num_traits::One;

use crate::enumerate::{for_each_point, union_support, EnumConfig};
use crate::error::Result;
use crate::instance::Instance;
use crate::rational::{self, frac, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InductionRow {
    pub k: usize,
    pub t: usize,
    /// `|A_1 ∩ … ∩ A_{k+t}| / |M|`.
    pub lhs: Rational,
    /// `|A_1 ∩ … ∩ A_k| / |M| · (1 - 1/d)^t`.
    pub rhs: Rational,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InductionReport {
    pub d: u64,
    /// `prefix[m] = |A_1 ∩ … ∩ A_m| / |M|`.
    pub prefix: Vec<Rational>,
    pub rows: Vec<InductionRow>,
    /// `None` when `d < 2`, where the scalar step is not used.
    pub scalar_fact: Option<bool>,
}

impl InductionReport {
    pub fn first_violation(&self) -> Option<&InductionRow> {
        self.rows.iter().find(|r| !r.holds)
    }

    pub fn all_hold(&self) -> bool {
        self.first_violation().is_none() && self.scalar_fact != Some(false)
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "induction d {}", self.d);
        match self.scalar_fact {
            Some(ok) => {
                let _ = writeln!(out, "scalar (1-1/d)^d >= 1/4 {}", if ok { "holds" } else { "fails" });
            }
            None => {
                let _ = writeln!(out, "scalar (1-1/d)^d >= 1/4 not-used");
            }
        }
        for r in &self.rows {
            let _ = writeln!(
                out,
                "I({},{}) lhs {} rhs {} {}",
                r.k + r.t,
                r.t,
                rational::to_exact(&r.lhs),
                rational::to_exact(&r.rhs),
                if r.holds { "holds" } else { "VIOLATED" }
            );
        }
        let _ = writeln!(out, "result {}", if self.all_hold() { "all-hold" } else { "violation" });
        out
    }
}

/// Counts prefix intersections of good sets over the union of supports
/// (one pass) and checks every `I(k+t, t)`.
pub fn induction_certificate(instance: &Instance, d: u64, cfg: &EnumConfig) -> Result<InductionReport> {
    let events = instance.events();
    let n = events.len();
    let vars = union_support(events);
    let mut counts = vec![0u128; n + 1];
    let total = for_each_point(instance.space(), &vars, cfg, |v| {
        counts[0] += 1;
        for (i, e) in events.iter().enumerate() {
            if e.holds(v) {
                break;
            }
            counts[i + 1] += 1;
        }
    })?;
    let prefix: Vec<Rational> = counts.iter().map(|&c| Rational::new(c.into(), total.into())).collect();
    let factor = if d == 0 { Rational::one() } else { Rational::one() - frac(1, d as i64) };
    let mut rows = Vec::new();
    for s in 0..=n {
        for t in 0..=s {
            let k = s - t;
            let lhs = prefix[s].clone();
            let rhs = &prefix[k] * rational::pow(&factor, t as u64);
            rows.push(InductionRow { k, t, holds: lhs >= rhs, lhs, rhs });
        }
    }
    let scalar_fact = (d >= 2).then(|| rational::pow(&factor, d) >= frac(1, 4));
    Ok(InductionReport { d, prefix, rows, scalar_fact })
}
