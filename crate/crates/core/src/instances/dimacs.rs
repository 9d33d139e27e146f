use std::fmt::Write as _;

use rand::Rng;
use thiserror::Error;

use super::{bounded_incidence, exhausted, overlap_counts, seeded, MAX_ATTEMPTS};
use crate::error::{Error, Result};
use crate::event::{BadEvent, Literal};
use crate::instance::{Instance, InstanceGate};
use crate::space::{Space, VariableSpace};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DimacsError {
    #[error("line {line}: malformed header, expected `p cnf <vars> <clauses>`")]
    MalformedHeader { line: usize },

    #[error("line {line}: clause data before the `p cnf` header")]
    MissingHeader { line: usize },

    #[error("line {line}: literal {literal} out of range for {vars} variables")]
    LiteralOutOfRange { line: usize, literal: i64, vars: usize },

    #[error("line {line}: clause is not terminated by 0")]
    MissingTerminator { line: usize },

    #[error("line {line}: empty clause")]
    EmptyClause { line: usize },

    #[error("line {line}: `{token}` is not an integer literal")]
    BadToken { line: usize, token: String },

    #[error("header declares {expected} clauses but {got} were read")]
    ClauseCount { expected: usize, got: usize },
}

/// A CNF formula; literals are non-zero signed 1-based variable indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CnfFormula {
    pub num_vars: usize,
    pub clauses: Vec<Vec<i64>>,
}

impl CnfFormula {
    pub fn new(num_vars: usize, clauses: Vec<Vec<i64>>) -> Result<Self> {
        for (i, c) in clauses.iter().enumerate() {
            if c.is_empty() {
                return Err(Error::InvalidParameters(format!("clause {} is empty", i + 1)));
            }
            if let Some(&l) = c.iter().find(|&&l| l == 0 || l.unsigned_abs() as usize > num_vars) {
                return Err(Error::InvalidParameters(format!("clause {}: literal {l} out of range", i + 1)));
            }
        }
        Ok(Self { num_vars, clauses })
    }

    /// Common clause width, counting distinct variables; `None` when widths
    /// differ or there are no clauses.
    pub fn width(&self) -> Option<usize> {
        let mut widths = self.clauses.iter().map(|c| distinct_vars(c).len());
        let first = widths.next()?;
        widths.all(|w| w == first).then_some(first)
    }

    pub fn satisfied_by(&self, values: &[bool]) -> bool {
        self.clauses
            .iter()
            .all(|c| c.iter().any(|&l| values[l.unsigned_abs() as usize - 1] == (l > 0)))
    }

    pub fn to_dimacs(&self) -> String {
        let mut out = format!("p cnf {} {}\n", self.num_vars, self.clauses.len());
        for c in &self.clauses {
            for l in c {
                let _ = write!(out, "{l} ");
            }
            out.push_str("0\n");
        }
        out
    }
}

fn distinct_vars(clause: &[i64]) -> Vec<usize> {
    let mut v: Vec<usize> = clause.iter().map(|l| l.unsigned_abs() as usize - 1).collect();
    v.sort_unstable();
    v.dedup();
    v
}

pub fn parse_dimacs(text: &str) -> Result<CnfFormula, DimacsError> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses = Vec::new();
    let mut current = Vec::new();
    let mut last_line = 0;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('c') {
            continue;
        }
        if trimmed.starts_with('%') {
            break;
        }
        if trimmed.starts_with('p') {
            let parts: Vec<&str> = trimmed.split_whitespace().collect();
            let parsed = match parts.as_slice() {
                ["p", "cnf", v, c] => v.parse().ok().zip(c.parse().ok()),
                _ => None,
            };
            if header.is_some() || parsed.is_none() {
                return Err(DimacsError::MalformedHeader { line });
            }
            header = parsed;
            continue;
        }
        let Some((vars, _)) = header else {
            return Err(DimacsError::MissingHeader { line });
        };
        for token in trimmed.split_whitespace() {
            let literal: i64 = token
                .parse()
                .map_err(|_| DimacsError::BadToken { line, token: token.to_string() })?;
            if literal == 0 {
                if current.is_empty() {
                    return Err(DimacsError::EmptyClause { line });
                }
                clauses.push(std::mem::take(&mut current));
            } else if literal.unsigned_abs() > vars as u64 {
                return Err(DimacsError::LiteralOutOfRange { line, literal, vars });
            } else {
                current.push(literal);
                last_line = line;
            }
        }
    }
    if !current.is_empty() {
        return Err(DimacsError::MissingTerminator { line: last_line });
    }
    let Some((num_vars, expected)) = header else {
        return Err(DimacsError::MalformedHeader { line: text.lines().count().max(1) });
    };
    if clauses.len() != expected {
        return Err(DimacsError::ClauseCount { expected, got: clauses.len() });
    }
    Ok(CnfFormula { num_vars, clauses })
}

/// Every clause shares a variable with at most `2^(k-2)` others, `k` the
/// smallest clause width.
pub fn ksat_gate(f: &CnfFormula) -> InstanceGate {
    let supports: Vec<Vec<usize>> = f.clauses.iter().map(|c| distinct_vars(c)).collect();
    let k = supports.iter().map(Vec::len).min().unwrap_or(0);
    let counts = overlap_counts(&supports, f.num_vars);
    let limit: u128 = if k >= 2 { 1u128 << (k - 2).min(127) } else { 0 };
    let worst = counts.iter().copied().max().unwrap_or(0);
    let offender = counts.iter().position(|&c| c as u128 > limit);
    let passed = offender.is_none();
    let comparison = match offender {
        None => format!("max overlap {worst} <= 2^{} = {limit}", k.saturating_sub(2)),
        Some(i) => format!("clause c{} shares variables with {} > 2^{} = {limit} others", i + 1, counts[i], k.saturating_sub(2)),
    };
    let mut gate = InstanceGate::new("ksat", comparison, passed).input("k", k).input("max_overlap", worst);
    if let Some(i) = offender {
        gate = gate.input("offender", format!("c{}", i + 1));
    }
    gate
}

/// Boolean space, one clause event (bad = clause falsified) per clause.
pub fn cnf_to_instance(f: &CnfFormula) -> Result<Instance> {
    let space: Space = VariableSpace::uniform(f.num_vars, 2)?.into();
    let events = f
        .clauses
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let lits = c
                .iter()
                .map(|&l| {
                    let var = l.unsigned_abs() as usize - 1;
                    if l > 0 { Literal::positive(var) } else { Literal::negative(var) }
                })
                .collect();
            let e = BadEvent::clause(format!("c{}", i + 1), lits, &space)?;
            match e.shortcut_measure(&space) {
                Some(m) => Ok(e.with_analytic_measure(m)),
                None => Ok(e),
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let k = f.width().unwrap_or(0);
    Ok(Instance::new("ksat", space, events)?.with_meta("k", k).with_gate(ksat_gate(f)))
}

/// Random `k`-CNF whose clauses each meet at most `2^(k-2)` others: every
/// variable lies in at most `2^(k-2)/k + 1` clauses.
pub fn gen_ksat(vars: usize, clauses: usize, k: usize, seed: u64) -> Result<CnfFormula> {
    if !(2..=62).contains(&k) || vars < k {
        return Err(Error::InvalidParameters(format!("need 2 <= k <= 62 and k <= vars (k = {k}, vars = {vars})")));
    }
    let limit = 1usize << (k - 2);
    let load = limit / k + 1;
    let mut rng = seeded(seed);
    for _ in 0..MAX_ATTEMPTS {
        let Some(rows) = bounded_incidence(clauses, k, vars, load, &mut rng) else {
            continue;
        };
        if overlap_counts(&rows, vars).iter().all(|&c| c <= limit) {
            let body = rows
                .into_iter()
                .map(|r| {
                    r.into_iter()
                        .map(|v| if rng.gen_bool(0.5) { v as i64 + 1 } else { -(v as i64 + 1) })
                        .collect()
                })
                .collect();
            return CnfFormula::new(vars, body);
        }
    }
    Err(exhausted(format!("{clauses} clauses of width {k} over {vars} variables")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::pow2;

    #[test]
    fn two_clause_example() {
        let f = parse_dimacs("p cnf 2 2\n1 2 0\n-1 -2 0\n").unwrap();
        assert_eq!(f.num_vars, 2);
        assert_eq!(f.clauses, vec![vec![1, 2], vec![-1, -2]]);
        let gate = ksat_gate(&f);
        assert!(gate.passed);
        let solutions: Vec<[bool; 2]> = [[false, false], [false, true], [true, false], [true, true]]
            .into_iter()
            .filter(|v| f.satisfied_by(v))
            .collect();
        assert_eq!(solutions, vec![[false, true], [true, false]]);
        let inst = cnf_to_instance(&f).unwrap();
        assert_eq!(inst.events()[0].analytic_measure(), Some(&pow2(-2)));
    }

    #[test]
    fn comments_whitespace_and_multiline_clauses() {
        let text = "c hello\n\n  p  cnf 3   2 \n1 -3\n 2 0 -1\n0\n";
        let f = parse_dimacs(text).unwrap();
        assert_eq!(f.clauses, vec![vec![1, -3, 2], vec![-1]]);
    }

    #[test]
    fn empty_formula() {
        let f = parse_dimacs("p cnf 3 0\n").unwrap();
        let inst = cnf_to_instance(&f).unwrap();
        assert!(inst.is_empty());
    }

    #[test]
    fn distinct_errors_with_lines() {
        assert_eq!(parse_dimacs("p cnf x 1\n"), Err(DimacsError::MalformedHeader { line: 1 }));
        assert_eq!(
            parse_dimacs("p cnf 2 1\n1 3 0\n"),
            Err(DimacsError::LiteralOutOfRange { line: 2, literal: 3, vars: 2 })
        );
        assert_eq!(parse_dimacs("p cnf 2 1\n1 2\n"), Err(DimacsError::MissingTerminator { line: 2 }));
        assert_eq!(parse_dimacs("p cnf 2 1\n0\n"), Err(DimacsError::EmptyClause { line: 2 }));
        assert_eq!(parse_dimacs("1 0\n"), Err(DimacsError::MissingHeader { line: 1 }));
        assert_eq!(parse_dimacs("p cnf 2 2\n1 0\n"), Err(DimacsError::ClauseCount { expected: 2, got: 1 }));
    }

    #[test]
    fn overlap_gate_names_clause() {
        // Width 3 allows 2 overlaps; clause 1 meets three others.
        let f = CnfFormula::new(
            9,
            vec![vec![1, 2, 3], vec![1, 4, 5], vec![2, 6, 7], vec![3, 8, 9]],
        )
        .unwrap();
        let gate = ksat_gate(&f);
        assert!(!gate.passed);
        assert_eq!(gate.get("offender"), Some("c1"));
    }

    #[test]
    fn generator_respects_gate() {
        let f = gen_ksat(200, 80, 5, 3).unwrap();
        assert_eq!(f.width(), Some(5));
        assert!(ksat_gate(&f).passed);
        assert_eq!(parse_dimacs(&f.to_dimacs()).unwrap(), f);
    }
}
