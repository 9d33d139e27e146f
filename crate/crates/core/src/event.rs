//! Bad events: predicates over a declared support of variables.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};
use crate::space::{Assignment, Space};

/// Largest truth table accepted at construction.
pub const MAX_TABLE_BITS: usize = 1 << 24;

/// `var == value`. Boolean literals use value 1 for `x` and 0 for `¬x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    pub var: usize,
    pub value: u32,
}

impl Literal {
    pub fn new(var: usize, value: u32) -> Self {
        Self { var, value }
    }

    pub fn positive(var: usize) -> Self {
        Self { var, value: 1 }
    }

    pub fn negative(var: usize) -> Self {
        Self { var, value: 0 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EventKind {
    /// All support variables take the same value.
    Monochromatic,
    /// Some value of the (common) domain is absent on the support.
    MissingColor,
    /// The disjunction of the literals is false.
    Clause(Vec<Literal>),
    /// The support restriction equals one of the listed patterns.
    ForbiddenPatterns(Vec<Vec<u32>>),
    /// Bits indexed by support assignments, first support variable most
    /// significant, values in `0..domain`.
    TruthTable(Vec<bool>),
}

impl EventKind {
    pub fn name(&self) -> &'static str {
        match self {
            EventKind::Monochromatic => "mono",
            EventKind::MissingColor => "missing",
            EventKind::Clause(_) => "clause",
            EventKind::ForbiddenPatterns(_) => "patterns",
            EventKind::TruthTable(_) => "table",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BadEvent {
    id: String,
    support: Vec<usize>,
    kind: EventKind,
    analytic_measure: Option<Rational>,
    radices: Vec<u32>,
}

impl BadEvent {
    /// Validates `support` (strictly increasing, in range) and `kind` against `space`.
    pub fn new(id: impl Into<String>, support: Vec<usize>, kind: EventKind, space: &Space) -> Result<Self> {
        let id = id.into();
        let invalid = |reason: String| Error::InvalidEvent { event: id.clone(), reason };
        if id.is_empty() || id.chars().any(char::is_whitespace) {
            return Err(invalid("ids must be non-empty and contain no whitespace".into()));
        }
        let vars = space.num_vars();
        if let Some(&index) = support.iter().find(|&&i| i >= vars) {
            return Err(Error::SupportOutOfRange { event: id, index, vars });
        }
        if support.windows(2).any(|w| w[0] >= w[1]) {
            return Err(invalid("support must be strictly increasing".into()));
        }
        let radices: Vec<u32> = support.iter().map(|&v| space.domain(v)).collect();
        match &kind {
            EventKind::Monochromatic => {}
            EventKind::MissingColor => {
                if radices.windows(2).any(|w| w[0] != w[1]) {
                    return Err(invalid("missing-color support must share one domain".into()));
                }
            }
            EventKind::Clause(lits) => {
                let mut vars: Vec<usize> = lits.iter().map(|l| l.var).collect();
                vars.sort_unstable();
                vars.dedup();
                if vars != support {
                    return Err(invalid("clause support must equal its literal variables".into()));
                }
                if let Some(l) = lits.iter().find(|l| l.value >= space.domain(l.var)) {
                    return Err(invalid(format!("literal value {} outside domain of variable {}", l.value, l.var)));
                }
            }
            EventKind::ForbiddenPatterns(patterns) => {
                for p in patterns {
                    if p.len() != support.len() {
                        return Err(invalid(format!(
                            "pattern length {} differs from support length {}",
                            p.len(),
                            support.len()
                        )));
                    }
                    if p.iter().zip(&radices).any(|(&v, &r)| v >= r) {
                        return Err(invalid("pattern value outside its domain".into()));
                    }
                }
            }
            EventKind::TruthTable(bits) => {
                let mut expected: usize = 1;
                for &r in &radices {
                    expected = expected
                        .checked_mul(r as usize)
                        .filter(|&e| e <= MAX_TABLE_BITS)
                        .ok_or_else(|| invalid("truth table too large".into()))?;
                }
                if bits.len() != expected {
                    return Err(invalid(format!("truth table has {} bits, expected {expected}", bits.len())));
                }
            }
        }
        Ok(Self { id, support, kind, analytic_measure: None, radices })
    }

    pub fn monochromatic(id: impl Into<String>, mut support: Vec<usize>, space: &Space) -> Result<Self> {
        support.sort_unstable();
        support.dedup();
        Self::new(id, support, EventKind::Monochromatic, space)
    }

    pub fn missing_color(id: impl Into<String>, mut support: Vec<usize>, space: &Space) -> Result<Self> {
        support.sort_unstable();
        support.dedup();
        Self::new(id, support, EventKind::MissingColor, space)
    }

    pub fn clause(id: impl Into<String>, literals: Vec<Literal>, space: &Space) -> Result<Self> {
        let mut support: Vec<usize> = literals.iter().map(|l| l.var).collect();
        support.sort_unstable();
        support.dedup();
        Self::new(id, support, EventKind::Clause(literals), space)
    }

    pub fn patterns(id: impl Into<String>, support: Vec<usize>, patterns: Vec<Vec<u32>>, space: &Space) -> Result<Self> {
        Self::new(id, support, EventKind::ForbiddenPatterns(patterns), space)
    }

    pub fn truth_table(id: impl Into<String>, support: Vec<usize>, bits: Vec<bool>, space: &Space) -> Result<Self> {
        Self::new(id, support, EventKind::TruthTable(bits), space)
    }

    pub fn with_analytic_measure(mut self, measure: Rational) -> Self {
        self.analytic_measure = Some(measure);
        self
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn support(&self) -> &[usize] {
        &self.support
    }

    pub fn kind(&self) -> &EventKind {
        &self.kind
    }

    pub fn analytic_measure(&self) -> Option<&Rational> {
        self.analytic_measure.as_ref()
    }

    /// Domain sizes of the support variables, in support order.
    pub fn radices(&self) -> &[u32] {
        &self.radices
    }

    pub fn shares_support(&self, other: &BadEvent) -> bool {
        let (mut i, mut j) = (0, 0);
        while i < self.support.len() && j < other.support.len() {
            match self.support[i].cmp(&other.support[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => return true,
            }
        }
        false
    }

    /// Checked evaluation on a full assignment.
    pub fn eval(&self, a: &Assignment) -> Result<bool> {
        if let Some(&index) = self.support.iter().find(|&&i| i >= a.values.len()) {
            return Err(Error::SupportOutOfRange { event: self.id.clone(), index, vars: a.values.len() });
        }
        Ok(self.holds(&a.values))
    }

    /// Evaluation on a full value vector indexed by variable; the caller
    /// guarantees every support index is in range.
    #[inline]
    pub fn holds(&self, values: &[u32]) -> bool {
        let at = |i: usize| values[self.support[i]];
        match &self.kind {
            EventKind::Monochromatic => {
                let Some(&first) = self.support.first() else { return true };
                let c = values[first];
                self.support.iter().all(|&v| values[v] == c)
            }
            EventKind::MissingColor => {
                let Some(&r) = self.radices.first() else { return true };
                if (self.support.len() as u64) < r as u64 {
                    return true;
                }
                if r <= 64 {
                    let full = if r == 64 { u64::MAX } else { (1u64 << r) - 1 };
                    let seen = self.support.iter().fold(0u64, |m, &v| m | (1u64 << values[v]));
                    seen != full
                } else {
                    let mut seen = vec![false; r as usize];
                    for &v in &self.support {
                        seen[values[v] as usize] = true;
                    }
                    seen.contains(&false)
                }
            }
            EventKind::Clause(lits) => lits.iter().all(|l| values[l.var] != l.value),
            EventKind::ForbiddenPatterns(patterns) => patterns
                .iter()
                .any(|p| p.iter().enumerate().all(|(i, &v)| at(i) == v)),
            EventKind::TruthTable(bits) => {
                let mut index = 0usize;
                for (i, &r) in self.radices.iter().enumerate() {
                    index = index * r as usize + at(i) as usize;
                }
                bits[index]
            }
        }
    }

    /// Closed-form measure when one applies on `space`.
    ///
    /// Monochromatic: `min(domain) / prod(domain)`, i.e. `r^(1-s)` for a
    /// uniform domain. Clause over distinct boolean variables: `2^-k`
    /// (0 if the clause contains a variable with both polarities).
    /// MissingColor over `s` cells with `r` colors: inclusion-exclusion
    /// `sum_{i=1}^{r-1} (-1)^(i+1) C(r,i) ((r-i)/r)^s`.
    pub fn shortcut_measure(&self, space: &Space) -> Option<Rational> {
        if space.is_permutation() {
            return None;
        }
        let s = self.support.len() as u64;
        match &self.kind {
            EventKind::Monochromatic => {
                let min = *self.radices.iter().min()?;
                let prod = self.radices.iter().fold(BigInt::one(), |acc, &r| acc * BigInt::from(r));
                Some(Rational::new(BigInt::from(min), prod))
            }
            EventKind::MissingColor => {
                let r = match self.radices.first() {
                    Some(&r) => r as u64,
                    None => return Some(Rational::one()),
                };
                if s < r {
                    return Some(Rational::one());
                }
                Some(missing_color_measure(s, r))
            }
            EventKind::Clause(lits) => {
                let mut sorted = lits.clone();
                sorted.sort_unstable();
                sorted.dedup();
                let mut vars: Vec<usize> = sorted.iter().map(|l| l.var).collect();
                vars.dedup();
                if vars.len() != sorted.len() {
                    // Same variable with two required values: every point satisfies a literal
                    // only if the domain is boolean and both values are listed.
                    if self.radices.iter().all(|&r| r == 2) {
                        return Some(Rational::zero());
                    }
                    return None;
                }
                if self.radices.iter().all(|&r| r == 2) {
                    Some(rational::pow2(-(vars.len() as i64)))
                } else {
                    None
                }
            }
            EventKind::ForbiddenPatterns(p) if p.is_empty() => Some(Rational::zero()),
            _ => None,
        }
    }
}

/// Fraction of `r`-colorings of `s` cells missing at least one color.
pub fn missing_color_measure(s: u64, r: u64) -> Rational {
    let mut total = Rational::zero();
    for i in 1..r {
        let term = rational::from_biguint(&rational::binomial(r, i))
            * rational::pow(&rational::frac(r - i, r), s);
        if i % 2 == 1 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}
