//! Finite ground sets: product spaces of per-variable domains and the
//! permutation space used by transversal problems.

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};

/// A finite product of domains `0..domains[i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VariableSpace {
    domains: Vec<u32>,
}

impl VariableSpace {
    pub fn new(domains: Vec<u32>) -> Result<Self> {
        if let Some(var) = domains.iter().position(|&d| d == 0) {
            return Err(Error::EmptyDomain { var });
        }
        Ok(Self { domains })
    }

    /// `count` copies of the same domain.
    pub fn uniform(count: usize, domain: u32) -> Result<Self> {
        Self::new(vec![domain; count])
    }

    pub fn domains(&self) -> &[u32] {
        &self.domains
    }

    pub fn num_vars(&self) -> usize {
        self.domains.len()
    }

    /// Exact number of points.
    pub fn size(&self) -> BigUint {
        self.domains
            .iter()
            .fold(BigUint::one(), |acc, &d| acc * BigUint::from(d))
    }
}

/// Permutations of `0..n`; variable `i` holds the image of `i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PermutationSpace {
    n: usize,
}

impl PermutationSpace {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyDomain { var: 0 });
        }
        if n > u32::MAX as usize {
            return Err(Error::InvalidParameters(format!("permutation size {n} too large")));
        }
        Ok(Self { n })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `n!`.
    pub fn size(&self) -> BigUint {
        (1..=self.n as u64).fold(BigUint::one(), |acc, k| acc * BigUint::from(k))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Space {
    Product(VariableSpace),
    Permutation(PermutationSpace),
}

impl Space {
    pub fn num_vars(&self) -> usize {
        match self {
            Space::Product(s) => s.num_vars(),
            Space::Permutation(p) => p.n(),
        }
    }

    pub fn domain(&self, var: usize) -> u32 {
        match self {
            Space::Product(s) => s.domains[var],
            Space::Permutation(p) => p.n() as u32,
        }
    }

    pub fn size(&self) -> BigUint {
        match self {
            Space::Product(s) => s.size(),
            Space::Permutation(p) => p.size(),
        }
    }

    pub fn as_product(&self) -> Option<&VariableSpace> {
        match self {
            Space::Product(s) => Some(s),
            Space::Permutation(_) => None,
        }
    }

    pub fn is_permutation(&self) -> bool {
        matches!(self, Space::Permutation(_))
    }

    /// Number of points of the projection onto `vars` (distinct indices):
    /// the product of their domains, or the falling factorial `n(n-1)...`
    /// for a permutation space.
    pub fn projection_size(&self, vars: &[usize]) -> BigUint {
        match self {
            Space::Product(s) => vars
                .iter()
                .fold(BigUint::one(), |acc, &v| acc * BigUint::from(s.domains[v])),
            Space::Permutation(p) => (0..vars.len() as u64)
                .fold(BigUint::one(), |acc, i| acc * BigUint::from(p.n() as u64 - i)),
        }
    }

    pub fn check_assignment(&self, a: &Assignment) -> Result<()> {
        let n = self.num_vars();
        if a.values.len() != n {
            return Err(Error::AssignmentLength { expected: n, got: a.values.len() });
        }
        for (var, &value) in a.values.iter().enumerate() {
            let domain = self.domain(var);
            if value >= domain {
                return Err(Error::AssignmentValue { var, value, domain });
            }
        }
        if let Space::Permutation(p) = self {
            let mut seen = vec![false; p.n()];
            for &v in &a.values {
                if std::mem::replace(&mut seen[v as usize], true) {
                    return Err(Error::NotAPermutation { n: p.n() });
                }
            }
        }
        Ok(())
    }
}

impl From<VariableSpace> for Space {
    fn from(s: VariableSpace) -> Self {
        Space::Product(s)
    }
}

impl From<PermutationSpace> for Space {
    fn from(p: PermutationSpace) -> Self {
        Space::Permutation(p)
    }
}

/// A point of a space.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Assignment {
    pub values: Vec<u32>,
}

impl Assignment {
    pub fn new(values: Vec<u32>) -> Self {
        Self { values }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}
