use num_bigint::BigInt;

use super::econst::{EConstant, EDecision};
use crate::rational::{self, Rational};

/// Decides `C(n,2) C(k,n-2) + 1 < 2^(C(n,2)-1) / e` exactly at both ends of
/// the enclosure of `e`. `None` outside `n >= 3, k >= n`.
pub fn ramsey_decision(n: u64, k: u64) -> Option<EDecision> {
    if n < 3 || k < n {
        return None;
    }
    let pairs = n * (n - 1) / 2;
    let lhs = rational::from_biguint(&(rational::binomial(n, 2) * rational::binomial(k, n - 2))) + rational::int(1);
    let power = Rational::from_integer(BigInt::from(1) << (pairs - 1));
    Some(EConstant::default().decide(|e| &lhs * e < power))
}

/// True when the condition holds under the whole enclosure of `e`, so the
/// diagonal Ramsey number exceeds `k`.
pub fn ramsey_condition(n: u64, k: u64) -> bool {
    ramsey_decision(n, k).is_some_and(EDecision::holds)
}
