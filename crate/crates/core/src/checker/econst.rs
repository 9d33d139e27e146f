use crate::rational::{frac, Rational};

/// A rational enclosure `lo <= e <= hi` of Euler's number.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EConstant {
    pub lo: Rational,
    pub hi: Rational,
}

impl Default for EConstant {
    fn default() -> Self {
        Self { lo: frac(2_718_281_828i64, 1_000_000_000i64), hi: frac(2_718_281_829i64, 1_000_000_000i64) }
    }
}

/// Outcome of a comparison that involves `e`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EDecision {
    Holds,
    Fails,
    /// The two ends of the enclosure disagree.
    MarginTooThin,
}

impl EDecision {
    pub fn holds(self) -> bool {
        self == EDecision::Holds
    }

    pub fn as_str(self) -> &'static str {
        match self {
            EDecision::Holds => "pass",
            EDecision::Fails => "fail",
            EDecision::MarginTooThin => "margin-too-thin",
        }
    }
}

impl EConstant {
    /// Evaluates a predicate (monotone in `e`) at both ends of the enclosure.
    pub fn decide(&self, predicate: impl Fn(&Rational) -> bool) -> EDecision {
        match (predicate(&self.lo), predicate(&self.hi)) {
            (true, true) => EDecision::Holds,
            (false, false) => EDecision::Fails,
            _ => EDecision::MarginTooThin,
        }
    }
}
