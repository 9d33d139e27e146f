//! Hypothesis checks for the symmetric and general local lemma.
//!
//! Events are bad events; the lemma is applied to their complements, so
//! every gate reads `measure(bad) <= threshold`. Comparisons are inclusive
//! and exact.

use std::fmt::Write as _;

use num_traits::{One, Zero};

use super::dependency::DependencyReport;
use super::econst::{EConstant, EDecision};
use crate::enumerate::EnumConfig;
use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::measure::{family_violation, measure, EventSet};
use crate::rational::{self, frac, int, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SymmetricVariant {
    /// `measure <= 1/(4d)`.
    FourD,
    /// `measure <= 1/(e(d+1))`, for `d > 2`.
    E,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CertificateMode {
    Symmetric4d,
    SymmetricE,
    General,
}

impl CertificateMode {
    pub fn as_str(self) -> &'static str {
        match self {
            CertificateMode::Symmetric4d => "symmetric-4d",
            CertificateMode::SymmetricE => "symmetric-e",
            CertificateMode::General => "general",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EventVerdict {
    pub id: String,
    pub measure: Rational,
    /// The threshold compared against; for the e-variant this is the
    /// conservative value computed with the upper end of the enclosure.
    pub threshold: Rational,
    pub verdict: EDecision,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LLLCertificate {
    pub mode: CertificateMode,
    pub d: Option<u64>,
    pub gammas: Vec<Rational>,
    pub j_sets: Vec<Vec<usize>>,
    pub verdicts: Vec<EventVerdict>,
    /// Lower bound on the fraction of points avoiding every bad event,
    /// valid when the certificate is applicable.
    pub guaranteed_fraction: Rational,
}

impl LLLCertificate {
    pub fn applicable(&self) -> bool {
        self.verdicts.iter().all(|v| v.verdict.holds())
    }

    pub fn failing(&self) -> impl Iterator<Item = &EventVerdict> {
        self.verdicts.iter().filter(|v| !v.verdict.holds())
    }

    /// Flat text: mode, d or gamma vector, one line per event, then the
    /// verdict and the guaranteed fraction as `p/q`.
    pub fn to_report(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "certificate {}", self.mode.as_str());
        if let Some(d) = self.d {
            let _ = writeln!(out, "d {d}");
        }
        let _ = writeln!(out, "events {}", self.verdicts.len());
        for (k, v) in self.verdicts.iter().enumerate() {
            let _ = write!(out, "event {}", v.id);
            if let Some(g) = self.gammas.get(k) {
                let _ = write!(out, " gamma {}", rational::to_exact(g));
            }
            let _ = writeln!(
                out,
                " measure {} threshold {} {}",
                rational::to_exact(&v.measure),
                rational::to_exact(&v.threshold),
                v.verdict.as_str()
            );
        }
        let _ = writeln!(out, "applicable {}", if self.applicable() { "yes" } else { "no" });
        let _ = writeln!(
            out,
            "guaranteed_fraction {} (approx {})",
            rational::to_exact(&self.guaranteed_fraction),
            rational::to_decimal(&self.guaranteed_fraction, 6)
        );
        out
    }
}

fn measures(instance: &Instance, cfg: &EnumConfig) -> Result<Vec<Rational>> {
    instance.events().iter().map(|e| measure(instance.space(), e, cfg)).collect()
}

/// `(1 - 1/d)^n` for `d >= 2`; for `d = 1` the events are mutually
/// independent and the product bound `(3/4)^n` applies instead.
pub fn symmetric_fraction(d: u64, n: usize) -> Rational {
    let base = if d <= 1 { frac(3, 4) } else { Rational::one() - frac(1, d as i64) };
    rational::pow(&base, n as u64)
}

pub fn check_symmetric(
    instance: &Instance,
    degrees: &DependencyReport,
    d: Option<u64>,
    variant: SymmetricVariant,
    cfg: &EnumConfig,
) -> Result<LLLCertificate> {
    if degrees.len() != instance.len() {
        return Err(Error::LengthMismatch { expected: instance.len(), got: degrees.len() });
    }
    let observed = degrees.max_degree() as u64;
    let d = d.unwrap_or(observed);
    if let Some(k) = (0..instance.len()).find(|&k| degrees.degree(k) as u64 > d) {
        return Err(Error::DegreeTooSmall { d, degree: degrees.degree(k), event: instance.events()[k].id().to_string() });
    }
    if variant == SymmetricVariant::E && d <= 2 {
        return Err(Error::EVariantNeedsLargeD(d));
    }
    let e = EConstant::default();
    let verdicts = instance
        .events()
        .iter()
        .zip(measures(instance, cfg)?)
        .map(|(ev, m)| {
            let (threshold, verdict) = match variant {
                SymmetricVariant::FourD => {
                    let t = frac(1, 4 * d as i64);
                    let v = if m <= t { EDecision::Holds } else { EDecision::Fails };
                    (t, v)
                }
                SymmetricVariant::E => {
                    let scale = int(d as i64 + 1);
                    let t = (&e.hi * &scale).recip();
                    let v = e.decide(|ev| &m * ev * &scale <= Rational::one());
                    (t, v)
                }
            };
            EventVerdict { id: ev.id().to_string(), measure: m, threshold, verdict }
        })
        .collect();
    Ok(LLLCertificate {
        mode: match variant {
            SymmetricVariant::FourD => CertificateMode::Symmetric4d,
            SymmetricVariant::E => CertificateMode::SymmetricE,
        },
        d: Some(d),
        gammas: Vec::new(),
        j_sets: Vec::new(),
        verdicts,
        guaranteed_fraction: symmetric_fraction(d, instance.len()),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct GeneralOptions {
    /// Include `gamma_k` itself in the product over `j ∉ J_k`.
    pub include_self: bool,
}

/// General form: event `k` passes when
/// `measure_k <= (1 - gamma_k) * prod_{j ∉ J_k, j != k} gamma_j`
/// and it is certified independent from `{A_j : j ∈ J_k}`.
pub fn check_general(
    instance: &Instance,
    j_sets: &[Vec<usize>],
    gammas: &[Rational],
    options: GeneralOptions,
    cfg: &EnumConfig,
) -> Result<LLLCertificate> {
    let n = instance.len();
    if j_sets.len() != n {
        return Err(Error::LengthMismatch { expected: n, got: j_sets.len() });
    }
    if gammas.len() != n {
        return Err(Error::LengthMismatch { expected: n, got: gammas.len() });
    }
    let events = instance.events();
    for (k, g) in gammas.iter().enumerate() {
        if *g <= Rational::zero() || *g >= Rational::one() {
            return Err(Error::GammaOutOfRange { event: events[k].id().to_string() });
        }
    }
    let ms = measures(instance, cfg)?;
    for (k, js) in j_sets.iter().enumerate() {
        if let Some(&bad) = js.iter().find(|&&j| j >= n) {
            return Err(Error::InvalidParameters(format!("J set of event {k} names index {bad}")));
        }
        certify_family(instance, k, js, &ms, cfg)?;
    }
    let verdicts = (0..n)
        .map(|k| {
            let mut threshold = Rational::one() - &gammas[k];
            for (j, g) in gammas.iter().enumerate() {
                let outside = !j_sets[k].contains(&j);
                if outside && (j != k || options.include_self) {
                    threshold *= g;
                }
            }
            let verdict = if ms[k] <= threshold { EDecision::Holds } else { EDecision::Fails };
            EventVerdict { id: events[k].id().to_string(), measure: ms[k].clone(), threshold, verdict }
        })
        .collect();
    let guaranteed_fraction = gammas.iter().fold(Rational::one(), |acc, g| acc * g);
    Ok(LLLCertificate {
        mode: CertificateMode::General,
        d: None,
        gammas: gammas.to_vec(),
        j_sets: j_sets.to_vec(),
        verdicts,
        guaranteed_fraction,
    })
}

/// Structural certification where possible, else an exact family check.
fn certify_family(instance: &Instance, k: usize, js: &[usize], ms: &[Rational], cfg: &EnumConfig) -> Result<()> {
    let events = instance.events();
    if ms[k].is_zero() {
        return Ok(());
    }
    let live: Vec<usize> = js.iter().copied().filter(|&j| !ms[j].is_zero()).collect();
    let structural = !instance.space().is_permutation()
        && live.iter().all(|&j| j != k && !events[k].shares_support(&events[j]));
    if structural {
        return Ok(());
    }
    let sets: Vec<EventSet> = live.iter().map(|&j| events[j].good()).collect();
    if let Some(sub) = family_violation(instance.space(), events[k].good(), &sets, cfg)? {
        let other = live[sub[0]];
        return Err(Error::UncertifiedPair { event: events[k].id().to_string(), other: events[other].id().to_string() });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::checker::dependency::{dependency_degrees, DependencyMode};
    use crate::event::BadEvent;
    use crate::space::{Space, VariableSpace};

    fn disjoint_mono(count: usize, width: usize) -> Instance {
        let s: Space = VariableSpace::uniform(count * width, 2).unwrap().into();
        let events = (0..count)
            .map(|i| BadEvent::monochromatic(format!("e{i}"), (i * width..(i + 1) * width).collect(), &s).unwrap())
            .collect();
        Instance::new("t", s, events).unwrap()
    }

    #[test]
    fn single_event_general() {
        let inst = disjoint_mono(1, 2); // measure 1/2
        let cert = check_general(&inst, &[vec![]], &[frac(1, 2)], GeneralOptions::default(), &EnumConfig::default())
            .unwrap();
        assert!(cert.applicable());
        assert_eq!(cert.guaranteed_fraction, frac(1, 2));
        assert_eq!(cert.verdicts[0].threshold, frac(1, 2));
    }

    #[test]
    fn general_rejects_uncertified_pairs() {
        let s: Space = VariableSpace::uniform(3, 2).unwrap().into();
        let a = BadEvent::monochromatic("a", vec![0, 1], &s).unwrap();
        let b = BadEvent::monochromatic("b", vec![1, 2], &s).unwrap();
        let c = BadEvent::truth_table("c", vec![0, 1], vec![true, true, true, false], &s).unwrap();
        let inst = Instance::new("t", s, vec![a, b, c]).unwrap();
        let cfg = EnumConfig::default();
        let g = vec![frac(1, 2); 3];
        // Monochromatic pairs sharing a variable are still independent (exact check).
        assert!(check_general(&inst, &[vec![1], vec![0], vec![]], &g, GeneralOptions::default(), &cfg).is_ok());
        let err = check_general(&inst, &[vec![2], vec![], vec![]], &g, GeneralOptions::default(), &cfg).unwrap_err();
        assert_eq!(err, Error::UncertifiedPair { event: "a".into(), other: "c".into() });
    }

    #[test]
    fn gamma_range() {
        let inst = disjoint_mono(1, 2);
        let err = check_general(&inst, &[vec![]], &[int(1)], GeneralOptions::default(), &EnumConfig::default());
        assert!(matches!(err, Err(Error::GammaOutOfRange { .. })));
    }

    #[test]
    fn symmetric_reduction_agrees_on_toy() {
        // Three overlapping monochromatic 6-sets on a path: degrees 2, 3, 2.
        let s: Space = VariableSpace::uniform(12, 2).unwrap().into();
        let events = vec![
            BadEvent::monochromatic("a", (0..6).collect(), &s).unwrap(),
            BadEvent::monochromatic("b", (3..9).collect(), &s).unwrap(),
            BadEvent::monochromatic("c", (6..12).collect(), &s).unwrap(),
        ];
        let inst = Instance::new("t", s, events).unwrap();
        let cfg = EnumConfig::default();
        let rep = dependency_degrees(&inst, DependencyMode::Structural, &cfg).unwrap();
        let sym = check_symmetric(&inst, &rep, None, SymmetricVariant::FourD, &cfg).unwrap();
        assert_eq!(sym.d, Some(3));
        assert!(sym.applicable()); // 2^-5 <= 1/12
        let d = 3i64;
        let gammas = vec![Rational::one() - frac(1, d); 3];
        let js: Vec<Vec<usize>> = (0..3).map(|k| rep.certified(k)).collect();
        let gen = check_general(&inst, &js, &gammas, GeneralOptions::default(), &cfg).unwrap();
        assert!(gen.applicable());
        for (s, g) in sym.verdicts.iter().zip(&gen.verdicts) {
            assert!(s.threshold <= g.threshold);
        }
        assert_eq!(gen.guaranteed_fraction, sym.guaranteed_fraction);
    }

    #[test]
    fn degree_too_small() {
        let s: Space = VariableSpace::uniform(3, 2).unwrap().into();
        let a = BadEvent::monochromatic("a", vec![0, 1], &s).unwrap();
        let b = BadEvent::monochromatic("b", vec![1, 2], &s).unwrap();
        let inst = Instance::new("t", s, vec![a, b]).unwrap();
        let cfg = EnumConfig::default();
        let rep = dependency_degrees(&inst, DependencyMode::Structural, &cfg).unwrap();
        let err = check_symmetric(&inst, &rep, Some(1), SymmetricVariant::FourD, &cfg).unwrap_err();
        assert_eq!(err, Error::DegreeTooSmall { d: 1, degree: 2, event: "a".into() });
        let err = check_symmetric(&inst, &rep, Some(2), SymmetricVariant::E, &cfg).unwrap_err();
        assert_eq!(err, Error::EVariantNeedsLargeD(2));
    }

    #[test]
    fn report_is_flat_text() {
        let inst = disjoint_mono(2, 3);
        let cfg = EnumConfig::default();
        let rep = dependency_degrees(&inst, DependencyMode::Structural, &cfg).unwrap();
        let cert = check_symmetric(&inst, &rep, None, SymmetricVariant::FourD, &cfg).unwrap();
        let text = cert.to_report();
        assert!(text.contains("certificate symmetric-4d\n"));
        assert!(text.contains("event e0 measure 1/4 threshold 1/4 pass\n"));
        assert!(text.contains("guaranteed_fraction 9/16"));
    }
}
