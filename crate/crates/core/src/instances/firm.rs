use super::{bounded_incidence, exhausted, overlap_counts, seeded, MAX_ATTEMPTS};
use crate::error::{Error, Result};
use crate::event::BadEvent;
use crate::instance::{Instance, InstanceGate};
use crate::rational::{self, pow2, to_exact};
use crate::space::{Space, VariableSpace};

/// Jobs staffed by specialists who each work exactly one weekend day.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FirmParams {
    pub jobs: usize,
    pub specialists: usize,
    /// Maximum number of other jobs sharing a specialist with any job.
    pub overlap_cap: usize,
    /// Worker pool size; derived from the load that keeps overlaps under
    /// the cap when `None`.
    pub workers: Option<usize>,
}

impl Default for FirmParams {
    fn default() -> Self {
        Self { jobs: 100, specialists: 8, overlap_cap: 30, workers: None }
    }
}

impl FirmParams {
    pub fn jobs(jobs: usize) -> Self {
        Self { jobs, ..Self::default() }
    }

    fn load_cap(&self) -> usize {
        self.overlap_cap / self.specialists + 1
    }

    fn worker_count(&self) -> usize {
        self.workers.unwrap_or_else(|| {
            let slots = self.jobs * self.specialists;
            slots.div_ceil(self.load_cap()).max(self.specialists)
        })
    }
}

/// Random staffing with exactly `specialists` per job and every job
/// sharing workers with at most `overlap_cap` others.
pub fn gen_firm(params: FirmParams, seed: u64) -> Result<Instance> {
    if params.specialists == 0 || params.specialists > 64 {
        return Err(Error::InvalidParameters("specialists per job must be in 1..=64".into()));
    }
    let workers = params.worker_count();
    if workers < params.specialists {
        return Err(Error::InvalidParameters(format!(
            "{workers} workers cannot staff a job with {} specialists",
            params.specialists
        )));
    }
    let mut rng = seeded(seed);
    let load_cap = if params.workers.is_some() { usize::MAX } else { params.load_cap() };
    for _ in 0..MAX_ATTEMPTS {
        let Some(staff) = bounded_incidence(params.jobs, params.specialists, workers, load_cap, &mut rng) else {
            continue;
        };
        if overlap_counts(&staff, workers).iter().all(|&c| c <= params.overlap_cap) {
            return firm_instance(&staff, workers, params.overlap_cap);
        }
    }
    Err(exhausted(format!(
        "{} jobs with {} specialists among {workers} workers and overlap <= {}",
        params.jobs, params.specialists, params.overlap_cap
    )))
}

/// Value 0 is Saturday, 1 is Sunday; a job is bad when all its specialists
/// work the same day.
pub fn firm_instance(staff: &[Vec<usize>], workers: usize, overlap_cap: usize) -> Result<Instance> {
    let space: Space = VariableSpace::uniform(workers, 2)?.into();
    let specialists = staff.iter().map(Vec::len).max().unwrap_or(0);
    let events = staff
        .iter()
        .enumerate()
        .map(|(j, s)| {
            let patterns = vec![vec![0; s.len()], vec![1; s.len()]];
            let e = BadEvent::patterns(format!("job{j}"), s.clone(), patterns, &space)?;
            Ok(e.with_analytic_measure(pow2(1 - s.len() as i64)))
        })
        .collect::<Result<Vec<_>>>()?;
    let observed = overlap_counts(staff, workers).into_iter().max().unwrap_or(0);
    Ok(Instance::new("firm", space, events)?
        .with_meta("jobs", staff.len())
        .with_meta("specialists", specialists)
        .with_meta("overlap_cap", overlap_cap)
        .with_meta("observed_overlap", observed)
        .with_gate(firm_gate(specialists, overlap_cap))
        .with_dependency_bound(overlap_cap as u64 + 1))
}

/// `cap < 2^(s-3)` makes `d = 2^(s-3)` a valid degree, and then
/// `2^(1-s) = 1/(4d)` meets the symmetric gate with equality.
fn firm_gate(specialists: usize, overlap_cap: usize) -> InstanceGate {
    let s = specialists as i64;
    let measure = pow2(1 - s);
    let d = pow2(s - 3);
    let degree_ok = rational::int(overlap_cap as u64 + 1) <= d;
    let threshold = (rational::int(4) * &d).recip();
    let measure_ok = measure <= threshold;
    InstanceGate::new(
        "firm",
        format!(
            "{overlap_cap} < 2^{} and {} <= 1/(4*{})",
            s - 3,
            to_exact(&measure),
            to_exact(&d)
        ),
        degree_ok && measure_ok && s >= 3,
    )
    .input("specialists", specialists)
    .input("overlap_cap", overlap_cap)
    .input("d", to_exact(&d))
    .input("measure", to_exact(&measure))
    .input("threshold", to_exact(&threshold))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measure::enumerated_measure;
    use crate::EnumConfig;

    #[test]
    fn defaults_pass_with_equality() {
        let inst = gen_firm(FirmParams::default(), 1).unwrap();
        assert_eq!(inst.len(), 100);
        let gate = inst.gate.as_ref().unwrap();
        assert!(gate.passed);
        assert_eq!(gate.get("measure"), Some("1/128"));
        assert_eq!(gate.get("threshold"), Some("1/128"));
        let cfg = EnumConfig::default();
        let m = enumerated_measure(inst.space(), &inst.events()[0], &cfg).unwrap();
        assert_eq!(m, pow2(-7));
        let staff: Vec<Vec<usize>> = inst.events().iter().map(|e| e.support().to_vec()).collect();
        assert!(overlap_counts(&staff, inst.space().num_vars()).iter().all(|&c| c <= 30));
    }

    #[test]
    fn overlap_cap_forty_fails_gate() {
        let p = FirmParams { overlap_cap: 40, ..FirmParams::default() };
        let inst = gen_firm(p, 2).unwrap();
        assert!(!inst.gate.unwrap().passed);
    }

    #[test]
    fn single_job() {
        let inst = gen_firm(FirmParams::jobs(1), 0).unwrap();
        assert_eq!(inst.len(), 1);
        assert_eq!(inst.events()[0].support().len(), 8);
    }

    #[test]
    fn impossible_parameters_reported() {
        let p = FirmParams { jobs: 10, specialists: 8, overlap_cap: 0, workers: Some(20) };
        assert!(matches!(gen_firm(p, 0), Err(Error::GenerationExhausted { .. })));
    }
}
