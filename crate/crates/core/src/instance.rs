use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::event::BadEvent;
use crate::space::{Assignment, Space};

/// A family-specific sufficient condition, evaluated exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceGate {
    pub family: String,
    /// Named inputs of the gate formula, rendered exactly.
    pub inputs: Vec<(String, String)>,
    /// The comparison performed, e.g. `2^-7 <= 1/(4*32)`.
    pub comparison: String,
    pub passed: bool,
}

impl InstanceGate {
    pub fn new(family: impl Into<String>, comparison: impl Into<String>, passed: bool) -> Self {
        Self { family: family.into(), inputs: Vec::new(), comparison: comparison.into(), passed }
    }

    pub fn input(mut self, key: impl Into<String>, value: impl ToString) -> Self {
        self.inputs.push((key.into(), value.to_string()));
        self
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.inputs.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }
}

/// A space, its bad events in declaration order, and family metadata.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub family: String,
    pub meta: Vec<(String, String)>,
    space: Space,
    events: Vec<BadEvent>,
    pub gate: Option<InstanceGate>,
    /// Closed-form bound on every dependency degree, when the family has one.
    pub dependency_bound: Option<u64>,
    /// The family is checked by arithmetic only; events are not materialized.
    pub certificate_only: bool,
    pub assignment: Option<Assignment>,
}

impl Instance {
    pub fn new(family: impl Into<String>, space: Space, events: Vec<BadEvent>) -> Result<Self> {
        let mut ids = HashSet::new();
        for e in &events {
            if !ids.insert(e.id()) {
                return Err(Error::DuplicateEventId(e.id().to_string()));
            }
            let vars = space.num_vars();
            if let Some(&index) = e.support().iter().find(|&&i| i >= vars) {
                return Err(Error::SupportOutOfRange { event: e.id().to_string(), index, vars });
            }
            if e.support().iter().zip(e.radices()).any(|(&v, &r)| space.domain(v) != r) {
                return Err(Error::InvalidEvent {
                    event: e.id().to_string(),
                    reason: "event was built for a different space".into(),
                });
            }
        }
        Ok(Self {
            family: family.into(),
            meta: Vec::new(),
            space,
            events,
            gate: None,
            dependency_bound: None,
            certificate_only: false,
            assignment: None,
        })
    }

    pub fn with_gate(mut self, gate: InstanceGate) -> Self {
        self.gate = Some(gate);
        self
    }

    pub fn with_meta(mut self, key: impl Into<String>, value: impl ToString) -> Self {
        self.meta.push((key.into(), value.to_string()));
        self
    }

    pub fn with_dependency_bound(mut self, d: u64) -> Self {
        self.dependency_bound = Some(d);
        self
    }

    pub fn meta(&self, key: &str) -> Option<&str> {
        self.meta.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn events(&self) -> &[BadEvent] {
        &self.events
    }

    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    pub fn event_index(&self, id: &str) -> Option<usize> {
        self.events.iter().position(|e| e.id() == id)
    }

    /// For each variable, the indices of events whose support contains it.
    pub fn var_index(&self) -> Vec<Vec<usize>> {
        let mut index = vec![Vec::new(); self.space.num_vars()];
        for (k, e) in self.events.iter().enumerate() {
            for &v in e.support() {
                index[v].push(k);
            }
        }
        index
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::VariableSpace;

    #[test]
    fn rejects_duplicate_ids() {
        let s: Space = VariableSpace::uniform(4, 2).unwrap().into();
        let a = BadEvent::monochromatic("x", vec![0, 1], &s).unwrap();
        let b = BadEvent::monochromatic("x", vec![2, 3], &s).unwrap();
        assert_eq!(
            Instance::new("t", s, vec![a, b]).unwrap_err(),
            Error::DuplicateEventId("x".into())
        );
    }

    #[test]
    fn rejects_foreign_events() {
        let big: Space = VariableSpace::uniform(8, 3).unwrap().into();
        let small: Space = VariableSpace::uniform(4, 2).unwrap().into();
        let a = BadEvent::monochromatic("x", vec![6, 7], &big).unwrap();
        assert!(matches!(
            Instance::new("t", small.clone(), vec![a]),
            Err(Error::SupportOutOfRange { .. })
        ));
        let b = BadEvent::monochromatic("y", vec![0, 1], &big).unwrap();
        assert!(matches!(Instance::new("t", small, vec![b]), Err(Error::InvalidEvent { .. })));
    }
}
