use crate::checker::{ramsey_decision, EDecision};
use crate::error::{Error, Result};
use crate::event::BadEvent;
use crate::instance::{Instance, InstanceGate};
use crate::rational::pow2;
use crate::space::{Space, VariableSpace};

/// Index of edge `{i, j}` (`i < j`) of `K_k` in lexicographic order.
pub(crate) fn edge_index(k: usize, i: usize, j: usize) -> usize {
    i * (2 * k - i - 1) / 2 + (j - i - 1)
}

fn combinations(k: usize, n: usize, mut f: impl FnMut(&[usize]) -> Result<()>) -> Result<()> {
    let mut idx: Vec<usize> = (0..n).collect();
    if n > k {
        return Ok(());
    }
    loop {
        f(&idx)?;
        let Some(i) = (0..n).rev().find(|&i| idx[i] < k - n + i) else {
            return Ok(());
        };
        idx[i] += 1;
        for j in i + 1..n {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// 2-colorings of the edges of `K_k`; one monochromatic event per
/// `n`-clique. Gated by the Ramsey condition for `R(n, n) > k`.
pub fn gen_ramsey(k: usize, n: usize) -> Result<Instance> {
    if n < 2 || k < n {
        return Err(Error::InvalidParameters(format!("need 2 <= n <= k (n = {n}, k = {k})")));
    }
    let space: Space = VariableSpace::uniform(k * (k - 1) / 2, 2)?.into();
    let measure = pow2(1 - (n * (n - 1) / 2) as i64);
    let mut events = Vec::new();
    combinations(k, n, |clique| {
        let mut support = Vec::with_capacity(n * (n - 1) / 2);
        for (a, &i) in clique.iter().enumerate() {
            for &j in &clique[a + 1..] {
                support.push(edge_index(k, i, j));
            }
        }
        let id = format!("clique{}", clique.iter().map(usize::to_string).collect::<Vec<_>>().join("-"));
        events.push(BadEvent::monochromatic(id, support, &space)?.with_analytic_measure(measure.clone()));
        Ok(())
    })?;
    let decision = if n >= 3 { ramsey_decision(n as u64, k as u64) } else { None };
    let gate = InstanceGate::new(
        "ramsey",
        format!("C({n},2)*C({k},{})+1 < 2^(C({n},2)-1)/e", n.saturating_sub(2)),
        decision == Some(EDecision::Holds),
    )
    .input("n", n)
    .input("k", k)
    .input("decision", decision.map_or("n/a", EDecision::as_str));
    Ok(Instance::new("ramsey", space, events)?.with_meta("n", n).with_meta("k", k).with_gate(gate))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_indices_are_lexicographic() {
        let k = 5;
        let mut expected = 0;
        for i in 0..k {
            for j in i + 1..k {
                assert_eq!(edge_index(k, i, j), expected);
                expected += 1;
            }
        }
    }

    #[test]
    fn triangles_of_k5() {
        let inst = gen_ramsey(5, 3).unwrap();
        assert_eq!(inst.len(), 10);
        assert_eq!(inst.space().num_vars(), 10);
        assert!(!inst.gate.unwrap().passed);
    }

    #[test]
    fn k5_n5_gate() {
        let inst = gen_ramsey(5, 5).unwrap();
        assert_eq!(inst.len(), 1);
        assert!(inst.gate.unwrap().passed);
    }
}
