use crate::error::{Error, Result};
use crate::instances::Digraph;

/// Follows, from vertex 0, the first out-neighbor whose label is one more
/// (mod `k`) until a vertex repeats. Labels increase by one along every
/// step, so the closed cycle has length divisible by `k`.
pub fn extract_cycle(graph: &Digraph, labels: &[u32], k: u32) -> Result<Vec<usize>> {
    let n = graph.len();
    if k == 0 {
        return Err(Error::InvalidParameters("k must be positive".into()));
    }
    if labels.len() != n {
        return Err(Error::LengthMismatch { expected: n, got: labels.len() });
    }
    if n == 0 {
        return Err(Error::InvalidParameters("empty digraph".into()));
    }
    let mut first_visit = vec![usize::MAX; n];
    let mut path = Vec::new();
    let mut v = 0usize;
    loop {
        if first_visit[v] != usize::MAX {
            return Ok(path[first_visit[v]..].to_vec());
        }
        first_visit[v] = path.len();
        path.push(v);
        let wanted = (labels[v] + 1) % k;
        v = *graph
            .out(v)
            .iter()
            .find(|&&w| labels[w] % k == wanted)
            .ok_or(Error::StuckVertex { vertex: v, wanted })?;
    }
}
