//! Encoders for the application families: each yields a space, its bad
//! events and a family gate evaluated in exact arithmetic.
//!
//! Random generators take explicit seeds and give up after
//! [`MAX_ATTEMPTS`] construction attempts.

mod circle;
mod digraph;
mod dimacs;
mod firm;
mod graph;
mod hypergraph;
mod latin;
mod rainbow;
mod ramsey;
mod setsystem;
mod vdw;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub use circle::{circle_instance, gen_circle, CircleLayout};
pub use digraph::{digraph_gate, gen_digraph_labels, Digraph};
pub use dimacs::{cnf_to_instance, gen_ksat, ksat_gate, parse_dimacs, CnfFormula, DimacsError};
pub use firm::{firm_instance, gen_firm, FirmParams};
pub use graph::{gen_listcoloring, gen_transversal, Graph};
pub use hypergraph::{gen_hypergraph, hypergraph_instance};
pub use latin::{gen_latin, gen_latin_random, latin_cap};
pub use rainbow::{gen_rainbow, rainbow_chain_26_3, rainbow_gate};
pub use ramsey::gen_ramsey;
pub use setsystem::gen_setsystem_gate;
pub use vdw::{gen_vdw, vdw_analytic_degree, vdw_gate, MAX_VDW_VARIABLES};

use crate::error::Error;

pub const MAX_ATTEMPTS: usize = 1000;

pub(crate) fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// For every support, the number of other supports sharing a variable.
pub fn overlap_counts(supports: &[Vec<usize>], num_vars: usize) -> Vec<usize> {
    let mut by_var = vec![Vec::new(); num_vars];
    for (k, s) in supports.iter().enumerate() {
        for &v in s {
            by_var[v].push(k);
        }
    }
    let mut stamp = vec![usize::MAX; supports.len()];
    supports
        .iter()
        .enumerate()
        .map(|(k, s)| {
            let mut count = 0;
            stamp[k] = k;
            for &v in s {
                for &j in &by_var[v] {
                    if stamp[j] != k {
                        stamp[j] = k;
                        count += 1;
                    }
                }
            }
            count
        })
        .collect()
}

/// Random rows of `row_size` distinct columns out of `cols`, each column
/// used at most `load_cap` times. `None` when a row cannot be completed.
pub(crate) fn bounded_incidence(
    rows: usize,
    row_size: usize,
    cols: usize,
    load_cap: usize,
    rng: &mut ChaCha8Rng,
) -> Option<Vec<Vec<usize>>> {
    let mut load = vec![0usize; cols];
    let mut out = Vec::with_capacity(rows);
    for _ in 0..rows {
        let open: Vec<usize> = (0..cols).filter(|&c| load[c] < load_cap).collect();
        if open.len() < row_size {
            return None;
        }
        let mut row: Vec<usize> = open.choose_multiple(rng, row_size).copied().collect();
        row.sort_unstable();
        for &c in &row {
            load[c] += 1;
        }
        out.push(row);
    }
    Some(out)
}

pub(crate) fn exhausted(what: impl Into<String>) -> Error {
    Error::GenerationExhausted { attempts: MAX_ATTEMPTS, what: what.into() }
}
