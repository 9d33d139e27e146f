use std::collections::BTreeMap;

use rand::seq::SliceRandom;

use super::seeded;
use crate::error::{Error, Result};
use crate::event::BadEvent;
use crate::instance::{Instance, InstanceGate};
use crate::space::{PermutationSpace, Space};

/// `floor((n - 1) / 16)`, the largest per-color cell count the gate allows.
pub fn latin_cap(n: usize) -> usize {
    n.saturating_sub(1) / 16
}

/// Rook placements on an `n x n` board colored by `matrix`: variable `i`
/// is the column used in row `i`. One event per pair of same-colored cells
/// in distinct rows and columns.
pub fn gen_latin(matrix: &[Vec<u32>]) -> Result<Instance> {
    let n = matrix.len();
    if let Some(r) = matrix.iter().position(|row| row.len() != n) {
        return Err(Error::InvalidParameters(format!("row {r} does not have {n} cells")));
    }
    let space: Space = PermutationSpace::new(n)?.into();
    let mut by_color: BTreeMap<u32, Vec<(usize, usize)>> = BTreeMap::new();
    for (r, row) in matrix.iter().enumerate() {
        for (c, &color) in row.iter().enumerate() {
            by_color.entry(color).or_default().push((r, c));
        }
    }
    let mut events = Vec::new();
    for (color, cells) in &by_color {
        for (i, &(r1, c1)) in cells.iter().enumerate() {
            for &(r2, c2) in &cells[i + 1..] {
                if r1 == r2 || c1 == c2 {
                    continue;
                }
                let ((ra, ca), (rb, cb)) = if r1 < r2 { ((r1, c1), (r2, c2)) } else { ((r2, c2), (r1, c1)) };
                let id = format!("color{color}@{ra}.{ca}+{rb}.{cb}");
                events.push(BadEvent::patterns(id, vec![ra, rb], vec![vec![ca as u32, cb as u32]], &space)?);
            }
        }
    }
    let worst = by_color.values().map(Vec::len).max().unwrap_or(0);
    let cap = latin_cap(n);
    let gate = InstanceGate::new(
        "latin",
        format!("max color count {worst} <= floor(({n}-1)/16) = {cap}"),
        worst <= cap,
    )
    .input("n", n)
    .input("max_count", worst)
    .input("cap", cap);
    Ok(Instance::new("latin", space, events)?.with_meta("n", n).with_gate(gate))
}

/// Random coloring in which every color covers exactly `per_color` cells
/// (the last color possibly fewer).
pub fn gen_latin_random(n: usize, per_color: usize, seed: u64) -> Result<Instance> {
    if per_color == 0 {
        return Err(Error::InvalidParameters("per-color cell count must be positive".into()));
    }
    let mut cells: Vec<usize> = (0..n * n).collect();
    cells.shuffle(&mut seeded(seed));
    let mut matrix = vec![vec![0u32; n]; n];
    for (i, &cell) in cells.iter().enumerate() {
        matrix[cell / n][cell % n] = (i / per_color) as u32;
    }
    gen_latin(&matrix)
}
