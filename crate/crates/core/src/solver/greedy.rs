use crate::instances::CircleLayout;

/// Leader selection by the counting argument: groups are processed in
/// order, each taking its first member not adjacent to an already chosen
/// leader. Returns one position per group, or the group that had no
/// eligible member.
pub fn greedy_leaders(layout: &CircleLayout) -> Result<Vec<usize>, usize> {
    let len = layout.len();
    let mut blocked = vec![false; len];
    let mut chosen = Vec::with_capacity(layout.groups());
    for g in 0..layout.groups() {
        let Some(p) = layout.members(g).into_iter().find(|&p| !blocked[p]) else {
            return Err(g);
        };
        blocked[(p + len - 1) % len] = true;
        blocked[(p + 1) % len] = true;
        chosen.push(p);
    }
    Ok(chosen)
}
