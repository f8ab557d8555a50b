use std::collections::BTreeSet;

use super::{require_class, require_two_agents, Solution};
use crate::classify::GraphClass;
use crate::kernels::{bipartite_mwis, VertexWeightedGraph};
use crate::model::{Allocation, Assignment, Instance, ItemId};
use crate::Result;

const SOLVER: &str = "minsum-two-star-forests";

/// Forced part of an optimal allocation for two agents with out-star
/// forests.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreassignmentReport {
    pub assigned: Allocation,
    /// Shared items left for the independent-set stage.
    pub remaining: BTreeSet<ItemId>,
}

fn check(inst: &Instance) -> Result<()> {
    require_two_agents(inst, SOLVER)?;
    require_class(inst, GraphClass::UnionOutStars, SOLVER)
}

/// Agent for which the shared item `g` is a root while being a leaf for
/// the other agent.
fn one_root(inst: &Instance, g: usize) -> Option<usize> {
    if inst.desirers(g).len() != 2 {
        return None;
    }
    let in_degree = |a: usize| {
        let local = inst.local(a, g).expect("desired item");
        inst.agent(a).graph().in_degree(local)
    };
    match (in_degree(0), in_degree(1)) {
        (0, d) if d > 0 => Some(0),
        (d, 0) if d > 0 => Some(1),
        _ => None,
    }
}

/// Personal items go to their owner, one-root items to the agent they are
/// a root for, and the shared leaves below a one-root item to the other
/// agent.
fn forced(inst: &Instance) -> Assignment {
    let n = inst.num_items();
    let mut forced: Assignment = (0..n)
        .map(|g| match inst.desirers(g) {
            &[a] => Some(a),
            _ => one_root(inst, g),
        })
        .collect();
    for g in 0..n {
        let Some(a) = one_root(inst, g) else { continue };
        let agent = inst.agent(a);
        let local = inst.local(a, g).expect("desired item");
        for &child in agent.graph().out_neighbors(local) {
            let c = agent.global(child);
            // A leaf below one-roots of both agents keeps its first owner;
            // it is dominated for both either way.
            if forced[c].is_none() {
                forced[c] = Some(1 - a);
            }
        }
    }
    forced
}

pub fn preassign_two_star_forests(inst: &Instance) -> Result<PreassignmentReport> {
    check(inst)?;
    let forced = forced(inst);
    let remaining = (0..inst.num_items())
        .filter(|&g| forced[g].is_none())
        .map(|g| inst.item(g).clone())
        .collect();
    Ok(PreassignmentReport {
        assigned: inst.allocation(&forced),
        remaining,
    })
}

/// Overwrites the forced items of `start` with their forced owners. Never
/// increases the total dissatisfaction, and applying it twice changes
/// nothing further.
pub fn rewrite_with_preassignment(inst: &Instance, start: &Allocation) -> Result<Allocation> {
    check(inst)?;
    let mut assignment = inst.assignment(start)?;
    for (slot, owner) in assignment.iter_mut().zip(forced(inst)) {
        if owner.is_some() {
            *slot = owner;
        }
    }
    Ok(inst.allocation(&assignment))
}

/// Min-sum dissatisfaction for two agents whose graphs are disjoint
/// unions of out-stars.
///
/// After the preassignment, each remaining item `v` yields one vertex per
/// agent, weighted by how many of `v` and its children the agent would
/// newly dominate by receiving `v`. Edges join the two copies of an item
/// and each root to its leaves; a maximum-weight independent set of this
/// bipartite graph picks the remaining items.
pub fn minsum_two_star_forests(inst: &Instance) -> Result<Solution> {
    check(inst)?;
    let mut assignment = forced(inst);
    let remaining: Vec<usize> = (0..inst.num_items())
        .filter(|&g| assignment[g].is_none())
        .collect();
    let mut slot = vec![usize::MAX; inst.num_items()];
    for (r, &g) in remaining.iter().enumerate() {
        slot[g] = r;
    }
    let vertex = |g: usize, a: usize| 2 * slot[g] + a;

    let mut weights = vec![0i64; 2 * remaining.len()];
    let mut edges = Vec::new();
    for (a, agent) in inst.agents().iter().enumerate() {
        let graph = agent.graph();
        let owned = (0..agent.len()).filter(|&l| assignment[agent.global(l)] == Some(a));
        let dominated = graph.dominated_local(owned);
        for &g in &remaining {
            let local = inst.local(a, g).expect("remaining items are shared");
            let children = graph.out_neighbors(local);
            weights[vertex(g, a)] = std::iter::once(&local)
                .chain(children)
                .filter(|&&l| !dominated.contains(l))
                .count() as i64;
            for &child in children {
                let c = agent.global(child);
                if assignment[c].is_none() {
                    edges.push((vertex(g, a), vertex(c, a)));
                }
            }
        }
    }
    for &g in &remaining {
        edges.push((vertex(g, 0), vertex(g, 1)));
    }

    let before = inst.profile_of(&assignment).into_iter().sum::<usize>();
    let chosen = bipartite_mwis(&VertexWeightedGraph::new(weights, edges)?)?;
    for &v in &chosen.vertices {
        assignment[remaining[v / 2]] = Some(v % 2);
    }
    let value = before - chosen.weight as usize;
    debug_assert_eq!(value, inst.profile_of(&assignment).into_iter().sum::<usize>());
    Ok(Solution::from_assignment(inst, value, &assignment))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::Objective;
    use crate::exact::brute_force;
    use crate::Error;

    fn no_arcs() -> Vec<(&'static str, &'static str)> {
        Vec::new()
    }

    #[test]
    fn identical_stars() {
        let inst = Instance::builder()
            .agent("1", ["r", "x", "y"], [("r", "x"), ("r", "y")])
            .agent("2", ["r", "x", "y"], [("r", "x"), ("r", "y")])
            .build()
            .unwrap();
        let report = preassign_two_star_forests(&inst).unwrap();
        assert_eq!(report.assigned.num_assigned(), 0);
        assert_eq!(report.remaining.len(), 3);
        let sol = minsum_two_star_forests(&inst).unwrap();
        assert_eq!(sol.value, 1);
        assert_eq!(sol.value, brute_force(&inst, Objective::Sum).unwrap().value);
    }

    #[test]
    fn personal_items_only() {
        let inst = Instance::builder()
            .agent("1", ["a", "b"], [("a", "b")])
            .agent("2", ["c"], no_arcs())
            .build()
            .unwrap();
        let sol = minsum_two_star_forests(&inst).unwrap();
        assert_eq!(sol.value, 0);
        assert_eq!(preassign_two_star_forests(&inst).unwrap().remaining.len(), 0);
    }

    #[test]
    fn one_root_takes_its_leaves_away() {
        // r is a root for agent 1 and a leaf for agent 2.
        let inst = Instance::builder()
            .agent("1", ["r", "x"], [("r", "x")])
            .agent("2", ["s", "r", "x"], [("s", "r"), ("s", "x")])
            .build()
            .unwrap();
        let report = preassign_two_star_forests(&inst).unwrap();
        let owner = |item: &str| report.assigned.owner_of(item).map(|a| a.as_str().to_owned());
        assert_eq!(owner("r").as_deref(), Some("1"));
        assert_eq!(owner("x").as_deref(), Some("2"));
        assert_eq!(owner("s").as_deref(), Some("2"));
    }

    #[test]
    fn leaf_preassigned_elsewhere_still_counts() {
        // u is a one-root item of agent 2 and a leaf of the shared root v
        // for agent 1; giving v to agent 1 still makes it happy about u.
        let inst = Instance::builder()
            .agent("1", ["v", "u", "w"], [("v", "u"), ("v", "w")])
            .agent("2", ["p", "v", "u", "w"], [("p", "v"), ("p", "w")])
            .build()
            .unwrap();
        let sol = minsum_two_star_forests(&inst).unwrap();
        assert_eq!(sol.value, brute_force(&inst, Objective::Sum).unwrap().value);
    }

    #[test]
    fn rewrite_is_idempotent() {
        let inst = Instance::builder()
            .agent("1", ["r", "x", "y"], [("r", "x"), ("r", "y")])
            .agent("2", ["x", "r", "z"], [("x", "r")])
            .build()
            .unwrap();
        let mut start = Allocation::empty_for(&inst);
        start.insert("2".into(), "z".into());
        start.insert("1".into(), "x".into());
        let once = rewrite_with_preassignment(&inst, &start).unwrap();
        assert_eq!(rewrite_with_preassignment(&inst, &once).unwrap(), once);
        let empty = Allocation::empty_for(&inst);
        assert_eq!(
            rewrite_with_preassignment(&inst, &empty).unwrap(),
            preassign_two_star_forests(&inst).unwrap().assigned
        );
    }

    #[test]
    fn needs_two_agents() {
        let inst = Instance::builder().agent("1", ["a"], no_arcs()).build().unwrap();
        assert!(matches!(minsum_two_star_forests(&inst), Err(Error::Precondition { .. })));
    }
}
