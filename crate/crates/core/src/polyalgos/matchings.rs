use super::{require_class, Solution};
use crate::classify::GraphClass;
use crate::kernels::{max_weight_matching, WeightedBipartiteGraph};
use crate::model::Instance;
use crate::Result;

const SOLVER: &str = "minsum-matchings";

/// Min-sum dissatisfaction when every preference graph is a directed
/// matching, via a maximum-weight matching.
///
/// Left vertices are the agent copies of items. Right vertices are one
/// gadget vertex per (agent, arc) and one vertex per item. A copy matched
/// to its item vertex means the item goes to that agent (weight 2 for an
/// arc tail, 1 for a head); the heavy gadget edges make sure each agent
/// receives at most one endpoint of each of its arcs.
pub fn minsum_directed_matchings(inst: &Instance) -> Result<Solution> {
    require_class(inst, GraphClass::DirectedMatching, SOLVER)?;
    let n = inst.num_items();
    let heavy = 2 * n as i64;

    // Left: (agent, local) copies. Right: item vertices 0..n, then gadgets.
    let mut copy_base = Vec::with_capacity(inst.num_agents());
    let mut left = 0;
    for agent in inst.agents() {
        copy_base.push(left);
        left += agent.len();
    }
    let gadgets: usize = inst.agents().iter().map(|a| a.graph().arcs().len()).sum();
    let mut edges = Vec::with_capacity(2 * left + 2 * gadgets);
    let mut gadget = n;
    for (a, agent) in inst.agents().iter().enumerate() {
        let graph = agent.graph();
        for l in 0..agent.len() {
            let gain = if graph.out_degree(l) == 1 { 2 } else { 1 };
            edges.push((copy_base[a] + l, agent.global(l), gain));
        }
        for &(tail, head) in graph.arcs() {
            edges.push((copy_base[a] + tail, gadget, heavy));
            edges.push((copy_base[a] + head, gadget, heavy));
            gadget += 1;
        }
    }
    let graph = WeightedBipartiteGraph::new(left, n + gadgets, edges)?;
    let matching = max_weight_matching(&graph);

    let mut assignment = vec![None; n];
    let mut gadgets_matched = 0;
    for &(copy, right) in &matching.pairs {
        if right >= n {
            gadgets_matched += 1;
            continue;
        }
        let a = copy_base.partition_point(|&base| base <= copy) - 1;
        assignment[right] = Some(a);
    }
    debug_assert_eq!(gadgets_matched, gadgets, "every gadget vertex is matched");

    let satisfaction = matching.weight - heavy * gadgets_matched as i64;
    let value = inst.total_size() - satisfaction as usize;
    debug_assert_eq!(value, inst.profile_of(&assignment).iter().sum::<usize>());
    Ok(Solution::from_assignment(inst, value, &assignment))
}
