use super::cases::{Case, CaseAssignment};
use super::catalog::PathCatalog;
use crate::kernels::{max_profit_flow, FlowNetwork};
use crate::model::{Assignment, Instance};

/// Result of the flow stage for one configuration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowOutcome {
    /// Satisfaction gained on the connecting paths.
    pub profit: i64,
    /// Items allocated on the connecting paths; every other entry is `None`.
    pub assignment: Assignment,
}

/// Allocates items on the catalog's paths by max-profit flow.
///
/// Each free item is a vertex fed by the source with capacity one. Every
/// path gets a chain of copies of its vertices; flow entering the copy at
/// position `p` of a path of length `m` means the item goes to the path's
/// agent and earns `m - p`. The chain lets at most one unit through, and
/// mandatory path sets drain through a shared vertex whose arc to the sink
/// has lower bound one. Returns `None` when some mandatory set cannot be
/// served.
pub fn solve_flow(inst: &Instance, ca: &CaseAssignment, catalog: &PathCatalog) -> Option<FlowOutcome> {
    let (source, sink) = (0, 1);
    let mut net = FlowNetwork::new(2, source, sink);

    let mut claimed = vec![false; inst.num_items()];
    for (slot, case) in ca.iter() {
        if case == Case::AllocatedSelf {
            claimed[inst.agent(slot.agent).global(slot.local)] = true;
        }
    }
    let mut item_vertex = vec![None; inst.num_items()];
    let mut target = vec![sink; catalog.paths.len()];
    for set in &catalog.mandatory {
        let drain = net.add_vertex();
        net.add_arc(drain, sink, 1, None, 0);
        for &p in set {
            target[p] = drain;
        }
    }

    // (arc, item, agent) for decoding.
    let mut choices = Vec::new();
    for (p, path) in catalog.paths.iter().enumerate() {
        let len = path.items.len() as i64;
        let mut previous = None;
        for (position, &item) in path.items.iter().enumerate() {
            let copy = net.add_vertex();
            if let Some(prev) = previous {
                net.add_capacity(prev, copy, Some(1));
            }
            if !claimed[item] {
                let v = *item_vertex[item].get_or_insert_with(|| {
                    let v = net.add_vertex();
                    net.add_capacity(source, v, Some(1));
                    v
                });
                let arc = net.add_arc(v, copy, 0, Some(1), len - position as i64);
                choices.push((arc, item, path.agent));
            }
            previous = Some(copy);
        }
        if let Some(last) = previous {
            net.add_capacity(last, target[p], Some(1));
        }
    }

    let result = max_profit_flow(&net)?;
    let mut assignment = vec![None; inst.num_items()];
    for (arc, item, agent) in choices {
        if result.flow[arc] > 0 {
            debug_assert!(assignment[item].is_none());
            assignment[item] = Some(agent);
        }
    }
    Some(FlowOutcome {
        profit: result.profit,
        assignment,
    })
}
