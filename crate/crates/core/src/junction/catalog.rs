use std::collections::BTreeMap;

use super::cases::{Case, CaseAssignment};
use crate::classify::is_junction;
use crate::model::Instance;

/// Maximal run of non-junction vertices of one agent's graph, listed from
/// the top. Every vertex inside has in- and out-degree at most one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Segment {
    pub agent: usize,
    pub locals: Vec<usize>,
    pub items: Vec<usize>,
    /// Junction feeding the first vertex, if any.
    pub entry: Option<usize>,
    /// Junction fed by the last vertex, if any.
    pub exit: Option<usize>,
}

/// Connecting paths available to the flow stage for one guess.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathCatalog {
    pub paths: Vec<Segment>,
    /// Index sets into `paths`; each needs at least one allocated item.
    pub mandatory: Vec<Vec<usize>>,
    pub optional: Vec<usize>,
}

/// All segments of all agents, ordered by agent and then by the
/// topological position of their first vertex.
pub fn segments(inst: &Instance) -> Vec<Segment> {
    let mut out = Vec::new();
    for (a, agent) in inst.agents().iter().enumerate() {
        let graph = agent.graph();
        for &start in graph.topological_order() {
            if is_junction(graph, start) {
                continue;
            }
            let entry = graph.in_neighbors(start).first().copied();
            if entry.is_some_and(|e| !is_junction(graph, e)) {
                continue;
            }
            let mut locals = vec![start];
            let mut exit = None;
            let mut current = start;
            while let Some(&next) = graph.out_neighbors(current).first() {
                if is_junction(graph, next) {
                    exit = Some(next);
                    break;
                }
                locals.push(next);
                current = next;
            }
            out.push(Segment {
                agent: a,
                items: locals.iter().map(|&l| agent.global(l)).collect(),
                locals,
                entry,
                exit,
            });
        }
    }
    out
}

/// Whether the segment may hold an item of its agent: everything above it
/// must be in case 3 and everything below it in case 2.
pub fn is_eligible(ca: &CaseAssignment, seg: &Segment) -> bool {
    let entry_ok = seg
        .entry
        .is_none_or(|e| ca.case_of(seg.agent, e) == Some(Case::SuccessorAllocated));
    let exit_ok = seg
        .exit
        .is_none_or(|f| ca.case_of(seg.agent, f) == Some(Case::PredecessorAllocated));
    entry_ok && exit_ok
}

/// Junctions whose case is not already implied by a comparable junction:
/// case-2 junctions with no case 1 or 2 junction above them, and case-3
/// junctions with no case 1 or 3 junction below them.
fn needy(inst: &Instance, ca: &CaseAssignment, agent: usize) -> (Vec<usize>, Vec<usize>) {
    let graph = inst.agent(agent).graph();
    let own: Vec<(usize, Case)> = ca.of_agent(agent).collect();
    let covered_from_above = |w: usize| {
        own.iter().any(|&(u, cu)| {
            graph.precedes(u, w) && matches!(cu, Case::AllocatedSelf | Case::PredecessorAllocated)
        })
    };
    let covered_from_below = |u: usize| {
        own.iter().any(|&(w, cw)| {
            graph.precedes(u, w) && matches!(cw, Case::AllocatedSelf | Case::SuccessorAllocated)
        })
    };
    let above = own
        .iter()
        .filter(|&&(u, c)| c == Case::SuccessorAllocated && !covered_from_below(u))
        .map(|&(u, _)| u)
        .collect();
    let below = own
        .iter()
        .filter(|&&(w, c)| c == Case::PredecessorAllocated && !covered_from_above(w))
        .map(|&(w, _)| w)
        .collect();
    (above, below)
}

/// Every path catalog for a feasible case assignment, one per guess of
/// which (case-3, case-2) junction pairs get an item on a path between
/// them. Guesses leaving some junction without any way to be covered are
/// skipped.
pub fn build_path_catalog(inst: &Instance, ca: &CaseAssignment) -> Vec<PathCatalog> {
    let paths: Vec<Segment> = segments(inst)
        .into_iter()
        .filter(|s| is_eligible(ca, s))
        .collect();

    // Requirement keys: (agent, junction, true for a case-3 junction).
    type Key = (usize, usize, bool);
    let mut needs: Vec<Key> = Vec::new();
    for a in 0..inst.num_agents() {
        let (above, below) = needy(inst, ca, a);
        needs.extend(above.into_iter().map(|u| (a, u, true)));
        needs.extend(below.into_iter().map(|w| (a, w, false)));
    }
    let is_needy = |key: Key| needs.contains(&key);

    // Paths linking two needy junctions, grouped by pair; other paths
    // touching a needy junction serve it alone.
    let mut pairs: BTreeMap<(usize, usize, usize), Vec<usize>> = BTreeMap::new();
    let mut single: BTreeMap<Key, Vec<usize>> = BTreeMap::new();
    let mut free = Vec::new();
    for (p, seg) in paths.iter().enumerate() {
        let up = seg.entry.filter(|&u| is_needy((seg.agent, u, true)));
        let down = seg.exit.filter(|&w| is_needy((seg.agent, w, false)));
        match (up, down) {
            (Some(u), Some(w)) => pairs.entry((seg.agent, u, w)).or_default().push(p),
            (Some(u), None) => single.entry((seg.agent, u, true)).or_default().push(p),
            (None, Some(w)) => single.entry((seg.agent, w, false)).or_default().push(p),
            (None, None) => free.push(p),
        }
    }
    let pairs: Vec<((usize, usize, usize), Vec<usize>)> = pairs.into_iter().collect();
    assert!(pairs.len() < 32, "too many junction pairs to guess");

    let mut out = Vec::new();
    'guess: for mask in 0u32..(1 << pairs.len()) {
        let mut mandatory = Vec::new();
        let mut optional = free.clone();
        let mut served: Vec<Key> = Vec::new();
        for (bit, (&(a, u, w), members)) in pairs.iter().map(|(k, m)| (k, m)).enumerate() {
            if mask & (1 << bit) != 0 {
                mandatory.push(members.clone());
                served.extend([(a, u, true), (a, w, false)]);
            } else {
                optional.extend(members.iter().copied());
            }
        }
        for &key in &needs {
            let own = single.get(&key).cloned().unwrap_or_default();
            if served.contains(&key) {
                optional.extend(own);
            } else if own.is_empty() {
                continue 'guess;
            } else {
                mandatory.push(own);
            }
        }
        optional.sort_unstable();
        out.push(PathCatalog {
            paths: paths.clone(),
            mandatory,
            optional,
        });
    }
    out
}
