//! Min-sum solver parameterised by the number of junction vertices
//! (vertices with in- or out-degree above one, counted per agent).

mod cases;
mod catalog;
mod network;

pub use cases::{
    check_feasibility, enumerate_cases, junction_slots, Case, CaseAssignment, CaseEnumeration,
    Infeasibility, JunctionSlot,
};
pub use catalog::{build_path_catalog, is_eligible, segments, PathCatalog, Segment};
pub use network::{solve_flow, FlowOutcome};

use rayon::prelude::*;

use crate::classify::DEFAULT_GAMMA_LIMIT;
use crate::model::{Assignment, Instance};
use crate::polyalgos::Solution;
use crate::Result;

/// Satisfaction fixed by the cases alone: case 1 and 2 junctions, and the
/// segments hanging below them.
fn fixed_satisfaction(ca: &CaseAssignment, segs: &[Segment]) -> usize {
    let covered = |agent: usize, local: usize| {
        matches!(
            ca.case_of(agent, local),
            Some(Case::AllocatedSelf | Case::PredecessorAllocated)
        )
    };
    let junctions = ca.iter().filter(|&(s, _)| covered(s.agent, s.local)).count();
    let below: usize = segs
        .iter()
        .filter(|s| s.entry.is_some_and(|e| covered(s.agent, e)))
        .map(|s| s.items.len())
        .sum();
    junctions + below
}

/// Best completion of one case assignment: `(value, assignment)`.
fn best_for(inst: &Instance, ca: &CaseAssignment, segs: &[Segment]) -> Option<(usize, Assignment)> {
    check_feasibility(inst, ca).ok()?;
    let mut base = vec![None; inst.num_items()];
    for (slot, case) in ca.iter() {
        if case == Case::AllocatedSelf {
            base[inst.agent(slot.agent).global(slot.local)] = Some(slot.agent);
        }
    }
    let fixed = fixed_satisfaction(ca, segs);
    let mut best: Option<(usize, Assignment)> = None;
    for catalog in build_path_catalog(inst, ca) {
        let Some(outcome) = solve_flow(inst, ca, &catalog) else {
            continue;
        };
        let assignment: Assignment = base
            .iter()
            .zip(&outcome.assignment)
            .map(|(fixed, flowed)| fixed.or(*flowed))
            .collect();
        let value: usize = inst.profile_of(&assignment).into_iter().sum();
        debug_assert_eq!(
            value,
            inst.total_size() - fixed - outcome.profit as usize,
            "flow accounting agrees with direct evaluation"
        );
        if best.as_ref().is_none_or(|(v, _)| value < *v) {
            best = Some((value, assignment));
        }
    }
    best
}

/// [`minsum_junction_fpt_with`] under the default junction limit.
pub fn minsum_junction_fpt(inst: &Instance) -> Result<Solution> {
    minsum_junction_fpt_with(inst, DEFAULT_GAMMA_LIMIT)
}

/// Min-sum dissatisfaction in time exponential only in the number of
/// junction vertices.
///
/// Some optimal allocation gives no agent two comparable items. Relative
/// to each junction such an allocation puts the agent's items on the
/// junction, above it, below it, or nowhere near it. Each combination of
/// these cases fixes the junction items and leaves at most one item per
/// junction-free segment to choose, which a max-profit flow decides.
/// Ties go to the first case assignment in enumeration order.
pub fn minsum_junction_fpt_with(inst: &Instance, gamma_limit: usize) -> Result<Solution> {
    let assignments: Vec<CaseAssignment> = enumerate_cases(inst, gamma_limit)?.collect();
    let segs = segments(inst);
    let (value, assignment) = assignments
        .par_iter()
        .filter_map(|ca| best_for(inst, ca, &segs))
        .min_by_key(|(value, _)| *value)
        .expect("the empty allocation is always reachable");
    Ok(Solution::from_assignment(inst, value, &assignment))
}
