//! Polynomial-time solvers for restricted preference-graph classes.

mod matchings;
mod paths;
mod star_forests;
mod two_matchings;

pub use matchings::minsum_directed_matchings;
pub use paths::{
    minmax_paths, minsum_disjoint_paths, minsum_paths, path_cost_matrix, solve_paths, PathMode,
};
pub use star_forests::{
    minsum_two_star_forests, preassign_two_star_forests, rewrite_with_preassignment,
    PreassignmentReport,
};
pub use two_matchings::{minmax_two_matchings, ProfileSet, TwoMatchingsSolution};

use crate::classify::{classes_of, GraphClass};
use crate::model::{Allocation, Assignment, Instance};
use crate::{Error, Result};

/// Optimal value together with an allocation attaining it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    pub value: usize,
    pub allocation: Allocation,
}

impl Solution {
    pub(crate) fn from_assignment(inst: &Instance, value: usize, assignment: &Assignment) -> Self {
        Solution {
            value,
            allocation: inst.allocation(assignment),
        }
    }
}

pub(crate) fn require_class(
    inst: &Instance,
    class: GraphClass,
    solver: &'static str,
) -> Result<()> {
    match inst
        .agents()
        .iter()
        .find(|a| !classes_of(a.graph()).contains(&class))
    {
        Some(agent) => Err(Error::precondition(
            solver,
            format!("graph of agent {} is not {class}", agent.id()),
        )),
        None => Ok(()),
    }
}

pub(crate) fn require_two_agents(inst: &Instance, solver: &'static str) -> Result<()> {
    if inst.num_agents() == 2 {
        Ok(())
    } else {
        Err(Error::precondition(
            solver,
            format!("needs exactly 2 agents, found {}", inst.num_agents()),
        ))
    }
}
