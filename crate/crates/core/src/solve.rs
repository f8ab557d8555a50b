//! Single entry point over every solver, for optimisation and for the
//! threshold decision.

use serde::Serialize;

use crate::classify::{dispatch_with, oracle_size, Limits, Objective, SolverChoice};
use crate::exact::{brute_force_with, decide_with, Decision, OracleOptions};
use crate::junction::minsum_junction_fpt_with;
use crate::model::{Allocation, DissatisfactionProfile, Instance};
use crate::polyalgos::{
    minmax_paths, minmax_two_matchings, minsum_directed_matchings, minsum_disjoint_paths,
    minsum_paths, minsum_two_star_forests, Solution,
};
use crate::{Error, Result};

/// Outcome of one optimisation run. The value always equals the objective
/// of the profile of the allocation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RunReport {
    pub objective: Objective,
    pub algorithm: SolverChoice,
    pub value: usize,
    pub profile: DissatisfactionProfile,
    pub allocation: Allocation,
}

impl RunReport {
    fn new(
        inst: &Instance,
        objective: Objective,
        algorithm: SolverChoice,
        value: usize,
        allocation: Allocation,
    ) -> Result<Self> {
        let profile = inst.profile(&allocation)?;
        let evaluated = objective.aggregate(profile.values());
        assert_eq!(evaluated, value, "{algorithm} reported a value its allocation does not attain");
        Ok(RunReport {
            objective,
            algorithm,
            value,
            profile,
            allocation,
        })
    }
}

/// Answer to "is there an allocation with objective at most `bound`?".
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecisionReport {
    pub objective: Objective,
    pub algorithm: SolverChoice,
    pub bound: usize,
    pub answer: bool,
    /// Profile and allocation of a witness, on a yes answer.
    pub witness: Option<(DissatisfactionProfile, Allocation)>,
}

/// The solver `algorithm` names, or the dispatched one for `None`.
/// Refuses specialised solvers for the other objective and an auto choice
/// that would need an oversized exhaustive search.
pub fn resolve(
    inst: &Instance,
    objective: Objective,
    algorithm: Option<SolverChoice>,
    limits: &Limits,
) -> Result<SolverChoice> {
    let choice = algorithm.unwrap_or_else(|| dispatch_with(inst, objective, limits));
    match choice.objective() {
        Some(own) if own != objective => Err(Error::precondition(
            choice.name(),
            format!("optimises {own}, not {objective}"),
        )),
        _ if choice == SolverChoice::OracleTooLarge => Err(Error::OracleTooLarge {
            size: oracle_size(inst),
            limit: limits.oracle,
        }),
        _ => Ok(choice),
    }
}

fn oracle_options(limits: &Limits) -> OracleOptions {
    OracleOptions {
        limit: Some(limits.oracle),
        ..OracleOptions::default()
    }
}

/// Optimises `objective` with the given solver, or the dispatched one.
pub fn solve(
    inst: &Instance,
    objective: Objective,
    algorithm: Option<SolverChoice>,
    limits: &Limits,
) -> Result<RunReport> {
    let choice = resolve(inst, objective, algorithm, limits)?;
    let solution: Solution = match choice {
        SolverChoice::MinSumMatchings => minsum_directed_matchings(inst)?,
        SolverChoice::MinSumPaths => minsum_paths(inst)?,
        SolverChoice::MinSumDisjointPaths => minsum_disjoint_paths(inst)?,
        SolverChoice::MinSumTwoStarForests => minsum_two_star_forests(inst)?,
        SolverChoice::JunctionFpt => minsum_junction_fpt_with(inst, limits.gamma)?,
        SolverChoice::MinMaxPaths => minmax_paths(inst)?,
        SolverChoice::MinMaxTwoMatchings => {
            let s = minmax_two_matchings(inst)?;
            Solution {
                value: s.value,
                allocation: s.allocation,
            }
        }
        SolverChoice::Oracle | SolverChoice::OracleTooLarge => {
            let r = brute_force_with(inst, objective, &oracle_options(limits))?;
            Solution {
                value: r.value,
                allocation: r.witness,
            }
        }
    };
    RunReport::new(inst, objective, choice, solution.value, solution.allocation)
}

/// Decides whether the objective can be brought to `bound` or below. The
/// oracle stops at the first witness in enumeration order; the other
/// solvers optimise and compare.
pub fn decide_threshold(
    inst: &Instance,
    objective: Objective,
    algorithm: Option<SolverChoice>,
    bound: usize,
    limits: &Limits,
) -> Result<DecisionReport> {
    let choice = resolve(inst, objective, algorithm, limits)?;
    let witness = if choice == SolverChoice::Oracle {
        match decide_with(inst, objective, bound, &oracle_options(limits))? {
            Decision::Yes(alloc) => Some((inst.profile(&alloc)?, alloc)),
            Decision::No => None,
        }
    } else {
        let report = solve(inst, objective, Some(choice), limits)?;
        (report.value <= bound).then_some((report.profile, report.allocation))
    };
    Ok(DecisionReport {
        objective,
        algorithm: choice,
        bound,
        answer: witness.is_some(),
        witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn worked() -> Instance {
        Instance::builder()
            .agent("1", ["a", "b", "c"], Vec::<(&str, &str)>::new())
            .agent("2", ["b"], Vec::<(&str, &str)>::new())
            .agent("3", ["c"], Vec::<(&str, &str)>::new())
            .build()
            .unwrap()
    }

    #[test]
    fn worked_example_values() {
        let limits = Limits::default();
        assert_eq!(solve(&worked(), Objective::Max, None, &limits).unwrap().value, 1);
        assert_eq!(solve(&worked(), Objective::Sum, None, &limits).unwrap().value, 2);
    }

    #[test]
    fn threshold_zero_is_no() {
        let r = decide_threshold(&worked(), Objective::Max, None, 0, &Limits::default()).unwrap();
        assert!(!r.answer);
        assert!(r.witness.is_none());
        let r = decide_threshold(&worked(), Objective::Max, None, 1, &Limits::default()).unwrap();
        assert!(r.answer);
    }

    #[test]
    fn wrong_objective_is_refused() {
        let err = solve(&worked(), Objective::Max, Some(SolverChoice::MinSumPaths), &Limits::default());
        assert!(matches!(err, Err(Error::Precondition { .. })));
    }

    #[test]
    fn oversized_auto_is_refused() {
        let limits = Limits {
            oracle: 10,
            ..Limits::default()
        };
        let err = solve(&worked(), Objective::Max, None, &limits);
        assert!(matches!(err, Err(Error::OracleTooLarge { .. })));
    }
}
